//! JSON form of diagrams.
//!
//! ```json
//! {"inputs": [0], "outputs": [0],
//!  "vertices": {"0": {"kind": "Z", "phase": {"num": 1, "den": 4}}},
//!  "wires": [[{"in": 0}, {"v": 0}], [{"v": 0}, {"out": 0}]]}
//! ```
//!
//! `inputs`/`outputs` list port labels in boundary order; endpoints refer to those labels.
//! `loops` (closed vertex-free circles) may be omitted when zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, Endpoint, VertexId, VertexKind};
use crate::error::{Result, ZxError};
use crate::phase::Phase;

#[derive(Serialize, Deserialize)]
struct RawVertex {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phase: Option<Phase>,
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq, Debug)]
enum RawEndpoint {
    #[serde(rename = "v")]
    V(u32),
    #[serde(rename = "in")]
    In(usize),
    #[serde(rename = "out")]
    Out(usize),
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    #[serde(default)]
    vertices: BTreeMap<String, RawVertex>,
    #[serde(default)]
    wires: Vec<[RawEndpoint; 2]>,
    #[serde(default, skip_serializing_if = "is_zero")]
    loops: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

fn endpoint_to_raw(e: Endpoint) -> RawEndpoint {
    match e {
        Endpoint::Vertex(v) => RawEndpoint::V(v.0),
        Endpoint::Input(i) => RawEndpoint::In(i),
        Endpoint::Output(i) => RawEndpoint::Out(i),
    }
}

impl From<RawEndpoint> for Endpoint {
    fn from(r: RawEndpoint) -> Self {
        match r {
            RawEndpoint::V(v) => Endpoint::Vertex(VertexId(v)),
            RawEndpoint::In(i) => Endpoint::Input(i),
            RawEndpoint::Out(i) => Endpoint::Output(i),
        }
    }
}

/// Endpoints on their own (as in rewrite anchors) use port positions as labels.
impl Serialize for Endpoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        endpoint_to_raw(*self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Endpoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RawEndpoint::deserialize(d).map(Endpoint::from)
    }
}

impl From<&Diagram> for RawDiagram {
    fn from(d: &Diagram) -> Self {
        let vertices = d
            .vertices()
            .map(|(v, k)| {
                let raw = match k {
                    VertexKind::Z(p) => RawVertex { kind: "Z".into(), phase: Some(p) },
                    VertexKind::X(p) => RawVertex { kind: "X".into(), phase: Some(p) },
                    VertexKind::H => RawVertex { kind: "H".into(), phase: None },
                };
                (v.0.to_string(), raw)
            })
            .collect();
        RawDiagram {
            inputs: (0..d.n_inputs()).collect(),
            outputs: (0..d.n_outputs()).collect(),
            vertices,
            wires: d.wires().iter().map(|w| [endpoint_to_raw(w.0), endpoint_to_raw(w.1)]).collect(),
            loops: d.loops(),
        }
    }
}

fn port_index(labels: &[usize], what: &str) -> Result<BTreeMap<usize, usize>> {
    let mut m = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        if m.insert(l, i).is_some() {
            return Err(ZxError::Parse(format!("duplicate {what} label {l}")));
        }
    }
    Ok(m)
}

impl TryFrom<RawDiagram> for Diagram {
    type Error = ZxError;
    fn try_from(r: RawDiagram) -> Result<Diagram> {
        let ins = port_index(&r.inputs, "input")?;
        let outs = port_index(&r.outputs, "output")?;
        let mut d = Diagram::with_boundary(r.inputs.len(), r.outputs.len());
        for (id, v) in r.vertices {
            let id: u32 = id.parse().map_err(|_| ZxError::Parse(format!("bad vertex id `{id}`")))?;
            let phase = v.phase.unwrap_or(Phase::ZERO);
            let kind = match v.kind.as_str() {
                "Z" => VertexKind::Z(phase),
                "X" => VertexKind::X(phase),
                "H" if v.phase.is_none() || phase.is_zero() => VertexKind::H,
                "H" => return Err(ZxError::Parse("H vertices carry no phase".into())),
                k => return Err(ZxError::Parse(format!("unknown vertex kind `{k}`"))),
            };
            d.add_vertex_with_id(VertexId(id), kind).map_err(|e| ZxError::Parse(e.to_string()))?;
        }
        let ep = |e: RawEndpoint| -> Result<Endpoint> {
            Ok(match e {
                RawEndpoint::V(v) => Endpoint::Vertex(VertexId(v)),
                RawEndpoint::In(l) => Endpoint::Input(
                    *ins.get(&l).ok_or_else(|| ZxError::Parse(format!("unknown input {l}")))?,
                ),
                RawEndpoint::Out(l) => Endpoint::Output(
                    *outs.get(&l).ok_or_else(|| ZxError::Parse(format!("unknown output {l}")))?,
                ),
            })
        };
        for [a, b] in r.wires {
            d.add_wire(ep(a)?, ep(b)?);
        }
        d.add_loops(r.loops);
        d.validate()?;
        Ok(d)
    }
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawDiagram::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawDiagram::deserialize(d)?;
        Diagram::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl Diagram {
    pub fn from_json(s: &str) -> Result<Diagram> {
        serde_json::from_str::<RawDiagram>(s)
            .map_err(|e| ZxError::Parse(e.to_string()))
            .and_then(Diagram::try_from)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serialisation cannot fail")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serialisation cannot fail")
    }
}
