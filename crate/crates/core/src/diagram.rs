//! ZX-diagrams as open multigraphs.
//!
//! Wires, swaps, cups and caps leave no vertices behind: a diagram is a set of spider and
//! Hadamard vertices, an ordered list of input and output ports, a multiset of wires, and a
//! count of closed vertex-free loops. Two diagrams that differ only by bending or sliding
//! wires are therefore the same value up to vertex renaming.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ZxError};
use crate::phase::Phase;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Colour {
    Z,
    X,
}

impl Colour {
    pub fn other(self) -> Colour {
        match self {
            Colour::Z => Colour::X,
            Colour::X => Colour::Z,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VertexKind {
    Z(Phase),
    X(Phase),
    H,
}

impl VertexKind {
    pub fn spider(c: Colour, p: Phase) -> VertexKind {
        match c {
            Colour::Z => VertexKind::Z(p),
            Colour::X => VertexKind::X(p),
        }
    }

    pub fn colour(self) -> Option<Colour> {
        match self {
            VertexKind::Z(_) => Some(Colour::Z),
            VertexKind::X(_) => Some(Colour::X),
            VertexKind::H => None,
        }
    }

    pub fn phase(self) -> Option<Phase> {
        match self {
            VertexKind::Z(p) | VertexKind::X(p) => Some(p),
            VertexKind::H => None,
        }
    }

    pub fn with_phase(self, p: Phase) -> VertexKind {
        match self {
            VertexKind::Z(_) => VertexKind::Z(p),
            VertexKind::X(_) => VertexKind::X(p),
            VertexKind::H => VertexKind::H,
        }
    }

    pub fn colour_swapped(self) -> VertexKind {
        match self {
            VertexKind::Z(p) => VertexKind::X(p),
            VertexKind::X(p) => VertexKind::Z(p),
            VertexKind::H => VertexKind::H,
        }
    }
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexKind::Z(p) => write!(f, "Z({p})"),
            VertexKind::X(p) => write!(f, "X({p})"),
            VertexKind::H => write!(f, "H"),
        }
    }
}

/// One end of a wire.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Endpoint {
    Vertex(VertexId),
    Input(usize),
    Output(usize),
}

impl Endpoint {
    pub fn vertex(self) -> Option<VertexId> {
        match self {
            Endpoint::Vertex(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_boundary(self) -> bool {
        !matches!(self, Endpoint::Vertex(_))
    }
}

impl From<VertexId> for Endpoint {
    fn from(v: VertexId) -> Self {
        Endpoint::Vertex(v)
    }
}

/// An unordered pair of endpoints, stored with `.0 <= .1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Wire(pub Endpoint, pub Endpoint);

impl Wire {
    pub fn new(a: Endpoint, b: Endpoint) -> Wire {
        if a <= b {
            Wire(a, b)
        } else {
            Wire(b, a)
        }
    }

    pub fn touches(&self, e: Endpoint) -> bool {
        self.0 == e || self.1 == e
    }

    /// The far end as seen from `e`.
    pub fn other(&self, e: Endpoint) -> Endpoint {
        if self.0 == e {
            self.1
        } else {
            self.0
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.0 == self.1
    }
}

/// Generators of the language. Wire generators produce vertex-free diagrams.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    Z(Phase),
    X(Phase),
    H,
    /// `𝕀 : 1 → 1`
    Identity,
    /// `σ : 2 → 2`
    Swap,
    /// `ε : 2 → 0`
    Cup,
    /// `η : 0 → 2`
    Cap,
    /// `e : 0 → 0`
    Empty,
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Diagram {
    vertices: BTreeMap<VertexId, VertexKind>,
    n_inputs: usize,
    n_outputs: usize,
    wires: Vec<Wire>,
    loops: usize,
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({} -> {}; ", self.n_inputs, self.n_outputs)?;
        for (v, k) in &self.vertices {
            write!(f, "{v:?}:{k} ")?;
        }
        write!(f, "; wires ")?;
        for w in &self.wires {
            write!(f, "{}-{} ", fmt_end(w.0), fmt_end(w.1))?;
        }
        if self.loops > 0 {
            write!(f, "; loops {}", self.loops)?;
        }
        write!(f, ")")
    }
}

fn fmt_end(e: Endpoint) -> String {
    match e {
        Endpoint::Vertex(v) => format!("v{}", v.0),
        Endpoint::Input(i) => format!("in{i}"),
        Endpoint::Output(i) => format!("out{i}"),
    }
}

impl Diagram {
    /// The empty diagram `e : 0 → 0`.
    pub fn empty() -> Diagram {
        Diagram::default()
    }

    /// A diagram with the given boundary and nothing else; callers fill it in with
    /// [`Diagram::add_vertex`] and [`Diagram::add_wire`], then [`Diagram::validate`].
    pub fn with_boundary(n_inputs: usize, n_outputs: usize) -> Diagram {
        Diagram { n_inputs, n_outputs, ..Diagram::default() }
    }

    pub fn generator(g: Generator, n: usize, m: usize) -> Result<Diagram> {
        make_generator(g, n, m)
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn n_outputs(&self) -> usize {
        self.n_outputs
    }

    pub fn boundary_len(&self) -> usize {
        self.n_inputs + self.n_outputs
    }

    pub fn is_scalar(&self) -> bool {
        self.boundary_len() == 0
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, VertexKind)> + '_ {
        self.vertices.iter().map(|(&v, &k)| (v, k))
    }

    pub fn vertex_ids(&self) -> Vec<VertexId> {
        self.vertices.keys().copied().collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn kind(&self, v: VertexId) -> Option<VertexKind> {
        self.vertices.get(&v).copied()
    }

    pub fn wires(&self) -> &[Wire] {
        &self.wires
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn add_loops(&mut self, n: usize) {
        self.loops += n;
    }

    fn fresh_id(&self) -> VertexId {
        VertexId(self.vertices.keys().next_back().map_or(0, |v| v.0 + 1))
    }

    pub fn add_vertex(&mut self, kind: VertexKind) -> VertexId {
        let v = self.fresh_id();
        self.vertices.insert(v, kind);
        v
    }

    pub fn add_vertex_with_id(&mut self, v: VertexId, kind: VertexKind) -> Result<()> {
        if self.vertices.contains_key(&v) {
            return Err(ZxError::InvalidDiagram(format!("duplicate vertex id {v}")));
        }
        self.vertices.insert(v, kind);
        Ok(())
    }

    pub fn set_kind(&mut self, v: VertexId, kind: VertexKind) {
        if let Some(k) = self.vertices.get_mut(&v) {
            *k = kind;
        }
    }

    pub fn add_wire(&mut self, a: impl Into<Endpoint>, b: impl Into<Endpoint>) {
        let w = Wire::new(a.into(), b.into());
        let pos = self.wires.partition_point(|x| *x <= w);
        self.wires.insert(pos, w);
    }

    /// Adds `n` parallel wires.
    pub fn add_wires(&mut self, a: impl Into<Endpoint>, b: impl Into<Endpoint>, n: usize) {
        let (a, b) = (a.into(), b.into());
        for _ in 0..n {
            self.add_wire(a, b);
        }
    }

    /// Removes one copy of the wire; returns whether one was present.
    pub fn remove_wire(&mut self, a: Endpoint, b: Endpoint) -> bool {
        let w = Wire::new(a, b);
        match self.wires.binary_search(&w) {
            Ok(i) => {
                self.wires.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    /// Removes a vertex and every wire touching it.
    pub fn remove_vertex(&mut self, v: VertexId) {
        self.vertices.remove(&v);
        let e = Endpoint::Vertex(v);
        self.wires.retain(|w| !w.touches(e));
    }

    /// Number of wire ends at `e`; a self-loop counts twice.
    pub fn degree(&self, e: impl Into<Endpoint>) -> usize {
        let e = e.into();
        self.wires.iter().map(|w| (w.0 == e) as usize + (w.1 == e) as usize).sum()
    }

    /// Number of wires joining `a` and `b` (self-loops when `a == b`).
    pub fn multiplicity(&self, a: impl Into<Endpoint>, b: impl Into<Endpoint>) -> usize {
        let w = Wire::new(a.into(), b.into());
        let lo = self.wires.partition_point(|x| *x < w);
        let hi = self.wires.partition_point(|x| *x <= w);
        hi - lo
    }

    pub fn self_loops(&self, v: VertexId) -> usize {
        self.multiplicity(v, v)
    }

    /// Far endpoints of the wires at `v`, with multiplicity, excluding self-loops.
    pub fn neighbourhood(&self, v: VertexId) -> BTreeMap<Endpoint, usize> {
        let e = Endpoint::Vertex(v);
        let mut out = BTreeMap::new();
        for w in &self.wires {
            if w.touches(e) && !w.is_self_loop() {
                *out.entry(w.other(e)).or_insert(0) += 1;
            }
        }
        out
    }

    /// Vertex neighbours of `v` (excluding `v` itself), sorted, without multiplicity.
    pub fn neighbours(&self, v: VertexId) -> Vec<VertexId> {
        self.neighbourhood(v).keys().filter_map(|e| e.vertex()).collect()
    }

    /// The endpoint attached to a boundary port.
    pub fn port_neighbour(&self, port: Endpoint) -> Option<Endpoint> {
        self.wires.iter().find(|w| w.touches(port)).map(|w| w.other(port))
    }

    /// Checks port degrees, H degrees, and that every endpoint exists.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(ZxError::InvalidDiagram(m));
        for w in &self.wires {
            for e in [w.0, w.1] {
                match e {
                    Endpoint::Vertex(v) if !self.vertices.contains_key(&v) => {
                        return bad(format!("wire to missing vertex {v}"))
                    }
                    Endpoint::Input(i) if i >= self.n_inputs => return bad(format!("input {i} out of range")),
                    Endpoint::Output(i) if i >= self.n_outputs => return bad(format!("output {i} out of range")),
                    _ => {}
                }
            }
        }
        for i in 0..self.n_inputs {
            let d = self.degree(Endpoint::Input(i));
            if d != 1 {
                return bad(format!("input {i} has degree {d}"));
            }
        }
        for i in 0..self.n_outputs {
            let d = self.degree(Endpoint::Output(i));
            if d != 1 {
                return bad(format!("output {i} has degree {d}"));
            }
        }
        for (&v, &k) in &self.vertices {
            if k == VertexKind::H && self.degree(v) != 2 {
                return bad(format!("H vertex {v} has degree {}", self.degree(v)));
            }
        }
        Ok(())
    }

    /// Renumbers vertices to `0..n` in id order.
    pub fn compacted(&self) -> Diagram {
        let map: BTreeMap<VertexId, VertexId> =
            self.vertices.keys().enumerate().map(|(i, &v)| (v, VertexId(i as u32))).collect();
        self.relabelled(|v| map[&v])
    }

    fn relabelled(&self, f: impl Fn(VertexId) -> VertexId) -> Diagram {
        let re = |e: Endpoint| match e {
            Endpoint::Vertex(v) => Endpoint::Vertex(f(v)),
            e => e,
        };
        let mut wires: Vec<Wire> = self.wires.iter().map(|w| Wire::new(re(w.0), re(w.1))).collect();
        wires.sort();
        Diagram {
            vertices: self.vertices.iter().map(|(&v, &k)| (f(v), k)).collect(),
            n_inputs: self.n_inputs,
            n_outputs: self.n_outputs,
            wires,
            loops: self.loops,
        }
    }

    /// Same diagram with every spider's colour swapped.
    pub fn colour_swapped(&self) -> Diagram {
        let mut d = self.clone();
        for k in d.vertices.values_mut() {
            *k = k.colour_swapped();
        }
        d
    }

    /// Upside-down version: inputs become outputs and vice versa.
    pub fn flipped(&self) -> Diagram {
        let re = |e: Endpoint| match e {
            Endpoint::Input(i) => Endpoint::Output(i),
            Endpoint::Output(i) => Endpoint::Input(i),
            e => e,
        };
        let mut wires: Vec<Wire> = self.wires.iter().map(|w| Wire::new(re(w.0), re(w.1))).collect();
        wires.sort();
        Diagram {
            vertices: self.vertices.clone(),
            n_inputs: self.n_outputs,
            n_outputs: self.n_inputs,
            wires,
            loops: self.loops,
        }
    }

    /// Same diagram with every phase transformed.
    pub fn map_phases(&self, f: impl Fn(Phase) -> Phase) -> Diagram {
        let mut d = self.clone();
        for k in d.vertices.values_mut() {
            if let Some(p) = k.phase() {
                *k = k.with_phase(f(p));
            }
        }
        d
    }

    /// Side-by-side composition: `self` on the left.
    pub fn tensor(&self, other: &Diagram) -> Diagram {
        tensor(self, other)
    }

    /// Sequential composition `other ∘ self`: outputs of `self` feed inputs of `other`.
    pub fn then(&self, other: &Diagram) -> Result<Diagram> {
        compose(self, other)
    }
}

/// Builds the single-generator diagram `g : n → m`.
pub fn make_generator(g: Generator, n: usize, m: usize) -> Result<Diagram> {
    let fixed = |want: (usize, usize)| {
        if (n, m) != want {
            Err(ZxError::Arity(format!("{g:?} is {}→{}, not {n}→{m}", want.0, want.1)))
        } else {
            Ok(())
        }
    };
    let mut d = Diagram::with_boundary(n, m);
    match g {
        Generator::Z(_) | Generator::X(_) | Generator::H => {
            if g == Generator::H {
                fixed((1, 1))?;
            }
            let kind = match g {
                Generator::Z(p) => VertexKind::Z(p),
                Generator::X(p) => VertexKind::X(p),
                _ => VertexKind::H,
            };
            let v = d.add_vertex(kind);
            for i in 0..n {
                d.add_wire(Endpoint::Input(i), v);
            }
            for j in 0..m {
                d.add_wire(v, Endpoint::Output(j));
            }
        }
        Generator::Identity => {
            fixed((1, 1))?;
            d.add_wire(Endpoint::Input(0), Endpoint::Output(0));
        }
        Generator::Swap => {
            fixed((2, 2))?;
            d.add_wire(Endpoint::Input(0), Endpoint::Output(1));
            d.add_wire(Endpoint::Input(1), Endpoint::Output(0));
        }
        Generator::Cup => {
            fixed((2, 0))?;
            d.add_wire(Endpoint::Input(0), Endpoint::Input(1));
        }
        Generator::Cap => {
            fixed((0, 2))?;
            d.add_wire(Endpoint::Output(0), Endpoint::Output(1));
        }
        Generator::Empty => fixed((0, 0))?,
    }
    Ok(d)
}

/// `d1 ⊗ d2`: boundary of `d1` followed by boundary of `d2`.
pub fn tensor(d1: &Diagram, d2: &Diagram) -> Diagram {
    let shift = d1.fresh_id().0;
    let (ni, no) = (d1.n_inputs, d1.n_outputs);
    let mut out = d1.clone();
    out.n_inputs += d2.n_inputs;
    out.n_outputs += d2.n_outputs;
    out.loops += d2.loops;
    for (&v, &k) in &d2.vertices {
        out.vertices.insert(VertexId(v.0 + shift), k);
    }
    let re = |e: Endpoint| match e {
        Endpoint::Vertex(v) => Endpoint::Vertex(VertexId(v.0 + shift)),
        Endpoint::Input(i) => Endpoint::Input(i + ni),
        Endpoint::Output(i) => Endpoint::Output(i + no),
    };
    out.wires.extend(d2.wires.iter().map(|w| Wire::new(re(w.0), re(w.1))));
    out.wires.sort();
    out
}

/// Tensor product of a sequence of diagrams, left to right.
pub fn tensor_all<'a>(ds: impl IntoIterator<Item = &'a Diagram>) -> Diagram {
    ds.into_iter().fold(Diagram::empty(), |acc, d| tensor(&acc, d))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Node {
    Plain(Endpoint),
    Junction(usize),
}

/// `d2 ∘ d1`: outputs of `d1` are glued to inputs of `d2` and wire chains through the
/// glued ports are contracted.
pub fn compose(d1: &Diagram, d2: &Diagram) -> Result<Diagram> {
    if d1.n_outputs != d2.n_inputs {
        return Err(ZxError::Arity(format!(
            "cannot compose: {} outputs into {} inputs",
            d1.n_outputs, d2.n_inputs
        )));
    }
    let shift = d1.fresh_id().0;
    let mut out = Diagram::with_boundary(d1.n_inputs, d2.n_outputs);
    out.loops = d1.loops + d2.loops;
    out.vertices = d1.vertices.clone();
    for (&v, &k) in &d2.vertices {
        out.vertices.insert(VertexId(v.0 + shift), k);
    }
    let mut edges: Vec<(Node, Node)> = Vec::with_capacity(d1.wires.len() + d2.wires.len());
    let left = |e: Endpoint| match e {
        Endpoint::Output(i) => Node::Junction(i),
        e => Node::Plain(e),
    };
    let right = |e: Endpoint| match e {
        Endpoint::Input(i) => Node::Junction(i),
        Endpoint::Vertex(v) => Node::Plain(Endpoint::Vertex(VertexId(v.0 + shift))),
        e => Node::Plain(e),
    };
    edges.extend(d1.wires.iter().map(|w| (left(w.0), left(w.1))));
    edges.extend(d2.wires.iter().map(|w| (right(w.0), right(w.1))));

    let mut at_junction: Vec<Vec<usize>> = vec![Vec::new(); d1.n_outputs];
    for (i, &(a, b)) in edges.iter().enumerate() {
        for n in [a, b] {
            if let Node::Junction(j) = n {
                at_junction[j].push(i);
            }
        }
    }
    if let Some(j) = at_junction.iter().position(|l| l.len() != 2) {
        return Err(ZxError::InvalidDiagram(format!("port {j} does not have degree 1 on both sides")));
    }
    let mut seen = vec![false; edges.len()];
    let walk = |start: usize, from: Node, seen: &mut Vec<bool>| -> Node {
        let (mut cur, mut at) = (start, from);
        loop {
            seen[cur] = true;
            let (a, b) = edges[cur];
            let next = if a == at { b } else { a };
            match next {
                Node::Plain(_) => return next,
                Node::Junction(j) => {
                    let l = &at_junction[j];
                    let nxt = if l[0] == cur { l[1] } else { l[0] };
                    if seen[nxt] {
                        return next;
                    }
                    cur = nxt;
                    at = next;
                }
            }
        }
    };
    for i in 0..edges.len() {
        if seen[i] {
            continue;
        }
        let (a, b) = edges[i];
        let start = match (a, b) {
            (Node::Plain(_), _) => a,
            (_, Node::Plain(_)) => b,
            _ => continue,
        };
        if let (Node::Plain(pa), Node::Plain(end)) = (start, walk(i, start, &mut seen)) {
            out.wires.push(Wire::new(pa, end));
        }
    }
    // what remains are closed chains of junctions
    for i in 0..edges.len() {
        if !seen[i] {
            let (a, _) = edges[i];
            walk(i, a, &mut seen);
            out.loops += 1;
        }
    }
    out.wires.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: Phase, n: usize, m: usize) -> Diagram {
        make_generator(Generator::Z(p), n, m).unwrap()
    }

    #[test]
    fn empty_generator() {
        let e = make_generator(Generator::Empty, 0, 0).unwrap();
        assert_eq!(e.num_vertices(), 0);
        assert!(e.wires().is_empty());
    }

    #[test]
    fn z_state() {
        let d = z(Phase::PI, 0, 1);
        assert_eq!(d.num_vertices(), 1);
        assert_eq!(d.wires(), &[Wire::new(Endpoint::Vertex(VertexId(0)), Endpoint::Output(0))]);
        d.validate().unwrap();
    }

    #[test]
    fn cap_is_vertex_free() {
        let d = make_generator(Generator::Cap, 0, 2).unwrap();
        assert_eq!(d.num_vertices(), 0);
        assert_eq!(d.wires(), &[Wire::new(Endpoint::Output(0), Endpoint::Output(1))]);
    }

    #[test]
    fn arity_errors() {
        assert!(matches!(make_generator(Generator::H, 2, 1), Err(ZxError::Arity(_))));
        assert!(matches!(make_generator(Generator::Cup, 0, 2), Err(ZxError::Arity(_))));
        assert!(matches!(make_generator(Generator::Empty, 1, 0), Err(ZxError::Arity(_))));
        assert!(make_generator(Generator::Z(Phase::ZERO), 3, 0).is_ok());
    }

    #[test]
    fn tensor_of_identities() {
        let id = make_generator(Generator::Identity, 1, 1).unwrap();
        let d = tensor(&id, &id);
        assert_eq!((d.n_inputs(), d.n_outputs()), (2, 2));
        assert_eq!(d.num_vertices(), 0);
        assert_eq!(d.multiplicity(Endpoint::Input(0), Endpoint::Output(0)), 1);
        assert_eq!(d.multiplicity(Endpoint::Input(1), Endpoint::Output(1)), 1);
    }

    #[test]
    fn compose_identity_is_neutral() {
        let id = make_generator(Generator::Identity, 1, 1).unwrap();
        let d = z(Phase::QUARTER_PI, 1, 2);
        assert_eq!(compose(&id, &d).unwrap().compacted(), d);
        let d2 = z(Phase::QUARTER_PI, 2, 1);
        let idid = tensor(&id, &id);
        assert_eq!(compose(&idid, &d2).unwrap().compacted(), d2);
    }

    #[test]
    fn yanking_gives_a_wire() {
        let id = make_generator(Generator::Identity, 1, 1).unwrap();
        let cap = make_generator(Generator::Cap, 0, 2).unwrap();
        let cup = make_generator(Generator::Cup, 2, 0).unwrap();
        // (ε ⊗ 𝕀) ∘ (𝕀 ⊗ η) : 1 → 1
        let d = compose(&tensor(&id, &cap), &tensor(&cup, &id)).unwrap();
        assert_eq!(d, id);
    }

    #[test]
    fn circle_is_a_loop() {
        let cap = make_generator(Generator::Cap, 0, 2).unwrap();
        let cup = make_generator(Generator::Cup, 2, 0).unwrap();
        let d = compose(&cap, &cup).unwrap();
        assert_eq!(d.loops(), 1);
        assert!(d.wires().is_empty());
    }

    #[test]
    fn compose_chain_of_spiders() {
        let d = compose(&z(Phase::QUARTER_PI, 1, 1), &z(Phase::HALF_PI, 1, 1)).unwrap();
        assert_eq!(d.num_vertices(), 2);
        let ids = d.vertex_ids();
        assert_eq!(d.multiplicity(ids[0], ids[1]), 1);
        d.validate().unwrap();
    }

    #[test]
    fn compose_arity_mismatch() {
        assert!(compose(&z(Phase::ZERO, 0, 2), &z(Phase::ZERO, 1, 0)).is_err());
    }

    #[test]
    fn swap_compose_swap_is_identity() {
        let s = make_generator(Generator::Swap, 2, 2).unwrap();
        let id = make_generator(Generator::Identity, 1, 1).unwrap();
        assert_eq!(compose(&s, &s).unwrap(), tensor(&id, &id));
    }

    #[test]
    fn validation_catches_bad_ports_and_h() {
        let mut d = Diagram::with_boundary(1, 0);
        let h = d.add_vertex(VertexKind::H);
        d.add_wire(Endpoint::Input(0), h);
        assert!(d.validate().is_err());
        d.add_wire(h, h);
        assert!(d.validate().is_err());
        let mut d = Diagram::with_boundary(0, 1);
        let v = d.add_vertex(VertexKind::Z(Phase::ZERO));
        d.add_wire(v, Endpoint::Output(0));
        d.add_wire(v, Endpoint::Output(0));
        assert!(d.validate().is_err());
    }

    #[test]
    fn self_loops_and_parallel_wires_are_values() {
        let mut d = Diagram::empty();
        let a = d.add_vertex(VertexKind::Z(Phase::ZERO));
        let b = d.add_vertex(VertexKind::X(Phase::ZERO));
        d.add_wire(a, a);
        d.add_wires(a, b, 2);
        d.validate().unwrap();
        assert_eq!(d.degree(a), 4);
        assert_eq!(d.self_loops(a), 1);
        assert_eq!(d.multiplicity(a, b), 2);
        assert_eq!(d.neighbourhood(a).get(&Endpoint::Vertex(b)), Some(&2));
    }
}
