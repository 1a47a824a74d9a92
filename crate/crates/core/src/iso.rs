//! Equality up to deformation: the same open multigraph after renaming vertices, with the
//! boundary held fixed.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{Diagram, Endpoint, VertexId, VertexKind};

/// A vertex bijection witnessing `a ≅ b`, if one exists.
pub fn find_isomorphism(a: &Diagram, b: &Diagram) -> Option<BTreeMap<VertexId, VertexId>> {
    if a.n_inputs() != b.n_inputs()
        || a.n_outputs() != b.n_outputs()
        || a.loops() != b.loops()
        || a.num_vertices() != b.num_vertices()
        || a.wires().len() != b.wires().len()
    {
        return None;
    }
    let sig = |d: &Diagram, v: VertexId| (d.kind(v).unwrap(), d.degree(v), d.self_loops(v));
    let mut ka: Vec<_> = a.vertex_ids().into_iter().map(|v| sig(a, v)).collect();
    let mut kb: Vec<_> = b.vertex_ids().into_iter().map(|v| sig(b, v)).collect();
    ka.sort();
    kb.sort();
    if ka != kb {
        return None;
    }
    let boundary_only = |d: &Diagram| -> Vec<_> {
        d.wires().iter().filter(|w| w.0.is_boundary() && w.1.is_boundary()).copied().collect()
    };
    if boundary_only(a) != boundary_only(b) {
        return None;
    }

    let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut used: BTreeSet<VertexId> = BTreeSet::new();
    let ports = (0..a.n_inputs()).map(Endpoint::Input).chain((0..a.n_outputs()).map(Endpoint::Output));
    for p in ports {
        match (a.port_neighbour(p), b.port_neighbour(p)) {
            (Some(Endpoint::Vertex(u)), Some(Endpoint::Vertex(v))) => match map.get(&u) {
                Some(&w) if w != v => return None,
                Some(_) => {}
                None => {
                    if used.contains(&v) || sig(a, u) != sig(b, v) {
                        return None;
                    }
                    map.insert(u, v);
                    used.insert(v);
                }
            },
            (Some(Endpoint::Vertex(_)), _) | (_, Some(Endpoint::Vertex(_))) => return None,
            _ => {}
        }
    }
    for (&u, &v) in &map {
        if !consistent(a, b, u, v, &map) {
            return None;
        }
    }

    // visit remaining vertices so each one is adjacent to something already placed if possible
    let order = search_order(a, &map);
    let by_sig: BTreeMap<_, Vec<VertexId>> = b.vertex_ids().into_iter().fold(BTreeMap::new(), |mut m, v| {
        m.entry(sig(b, v)).or_insert_with(Vec::new).push(v);
        m
    });
    let ok = extend(a, b, &order, 0, &mut map, &mut used, &by_sig, &sig);
    ok.then_some(map)
}

pub fn is_isomorphic(a: &Diagram, b: &Diagram) -> bool {
    find_isomorphism(a, b).is_some()
}

fn search_order(a: &Diagram, fixed: &BTreeMap<VertexId, VertexId>) -> Vec<VertexId> {
    let mut placed: BTreeSet<VertexId> = fixed.keys().copied().collect();
    let mut order = Vec::new();
    let mut queue: std::collections::VecDeque<VertexId> = fixed.keys().copied().collect();
    let all = a.vertex_ids();
    loop {
        while let Some(u) = queue.pop_front() {
            for n in a.neighbours(u) {
                if placed.insert(n) {
                    order.push(n);
                    queue.push_back(n);
                }
            }
        }
        match all.iter().find(|v| !placed.contains(v)) {
            Some(&v) => {
                placed.insert(v);
                order.push(v);
                queue.push_back(v);
            }
            None => return order,
        }
    }
}

fn consistent(a: &Diagram, b: &Diagram, u: VertexId, v: VertexId, map: &BTreeMap<VertexId, VertexId>) -> bool {
    let na = a.neighbourhood(u);
    let nb = b.neighbourhood(v);
    for (e, &m) in &na {
        match e {
            Endpoint::Vertex(w) => {
                if let Some(&fw) = map.get(w) {
                    if nb.get(&Endpoint::Vertex(fw)) != Some(&m) {
                        return false;
                    }
                }
            }
            p => {
                if nb.get(p) != Some(&m) {
                    return false;
                }
            }
        }
    }
    // placed neighbours of v must come from placed neighbours of u
    let inv: BTreeMap<VertexId, VertexId> = map.iter().map(|(&x, &y)| (y, x)).collect();
    for (e, &m) in &nb {
        match e {
            Endpoint::Vertex(w) => {
                if let Some(&pw) = inv.get(w) {
                    if na.get(&Endpoint::Vertex(pw)) != Some(&m) {
                        return false;
                    }
                }
            }
            p => {
                if na.get(p) != Some(&m) {
                    return false;
                }
            }
        }
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Diagram,
    b: &Diagram,
    order: &[VertexId],
    i: usize,
    map: &mut BTreeMap<VertexId, VertexId>,
    used: &mut BTreeSet<VertexId>,
    by_sig: &BTreeMap<(VertexKind, usize, usize), Vec<VertexId>>,
    sig: &dyn Fn(&Diagram, VertexId) -> (VertexKind, usize, usize),
) -> bool {
    let Some(&u) = order.get(i) else { return true };
    let Some(cands) = by_sig.get(&sig(a, u)) else { return false };
    for &v in cands {
        if used.contains(&v) {
            continue;
        }
        map.insert(u, v);
        if consistent(a, b, u, v, map) {
            used.insert(v);
            if extend(a, b, order, i + 1, map, used, by_sig, sig) {
                return true;
            }
            used.remove(&v);
        }
        map.remove(&u);
    }
    false
}
