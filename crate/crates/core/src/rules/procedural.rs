//! Rules whose sides have unbounded arity, written as direct graph rewrites.
//!
//! `c` is the colour of the spiders the rule is about (green in the base variant).

use std::collections::BTreeMap;

use super::{Direction, Phases, RuleName};
use crate::diagram::{Colour, Diagram, Endpoint, VertexId, VertexKind};
use crate::error::{Result, ZxError};
use crate::phase::Phase;
use crate::scalar_diagrams::{attach, spider_scalar, sqrt2_pow};

fn spider(d: &Diagram, v: VertexId) -> Option<(Colour, Phase)> {
    let k = d.kind(v)?;
    Some((k.colour()?, k.phase()?))
}

fn is_colour(d: &Diagram, v: VertexId, c: Colour) -> bool {
    spider(d, v).is_some_and(|(cc, _)| cc == c)
}

fn phase_ok(want: Option<Phase>, got: Phase) -> bool {
    want.map_or(true, |w| w == got)
}

/// Candidate anchors with the phase bindings they imply.
pub(crate) fn find(
    d: &Diagram,
    name: RuleName,
    c: Colour,
    dir: Direction,
    ph: &Phases,
    arity: Option<usize>,
) -> Vec<(Vec<VertexId>, Phases)> {
    let ids = d.vertex_ids();
    let mut out = Vec::new();
    match (name, dir) {
        (RuleName::S1, Direction::LR) => {
            for &u in &ids {
                let Some((cu, pu)) = spider(d, u) else { continue };
                if cu != c {
                    continue;
                }
                if d.self_loops(u) > 0 && phase_ok(ph.alpha, pu) && ph.beta.is_none() {
                    out.push((vec![u], Phases { alpha: Some(pu), beta: None }));
                }
                for v in d.neighbours(u) {
                    if v <= u {
                        continue;
                    }
                    if let Some((cv, pv)) = spider(d, v) {
                        if cv == c && phase_ok(ph.alpha, pu) && phase_ok(ph.beta, pv) {
                            out.push((vec![u, v], Phases { alpha: Some(pu), beta: Some(pv) }));
                        }
                    }
                }
            }
        }
        (RuleName::S1, Direction::RL) => {
            let a = ph.alpha.unwrap_or(Phase::ZERO);
            for &u in &ids {
                if is_colour(d, u, c) {
                    out.push((vec![u], Phases { alpha: Some(a), beta: None }));
                }
            }
        }
        (RuleName::HOPF, _) => {
            for (i, &u) in ids.iter().enumerate() {
                for &v in &ids[i + 1..] {
                    let (Some((cu, pu)), Some((cv, pv))) = (spider(d, u), spider(d, v)) else { continue };
                    if cu == cv || !phase_ok(ph.alpha, pu) || !phase_ok(ph.beta, pv) {
                        continue;
                    }
                    if dir == Direction::RL || d.multiplicity(u, v) >= 2 {
                        out.push((vec![u, v], Phases { alpha: Some(pu), beta: Some(pv) }));
                    }
                }
            }
        }
        (RuleName::GBIALG, Direction::LR) => {
            let mut groups: BTreeMap<BTreeMap<Endpoint, usize>, Vec<VertexId>> = BTreeMap::new();
            for &u in &ids {
                if bialg_left(d, u, c).is_some() {
                    groups.entry(d.neighbourhood(u)).or_default().push(u);
                }
            }
            for members in groups.values() {
                let sizes: Vec<usize> = match arity {
                    Some(m) => vec![m],
                    None => (2..=members.len().min(4)).collect(),
                };
                for m in sizes {
                    if m >= 2 && m <= members.len() {
                        for sub in subsets(members, m) {
                            out.push((sub, Phases::default()));
                        }
                    }
                }
            }
        }
        (RuleName::GBIALG, Direction::RL) => {
            for &h in &ids {
                for z in d.neighbours(h) {
                    if let Some((leaves, _)) = bialg_hub(d, h, z, c) {
                        if arity.map_or(true, |m| m == leaves.len()) {
                            out.push((vec![h, z], Phases::default()));
                        }
                    }
                }
            }
        }
        (RuleName::SUP, Direction::LR) => {
            for &w in &ids {
                if !is_colour(d, w, c.other()) {
                    continue;
                }
                let leaves: Vec<VertexId> =
                    d.neighbours(w).into_iter().filter(|&u| is_colour(d, u, c) && d.degree(u) == 1).collect();
                for (i, &a) in leaves.iter().enumerate() {
                    for &b in &leaves[i + 1..] {
                        let (pa, pb) = (spider(d, a).unwrap().1, spider(d, b).unwrap().1);
                        if pb != pa + Phase::PI {
                            continue;
                        }
                        let alpha = match ph.alpha {
                            None => pa,
                            Some(x) if x == pa || x == pb => x,
                            Some(_) => continue,
                        };
                        out.push((vec![a, b], Phases { alpha: Some(alpha), beta: None }));
                    }
                }
            }
        }
        (RuleName::SUP, Direction::RL) => {
            for &w in &ids {
                if !is_colour(d, w, c.other()) {
                    continue;
                }
                for &s in &ids {
                    let Some((cs, g)) = spider(d, s) else { continue };
                    if cs != c || d.degree(s) != 0 {
                        continue;
                    }
                    let alpha = match ph.alpha {
                        None => (g - Phase::PI).half(),
                        Some(x) if x * 2 + Phase::PI == g => x,
                        Some(_) => continue,
                    };
                    out.push((vec![w.min(s), w.max(s)], Phases { alpha: Some(alpha), beta: None }));
                }
            }
        }
        _ => {}
    }
    out
}

fn subsets(xs: &[VertexId], k: usize) -> Vec<Vec<VertexId>> {
    if k == 0 {
        return vec![vec![]];
    }
    if xs.len() < k {
        return vec![];
    }
    let mut with: Vec<Vec<VertexId>> = subsets(&xs[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, xs[0]);
            s
        })
        .collect();
    with.extend(subsets(&xs[1..], k));
    with
}

/// A left spider of a bialgebra configuration: colour `c`, no loops, no boundary, and
/// every neighbour a spider of the other colour. Returns its neighbour multiplicities.
fn bialg_left(d: &Diagram, u: VertexId, c: Colour) -> Option<BTreeMap<VertexId, usize>> {
    if !is_colour(d, u, c) || d.self_loops(u) > 0 {
        return None;
    }
    let mut out = BTreeMap::new();
    for (e, m) in d.neighbourhood(u) {
        let v = e.vertex()?;
        if !is_colour(d, v, c.other()) {
            return None;
        }
        out.insert(v, m);
    }
    Some(out)
}

/// The collapsed form: leaves of colour `c` on a phase-0 hub `h` of the other colour, which
/// has one wire to a phase-0 hub `z` of colour `c`, whose other neighbours all have the
/// other colour. Returns the leaves and `z`'s outer multiplicities.
fn bialg_hub(
    d: &Diagram,
    h: VertexId,
    z: VertexId,
    c: Colour,
) -> Option<(Vec<VertexId>, BTreeMap<VertexId, usize>)> {
    if spider(d, h)? != (c.other(), Phase::ZERO) || spider(d, z)? != (c, Phase::ZERO) {
        return None;
    }
    if d.self_loops(h) > 0 || d.self_loops(z) > 0 || d.multiplicity(h, z) != 1 {
        return None;
    }
    let mut leaves = Vec::new();
    for (e, m) in d.neighbourhood(h) {
        let v = e.vertex()?;
        if v == z {
            continue;
        }
        if m != 1 || d.degree(v) != 1 || !is_colour(d, v, c) {
            return None;
        }
        leaves.push(v);
    }
    let mut outer = BTreeMap::new();
    for (e, m) in d.neighbourhood(z) {
        let v = e.vertex()?;
        if v == h {
            continue;
        }
        if !is_colour(d, v, c.other()) {
            return None;
        }
        outer.insert(v, m);
    }
    Some((leaves, outer))
}

/// `√2` exponent the collapsed form needs, relative to the spread form, for `m` left
/// spiders each with `k` wires.
fn bialg_exponent(k: usize, m: usize) -> i32 {
    (k as i32 - 1) * (1 - m as i32)
}

pub(crate) fn apply(
    d: &Diagram,
    name: RuleName,
    c: Colour,
    dir: Direction,
    anchors: &[VertexId],
    ph: &Phases,
) -> Result<Diagram> {
    let stale = || ZxError::StaleMatch;
    let mut out = d.clone();
    match (name, dir, anchors) {
        (RuleName::S1, Direction::LR, &[u]) => {
            if !is_colour(d, u, c) || d.self_loops(u) == 0 {
                return Err(stale());
            }
            while out.remove_wire(u.into(), u.into()) {}
        }
        (RuleName::S1, Direction::LR, &[u, v]) => {
            let (Some((cu, pu)), Some((cv, pv))) = (spider(d, u), spider(d, v)) else { return Err(stale()) };
            if cu != c || cv != c || u == v || d.multiplicity(u, v) == 0 {
                return Err(stale());
            }
            out.remove_vertex(v);
            out.set_kind(u, VertexKind::spider(c, pu + pv));
            let ve = Endpoint::Vertex(v);
            for w in d.wires() {
                if !w.touches(ve) || w.touches(Endpoint::Vertex(u)) && !w.is_self_loop() {
                    continue;
                }
                let f = |e: Endpoint| if e == ve { Endpoint::Vertex(u) } else { e };
                out.add_wire(f(w.0), f(w.1));
            }
        }
        (RuleName::S1, Direction::RL, &[u]) => {
            let Some((cu, pu)) = spider(d, u) else { return Err(stale()) };
            if cu != c {
                return Err(stale());
            }
            let a = ph.alpha.unwrap_or(Phase::ZERO);
            out.set_kind(u, VertexKind::spider(c, pu - a));
            let leaf = out.add_vertex(VertexKind::spider(c, a));
            out.add_wire(u, leaf);
        }
        (RuleName::HOPF, _, &[u, v]) => {
            let (Some((cu, _)), Some((cv, _))) = (spider(d, u), spider(d, v)) else { return Err(stale()) };
            if cu == cv {
                return Err(stale());
            }
            if dir == Direction::LR {
                if d.multiplicity(u, v) < 2 {
                    return Err(stale());
                }
                out.remove_wire(u.into(), v.into());
                out.remove_wire(u.into(), v.into());
                attach(&mut out, &sqrt2_pow(-2));
            } else {
                out.add_wires(u, v, 2);
                attach(&mut out, &spider_scalar(Colour::Z, Phase::ZERO));
            }
        }
        (RuleName::GBIALG, Direction::LR, left) if !left.is_empty() => {
            let nb = bialg_left(d, left[0], c).ok_or_else(stale)?;
            for &u in left {
                if bialg_left(d, u, c).as_ref() != Some(&nb) {
                    return Err(stale());
                }
            }
            let k: usize = nb.values().sum();
            for &u in left {
                let kind = out.kind(u).unwrap();
                out.remove_vertex(u);
                out.add_vertex_with_id(u, kind)?;
            }
            let h = out.add_vertex(VertexKind::spider(c.other(), Phase::ZERO));
            let z = out.add_vertex(VertexKind::spider(c, Phase::ZERO));
            for &u in left {
                out.add_wire(u, h);
            }
            out.add_wire(h, z);
            for (&r, &m) in &nb {
                out.add_wires(z, r, m);
            }
            attach(&mut out, &sqrt2_pow(bialg_exponent(k, left.len())));
        }
        (RuleName::GBIALG, Direction::RL, &[a, b]) => {
            let (h, z) = if is_colour(d, a, c.other()) { (a, b) } else { (b, a) };
            let (leaves, outer) = bialg_hub(d, h, z, c).ok_or_else(stale)?;
            let k: usize = outer.values().sum();
            out.remove_vertex(h);
            out.remove_vertex(z);
            for &u in &leaves {
                for (&r, &m) in &outer {
                    out.add_wires(u, r, m);
                }
            }
            attach(&mut out, &sqrt2_pow(-bialg_exponent(k, leaves.len())));
        }
        (RuleName::SUP, Direction::LR, &[a, b]) => {
            let (Some((ca, pa)), Some((cb, pb))) = (spider(d, a), spider(d, b)) else { return Err(stale()) };
            let (na, nb) = (d.neighbours(a), d.neighbours(b));
            let ok = ca == c
                && cb == c
                && d.degree(a) == 1
                && d.degree(b) == 1
                && na.len() == 1
                && na == nb
                && is_colour(d, na[0], c.other())
                && (pb == pa + Phase::PI);
            if !ok {
                return Err(stale());
            }
            out.remove_vertex(a);
            out.remove_vertex(b);
            attach(&mut out, &spider_scalar(c, pa * 2 + Phase::PI));
            attach(&mut out, &sqrt2_pow(-2));
        }
        (RuleName::SUP, Direction::RL, &[p, q]) => {
            let (w, s) = if is_colour(d, p, c.other()) { (p, q) } else { (q, p) };
            let (Some((cw, _)), Some((cs, g))) = (spider(d, w), spider(d, s)) else { return Err(stale()) };
            if cw != c.other() || cs != c || d.degree(s) != 0 {
                return Err(stale());
            }
            let alpha = match ph.alpha {
                Some(x) if x * 2 + Phase::PI == g => x,
                _ => (g - Phase::PI).half(),
            };
            out.remove_vertex(s);
            let a = out.add_vertex(VertexKind::spider(c, alpha));
            let b = out.add_vertex(VertexKind::spider(c, alpha + Phase::PI));
            out.add_wire(a, w);
            out.add_wire(b, w);
            attach(&mut out, &sqrt2_pow(2));
        }
        _ => return Err(stale()),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::semantically_equal;

    #[test]
    fn subsets_enumerate() {
        let xs: Vec<VertexId> = (0..4).map(VertexId).collect();
        assert_eq!(subsets(&xs, 2).len(), 6);
        assert_eq!(subsets(&xs, 0).len(), 1);
        assert_eq!(subsets(&xs, 5).len(), 0);
    }

    #[test]
    fn bialgebra_exponent_is_trivial_for_one_spider() {
        assert_eq!(bialg_exponent(5, 1), 0);
        assert_eq!(bialg_exponent(1, 4), 0);
        assert_eq!(bialg_exponent(3, 2), -2);
    }

    #[test]
    fn gbialg_round_trip_is_sound() {
        // two green spiders, each wired once to r1 and twice to r2
        let mut d = Diagram::with_boundary(0, 2);
        let l1 = d.add_vertex(VertexKind::Z(Phase::QUARTER_PI));
        let l2 = d.add_vertex(VertexKind::Z(Phase::new(3, 4)));
        let r1 = d.add_vertex(VertexKind::X(Phase::HALF_PI));
        let r2 = d.add_vertex(VertexKind::X(Phase::ZERO));
        for l in [l1, l2] {
            d.add_wire(l, r1);
            d.add_wires(l, r2, 2);
        }
        d.add_wire(r1, Endpoint::Output(0));
        d.add_wire(r2, Endpoint::Output(1));
        let ms = find(&d, RuleName::GBIALG, Colour::Z, Direction::LR, &Phases::default(), None);
        assert_eq!(ms.len(), 1);
        let e = apply(&d, RuleName::GBIALG, Colour::Z, Direction::LR, &ms[0].0, &Phases::default()).unwrap();
        assert!(semantically_equal(&d, &e).unwrap());
        let back = find(&e, RuleName::GBIALG, Colour::Z, Direction::RL, &Phases::default(), None);
        assert_eq!(back.len(), 1);
        let f = apply(&e, RuleName::GBIALG, Colour::Z, Direction::RL, &back[0].0, &Phases::default()).unwrap();
        assert!(semantically_equal(&d, &f).unwrap());
    }
}
