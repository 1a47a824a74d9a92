//! Antiphase twins: two spiders of one colour, phases `π` apart, with identical
//! neighbourhoods. Merging them goes through fusion, the generalised bialgebra and
//! supplementarity, or an Euler decomposition of a Hadamard between them.

use std::collections::BTreeMap;

use crate::diagram::{Colour, Diagram, Endpoint, VertexId, VertexKind};
use crate::error::{Result, ZxError};
use crate::phase::Phase;
use crate::rules::{apply, find_matches, Anchor, Derivation, Direction, Rule, RuleInstance, RuleName, Step};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPair {
    /// `u < v`
    pub u: VertexId,
    pub v: VertexId,
    pub colour: Colour,
    pub phases: (Phase, Phase),
    /// Shared neighbourhood, the pair itself and self-loops excluded.
    pub neighbourhood: BTreeMap<Endpoint, usize>,
}

/// How a pair gets merged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MergeCase {
    /// Adjacent, or sharing a neighbour of their own colour: fusion only.
    Fusion,
    /// Every neighbour has the other colour.
    Bialgebra,
    /// A Hadamard sits between them.
    Hadamard,
}

fn outside(d: &Diagram, a: VertexId, b: VertexId) -> BTreeMap<Endpoint, usize> {
    let mut n = d.neighbourhood(a);
    n.remove(&Endpoint::Vertex(b));
    n
}

fn spider(d: &Diagram, v: VertexId) -> Option<(Colour, Phase)> {
    let k = d.kind(v)?;
    Some((k.colour()?, k.phase()?))
}

/// Checks the three conditions for `(u, v)`.
pub fn twin_pair(d: &Diagram, u: VertexId, v: VertexId) -> Option<TwinPair> {
    let (u, v) = (u.min(v), u.max(v));
    if u == v {
        return None;
    }
    let ((cu, pu), (cv, pv)) = (spider(d, u)?, spider(d, v)?);
    if cu != cv || pu - pv != Phase::PI {
        return None;
    }
    let n = outside(d, u, v);
    if n != outside(d, v, u) {
        return None;
    }
    Some(TwinPair { u, v, colour: cu, phases: (pu, pv), neighbourhood: n })
}

/// All antiphase twin pairs, ordered by `(u, v)`.
pub fn find_antiphase_twins(d: &Diagram) -> Vec<TwinPair> {
    let ids = d.vertex_ids();
    let mut out = Vec::new();
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            if let Some(t) = twin_pair(d, u, v) {
                out.push(t);
            }
        }
    }
    out
}

/// The case the pair falls into.
pub fn merge_case(d: &Diagram, t: &TwinPair) -> MergeCase {
    let adjacent = d.multiplicity(t.u, t.v) > 0;
    let own_colour = t.neighbourhood.keys().any(|e| {
        e.vertex().and_then(|w| d.kind(w)).and_then(|k| k.colour()) == Some(t.colour)
    });
    if adjacent || own_colour {
        MergeCase::Fusion
    } else if t.neighbourhood.keys().any(|e| e.vertex().and_then(|w| d.kind(w)) == Some(VertexKind::H)) {
        MergeCase::Hadamard
    } else {
        MergeCase::Bialgebra
    }
}

struct Run {
    d: Diagram,
    steps: Vec<Step>,
}

impl Run {
    /// Applies the match of `inst` whose vertex anchors are exactly `want` (in any order).
    fn step(&mut self, inst: RuleInstance, want: &[VertexId]) -> Result<()> {
        let mut want: Vec<Anchor> = want.iter().map(|&v| Anchor::Vertex(v)).collect();
        want.sort();
        let m = find_matches(&self.d, &inst)
            .into_iter()
            .find(|m| {
                let mut got: Vec<Anchor> = m.anchors.iter().filter(|a| matches!(a, Anchor::Vertex(_))).cloned().collect();
                got.sort();
                got == want
            })
            .ok_or_else(|| ZxError::NotTwins(format!("{} does not apply at {want:?}", inst.rule)))?;
        self.d = apply(&self.d, &m)?;
        self.steps.push(Step::from_match(&m));
        Ok(())
    }

    /// Fuses `a` and `b`; the survivor keeps the smaller id.
    fn fuse(&mut self, rule: Rule, a: VertexId, b: VertexId) -> Result<VertexId> {
        self.step(RuleInstance::new(rule, Direction::LR), &[a, b])?;
        Ok(a.min(b))
    }

    fn drop_self_loops(&mut self, rule: Rule, v: VertexId) -> Result<()> {
        if self.d.self_loops(v) > 0 {
            self.step(RuleInstance::new(rule, Direction::LR), &[v])?;
        }
        Ok(())
    }
}

fn coloured(name: RuleName, c: Colour) -> Rule {
    Rule { name, colour_swapped: c == Colour::X, flipped: false }
}

fn merge_into(run: &mut Run, t: &TwinPair, allow_sup: bool) -> Result<()> {
    let s1 = coloured(RuleName::S1, t.colour);
    match merge_case(&run.d, t) {
        MergeCase::Fusion => {
            if run.d.multiplicity(t.u, t.v) > 0 {
                run.fuse(s1, t.u, t.v)?;
            } else {
                let g = t
                    .neighbourhood
                    .keys()
                    .filter_map(|e| e.vertex())
                    .find(|&w| spider(&run.d, w).map(|s| s.0) == Some(t.colour))
                    .expect("fusion case has a same-colour neighbour");
                let g = run.fuse(s1, t.u, g)?;
                run.fuse(s1, g, t.v)?;
            }
        }
        MergeCase::Bialgebra => {
            if !allow_sup {
                return Err(ZxError::FragmentViolation);
            }
            run.drop_self_loops(s1, t.u)?;
            run.drop_self_loops(s1, t.v)?;
            let sup = RuleInstance::new(coloured(RuleName::SUP, t.colour), Direction::LR);
            if run.step(sup.clone(), &[t.u, t.v]).is_ok() {
                return Ok(());
            }
            let before: Vec<VertexId> = run.d.vertex_ids();
            run.step(RuleInstance::new(coloured(RuleName::GBIALG, t.colour), Direction::LR), &[t.u, t.v])?;
            let fresh: Vec<VertexId> = run.d.vertex_ids().into_iter().filter(|v| !before.contains(v)).collect();
            let hub = *fresh
                .iter()
                .find(|&&w| spider(&run.d, w).map(|s| s.0) == Some(t.colour.other()))
                .expect("bialgebra adds a hub");
            let z = run.d.neighbours(hub).into_iter().find(|w| *w != t.u && *w != t.v).expect("hub has a partner");
            run.step(sup, &[t.u, t.v])?;
            run.step(RuleInstance::new(coloured(RuleName::GBIALG, t.colour), Direction::RL), &[hub, z])?;
        }
        MergeCase::Hadamard => {
            if !allow_sup {
                return Err(ZxError::FragmentViolation);
            }
            // The only Hadamard both can see is the one joining them.
            let h = t
                .neighbourhood
                .keys()
                .filter_map(|e| e.vertex())
                .find(|&w| run.d.kind(w) == Some(VertexKind::H))
                .expect("hadamard case has an H neighbour");
            let eu = coloured(RuleName::EU, t.colour);
            run.step(RuleInstance::new(eu, Direction::LR), &[h])?;
            let mut ends = Vec::new();
            for (x, y) in [(t.u, t.v), (t.v, t.u)] {
                let w = run
                    .d
                    .neighbours(x)
                    .into_iter()
                    .find(|&w| {
                        run.d.multiplicity(w, y) == 0 && spider(&run.d, w).map(|s| s.0) == Some(t.colour)
                    })
                    .expect("decomposition puts a same-colour spider next to each twin");
                ends.push(run.fuse(s1, x, w)?);
            }
            let next = twin_pair(&run.d, ends[0], ends[1]).expect("fused ends are antiphase twins");
            merge_into(run, &next, allow_sup)?;
        }
    }
    Ok(())
}

/// Merges one pair. The certificate replays from `d` to the result.
pub fn merge_twins(d: &Diagram, t: &TwinPair, allow_sup: bool) -> Result<(Diagram, Derivation)> {
    let t = twin_pair(d, t.u, t.v).ok_or_else(|| ZxError::NotTwins(format!("{:?}, {:?}", t.u, t.v)))?;
    let mut run = Run { d: d.clone(), steps: Vec::new() };
    merge_into(&mut run, &t, allow_sup)?;
    Ok((run.d, Derivation { start: d.clone(), steps: run.steps }))
}

/// Merges the first remaining pair until none is left.
pub fn merge_all_twins(d: &Diagram, allow_sup: bool) -> Result<(Diagram, Derivation)> {
    let mut cur = d.clone();
    let mut steps = Vec::new();
    while let Some(t) = find_antiphase_twins(&cur).into_iter().next() {
        let (next, cert) = merge_twins(&cur, &t, allow_sup)?;
        steps.extend(cert.steps);
        cur = next;
    }
    Ok((cur, Derivation { start: d.clone(), steps }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::rules::{supplementarity_lhs, supplementarity_rhs, verify_derivation};
    use crate::semantics::semantically_equal;

    fn pair_on(neigh: &[VertexKind], c: Colour, a: Phase) -> Diagram {
        let mut d = Diagram::with_boundary(0, neigh.len());
        let u = d.add_vertex(VertexKind::spider(c, a));
        let v = d.add_vertex(VertexKind::spider(c, a + Phase::PI));
        for (i, &k) in neigh.iter().enumerate() {
            let w = d.add_vertex(k);
            d.add_wire(u, w);
            d.add_wire(v, w);
            d.add_wire(w, Endpoint::Output(i));
        }
        d
    }

    fn check(d: &Diagram, case: MergeCase) -> Derivation {
        let t = &find_antiphase_twins(d)[0];
        assert_eq!(merge_case(d, t), case);
        let (m, cert) = merge_twins(d, t, true).unwrap();
        assert!(semantically_equal(d, &m).unwrap());
        let r = verify_derivation(&cert).unwrap();
        assert_eq!(r.result, m);
        cert
    }

    #[test]
    fn supplementarity_is_one_merge() {
        let a = Phase::QUARTER_PI;
        let d = supplementarity_lhs(a);
        assert_eq!(find_antiphase_twins(&d).len(), 1);
        let (m, cert) = merge_all_twins(&d, true).unwrap();
        assert_eq!(cert.steps.len(), 1);
        assert!(is_isomorphic(&m, &supplementarity_rhs(a)));
    }

    #[test]
    fn equal_phases_are_not_twins() {
        let mut d = pair_on(&[VertexKind::X(Phase::ZERO)], Colour::Z, Phase::ZERO);
        let u = d.vertex_ids()[1];
        d.set_kind(u, VertexKind::Z(Phase::ZERO));
        assert!(find_antiphase_twins(&d).is_empty());
    }

    #[test]
    fn boundary_wires_break_twinship() {
        let mut d = Diagram::with_boundary(0, 2);
        let u = d.add_vertex(VertexKind::Z(Phase::ZERO));
        let v = d.add_vertex(VertexKind::Z(Phase::PI));
        d.add_wire(u, Endpoint::Output(0));
        d.add_wire(v, Endpoint::Output(1));
        assert!(find_antiphase_twins(&d).is_empty());
    }

    #[test]
    fn adjacent_twins_fuse() {
        let mut d = pair_on(&[VertexKind::X(Phase::ZERO)], Colour::Z, Phase::QUARTER_PI);
        let ids = d.vertex_ids();
        d.add_wire(ids[0], ids[1]);
        let cert = check(&d, MergeCase::Fusion);
        assert!(cert.steps.iter().all(|s| s.rule.name == RuleName::S1));
        assert!(matches!(merge_twins(&d, &find_antiphase_twins(&d)[0], false), Ok(_)));
    }

    #[test]
    fn shared_same_colour_neighbour() {
        let d = pair_on(&[VertexKind::Z(Phase::HALF_PI), VertexKind::X(Phase::ZERO)], Colour::Z, Phase::QUARTER_PI);
        check(&d, MergeCase::Fusion);
    }

    #[test]
    fn bialgebra_case() {
        let d = pair_on(&[VertexKind::X(Phase::ZERO), VertexKind::X(Phase::QUARTER_PI)], Colour::Z, Phase::QUARTER_PI);
        let cert = check(&d, MergeCase::Bialgebra);
        let names: Vec<RuleName> = cert.steps.iter().map(|s| s.rule.name).collect();
        assert_eq!(names, [RuleName::GBIALG, RuleName::SUP, RuleName::GBIALG]);
        let t = &find_antiphase_twins(&d)[0];
        assert_eq!(merge_twins(&d, t, false).unwrap_err(), ZxError::FragmentViolation);
    }

    #[test]
    fn red_twins() {
        let d = pair_on(&[VertexKind::Z(Phase::ZERO), VertexKind::Z(Phase::ZERO)], Colour::X, Phase::HALF_PI);
        check(&d, MergeCase::Bialgebra);
    }

    #[test]
    fn hadamard_case() {
        let mut d = pair_on(&[VertexKind::X(Phase::ZERO)], Colour::Z, Phase::QUARTER_PI);
        let ids = d.vertex_ids();
        let h = d.add_vertex(VertexKind::H);
        d.add_wire(ids[0], h);
        d.add_wire(ids[1], h);
        let cert = check(&d, MergeCase::Hadamard);
        assert_eq!(cert.steps[0].rule.name, RuleName::EU);
        assert!(cert.steps.iter().any(|s| s.rule.name == RuleName::SUP));
    }

    #[test]
    fn red_hadamard_case() {
        let mut d = pair_on(&[VertexKind::Z(Phase::ZERO)], Colour::X, Phase::new(3, 4));
        let ids = d.vertex_ids();
        let h = d.add_vertex(VertexKind::H);
        d.add_wire(ids[0], h);
        d.add_wire(ids[1], h);
        check(&d, MergeCase::Hadamard);
    }

    #[test]
    fn two_pairs_merge_in_order() {
        let a = pair_on(&[VertexKind::X(Phase::ZERO)], Colour::Z, Phase::QUARTER_PI);
        let b = pair_on(&[VertexKind::X(Phase::HALF_PI)], Colour::Z, Phase::new(3, 4));
        let d = a.tensor(&b);
        assert_eq!(find_antiphase_twins(&d).len(), 2);
        let (m, cert) = merge_all_twins(&d, true).unwrap();
        assert!(find_antiphase_twins(&m).is_empty());
        assert!(semantically_equal(&d, &m).unwrap());
        assert!(verify_derivation(&cert).unwrap().verdict);
    }
}
