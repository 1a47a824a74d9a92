//! Concrete instances of every rule over a phase grid, for the soundness gate.

use super::{apply, find_matches, schemas, Direction, Phases, Rule, RuleInstance, RuleName};
use crate::diagram::{Diagram, Endpoint, VertexKind};
use crate::phase::Phase;
use crate::semantics::semantically_equal;

/// One generated `(lhs, rhs)` instance of a rule.
#[derive(Clone, Debug)]
pub struct SoundnessCase {
    pub label: String,
    pub lhs: Diagram,
    pub rhs: Diagram,
}

/// Instances of `rule` for every phase of `grid` (and small arities). Fixed-shape rules
/// instantiate their templates; procedural rules are applied to sample diagrams in both
/// directions.
pub fn soundness_cases(rule: &Rule, grid: &[Phase]) -> Vec<SoundnessCase> {
    if rule.name.is_procedural() {
        return procedural_cases(rule, grid);
    }
    let arities: Vec<usize> =
        if schemas::has_arity(rule.name) { (0..=schemas::SWEEP_ARITY).collect() } else { vec![0] };
    let mut out = Vec::new();
    for n in arities {
        let (l, r) = rule.sides(n).expect("fixed-shape rule");
        let phases: Vec<Phase> = if l.uses_alpha() || r.uses_alpha() { grid.to_vec() } else { vec![Phase::ZERO] };
        for a in phases {
            out.push(SoundnessCase {
                label: format!("{rule} n={n} α={a}"),
                lhs: l.instantiate(a),
                rhs: r.instantiate(a),
            });
        }
    }
    out
}

pub(crate) fn first_unsound(rule: &Rule, grid: &[Phase]) -> Option<String> {
    soundness_cases(rule, grid).into_iter().find_map(|c| match semantically_equal(&c.lhs, &c.rhs) {
        Ok(true) => None,
        Ok(false) => Some(c.label),
        Err(e) => Some(format!("{}: {e}", c.label)),
    })
}

fn z(d: &mut Diagram, p: Phase) -> Endpoint {
    Endpoint::Vertex(d.add_vertex(VertexKind::Z(p)))
}

fn x(d: &mut Diagram, p: Phase) -> Endpoint {
    Endpoint::Vertex(d.add_vertex(VertexKind::X(p)))
}

/// Sample diagrams (green-centred) on which the rule applies in the given direction, with
/// the instance to use.
fn samples(name: RuleName, dir: Direction, grid: &[Phase]) -> Vec<(Diagram, RuleInstance)> {
    let inst = |a: Option<Phase>| {
        let mut i = RuleInstance::new(Rule::base(name), dir);
        i.phases = Phases { alpha: a, beta: None };
        i
    };
    let mut out = Vec::new();
    let q = Phase::QUARTER_PI;
    match (name, dir) {
        (RuleName::S1, Direction::LR) => {
            for &a in grid {
                for &b in grid {
                    let mut d = Diagram::with_boundary(1, 2);
                    let (u, v) = (z(&mut d, a), z(&mut d, b));
                    d.add_wire(Endpoint::Input(0), u);
                    d.add_wire(u, v);
                    d.add_wire(v, Endpoint::Output(0));
                    d.add_wire(v, Endpoint::Output(1));
                    out.push((d, inst(None)));
                    let mut d = Diagram::with_boundary(1, 1);
                    let (u, v) = (z(&mut d, a), z(&mut d, b));
                    d.add_wire(Endpoint::Input(0), u);
                    d.add_wires(u, v, 2);
                    d.add_wire(v, v);
                    d.add_wire(v, Endpoint::Output(0));
                    out.push((d, inst(None)));
                }
                let mut d = Diagram::with_boundary(0, 1);
                let u = z(&mut d, a);
                d.add_wires(u, u, 2);
                d.add_wire(u, Endpoint::Output(0));
                out.push((d, inst(None)));
            }
        }
        (RuleName::S1, Direction::RL) => {
            for &a in grid {
                let mut d = Diagram::with_boundary(1, 2);
                let u = z(&mut d, q);
                d.add_wire(Endpoint::Input(0), u);
                d.add_wire(u, Endpoint::Output(0));
                d.add_wire(u, Endpoint::Output(1));
                out.push((d, inst(Some(a))));
            }
        }
        (RuleName::HOPF, _) => {
            for &a in grid {
                for &b in grid {
                    let wires: &[usize] = if dir == Direction::LR { &[2, 3] } else { &[0, 1] };
                    for &k in wires {
                        let mut d = Diagram::with_boundary(1, 1);
                        let (u, v) = (z(&mut d, a), x(&mut d, b));
                        d.add_wire(Endpoint::Input(0), u);
                        d.add_wires(u, v, k);
                        d.add_wire(v, Endpoint::Output(0));
                        out.push((d, inst(None)));
                    }
                }
            }
        }
        (RuleName::GBIALG, Direction::LR) => {
            for &a in grid {
                for m in 2..=3 {
                    for wide in [false, true] {
                        let mut d = Diagram::with_boundary(0, 2);
                        let r1 = x(&mut d, Phase::HALF_PI);
                        let r2 = x(&mut d, Phase::ZERO);
                        d.add_wire(r1, Endpoint::Output(0));
                        d.add_wire(r2, Endpoint::Output(1));
                        for j in 0..m {
                            let l = z(&mut d, a + q * j as i64);
                            d.add_wire(l, r1);
                            if wide {
                                d.add_wires(l, r2, 2);
                            }
                        }
                        out.push((d, inst(None)));
                    }
                }
            }
        }
        (RuleName::GBIALG, Direction::RL) => {
            for &a in grid {
                for m in 0..=2 {
                    let mut d = Diagram::with_boundary(0, 2);
                    let r1 = x(&mut d, a);
                    let r2 = x(&mut d, Phase::ZERO);
                    d.add_wire(r1, Endpoint::Output(0));
                    d.add_wire(r2, Endpoint::Output(1));
                    let h = x(&mut d, Phase::ZERO);
                    let hz = z(&mut d, Phase::ZERO);
                    d.add_wire(h, hz);
                    d.add_wire(hz, r1);
                    d.add_wires(hz, r2, 2);
                    for j in 0..m {
                        let l = z(&mut d, a + q * j as i64);
                        d.add_wire(l, h);
                    }
                    out.push((d, inst(None)));
                }
            }
        }
        (RuleName::SUP, Direction::LR) => {
            for &a in grid {
                for b in [Phase::ZERO, q] {
                    for extra in 0..=2 {
                        let mut d = Diagram::with_boundary(0, extra);
                        let w = x(&mut d, b);
                        for j in 0..extra {
                            d.add_wire(w, Endpoint::Output(j));
                        }
                        let (l1, l2) = (z(&mut d, a), z(&mut d, a + Phase::PI));
                        d.add_wire(l1, w);
                        d.add_wire(l2, w);
                        out.push((d, inst(None)));
                    }
                }
            }
        }
        (RuleName::SUP, Direction::RL) => {
            for &g in grid {
                let mut d = Diagram::with_boundary(0, 1);
                let w = x(&mut d, q);
                d.add_wire(w, Endpoint::Output(0));
                z(&mut d, g);
                out.push((d, inst(None)));
            }
        }
        _ => {}
    }
    out
}

fn procedural_cases(rule: &Rule, grid: &[Phase]) -> Vec<SoundnessCase> {
    let mut out = Vec::new();
    for dir in [Direction::LR, Direction::RL] {
        for (i, (d, mut inst)) in samples(rule.name, dir, grid).into_iter().enumerate() {
            let d = if rule.colour_swapped { d.colour_swapped() } else { d };
            inst.rule = *rule;
            for m in find_matches(&d, &inst) {
                let rhs = apply(&d, &m).expect("fresh match applies");
                out.push(SoundnessCase {
                    label: format!("{rule} {dir:?} sample {i} at {:?}", m.anchors),
                    lhs: d.clone(),
                    rhs,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_variant_has_cases() {
        let grid = Phase::dyadic_grid(1);
        for &r in super::super::rule_catalog().rules() {
            assert!(!soundness_cases(&r, &grid).is_empty(), "{r}");
        }
    }
}
