//! Derivation scripts: a start diagram and a list of rewrite steps, checked by replay.

use serde::{Deserialize, Serialize};

use super::{apply, find_matches, rule_catalog, Anchor, Direction, Match, Phases, Rule, RuleInstance};
use crate::diagram::Diagram;
use crate::error::{Result, ZxError};
use crate::semantics::{evaluate, matrices_equal, Comparison};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: Rule,
    pub dir: Direction,
    #[serde(default)]
    pub phases: Phases,
    #[serde(default)]
    pub anchors: Vec<Anchor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity: Option<usize>,
}

impl Step {
    pub fn from_match(m: &Match) -> Step {
        Step { rule: m.rule, dir: m.dir, phases: m.phases, anchors: m.anchors.clone(), arity: m.arity }
    }

    fn instance(&self) -> RuleInstance {
        RuleInstance { rule: self.rule, dir: self.dir, phases: self.phases, arity: self.arity }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Derivation {
    pub start: Diagram,
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn new(start: Diagram) -> Derivation {
        Derivation { start, steps: Vec::new() }
    }

    pub fn from_json(s: &str) -> Result<Derivation> {
        serde_json::from_str(s).map_err(|e| ZxError::Parse(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("derivation serialisation cannot fail")
    }

    /// Replays every step without semantic checks and returns the final diagram.
    pub fn replay(&self) -> Result<Diagram> {
        let mut d = self.start.clone();
        for (i, s) in self.steps.iter().enumerate() {
            d = replay_step(&d, i, s, true)?;
        }
        Ok(d)
    }
}

fn replay_step(d: &Diagram, index: usize, s: &Step, allow_optional: bool) -> Result<Diagram> {
    let unreplayable = |reason: String| ZxError::Unreplayable { step: index, reason };
    if !rule_catalog().contains(&s.rule) {
        return Err(unreplayable(format!("{} is not a rule of the catalog", s.rule)));
    }
    if s.rule.is_optional() && !allow_optional {
        return Err(unreplayable(format!("{} is outside the selected rule set", s.rule)));
    }
    let mut want = s.anchors.clone();
    want.sort();
    let m = find_matches(d, &s.instance())
        .into_iter()
        .find(|m| {
            let mut got = m.anchors.clone();
            got.sort();
            got == want
        })
        .ok_or_else(|| unreplayable(format!("{} {:?} does not apply at {:?}", s.rule, s.dir, s.anchors)))?;
    apply(d, &m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub index: usize,
    pub rule: Rule,
    pub dir: Direction,
    /// The step found its match and rewrote the diagram.
    pub applied: bool,
    /// The interpretation was unchanged by the step.
    pub sound: bool,
}

#[derive(Clone, Debug)]
pub struct DerivationReport {
    pub steps: Vec<StepReport>,
    pub verdict: bool,
    pub result: Diagram,
}

/// Replays `script`, checking after each step that the interpretation is unchanged.
pub fn verify_derivation(script: &Derivation) -> Result<DerivationReport> {
    verify_derivation_with(script, true)
}

/// As [`verify_derivation`]; with `allow_optional == false`, steps using derived rules
/// (SUP, HOPF, GBIALG) are refused.
pub fn verify_derivation_with(script: &Derivation, allow_optional: bool) -> Result<DerivationReport> {
    script.start.validate()?;
    let mut d = script.start.clone();
    let mut m = evaluate(&d)?;
    let mut steps = Vec::new();
    for (i, s) in script.steps.iter().enumerate() {
        let next = replay_step(&d, i, s, allow_optional)?;
        let nm = evaluate(&next)?;
        if !matrices_equal(&m, &nm, Comparison::Exact)? {
            return Err(ZxError::SemanticDrift { step: i, rule: s.rule.to_string() });
        }
        steps.push(StepReport { index: i, rule: s.rule, dir: s.dir, applied: true, sound: true });
        d = next;
        m = nm;
    }
    Ok(DerivationReport { steps, verdict: true, result: d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{make_generator, Generator};
    use crate::phase::Phase;
    use crate::rules::RuleName;

    fn chain(a: Phase, b: Phase) -> Diagram {
        make_generator(Generator::Z(a), 1, 1).unwrap().then(&make_generator(Generator::Z(b), 1, 1).unwrap()).unwrap()
    }

    #[test]
    fn empty_script_passes() {
        let r = verify_derivation(&Derivation::new(chain(Phase::PI, Phase::ZERO))).unwrap();
        assert!(r.verdict);
        assert!(r.steps.is_empty());
    }

    #[test]
    fn fuse_then_remove() {
        let d = chain(Phase::ZERO, Phase::ZERO);
        let mut script = Derivation::new(d.clone());
        let m = &find_matches(&d, &RuleInstance::lr(RuleName::S1))[0];
        script.steps.push(Step::from_match(m));
        let d1 = apply(&d, m).unwrap();
        let m2 = &find_matches(&d1, &RuleInstance::lr(RuleName::S2))[0];
        script.steps.push(Step::from_match(m2));
        let json = script.to_json_pretty();
        let back = Derivation::from_json(&json).unwrap();
        let r = verify_derivation(&back).unwrap();
        assert!(r.verdict);
        assert_eq!(r.result, make_generator(Generator::Identity, 1, 1).unwrap());
    }

    #[test]
    fn bad_anchor_is_unreplayable() {
        let d = chain(Phase::ZERO, Phase::ZERO);
        let script = Derivation {
            start: d,
            steps: vec![Step {
                rule: Rule::base(RuleName::S1),
                dir: Direction::LR,
                phases: Phases::default(),
                anchors: vec![Anchor::Vertex(crate::VertexId(7))],
                arity: None,
            }],
        };
        assert!(matches!(verify_derivation(&script), Err(ZxError::Unreplayable { step: 0, .. })));
    }

    #[test]
    fn script_format() {
        let s = r#"{"start":{"inputs":[0],"outputs":[0],"vertices":{"0":{"kind":"Z","phase":{"num":0,"den":1}}},
                   "wires":[[{"in":0},{"v":0}],[{"v":0},{"out":0}]]},
                   "steps":[{"rule":"S2","dir":"LR","phases":{},"anchors":[0]}]}"#;
        let r = verify_derivation(&Derivation::from_json(s).unwrap()).unwrap();
        assert!(r.verdict);
        let s = r#"{"start":{"inputs":[0],"outputs":[0],"vertices":{},"wires":[[{"in":0},{"out":0}]]},
                   "steps":[{"rule":"S2","dir":"RL","anchors":[[{"in":0},{"out":0}]]}]}"#;
        let r = verify_derivation(&Derivation::from_json(s).unwrap()).unwrap();
        assert_eq!(r.result.num_vertices(), 1);
    }

    #[test]
    fn optional_rules_can_be_refused() {
        let mut d = Diagram::with_boundary(0, 0);
        let a = d.add_vertex(crate::VertexKind::Z(Phase::ZERO));
        let b = d.add_vertex(crate::VertexKind::X(Phase::ZERO));
        d.add_wires(a, b, 2);
        let m = &find_matches(&d, &RuleInstance::lr(RuleName::HOPF))[0];
        let script = Derivation { start: d, steps: vec![Step::from_match(m)] };
        assert!(verify_derivation_with(&script, true).is_ok());
        assert!(matches!(verify_derivation_with(&script, false), Err(ZxError::Unreplayable { .. })));
    }
}
