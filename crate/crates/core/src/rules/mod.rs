//! Rewrite rules: the catalog, subdiagram matching, and rule application.

mod derivation;
mod lemmas;

mod pattern;
mod procedural;
mod schemas;
mod sweep;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::diagram::{Colour, Diagram, Endpoint, VertexId, VertexKind, Wire};
use crate::error::{Result, ZxError};
use crate::phase::Phase;
use pattern::{find_embeddings, replace, Embedding};

pub use derivation::{verify_derivation, verify_derivation_with, Derivation, DerivationReport, Step, StepReport};

pub use lemmas::{
    lemma_endpoint_catalog, supplementarity_lhs, supplementarity_rhs, coecke_edwards_filter, witness_scalar_form, LemmaCheck,
    LemmaFamily, Projector,
};
pub use sweep::{soundness_cases, SoundnessCase};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleName {
    S1,
    S2,
    S3,
    B1,
    B2,
    K1,
    K2,
    EU,
    H,
    IV,
    ZO,
    HOPF,
    GBIALG,
    SUP,
}

impl RuleName {
    pub const ALL: [RuleName; 14] = [
        RuleName::S1,
        RuleName::S2,
        RuleName::S3,
        RuleName::B1,
        RuleName::B2,
        RuleName::K1,
        RuleName::K2,
        RuleName::EU,
        RuleName::H,
        RuleName::IV,
        RuleName::ZO,
        RuleName::HOPF,
        RuleName::GBIALG,
        RuleName::SUP,
    ];

    /// Derived equations that are not part of the base axiom set.
    pub fn is_optional(self) -> bool {
        matches!(self, RuleName::HOPF | RuleName::GBIALG | RuleName::SUP)
    }

    pub fn is_procedural(self) -> bool {
        matches!(self, RuleName::S1 | RuleName::HOPF | RuleName::GBIALG | RuleName::SUP)
    }

    pub fn has_variable_arity(self) -> bool {
        self.is_procedural() || schemas::has_arity(self)
    }

    /// Names of the phase parameters a step may bind.
    pub fn phase_params(self) -> &'static [&'static str] {
        match self {
            RuleName::S1 | RuleName::HOPF => &["alpha", "beta"],
            RuleName::K2 | RuleName::H | RuleName::SUP => &["alpha"],
            _ => &[],
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for RuleName {
    type Err = ZxError;
    fn from_str(s: &str) -> Result<Self> {
        RuleName::ALL
            .into_iter()
            .find(|r| r.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| ZxError::UnknownRule(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    LR,
    RL,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::LR => Direction::RL,
            Direction::RL => Direction::LR,
        }
    }
}

/// A rule together with its variant: colour-swapped and/or upside down.
///
/// Written `K2`, `K2[c]`, `K2[f]` or `K2[cf]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub name: RuleName,
    pub colour_swapped: bool,
    pub flipped: bool,
}

impl Rule {
    pub fn base(name: RuleName) -> Rule {
        Rule { name, colour_swapped: false, flipped: false }
    }

    pub fn is_optional(&self) -> bool {
        self.name.is_optional()
    }

    /// Colour of the spiders the rule is about.
    fn colour(&self) -> Colour {
        if self.colour_swapped {
            Colour::X
        } else {
            Colour::Z
        }
    }

    /// Both sides of a fixed-shape rule at arity `n` and phase `alpha`, as open diagrams;
    /// `None` for procedural rules or arities the rule does not have.
    pub fn instantiate(&self, n: usize, alpha: Phase) -> Option<(Diagram, Diagram)> {
        let (l, r) = self.sides(n)?;
        Some((l.instantiate(alpha), r.instantiate(alpha)))
    }

    /// Whether the fixed-shape sides at arity `n` depend on `alpha`.
    pub fn binds_alpha(&self, n: usize) -> bool {
        self.sides(n).map_or(false, |(l, r)| l.uses_alpha() || r.uses_alpha())
    }

    /// `(lhs, rhs)` templates for fixed-shape rules, oriented for this variant.
    fn sides(&self, n: usize) -> Option<(pattern::Pat, pattern::Pat)> {
        let (mut l, mut r) = schemas::schema(self.name, n)?;
        if self.colour_swapped {
            l = l.colour_swapped();
            r = r.colour_swapped();
        }
        if self.flipped {
            l = l.flipped();
            r = r.flipped();
        }
        Some((l, r))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        match (self.colour_swapped, self.flipped) {
            (false, false) => Ok(()),
            (true, false) => write!(f, "[c]"),
            (false, true) => write!(f, "[f]"),
            (true, true) => write!(f, "[cf]"),
        }
    }
}

impl FromStr for Rule {
    type Err = ZxError;
    fn from_str(s: &str) -> Result<Self> {
        let (name, flags) = match s.split_once('[') {
            Some((n, rest)) => {
                let flags = rest.strip_suffix(']').ok_or_else(|| ZxError::UnknownRule(s.to_string()))?;
                (n, flags)
            }
            None => (s, ""),
        };
        if flags.chars().any(|c| c != 'c' && c != 'f') {
            return Err(ZxError::UnknownRule(s.to_string()));
        }
        Ok(Rule { name: name.parse()?, colour_swapped: flags.contains('c'), flipped: flags.contains('f') })
    }
}

impl Serialize for Rule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Phase bindings of a rule instance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Phases {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Phase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Phase>,
}

impl Phases {
    pub fn alpha(a: Phase) -> Phases {
        Phases { alpha: Some(a), beta: None }
    }
}

/// A rule in a direction, optionally with phases and arity pinned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleInstance {
    pub rule: Rule,
    pub dir: Direction,
    pub phases: Phases,
    pub arity: Option<usize>,
}

impl RuleInstance {
    pub fn new(rule: Rule, dir: Direction) -> RuleInstance {
        RuleInstance { rule, dir, phases: Phases::default(), arity: None }
    }

    pub fn lr(name: RuleName) -> RuleInstance {
        RuleInstance::new(Rule::base(name), Direction::LR)
    }

    pub fn rl(name: RuleName) -> RuleInstance {
        RuleInstance::new(Rule::base(name), Direction::RL)
    }

    pub fn with_alpha(mut self, a: Phase) -> Self {
        self.phases.alpha = Some(a);
        self
    }

    pub fn with_beta(mut self, b: Phase) -> Self {
        self.phases.beta = Some(b);
        self
    }

    pub fn with_arity(mut self, n: usize) -> Self {
        self.arity = Some(n);
        self
    }
}

/// Where a match sits: a vertex, or (for vertex-free pattern wires) a wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Anchor {
    Vertex(VertexId),
    Wire(Endpoint, Endpoint),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Detail {
    Ground { emb: Embedding, rhs: Diagram },
    Procedural(Vec<VertexId>),
}

/// Everything a match depends on, to detect use against a changed diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Footprint {
    kinds: Vec<(VertexId, VertexKind)>,
    wires: Vec<Wire>,
}

fn footprint(d: &Diagram, vs: &[VertexId], cut: &[Wire]) -> Option<Footprint> {
    let touches = |w: &Wire| vs.iter().any(|&v| w.touches(Endpoint::Vertex(v)));
    let mut wires: Vec<Wire> = d.wires().iter().filter(|w| touches(w)).copied().collect();
    for c in cut {
        let m = d.multiplicity(c.0, c.1);
        wires.extend(std::iter::repeat(*c).take(m));
    }
    wires.sort();
    let mut seen: Vec<VertexId> = vs.to_vec();
    seen.extend(wires.iter().flat_map(|w| [w.0, w.1]).filter_map(|e| e.vertex()));
    seen.sort();
    seen.dedup();
    let kinds = seen.into_iter().map(|v| Some((v, d.kind(v)?))).collect::<Option<_>>()?;
    Some(Footprint { kinds, wires })
}

/// One place a rule instance applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Match {
    pub rule: Rule,
    pub dir: Direction,
    /// Phases bound by this match (from the diagram or from the instance).
    pub phases: Phases,
    pub arity: Option<usize>,
    /// Sorted: vertices, then wires.
    pub anchors: Vec<Anchor>,
    detail: Detail,
    footprint: Footprint,
}

impl Match {
    pub fn instance(&self) -> RuleInstance {
        RuleInstance { rule: self.rule, dir: self.dir, phases: self.phases, arity: self.arity }
    }
}

fn max_degree(d: &Diagram) -> usize {
    d.vertex_ids().into_iter().map(|v| d.degree(v)).max().unwrap_or(0)
}

/// Every place `inst` applies in `d`, deduplicated and sorted by anchors.
pub fn find_matches(d: &Diagram, inst: &RuleInstance) -> Vec<Match> {
    let rule = inst.rule;
    let mut out = Vec::new();
    if rule.name.is_procedural() {
        if rule.flipped || (rule.name == RuleName::HOPF && rule.colour_swapped) {
            return out;
        }
        for (vs, phases) in procedural::find(d, rule.name, rule.colour(), inst.dir, &inst.phases, inst.arity) {
            let Some(fp) = footprint(d, &vs, &[]) else { continue };
            let mut anchors: Vec<Anchor> = vs.iter().map(|&v| Anchor::Vertex(v)).collect();
            anchors.sort();
            out.push(Match {
                rule,
                dir: inst.dir,
                phases,
                arity: inst.arity,
                anchors,
                detail: Detail::Procedural(vs),
                footprint: fp,
            });
        }
    } else {
        let arities: Vec<usize> = match (schemas::has_arity(rule.name), inst.arity) {
            (false, _) => vec![0],
            (true, Some(n)) => vec![n],
            (true, None) => (0..=max_degree(d)).collect(),
        };
        for n in arities {
            let Some((l, r)) = rule.sides(n) else { continue };
            let (l, r) = match inst.dir {
                Direction::LR => (l, r),
                Direction::RL => (r, l),
            };
            let uses_alpha = l.uses_alpha() || r.uses_alpha();
            for emb in find_embeddings(d, &l, if uses_alpha { inst.phases.alpha } else { None }) {
                let alpha = emb.alpha.or(inst.phases.alpha).unwrap_or(Phase::ZERO);
                let Some(fp) = footprint(d, &emb.image, &emb.cut) else { continue };
                let mut anchors: Vec<Anchor> = emb.image.iter().map(|&v| Anchor::Vertex(v)).collect();
                anchors.sort();
                anchors.extend(emb.cut.iter().map(|w| Anchor::Wire(w.0, w.1)));
                out.push(Match {
                    rule,
                    dir: inst.dir,
                    phases: if uses_alpha { Phases::alpha(alpha) } else { Phases::default() },
                    arity: schemas::has_arity(rule.name).then_some(n),
                    anchors,
                    detail: Detail::Ground { rhs: r.instantiate(alpha), emb },
                    footprint: fp,
                });
            }
        }
    }
    out.sort_by(|a, b| (&a.anchors, a.phases, a.arity).cmp(&(&b.anchors, b.phases, b.arity)));
    out.dedup_by(|a, b| a.anchors == b.anchors && a.phases == b.phases && a.arity == b.arity);
    out
}

/// Rewrites `d` at `m`. Fails with [`ZxError::StaleMatch`] if `d` is not the diagram (or an
/// unchanged neighbourhood of the diagram) the match was found in.
pub fn apply(d: &Diagram, m: &Match) -> Result<Diagram> {
    let (vs, cut): (Vec<VertexId>, Vec<Wire>) = match &m.detail {
        Detail::Ground { emb, .. } => (emb.image.clone(), emb.cut.clone()),
        Detail::Procedural(vs) => (vs.clone(), Vec::new()),
    };
    if footprint(d, &vs, &cut).as_ref() != Some(&m.footprint) {
        return Err(ZxError::StaleMatch);
    }
    if cut.iter().any(|w| d.multiplicity(w.0, w.1) == 0) {
        return Err(ZxError::StaleMatch);
    }
    let out = match &m.detail {
        Detail::Ground { emb, rhs } => replace(d, emb, rhs),
        Detail::Procedural(vs) => procedural::apply(d, m.rule.name, m.rule.colour(), m.dir, vs, &m.phases)?,
    };
    debug_assert!(out.validate().is_ok(), "{} produced an invalid diagram", m.rule);
    Ok(out)
}

/// The rule catalog: every rule with its distinct variants, filtered by the soundness gate.
#[derive(Debug)]
pub struct Catalog {
    rules: Vec<Rule>,
    rejected: Vec<(Rule, String)>,
}

impl Catalog {
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Rules that failed the load-time soundness check, with the failing case.
    pub fn rejected(&self) -> &[(Rule, String)] {
        &self.rejected
    }

    /// The base axiom set, without derived equations.
    pub fn base_rules(&self) -> Vec<Rule> {
        self.rules.iter().copied().filter(|r| !r.is_optional()).collect()
    }

    pub fn variants(&self, name: RuleName) -> Vec<Rule> {
        self.rules.iter().copied().filter(|r| r.name == name).collect()
    }

    pub fn contains(&self, r: &Rule) -> bool {
        self.rules.contains(r)
    }
}

/// All variants of `name` that are distinct rules.
fn distinct_variants(name: RuleName) -> Vec<Rule> {
    let all = [(false, false), (true, false), (false, true), (true, true)]
        .map(|(c, f)| Rule { name, colour_swapped: c, flipped: f });
    if name.is_procedural() {
        return if name == RuleName::HOPF { vec![all[0]] } else { vec![all[0], all[1]] };
    }
    let probe = |r: &Rule| {
        let n = if schemas::has_arity(name) { 2 } else { 0 };
        let (l, rr) = r.sides(n).expect("fixed-shape rule");
        (l.instantiate(Phase::QUARTER_PI), rr.instantiate(Phase::QUARTER_PI))
    };
    let mut kept: Vec<(Rule, (Diagram, Diagram))> = Vec::new();
    for r in all {
        let p = probe(&r);
        let dup = kept
            .iter()
            .any(|(_, q)| crate::iso::is_isomorphic(&p.0, &q.0) && crate::iso::is_isomorphic(&p.1, &q.1));
        if !dup {
            kept.push((r, p));
        }
    }
    kept.into_iter().map(|(r, _)| r).collect()
}

/// Phase grid the load-time soundness gate uses.
pub const GATE_GRID_LEVEL: u32 = 2;

/// The catalog, built once. Each variant is admitted only if every generated instance on
/// the `π/4` grid is exactly sound.
pub fn rule_catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let grid = Phase::dyadic_grid(GATE_GRID_LEVEL);
        let mut rules = Vec::new();
        let mut rejected = Vec::new();
        for name in RuleName::ALL {
            for r in distinct_variants(name) {
                match sweep::first_unsound(&r, &grid) {
                    None => rules.push(r),
                    Some(label) => rejected.push((r, label)),
                }
            }
        }
        Catalog { rules, rejected }
    })
}

/// Every match of every rule in `rules`, in both directions if `both` is set.
pub fn find_all_matches(d: &Diagram, rules: &[Rule], dir: Direction) -> Vec<Match> {
    rules.iter().flat_map(|&r| find_matches(d, &RuleInstance::new(r, dir))).collect()
}
