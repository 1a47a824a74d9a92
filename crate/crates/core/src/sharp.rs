//! The multi-copy interpretation `⟦·⟧_{k,ℓ}` and the incompleteness witness built on it.
//!
//! `⟦D⟧_{k,ℓ}` is `k` copies of `D`. The `k` copies of each spider of phase `α` are tied
//! together by a gadget: each copy gets one extra leg to a fresh phase-0 hub of the other
//! colour, and the hub carries a leaf of the spider's colour with phase `ℓ·α`. Each spider
//! also contributes `k − 1` copies of the `√2` scalar. Port `i` of `D` becomes ports
//! `k·i .. k·i + k` of the image.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagram::{tensor_all, Diagram, Endpoint, Generator, VertexId, VertexKind};
use crate::error::{Result, ZxError};
use crate::phase::Phase;
use crate::rules::{rule_catalog, soundness_cases, Rule};
use crate::scalar::CycloNumber;
use crate::scalar_diagrams::sqrt2;
use crate::semantics::{evaluate, matrices_equal, scalar_of, Comparison};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SharpParams {
    pub k: usize,
    pub l: i64,
}

impl SharpParams {
    /// `⟦·⟧^♯ = ⟦·⟧_{3,2}`.
    pub const SHARP: SharpParams = SharpParams { k: 3, l: 2 };

    pub fn new(k: usize, l: i64) -> SharpParams {
        SharpParams { k, l }
    }

    /// Whether the interpretation is expected to be sound: `k` odd and `ℓ` even.
    pub fn predicted_sound(&self) -> bool {
        self.k % 2 == 1 && self.l.rem_euclid(2) == 0
    }
}

impl Default for SharpParams {
    fn default() -> Self {
        SharpParams::SHARP
    }
}

/// The literal image of `d`, gadgets and scalars included.
pub fn sharp(d: &Diagram, p: SharpParams) -> Diagram {
    build(d, p, false)
}

/// As [`sharp`], but gadgets whose leaf phase is `0` are dropped with their scalars, and
/// for `k = 1` each gadget is folded into its spider (phase `(ℓ+1)·α`).
pub fn sharp_simplified(d: &Diagram, p: SharpParams) -> Diagram {
    build(d, p, true)
}

fn build(d: &Diagram, p: SharpParams, simplify: bool) -> Diagram {
    let k = p.k;
    let mut out = Diagram::with_boundary(k * d.n_inputs(), k * d.n_outputs());
    let mut copies: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut scalars = Diagram::empty();
    for (v, kind) in d.vertices() {
        let (colour, alpha) = match (kind.colour(), kind.phase()) {
            (Some(c), Some(a)) => (c, a),
            _ => {
                copies.insert(v, (0..k).map(|_| out.add_vertex(kind)).collect());
                continue;
            }
        };
        let leaf_phase = alpha * p.l;
        if simplify && k == 1 {
            copies.insert(v, vec![out.add_vertex(VertexKind::spider(colour, alpha + leaf_phase))]);
            continue;
        }
        let cs: Vec<VertexId> = (0..k).map(|_| out.add_vertex(kind)).collect();
        if !(simplify && leaf_phase.is_zero()) {
            let hub = out.add_vertex(VertexKind::spider(colour.other(), Phase::ZERO));
            let leaf = out.add_vertex(VertexKind::spider(colour, leaf_phase));
            for &c in &cs {
                out.add_wire(c, hub);
            }
            out.add_wire(hub, leaf);
            for _ in 1..k {
                scalars = scalars.tensor(&sqrt2());
            }
        }
        copies.insert(v, cs);
    }
    let image = |e: Endpoint, c: usize| match e {
        Endpoint::Vertex(v) => Endpoint::Vertex(copies[&v][c]),
        Endpoint::Input(i) => Endpoint::Input(k * i + c),
        Endpoint::Output(j) => Endpoint::Output(k * j + c),
    };
    for w in d.wires() {
        for c in 0..k {
            out.add_wire(image(w.0, c), image(w.1, c));
        }
    }
    out.add_loops(k * d.loops());
    out.tensor(&scalars)
}

/// Caps output `i` with the effect `X(bits[i]·π)`, i.e. `√2·⟨bits[i]|`.
pub fn plug_basis_effects(d: &Diagram, bits: &[u8]) -> Result<Diagram> {
    if bits.len() != d.n_outputs() {
        return Err(ZxError::Arity(format!("{} bits for {} outputs", bits.len(), d.n_outputs())));
    }
    let effects: Vec<Diagram> = bits
        .iter()
        .map(|&b| {
            let p = if b == 0 { Phase::ZERO } else { Phase::PI };
            crate::diagram::make_generator(Generator::X(p), 1, 0)
        })
        .collect::<Result<_>>()?;
    d.then(&tensor_all(&effects))
}

/// `(1 + e^{2iα})(1 − e^{4iα})`.
pub fn supp_gap(alpha: Phase) -> Result<CycloNumber> {
    let one = CycloNumber::one();
    let a = &one + &CycloNumber::from_phase(alpha * 2)?;
    let b = &one - &CycloNumber::from_phase(alpha * 4)?;
    Ok(&a * &b)
}

/// Floating-point `supp_gap` for any rational phase.
pub fn supp_gap_float(alpha: Phase) -> num_complex::Complex64 {
    let e = |t: f64| num_complex::Complex64::from_polar(1.0, t);
    let a = alpha.to_f64();
    (1.0 + e(2.0 * a)) * (1.0 - e(4.0 * a))
}

/// The bit string the witness plugs on the three copies of the output.
pub const WITNESS_BITS: [u8; 3] = [0, 1, 1];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub alpha: Phase,
    /// `011 ∘ ⟦lhs⟧^♯`
    pub lhs: CycloNumber,
    /// `011 ∘ ⟦rhs⟧^♯`
    pub rhs: CycloNumber,
    pub equal: bool,
    pub gap: CycloNumber,
    /// `α` is a multiple of `π/2`.
    pub on_half_pi_grid: bool,
}

impl WitnessReport {
    /// The three views agree: scalars equal ⇔ gap is zero ⇔ `α ∈ (π/2)ℤ`.
    pub fn consistent(&self) -> bool {
        self.equal == self.gap.is_zero() && self.equal == self.on_half_pi_grid
    }

    /// Supplementarity at this `α` is shown underivable.
    pub fn fires(&self) -> bool {
        !self.equal
    }
}

/// Sharpens both sides of supplementarity at `α`, plugs `011`, and compares.
pub fn incompleteness_witness(alpha: Phase) -> Result<WitnessReport> {
    let plug = |d: &Diagram| -> Result<CycloNumber> {
        scalar_of(&plug_basis_effects(&sharp(d, SharpParams::SHARP), &WITNESS_BITS)?)
    };
    let lhs = plug(&crate::rules::supplementarity_lhs(alpha))?;
    let rhs = plug(&crate::rules::supplementarity_rhs(alpha))?;
    Ok(WitnessReport {
        alpha,
        equal: lhs == rhs,
        lhs,
        rhs,
        gap: supp_gap(alpha)?,
        on_half_pi_grid: (alpha.times(2)).den() == 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ScanStatus {
    Pass,
    /// The first failing case.
    Fail(String),
    /// Every case was too large to evaluate.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub rule: String,
    pub status: ScanStatus,
    pub checked: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub params: SharpParams,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn failing(&self) -> Vec<&str> {
        self.rows.iter().filter(|r| matches!(r.status, ScanStatus::Fail(_))).map(|r| r.rule.as_str()).collect()
    }

    /// Failing rules by name, without variant suffixes, deduplicated.
    pub fn failing_names(&self) -> Vec<String> {
        let mut v: Vec<String> =
            self.failing().iter().map(|r| r.split('[').next().unwrap_or(r).to_string()).collect();
        v.dedup();
        v
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.status == ScanStatus::Pass)
    }

    /// Every rule other than those named in `except` passes.
    pub fn passes_except(&self, except: &[crate::rules::RuleName]) -> bool {
        self.rows.iter().all(|r| {
            r.status == ScanStatus::Pass
                || r.rule.parse::<Rule>().map_or(false, |rule| except.contains(&rule.name))
        })
    }

    pub fn status_of(&self, rule: &str) -> Option<&ScanStatus> {
        self.rows.iter().find(|r| r.rule == rule).map(|r| &r.status)
    }
}

/// Checks `⟦lhs⟧_{k,ℓ} = ⟦rhs⟧_{k,ℓ}` for every generated instance of `rules` on `grid`.
/// Instances whose image is too large to evaluate are counted as skipped.
pub fn soundness_scan_rules(p: SharpParams, grid: &[Phase], rules: &[Rule]) -> ScanReport {
    let mut rows = Vec::new();
    for r in rules {
        let mut row = ScanRow { rule: r.to_string(), status: ScanStatus::Pass, checked: 0, skipped: 0 };
        for case in soundness_cases(r, grid) {
            let (l, rr) = (sharp(&case.lhs, p), sharp(&case.rhs, p));
            let outcome = evaluate(&l).and_then(|a| Ok((a, evaluate(&rr)?)));
            match outcome {
                Ok((a, b)) => {
                    row.checked += 1;
                    if !matrices_equal(&a, &b, Comparison::Exact).unwrap_or(false) {
                        row.status = ScanStatus::Fail(case.label);
                        break;
                    }
                }
                Err(ZxError::SizeLimit { .. } | ZxError::ContractionTooLarge { .. }) => row.skipped += 1,
                Err(e) => {
                    row.status = ScanStatus::Fail(format!("{}: {e}", case.label));
                    break;
                }
            }
        }
        if row.status == ScanStatus::Pass && row.checked == 0 {
            row.status = ScanStatus::Skipped;
        }
        rows.push(row);
    }
    ScanReport { params: p, rows }
}

/// [`soundness_scan_rules`] over every rule and variant of the catalog.
pub fn soundness_scan(p: SharpParams, grid: &[Phase]) -> ScanReport {
    soundness_scan_rules(p, grid, rule_catalog().rules())
}

/// [`soundness_scan`] for every `(k, ℓ)` pair, cells run on separate threads.
pub fn scan_table(ks: &[usize], ls: &[i64], grid: &[Phase]) -> Vec<ScanReport> {
    let cells: Vec<SharpParams> = ks.iter().flat_map(|&k| ls.iter().map(move |&l| SharpParams::new(k, l))).collect();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(cells.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut out: Vec<Option<ScanReport>> = vec![None; cells.len()];
    let done = std::sync::Mutex::new(&mut out);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= cells.len() {
                    break;
                }
                let r = soundness_scan(cells[i], grid);
                done.lock().expect("no worker panics while holding the lock")[i] = Some(r);
            });
        }
    });
    out.into_iter().map(|r| r.expect("every cell scanned")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::make_generator;
    use crate::iso::is_isomorphic;
    use crate::semantics::semantically_equal;

    #[test]
    fn hadamard_becomes_parallel_copies() {
        let h = make_generator(Generator::H, 1, 1).unwrap();
        let s = sharp(&h, SharpParams::SHARP);
        let hhh = tensor_all(&[h.clone(), h.clone(), h]);
        assert!(is_isomorphic(&s, &hhh));
    }

    #[test]
    fn gadget_vanishes_on_pi_multiples() {
        for p in [Phase::ZERO, Phase::PI] {
            let st = make_generator(Generator::Z(p), 0, 1).unwrap();
            let three = tensor_all(&[st.clone(), st.clone(), st.clone()]);
            assert!(semantically_equal(&sharp(&st, SharpParams::SHARP), &three).unwrap());
        }
    }

    #[test]
    fn k1_multiplies_angles() {
        let d = make_generator(Generator::X(Phase::QUARTER_PI), 1, 2).unwrap();
        for l in -2..=2 {
            let s = sharp_simplified(&d, SharpParams::new(1, l));
            let want = make_generator(Generator::X(Phase::QUARTER_PI * (l + 1)), 1, 2).unwrap();
            assert!(is_isomorphic(&s, &want), "l = {l}");
            assert!(semantically_equal(&sharp(&d, SharpParams::new(1, l)), &want).unwrap());
        }
    }

    #[test]
    fn plugging() {
        let zs = make_generator(Generator::Z(Phase::ZERO), 0, 1).unwrap();
        assert_eq!(scalar_of(&plug_basis_effects(&zs, &[0]).unwrap()).unwrap(), CycloNumber::sqrt2());
        let zpi = make_generator(Generator::Z(Phase::PI), 0, 1).unwrap();
        assert_eq!(scalar_of(&plug_basis_effects(&zpi, &[1]).unwrap()).unwrap(), -CycloNumber::sqrt2());
        assert!(matches!(plug_basis_effects(&zpi, &[0, 1]), Err(ZxError::Arity(_))));
    }

    #[test]
    fn gap_values() {
        assert!(supp_gap(Phase::ZERO).unwrap().is_zero());
        assert!(supp_gap(Phase::HALF_PI).unwrap().is_zero());
        let g = supp_gap(Phase::QUARTER_PI).unwrap();
        assert_eq!(g, &CycloNumber::from_int(2) + &(&CycloNumber::from_int(2) * &CycloNumber::i()));
        assert!((supp_gap_float(Phase::QUARTER_PI).norm() - 8f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sharp_is_sound_on_the_default_params() {
        let grid = Phase::dyadic_grid(1);
        let rules = [Rule::base(crate::rules::RuleName::K2), Rule::base(crate::rules::RuleName::EU)];
        assert!(soundness_scan_rules(SharpParams::SHARP, &grid, &rules).all_pass());
    }
}
