//! Named derived equations as checkable `(lhs, rhs)` families indexed by a phase.

use crate::diagram::{Colour, Diagram, Endpoint, Generator, VertexKind};
use crate::error::Result;
use crate::phase::Phase;
use crate::scalar_diagrams::{inv_sqrt2, root_sqrt2, spider_scalar, sqrt2, sqrt2_pow, unit_phase};
use crate::semantics::{evaluate, matrices_equal, Comparison, ExactMatrix};
use crate::sharp::{plug_basis_effects, sharp, SharpParams, WITNESS_BITS};

fn spider(c: Colour, p: Phase, n: usize, m: usize) -> Diagram {
    let g = match c {
        Colour::Z => Generator::Z(p),
        Colour::X => Generator::X(p),
    };
    crate::diagram::make_generator(g, n, m).expect("spider generators have any arity")
}

fn with_scalars(mut d: Diagram, scalars: &[Diagram]) -> Diagram {
    for s in scalars {
        d = d.tensor(s);
    }
    d
}

/// Two antiphase degree-1 Z spiders (`α`, `α + π`) on a shared X(0) spider with one output.
pub fn supplementarity_lhs(alpha: Phase) -> Diagram {
    let mut d = Diagram::with_boundary(0, 1);
    let w = d.add_vertex(VertexKind::X(Phase::ZERO));
    let a = d.add_vertex(VertexKind::Z(alpha));
    let b = d.add_vertex(VertexKind::Z(alpha + Phase::PI));
    d.add_wire(a, w);
    d.add_wire(b, w);
    d.add_wire(w, Endpoint::Output(0));
    d
}

/// The X(0) state alone, with the scalar `Z(2α + π)` and a factor `1/2`.
pub fn supplementarity_rhs(alpha: Phase) -> Diagram {
    with_scalars(
        spider(Colour::X, Phase::ZERO, 0, 1),
        &[spider_scalar(Colour::Z, alpha * 2 + Phase::PI), sqrt2_pow(-2)],
    )
}

/// `X(0)` on the input and `X(0)` on the output, both joined to `Z(α)` and to `Z(β)`.
/// Diagonal, `½·diag(1 + e^{i(α+β)}, e^{iα} + e^{iβ})`.
pub fn coecke_edwards_filter(alpha: Phase, beta: Phase) -> Diagram {
    let mut d = Diagram::with_boundary(1, 1);
    let r1 = d.add_vertex(VertexKind::X(Phase::ZERO));
    let r2 = d.add_vertex(VertexKind::X(Phase::ZERO));
    d.add_wire(Endpoint::Input(0), r1);
    d.add_wire(r2, Endpoint::Output(0));
    for p in [alpha, beta] {
        let g = d.add_vertex(VertexKind::Z(p));
        d.add_wire(r1, g);
        d.add_wire(g, r2);
    }
    d
}

fn antiphase_form(alpha: Phase) -> (Diagram, Diagram) {
    let lhs = coecke_edwards_filter(alpha, alpha + Phase::PI);
    let rhs = with_scalars(
        spider(Colour::X, Phase::ZERO, 0, 1).tensor(&spider(Colour::X, Phase::ZERO, 1, 0)),
        &[spider_scalar(Colour::Z, alpha * 2 + Phase::PI), sqrt2_pow(-4)],
    );
    (lhs, rhs)
}

fn supplementary_form(alpha: Phase) -> (Diagram, Diagram) {
    let lhs = coecke_edwards_filter(alpha, Phase::PI - alpha);
    let rhs = with_scalars(
        spider(Colour::X, Phase::PI, 0, 1).tensor(&spider(Colour::X, Phase::PI, 1, 0)),
        &[spider_scalar(Colour::Z, alpha * 2 + Phase::PI), root_sqrt2(Phase::PI - alpha), sqrt2_pow(-5)],
    );
    (lhs, rhs)
}

fn hopf_with_antipode(_: Phase) -> (Diagram, Diagram) {
    let mut d = Diagram::with_boundary(1, 1);
    let a = d.add_vertex(VertexKind::Z(Phase::ZERO));
    let b = d.add_vertex(VertexKind::X(Phase::ZERO));
    let s1 = d.add_vertex(VertexKind::X(Phase::ZERO));
    let s2 = d.add_vertex(VertexKind::Z(Phase::ZERO));
    d.add_wire(Endpoint::Input(0), a);
    d.add_wire(a, b);
    d.add_wire(a, s1);
    d.add_wire(s1, s2);
    d.add_wire(s2, b);
    d.add_wire(b, Endpoint::Output(0));
    (d, hopf_rhs())
}

fn hopf_rhs() -> Diagram {
    with_scalars(spider(Colour::Z, Phase::ZERO, 1, 0).tensor(&spider(Colour::X, Phase::ZERO, 0, 1)), &[sqrt2_pow(-2)])
}

fn hopf_simple(_: Phase) -> (Diagram, Diagram) {
    let mut d = Diagram::with_boundary(1, 1);
    let a = d.add_vertex(VertexKind::Z(Phase::ZERO));
    let b = d.add_vertex(VertexKind::X(Phase::ZERO));
    d.add_wire(Endpoint::Input(0), a);
    d.add_wires(a, b, 2);
    d.add_wire(b, Endpoint::Output(0));
    (d, hopf_rhs())
}

/// Complete bipartite `K_{k,k}`: `k` Z spiders (phase `α` on the first) with one input
/// each, `k` X spiders with one output each.
fn bialgebra(k: usize, alpha: Phase) -> (Diagram, Diagram) {
    let mut lhs = Diagram::with_boundary(k, k);
    let zs: Vec<_> = (0..k)
        .map(|i| lhs.add_vertex(VertexKind::Z(if i == 0 { alpha } else { Phase::ZERO })))
        .collect();
    let xs: Vec<_> = (0..k).map(|_| lhs.add_vertex(VertexKind::X(Phase::ZERO))).collect();
    for (i, &z) in zs.iter().enumerate() {
        lhs.add_wire(Endpoint::Input(i), z);
        for &x in &xs {
            lhs.add_wire(z, x);
        }
    }
    for (j, &x) in xs.iter().enumerate() {
        lhs.add_wire(x, Endpoint::Output(j));
    }
    let mut rhs = Diagram::with_boundary(k, k);
    let r = rhs.add_vertex(VertexKind::X(Phase::ZERO));
    let g = rhs.add_vertex(VertexKind::Z(Phase::ZERO));
    let first = rhs.add_vertex(VertexKind::Z(alpha));
    rhs.add_wire(Endpoint::Input(0), first);
    rhs.add_wire(first, r);
    for i in 1..k {
        rhs.add_wire(Endpoint::Input(i), r);
    }
    rhs.add_wire(r, g);
    for j in 0..k {
        rhs.add_wire(g, Endpoint::Output(j));
    }
    let e = (k as i32 - 1) * (1 - k as i32);
    (lhs, with_scalars(rhs, &[sqrt2_pow(e)]))
}

fn h_decomposition(_: Phase) -> (Diagram, Diagram) {
    let t = Phase::new(3, 2);
    let lhs = spider(Colour::Z, t, 1, 1)
        .then(&spider(Colour::X, t, 1, 1))
        .and_then(|d| d.then(&spider(Colour::Z, t, 1, 1)))
        .expect("1→1 chain composes");
    let lhs = with_scalars(lhs, &[spider_scalar(Colour::Z, Phase::HALF_PI), inv_sqrt2()]);
    let rhs = crate::diagram::make_generator(Generator::H, 1, 1).expect("H is 1→1");
    (lhs, rhs)
}

/// The simplified scalar `Z(2α) ⊗ Z(4α+π) ⊗ √2e^{2iα} ⊗ √2`.
pub fn witness_scalar_form(alpha: Phase) -> Diagram {
    with_scalars(
        spider_scalar(Colour::Z, alpha * 2),
        &[spider_scalar(Colour::Z, alpha * 4 + Phase::PI), root_sqrt2(alpha * 2), sqrt2()],
    )
}

fn plugged_witness(alpha: Phase) -> (Diagram, Diagram) {
    let lhs = plug_basis_effects(&sharp(&supplementarity_lhs(alpha), SharpParams::SHARP), &WITNESS_BITS)
        .expect("three outputs, three bits");
    (lhs, witness_scalar_form(alpha))
}

fn drop_unit_factor(alpha: Phase) -> (Diagram, Diagram) {
    let rhs = with_scalars(
        spider_scalar(Colour::Z, alpha * 2),
        &[spider_scalar(Colour::Z, alpha * 4 + Phase::PI), unit_phase(alpha * 2), sqrt2_pow(2)],
    );
    (witness_scalar_form(alpha), rhs)
}

/// A rank-one projector on one qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projector {
    /// `|0⟩⟨0|`
    Zero,
    /// `|1⟩⟨1|`
    One,
}

impl Projector {
    /// `m` is 2×2, vanishes off the projector's support, and is nonzero on it unless
    /// `allow_zero`.
    pub fn proportional(self, m: &ExactMatrix, allow_zero: bool) -> bool {
        if m.rows() != 2 || m.cols() != 2 {
            return false;
        }
        let s = match self {
            Projector::Zero => 0,
            Projector::One => 1,
        };
        let off = (0..2).flat_map(|r| (0..2).map(move |c| (r, c))).filter(|&(r, c)| !(r == s && c == s));
        off.into_iter().all(|(r, c)| m.get(r, c).is_zero()) && (allow_zero || !m.get(s, s).is_zero())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LemmaFamily {
    pub name: &'static str,
    pub summary: &'static str,
    pub build: fn(Phase) -> (Diagram, Diagram),
    /// Both sides must also be proportional to this projector.
    pub projector: Option<Projector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub alpha: Phase,
    pub equal: bool,
    /// `None` when the family carries no projector condition.
    pub projector_ok: Option<bool>,
}

impl LemmaCheck {
    pub fn passed(&self) -> bool {
        self.equal && self.projector_ok != Some(false)
    }
}

impl LemmaFamily {
    pub fn instance(&self, alpha: Phase) -> (Diagram, Diagram) {
        (self.build)(alpha)
    }

    /// Exact comparison of both sides at `alpha`. The projector condition is only
    /// required to be nonzero when `α ≢ 0 mod π`.
    pub fn check(&self, alpha: Phase) -> Result<LemmaCheck> {
        let (l, r) = self.instance(alpha);
        let (ml, mr) = (evaluate(&l)?, evaluate(&r)?);
        let equal = matrices_equal(&ml, &mr, Comparison::Exact)?;
        let degenerate = alpha.den() == 1;
        let projector_ok =
            self.projector.map(|p| p.proportional(&ml, degenerate) && p.proportional(&mr, degenerate));
        Ok(LemmaCheck { alpha, equal, projector_ok })
    }
}

static CATALOG: &[LemmaFamily] = &[
    LemmaFamily {
        name: "lemma1-form1",
        summary: "supplementarity: antiphase leaves on a shared neighbour",
        build: |a| (supplementarity_lhs(a), supplementarity_rhs(a)),
        projector: None,
    },
    LemmaFamily {
        name: "lemma1-form2",
        summary: "filter with α, α+π factors through |0⟩⟨0|",
        build: antiphase_form,
        projector: None,
    },
    LemmaFamily {
        name: "lemma1-form3",
        summary: "filter with α, π−α factors through |1⟩⟨1|",
        build: supplementary_form,
        projector: None,
    },
    LemmaFamily {
        name: "coecke-edwards-1",
        summary: "α − β = π: proportional to |0⟩⟨0|",
        build: antiphase_form,
        projector: Some(Projector::Zero),
    },
    LemmaFamily {
        name: "coecke-edwards-2",
        summary: "α + β = π: proportional to |1⟩⟨1|",
        build: supplementary_form,
        projector: Some(Projector::One),
    },
    LemmaFamily {
        name: "hopf-antipode",
        summary: "copy, antipode on one branch, merge: disconnects",
        build: hopf_with_antipode,
        projector: None,
    },
    LemmaFamily {
        name: "hopf",
        summary: "two parallel wires between Z and X disconnect",
        build: hopf_simple,
        projector: None,
    },
    LemmaFamily {
        name: "gbialg-k2",
        summary: "K_{2,2} bipartite block to X–Z pair",
        build: |a| bialgebra(2, a),
        projector: None,
    },
    LemmaFamily {
        name: "gbialg-k3",
        summary: "K_{3,3} bipartite block to X–Z pair",
        build: |a| bialgebra(3, a),
        projector: None,
    },
    LemmaFamily {
        name: "2hdecom",
        summary: "H as Z(3π/2) X(3π/2) Z(3π/2) with its scalar",
        build: h_decomposition,
        projector: None,
    },
    LemmaFamily {
        name: "suplint011",
        summary: "011 plugged on the sharp image of the supplementarity left side",
        build: plugged_witness,
        projector: None,
    },
    LemmaFamily {
        name: "2a4apiispi",
        summary: "dropping the invertible factor from the plugged scalar",
        build: drop_unit_factor,
        projector: None,
    },
];

pub fn lemma_endpoint_catalog() -> &'static [LemmaFamily] {
    CATALOG
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CycloNumber;
    use crate::semantics::Matrix;

    #[test]
    fn supplementarity_vector() {
        for a in Phase::dyadic_grid(2) {
            let m = evaluate(&supplementarity_lhs(a)).unwrap();
            let top = &(&CycloNumber::one() - &CycloNumber::from_phase(a * 2).unwrap()) * &CycloNumber::inv_sqrt2_pow(1);
            let want = Matrix::from_rows(2, 1, vec![top, CycloNumber::zero()]).unwrap();
            assert_eq!(m, want, "α = {a}");
        }
    }

    #[test]
    fn every_family_holds_on_eighths() {
        for f in lemma_endpoint_catalog() {
            for a in Phase::dyadic_grid(3) {
                let c = f.check(a).unwrap();
                assert!(c.passed(), "{} at {a}: {c:?}", f.name);
            }
        }
    }

    #[test]
    fn projector_shape() {
        let (l, _) = antiphase_form(Phase::QUARTER_PI);
        let m = evaluate(&l).unwrap();
        assert!(Projector::Zero.proportional(&m, false));
        assert!(!Projector::One.proportional(&m, true));
    }
}
