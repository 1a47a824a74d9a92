//! Small scalar diagrams used as explicit bookkeeping by rewrite rules.

use crate::diagram::{tensor, Colour, Diagram, VertexKind};
use crate::phase::Phase;

/// `Z(0)` and `X(0)` joined by `wires` parallel wires.
fn zx_pair(wires: usize) -> Diagram {
    let mut d = Diagram::empty();
    let z = d.add_vertex(VertexKind::Z(Phase::ZERO));
    let x = d.add_vertex(VertexKind::X(Phase::ZERO));
    d.add_wires(z, x, wires);
    d
}

/// Value `√2`.
pub fn sqrt2() -> Diagram {
    zx_pair(1)
}

/// Value `1/√2`.
pub fn inv_sqrt2() -> Diagram {
    zx_pair(3)
}

/// Value `√2^e`, as `|e|` copies of [`sqrt2`] or [`inv_sqrt2`].
pub fn sqrt2_pow(e: i32) -> Diagram {
    let unit = if e >= 0 { sqrt2() } else { inv_sqrt2() };
    (0..e.unsigned_abs()).fold(Diagram::empty(), |acc, _| tensor(&acc, &unit))
}

/// A lone spider with no legs; value `1 + e^{iθ}`.
pub fn spider_scalar(c: Colour, theta: Phase) -> Diagram {
    let mut d = Diagram::empty();
    d.add_vertex(VertexKind::spider(c, theta));
    d
}

/// `X(π)` joined to `Z(θ)` by one wire; value `√2·e^{iθ}`.
pub fn root_sqrt2(theta: Phase) -> Diagram {
    let mut d = Diagram::empty();
    let x = d.add_vertex(VertexKind::X(Phase::PI));
    let z = d.add_vertex(VertexKind::Z(theta));
    d.add_wire(x, z);
    d
}

/// Value `e^{iθ}`.
pub fn unit_phase(theta: Phase) -> Diagram {
    tensor(&root_sqrt2(theta), &inv_sqrt2())
}

/// Tensors a scalar diagram onto `d` in place.
pub fn attach(d: &mut Diagram, scalar: &Diagram) {
    debug_assert!(scalar.is_scalar());
    *d = tensor(d, scalar);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CycloNumber;
    use crate::semantics::scalar_of;

    #[test]
    fn values() {
        assert_eq!(scalar_of(&sqrt2()).unwrap(), CycloNumber::sqrt2());
        assert_eq!(scalar_of(&inv_sqrt2()).unwrap(), CycloNumber::inv_sqrt2_pow(1));
        assert_eq!(scalar_of(&sqrt2_pow(-3)).unwrap(), CycloNumber::inv_sqrt2_pow(3));
        assert_eq!(scalar_of(&sqrt2_pow(4)).unwrap(), CycloNumber::from_int(4));
        assert_eq!(scalar_of(&sqrt2_pow(0)).unwrap(), CycloNumber::one());
        for p in Phase::dyadic_grid(2) {
            let e = CycloNumber::from_phase(p).unwrap();
            assert_eq!(scalar_of(&unit_phase(p)).unwrap(), e);
            assert_eq!(scalar_of(&spider_scalar(Colour::X, p)).unwrap(), &CycloNumber::one() + &e);
        }
    }

    #[test]
    fn parallel_wire_family() {
        // m parallel wires: 4·2^{-m/2} for even m, 2·2^{-m/2} for odd m
        for m in 0..7usize {
            let want = if m % 2 == 0 { 4 } else { 2 };
            let want = &CycloNumber::from_int(want) * &CycloNumber::inv_sqrt2_pow(m as i32);
            assert_eq!(scalar_of(&zx_pair(m)).unwrap(), want, "m = {m}");
        }
    }
}
