//! Left and right sides of the fixed-shape rules, in their base orientation (green on the
//! "interesting" spider, inputs on top). Scalars sit on the right so that left-to-right
//! rewriting consumes no scalar vertices.

use super::pattern::{PEnd, PExpr, PKind, Pat};
use super::RuleName;
use crate::phase::Phase;

const Z0: PKind = PKind::Z(PExpr::ZERO);
const X0: PKind = PKind::X(PExpr::ZERO);
const XPI: PKind = PKind::X(PExpr::konst(Phase::PI));

fn alpha() -> PExpr {
    PExpr::alpha_plus(Phase::ZERO)
}

/// Largest arity used when sweeping variable-arity schemas for soundness.
pub(crate) const SWEEP_ARITY: usize = 3;

/// `(lhs, rhs)` for a fixed-shape rule at arity `n` (ignored by fixed-arity rules).
pub(crate) fn schema(name: RuleName, n: usize) -> Option<(Pat, Pat)> {
    Some(match name {
        RuleName::S2 => {
            let mut l = Pat::new(1, 1);
            let v = l.v(Z0);
            l.w(PEnd::In(0), v);
            l.w(v, PEnd::Out(0));
            let mut r = Pat::new(1, 1);
            r.w(PEnd::In(0), PEnd::Out(0));
            (l, r)
        }
        RuleName::S3 => {
            let mut l = Pat::new(0, 2);
            let v = l.v(Z0);
            l.w(v, PEnd::Out(0));
            l.w(v, PEnd::Out(1));
            let mut r = Pat::new(0, 2);
            r.w(PEnd::Out(0), PEnd::Out(1));
            (l, r)
        }
        RuleName::B1 => {
            let mut l = Pat::new(0, n);
            let z = l.v(Z0);
            let x = l.v(X0);
            l.w(z, x);
            let mut r = Pat::new(0, n);
            for j in 0..n {
                l.w(x, PEnd::Out(j));
                let leaf = r.v(Z0);
                r.w(leaf, PEnd::Out(j));
            }
            r.sqrt2_pow(if n == 0 { 1 } else { 1 - n as i32 });
            (l, r)
        }
        RuleName::B2 => {
            let mut l = Pat::new(2, 2);
            let x = l.v(X0);
            let z = l.v(Z0);
            l.w(PEnd::In(0), x);
            l.w(PEnd::In(1), x);
            l.w(x, z);
            l.w(z, PEnd::Out(0));
            l.w(z, PEnd::Out(1));
            let mut r = Pat::new(2, 2);
            let a = r.v(Z0);
            let b = r.v(Z0);
            let c = r.v(X0);
            let d = r.v(X0);
            r.w(PEnd::In(0), a);
            r.w(PEnd::In(1), b);
            r.w(c, PEnd::Out(0));
            r.w(d, PEnd::Out(1));
            for (p, q) in [(a, c), (a, d), (b, c), (b, d)] {
                r.w(p, q);
            }
            r.sqrt2_pow(1);
            (l, r)
        }
        RuleName::K1 | RuleName::K2 => {
            let k2 = name == RuleName::K2;
            let mut l = Pat::new(1, n);
            let x = l.v(XPI);
            let z = l.v(PKind::Z(if k2 { alpha() } else { PExpr::ZERO }));
            l.w(PEnd::In(0), x);
            l.w(x, z);
            let mut r = Pat::new(1, n);
            let z2 = r.v(PKind::Z(if k2 { PExpr::minus_alpha() } else { PExpr::ZERO }));
            r.w(PEnd::In(0), z2);
            for j in 0..n {
                l.w(z, PEnd::Out(j));
                let xj = r.v(XPI);
                r.w(z2, xj);
                r.w(xj, PEnd::Out(j));
            }
            if k2 {
                // e^{iα} as X(π)–Z(α) times 1/√2
                let s = r.v(XPI);
                let t = r.v(PKind::Z(alpha()));
                r.w(s, t);
                r.sqrt2_pow(-1);
            }
            (l, r)
        }
        RuleName::EU => {
            let mut l = Pat::new(1, 1);
            let h = l.v(PKind::H);
            l.w(PEnd::In(0), h);
            l.w(h, PEnd::Out(0));
            let q = PExpr::konst(Phase::HALF_PI);
            let mut r = Pat::new(1, 1);
            let a = r.v(PKind::Z(q));
            let b = r.v(PKind::X(q));
            let c = r.v(PKind::Z(q));
            r.w(PEnd::In(0), a);
            r.w(a, b);
            r.w(b, c);
            r.w(c, PEnd::Out(0));
            // e^{-iπ/4} as Z(3π/2) scalar times 1/√2
            r.v(PKind::Z(PExpr::konst(Phase::new(3, 2))));
            r.sqrt2_pow(-1);
            (l, r)
        }
        RuleName::H => {
            let ni = n.min(1);
            let no = n - ni;
            let ports: Vec<PEnd> = (0..ni).map(PEnd::In).chain((0..no).map(PEnd::Out)).collect();
            let mut l = Pat::new(ni, no);
            let x = l.v(PKind::X(alpha()));
            let mut r = Pat::new(ni, no);
            let z = r.v(PKind::Z(alpha()));
            for &p in &ports {
                l.w(x, p);
                let h = r.v(PKind::H);
                r.w(z, h);
                r.w(h, p);
            }
            (l, r)
        }
        RuleName::IV => {
            let mut l = Pat::new(0, 0);
            l.sqrt2_pow(1);
            l.sqrt2_pow(-1);
            (l, Pat::new(0, 0))
        }
        RuleName::ZO => {
            let zpi = PKind::Z(PExpr::konst(Phase::PI));
            let mut l = Pat::new(1, 1);
            l.v(zpi);
            l.w(PEnd::In(0), PEnd::Out(0));
            let mut r = Pat::new(1, 1);
            r.v(zpi);
            let e = r.v(X0);
            let s = r.v(X0);
            r.w(PEnd::In(0), e);
            r.w(s, PEnd::Out(0));
            (l, r)
        }
        RuleName::S1 | RuleName::HOPF | RuleName::GBIALG | RuleName::SUP => return None,
    })
}

/// Arities a variable-arity schema is defined for; `None` for fixed arity.
pub(crate) fn has_arity(name: RuleName) -> bool {
    matches!(name, RuleName::B1 | RuleName::K1 | RuleName::K2 | RuleName::H)
}
