//! Entry types the contraction engine works over. The `1/√2` factors are tracked outside the
//! entries, so exact entries stay in `Z[ζ]`.

use num_complex::Complex64;

use crate::phase::Phase;

pub(crate) trait Elem: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, o: &Self);
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `e^{iα}`; exact elements only receive phases their order can hold.
    fn root(p: Phase) -> Self;
    fn int(n: i64) -> Self;
}

impl Elem for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        *self == Complex64::new(0.0, 0.0)
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn root(p: Phase) -> Self {
        Complex64::from_polar(1.0, p.to_f64())
    }
    fn int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}

/// `Σ_j c_j ζ^j` with `ζ = e^{iπ/N}`, so `ζ^N = -1`. `N` is a power of two, at least 4.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Cyc<const N: usize>(pub [i128; N]);

impl<const N: usize> Elem for Cyc<N> {
    fn zero() -> Self {
        Cyc([0; N])
    }
    fn one() -> Self {
        Cyc::int(1)
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
    fn add_assign(&mut self, o: &Self) {
        for (a, b) in self.0.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = [0i128; N];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let e = i + j;
                if e < N {
                    out[e] += a * b;
                } else {
                    out[e - N] -= a * b;
                }
            }
        }
        Cyc(out)
    }
    fn neg(&self) -> Self {
        let mut out = self.0;
        for c in out.iter_mut() {
            *c = -*c;
        }
        Cyc(out)
    }
    fn root(p: Phase) -> Self {
        let den = p.den() as usize;
        debug_assert!(N % den == 0, "phase {p} needs a larger cyclotomic order than {N}");
        let e = (p.num() as usize) * (N / den) % (2 * N);
        let mut out = [0i128; N];
        if e < N {
            out[e] = 1;
        } else {
            out[e - N] = -1;
        }
        Cyc(out)
    }
    fn int(n: i64) -> Self {
        let mut out = [0i128; N];
        out[0] = n as i128;
        Cyc(out)
    }
}
