//! Exact complex numbers of the form `(1/√2)^s · Σ_j c_j ζ^j` where `ζ = e^{iπ/2^(k-1)}`
//! has order `2^k` and the `c_j` are integers.
//!
//! Every value produced by a diagram whose phases are multiples of `π/2^t` lives in this
//! ring, so equality of such values is decided by comparing canonical forms.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Result, ZxError};
use crate::phase::Phase;

/// Smallest order exponent; `ζ_8` is needed to express `√2`.
pub const MIN_ORDER: u32 = 3;

/// An exact element of `Z[ζ_{2^k}, 1/√2]`.
///
/// Values are kept canonical: `k ≥ 3` is minimal, `s ≥ 0` is minimal, and the
/// coefficient vector (length `2^(k-1)`, reduced with `ζ^(2^(k-1)) = -1`) is then unique.
/// Two values are equal iff their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNumber {
    k: u32,
    coeffs: Vec<i128>,
    s: u32,
}

/// `√2 = ζ^m - ζ^(3m)` with `m = 2^(k-3)`, applied in place to a coefficient vector.
fn mul_sqrt2(c: &[i128]) -> Vec<i128> {
    let n = c.len();
    let m = n / 4;
    let mut out = vec![0i128; n];
    for (j, &x) in c.iter().enumerate() {
        if x == 0 {
            continue;
        }
        add_monomial(&mut out, j + m, x);
        add_monomial(&mut out, j + 3 * m, -x);
    }
    out
}

/// Adds `x·ζ^e` (any `e`) into a negacyclic coefficient vector.
#[inline]
fn add_monomial(out: &mut [i128], e: usize, x: i128) {
    let n = out.len();
    let e = e % (2 * n);
    if e < n {
        out[e] += x;
    } else {
        out[e - n] -= x;
    }
}

/// Negacyclic product of two coefficient vectors of equal length.
pub(crate) fn negacyclic_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let n = a.len();
    let mut out = vec![0i128; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            let p = x * y;
            if i + j < n {
                out[i + j] += p;
            } else {
                out[i + j - n] -= p;
            }
        }
    }
    out
}

impl CycloNumber {
    /// Builds and normalises `(1/√2)^s · Σ coeffs[j] ζ^j` with `ζ` of order `2^k`.
    ///
    /// `coeffs` must have length `2^(k-1)`.
    pub fn from_parts(k: u32, coeffs: Vec<i128>, s: u32) -> CycloNumber {
        assert!(k >= MIN_ORDER, "order exponent must be at least {MIN_ORDER}");
        assert_eq!(coeffs.len(), 1usize << (k - 1), "coefficient count must be 2^(k-1)");
        let mut x = CycloNumber { k, coeffs, s };
        x.normalize();
        x
    }

    pub fn zero() -> CycloNumber {
        CycloNumber::from_int(0)
    }

    pub fn one() -> CycloNumber {
        CycloNumber::from_int(1)
    }

    pub fn from_int(n: i128) -> CycloNumber {
        let mut c = vec![0; 4];
        c[0] = n;
        CycloNumber::from_parts(MIN_ORDER, c, 0)
    }

    pub fn i() -> CycloNumber {
        CycloNumber::from_parts(MIN_ORDER, vec![0, 0, 1, 0], 0)
    }

    pub fn sqrt2() -> CycloNumber {
        CycloNumber::from_parts(MIN_ORDER, vec![0, 1, 0, -1], 0)
    }

    /// `(1/√2)^s` for any integer `s`.
    pub fn inv_sqrt2_pow(s: i32) -> CycloNumber {
        if s >= 0 {
            CycloNumber::from_parts(MIN_ORDER, vec![1, 0, 0, 0], s as u32)
        } else {
            let mut x = CycloNumber::one();
            for _ in 0..(-s) {
                x = &x * &CycloNumber::sqrt2();
            }
            x
        }
    }

    /// `e^{i·p}`, exact for dyadic phases.
    pub fn from_phase(p: Phase) -> Result<CycloNumber> {
        let t = p.dyadic_level().ok_or_else(|| ZxError::NonDyadicPhase(p.to_string()))?;
        let k = (t + 1).max(MIN_ORDER);
        let n = 1usize << (k - 1);
        let mut c = vec![0i128; n];
        let e = (p.num() as usize) << (k - 1 - t);
        add_monomial(&mut c, e, 1);
        Ok(CycloNumber::from_parts(k, c, 0))
    }

    /// `ζ^j` with `ζ` of order `2^k`.
    pub fn root_power(k: u32, j: i64) -> CycloNumber {
        let k = k.max(MIN_ORDER);
        let n = 1usize << (k - 1);
        let mut c = vec![0i128; n];
        add_monomial(&mut c, j.rem_euclid(2 * n as i64) as usize, 1);
        CycloNumber::from_parts(k, c, 0)
    }

    pub fn order_exponent(&self) -> u32 {
        self.k
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn sqrt2_exponent(&self) -> u32 {
        self.s
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Coefficients of the same value written over `ζ` of order `2^k` (`k ≥ self.k`),
    /// still scaled by `(1/√2)^self.s`.
    pub fn coefficients_at(&self, k: u32) -> Vec<i128> {
        assert!(k >= self.k);
        let stride = 1usize << (k - self.k);
        let mut out = vec![0i128; 1usize << (k - 1)];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[j * stride] = c;
        }
        out
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.k = MIN_ORDER;
            self.coeffs = vec![0; 4];
            self.s = 0;
            return;
        }
        while self.s > 0 {
            let t = mul_sqrt2(&self.coeffs);
            if t.iter().all(|c| c % 2 == 0) {
                self.coeffs = t.into_iter().map(|c| c / 2).collect();
                self.s -= 1;
            } else {
                break;
            }
        }
        while self.k > MIN_ORDER && self.coeffs.iter().skip(1).step_by(2).all(|&c| c == 0) {
            self.coeffs = self.coeffs.iter().step_by(2).copied().collect();
            self.k -= 1;
        }
    }

    /// Both operands over a common order and common `s`.
    fn aligned(&self, o: &CycloNumber) -> (u32, Vec<i128>, Vec<i128>, u32) {
        let k = self.k.max(o.k);
        let mut a = self.coefficients_at(k);
        let mut b = o.coefficients_at(k);
        let s = self.s.max(o.s);
        for _ in self.s..s {
            a = mul_sqrt2(&a);
        }
        for _ in o.s..s {
            b = mul_sqrt2(&b);
        }
        (k, a, b, s)
    }

    pub fn conj(&self) -> CycloNumber {
        let n = self.coeffs.len();
        let mut c = vec![0i128; n];
        for (j, &x) in self.coeffs.iter().enumerate() {
            add_monomial(&mut c, 2 * n - j, x);
        }
        CycloNumber::from_parts(self.k, c, self.s)
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.coeffs.len() as f64;
        let mut z = Complex64::new(0.0, 0.0);
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                z += Complex64::from_polar(c as f64, std::f64::consts::PI * j as f64 / n);
            }
        }
        z * std::f64::consts::FRAC_1_SQRT_2.powi(self.s as i32)
    }

    /// Squared modulus, exactly.
    pub fn norm_sqr(&self) -> CycloNumber {
        self * &self.conj()
    }

    /// `(a, b)` with `self = a + b·i`, if both are integers.
    pub fn as_gaussian(&self) -> Option<(i128, i128)> {
        let z = self.to_complex();
        let (a, b) = (z.re.round() as i128, z.im.round() as i128);
        let g = &CycloNumber::from_int(a) + &(&CycloNumber::from_int(b) * &CycloNumber::i());
        (&g == self).then_some((a, b))
    }

    /// `a+bi` for Gaussian integers, the ring form otherwise.
    pub fn pretty(&self) -> String {
        match self.as_gaussian() {
            Some((a, 0)) => format!("{a}"),
            Some((0, b)) => format!("{}i", unit_coeff(b)),
            Some((a, b)) if b < 0 => format!("{a}-{}i", unit_coeff(-b)),
            Some((a, b)) => format!("{a}+{}i", unit_coeff(b)),
            None => self.to_string(),
        }
    }
}

fn unit_coeff(b: i128) -> String {
    match b {
        1 => String::new(),
        -1 => "-".into(),
        b => b.to_string(),
    }
}

impl Add for &CycloNumber {
    type Output = CycloNumber;
    fn add(self, o: &CycloNumber) -> CycloNumber {
        let (k, a, b, s) = self.aligned(o);
        CycloNumber::from_parts(k, a.iter().zip(&b).map(|(x, y)| x + y).collect(), s)
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, o: &CycloNumber) -> CycloNumber {
        self + &(-o)
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber { k: self.k, coeffs: self.coeffs.iter().map(|c| -c).collect(), s: self.s }
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, o: &CycloNumber) -> CycloNumber {
        let k = self.k.max(o.k);
        let c = negacyclic_mul(&self.coefficients_at(k), &o.coefficients_at(k));
        CycloNumber::from_parts(k, c, self.s + o.s)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, o: CycloNumber) -> CycloNumber {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

impl std::iter::Sum for CycloNumber {
    fn sum<I: Iterator<Item = CycloNumber>>(iter: I) -> CycloNumber {
        iter.fold(CycloNumber::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for CycloNumber {
    fn product<I: Iterator<Item = CycloNumber>>(iter: I) -> CycloNumber {
        iter.fold(CycloNumber::one(), |a, b| &a * &b)
    }
}

impl Default for CycloNumber {
    fn default() -> Self {
        CycloNumber::zero()
    }
}

/// Debug form `(c0 + c1·ζ8^1 + …)·(1/√2)^s`.
impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = 1u64 << self.k;
        let mut terms = Vec::new();
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match j {
                0 => format!("{c}"),
                _ if c == 1 => format!("ζ{order}^{j}"),
                _ if c == -1 => format!("-ζ{order}^{j}"),
                _ => format!("{c}·ζ{order}^{j}"),
            });
        }
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ").replace("+ -", "- ") };
        if self.s == 0 {
            write!(f, "{body}")
        } else {
            write!(f, "({body})·(1/√2)^{}", self.s)
        }
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo[{self}]")
    }
}
