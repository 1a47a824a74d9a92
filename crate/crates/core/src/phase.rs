//! Angles as exact rational multiples of π, reduced into `[0, 2π)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::ZxError;

/// The angle `(num / den)·π` with `0 ≤ num < 2·den` and the fraction in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPhase", into = "RawPhase")]
pub struct Phase {
    num: i64,
    den: i64,
}

#[derive(Serialize, Deserialize)]
struct RawPhase {
    num: i64,
    den: i64,
}

impl TryFrom<RawPhase> for Phase {
    type Error = ZxError;
    fn try_from(r: RawPhase) -> Result<Self, ZxError> {
        Phase::try_new(r.num, r.den)
    }
}

impl From<Phase> for RawPhase {
    fn from(p: Phase) -> Self {
        RawPhase { num: p.num, den: p.den }
    }
}

impl Phase {
    pub const ZERO: Phase = Phase { num: 0, den: 1 };
    pub const PI: Phase = Phase { num: 1, den: 1 };
    pub const HALF_PI: Phase = Phase { num: 1, den: 2 };
    pub const QUARTER_PI: Phase = Phase { num: 1, den: 4 };

    /// `(num/den)·π`, reduced mod 2π. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Phase {
        Phase::try_new(num, den).expect("phase denominator must be non-zero")
    }

    pub fn try_new(num: i64, den: i64) -> Result<Phase, ZxError> {
        if den == 0 {
            return Err(ZxError::InvalidPhase(format!("{num}/{den}")));
        }
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = num.gcd(&den);
        num /= g;
        den /= g;
        num = num.rem_euclid(2 * den);
        if num == 0 {
            den = 1;
        }
        Ok(Phase { num, den })
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// True when the angle is an integer multiple of `π / 2^j` for some `j`.
    pub fn is_dyadic(self) -> bool {
        self.den > 0 && (self.den & (self.den - 1)) == 0
    }

    /// Smallest `t` such that the angle is a multiple of `π / 2^t`, for dyadic phases.
    pub fn dyadic_level(self) -> Option<u32> {
        self.is_dyadic().then(|| self.den.trailing_zeros())
    }

    /// Multiplying by an integer, mod 2π.
    pub fn times(self, k: i64) -> Phase {
        let n = (self.num as i128 * k as i128).rem_euclid(2 * self.den as i128) as i64;
        Phase::new(n, self.den)
    }

    /// One of the two angles `β` with `2β = self`; the other is `β + π`.
    pub fn half(self) -> Phase {
        Phase::new(self.num, 2 * self.den)
    }

    pub fn to_f64(self) -> f64 {
        std::f64::consts::PI * self.num as f64 / self.den as f64
    }

    /// The grid `{ jπ / 2^(level) : 0 ≤ j < 2^(level+1) }`.
    pub fn dyadic_grid(level: u32) -> Vec<Phase> {
        let den = 1i64 << level;
        (0..2 * den).map(|j| Phase::new(j, den)).collect()
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, o: Phase) -> Phase {
        let l = self.den.lcm(&o.den);
        Phase::new(self.num * (l / self.den) + o.num * (l / o.den), l)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::new(-self.num, self.den)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, o: Phase) -> Phase {
        self + (-o)
    }
}

impl Mul<i64> for Phase {
    type Output = Phase;
    fn mul(self, k: i64) -> Phase {
        self.times(k)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "π"),
            (n, 1) => write!(f, "{n}π"),
            (1, d) => write!(f, "π/{d}"),
            (n, d) => write!(f, "{n}π/{d}"),
        }
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({}/{})", self.num, self.den)
    }
}

/// Parses `p/q` (meaning `(p/q)·π`) or a bare integer `p` (meaning `p·π`).
impl FromStr for Phase {
    type Err = ZxError;
    fn from_str(s: &str) -> Result<Phase, ZxError> {
        let bad = || ZxError::InvalidPhase(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p = p.trim().parse::<i64>().map_err(|_| bad())?;
                let q = q.trim().parse::<i64>().map_err(|_| bad())?;
                Phase::try_new(p, q).map_err(|_| bad())
            }
            None => Ok(Phase::new(s.parse::<i64>().map_err(|_| bad())?, 1)),
        }
    }
}
