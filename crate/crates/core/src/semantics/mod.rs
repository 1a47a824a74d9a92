//! The standard interpretation: every diagram `n → m` denotes a `2^m × 2^n` matrix.
//!
//! Basis convention: the column index spells the input bits with input port 0 as the most
//! significant bit; the row index spells the output bits the same way.

mod elem;
mod engine;

use std::fmt;

use num_complex::Complex64;

use crate::diagram::Diagram;
use crate::error::{Result, ZxError};
use crate::scalar::{CycloNumber, MIN_ORDER};
use elem::Cyc;

pub const DEFAULT_MAX_BOUNDARY: usize = 16;

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    /// Largest `inputs + outputs` accepted.
    pub max_boundary: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { max_boundary: DEFAULT_MAX_BOUNDARY }
    }
}

/// Entry types a [`Matrix`] can hold.
pub trait Entry: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_complex(&self) -> Complex64;
}

impl Entry for CycloNumber {
    fn zero() -> Self {
        CycloNumber::zero()
    }
    fn one() -> Self {
        CycloNumber::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero(&self) -> bool {
        CycloNumber::is_zero(self)
    }
    fn to_complex(&self) -> Complex64 {
        CycloNumber::to_complex(self)
    }
}

/// Floats print as `re+imi` with six decimals.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Approx(pub Complex64);

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.0;
        let clean = |x: f64| if x.abs() < 5e-7 { 0.0 } else { x };
        let (re, im) = (clean(c.re), clean(c.im));
        if im < 0.0 {
            write!(f, "{re:.6}-{:.6}i", -im)
        } else {
            write!(f, "{re:.6}+{im:.6}i")
        }
    }
}

impl Entry for Approx {
    fn zero() -> Self {
        Approx(Complex64::new(0.0, 0.0))
    }
    fn one() -> Self {
        Approx(Complex64::new(1.0, 0.0))
    }
    fn add(&self, o: &Self) -> Self {
        Approx(self.0 + o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Approx(self.0 - o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Approx(self.0 * o.0)
    }
    fn is_zero(&self) -> bool {
        self.0 == Complex64::new(0.0, 0.0)
    }
    fn to_complex(&self) -> Complex64 {
        self.0
    }
}

/// A dense row-major matrix with power-of-two dimensions.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ExactMatrix = Matrix<CycloNumber>;
pub type FloatMatrix = Matrix<Approx>;

impl<T: Entry> Matrix<T> {
    pub fn from_rows(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if !rows.is_power_of_two() || !cols.is_power_of_two() || data.len() != rows * cols {
            return Err(ZxError::Dimension(format!("{rows}×{cols} with {} entries", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n * n).map(|i| if i / n == i % n { T::one() } else { T::zero() }).collect();
        Matrix { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Entry::is_zero)
    }

    /// `self × o`.
    pub fn matmul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(ZxError::Dimension(format!("{}×{} times {}×{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut data = vec![T::zero(); self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    data[idx] = data[idx].add(&a.mul(o.get(k, j)));
                }
            }
        }
        Ok(Matrix { rows: self.rows, cols: o.cols, data })
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        let (rows, cols) = (self.rows * o.rows, self.cols * o.cols);
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(self.get(i / o.rows, j / o.cols).mul(o.get(i % o.rows, j % o.cols)));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn scale(&self, x: &T) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|e| e.mul(x)).collect() }
    }

    pub fn to_float(&self) -> FloatMatrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|e| Approx(e.to_complex())).collect() }
    }

    /// Largest entry modulus of `self - o`.
    pub fn max_abs_diff(&self, o: &Self) -> Result<f64> {
        self.check_dims(o)?;
        Ok(self.data.iter().zip(&o.data).map(|(a, b)| (a.to_complex() - b.to_complex()).norm()).fold(0.0, f64::max))
    }

    fn check_dims(&self, o: &Self) -> Result<()> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(ZxError::Dimension(format!("{}×{} vs {}×{}", self.rows, self.cols, o.rows, o.cols)));
        }
        Ok(())
    }
}

/// Row-major dump, one line per row, entries separated by two spaces.
impl<T: Entry> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "{}", row.join("  "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Comparison {
    Exact,
    Tolerance(f64),
}

pub fn matrices_equal<T: Entry>(a: &Matrix<T>, b: &Matrix<T>, mode: Comparison) -> Result<bool> {
    a.check_dims(b)?;
    Ok(match mode {
        Comparison::Exact => a.data.iter().zip(&b.data).all(|(x, y)| x.sub(y).is_zero()),
        Comparison::Tolerance(eps) => a.max_abs_diff(b)? <= eps,
    })
}

fn check_size(d: &Diagram, opts: &EvalOptions) -> Result<()> {
    if d.boundary_len() > opts.max_boundary {
        return Err(ZxError::SizeLimit { wires: d.boundary_len(), limit: opts.max_boundary });
    }
    d.validate()
}

/// Order exponent `k` of the cyclotomic ring that holds every phase of `d`.
fn required_order(d: &Diagram) -> Result<u32> {
    let mut t = 0;
    for (_, kind) in d.vertices() {
        if let Some(p) = kind.phase() {
            t = t.max(p.dyadic_level().ok_or_else(|| ZxError::NonDyadicPhase(p.to_string()))?);
        }
    }
    Ok(MIN_ORDER.max(t + 1))
}

/// Exact evaluation with the default size limit.
pub fn evaluate(d: &Diagram) -> Result<ExactMatrix> {
    evaluate_with(d, &EvalOptions::default())
}

pub fn evaluate_with(d: &Diagram, opts: &EvalOptions) -> Result<ExactMatrix> {
    check_size(d, opts)?;
    let k = required_order(d)?;
    macro_rules! dispatch {
        ($($n:literal),*) => {
            match 1usize << (k - 1) {
                $($n => exact_at::<$n>(d, k),)*
                _ => Err(ZxError::NonDyadicPhase(format!("phase denominator 2^{} exceeds the exact range", k - 1))),
            }
        };
    }
    dispatch!(4, 8, 16, 32, 64, 128, 256)
}

fn exact_at<const N: usize>(d: &Diagram, k: u32) -> Result<ExactMatrix> {
    let c = engine::contract_diagram::<Cyc<N>>(d)?;
    let data = c.data.into_iter().map(|x| CycloNumber::from_parts(k, x.0.to_vec(), c.s)).collect();
    Ok(Matrix { rows: 1 << d.n_outputs(), cols: 1 << d.n_inputs(), data })
}

/// Floating-point evaluation; accepts any rational phase.
pub fn evaluate_float(d: &Diagram) -> Result<FloatMatrix> {
    evaluate_float_with(d, &EvalOptions::default())
}

pub fn evaluate_float_with(d: &Diagram, opts: &EvalOptions) -> Result<FloatMatrix> {
    check_size(d, opts)?;
    let c = engine::contract_diagram::<Complex64>(d)?;
    let f = std::f64::consts::FRAC_1_SQRT_2.powi(c.s as i32);
    let data = c.data.into_iter().map(|x| Approx(x * f)).collect();
    Ok(Matrix { rows: 1 << d.n_outputs(), cols: 1 << d.n_inputs(), data })
}

/// The value of a diagram with empty boundary.
pub fn scalar_of(d: &Diagram) -> Result<CycloNumber> {
    if !d.is_scalar() {
        return Err(ZxError::NotScalar { inputs: d.n_inputs(), outputs: d.n_outputs() });
    }
    Ok(evaluate(d)?.data.pop().expect("1×1 matrix"))
}

/// `⟦a⟧ = ⟦b⟧` exactly.
pub fn semantically_equal(a: &Diagram, b: &Diagram) -> Result<bool> {
    matrices_equal(&evaluate(a)?, &evaluate(b)?, Comparison::Exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{make_generator, Generator, VertexKind};
    use crate::phase::Phase;

    fn cy(p: Phase) -> CycloNumber {
        CycloNumber::from_phase(p).unwrap()
    }

    #[test]
    fn empty_is_one() {
        let m = evaluate(&Diagram::empty()).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert_eq!(m.get(0, 0), &CycloNumber::one());
    }

    #[test]
    fn z_one_one_is_diagonal() {
        for p in Phase::dyadic_grid(2) {
            let m = evaluate(&make_generator(Generator::Z(p), 1, 1).unwrap()).unwrap();
            let want = Matrix::from_rows(2, 2, vec![CycloNumber::one(), CycloNumber::zero(), CycloNumber::zero(), cy(p)])
                .unwrap();
            assert_eq!(m, want);
        }
    }

    #[test]
    fn x_state_matches_half_angle_form() {
        // √2 e^{iα/2} (cos(α/2), -i sin(α/2))
        for p in Phase::dyadic_grid(3) {
            let m = evaluate_float(&make_generator(Generator::X(p), 0, 1).unwrap()).unwrap();
            let a = p.to_f64();
            let pre = Complex64::from_polar(2f64.sqrt(), a / 2.0);
            let want = [pre * (a / 2.0).cos(), pre * Complex64::new(0.0, -(a / 2.0).sin())];
            for (i, w) in want.iter().enumerate() {
                assert!((m.get(i, 0).0 - w).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn z_pi_scalar_is_zero() {
        let d = make_generator(Generator::Z(Phase::PI), 0, 0).unwrap();
        assert!(scalar_of(&d).unwrap().is_zero());
    }

    #[test]
    fn z_scalar_is_one_plus_root() {
        for p in Phase::dyadic_grid(2) {
            let d = make_generator(Generator::Z(p), 0, 0).unwrap();
            assert_eq!(scalar_of(&d).unwrap(), &CycloNumber::one() + &cy(p));
        }
    }

    #[test]
    fn circle_is_two() {
        let cap = make_generator(Generator::Cap, 0, 2).unwrap();
        let cup = make_generator(Generator::Cup, 2, 0).unwrap();
        assert_eq!(scalar_of(&cap.then(&cup).unwrap()).unwrap(), CycloNumber::from_int(2));
    }

    #[test]
    fn hadamard_is_involutive() {
        let h = make_generator(Generator::H, 1, 1).unwrap();
        let hh = evaluate(&h.then(&h).unwrap()).unwrap();
        let id = evaluate(&make_generator(Generator::Identity, 1, 1).unwrap()).unwrap();
        assert!(matrices_equal(&hh, &id, Comparison::Exact).unwrap());
        let hm = evaluate(&h).unwrap();
        assert_eq!(hm.get(1, 1), &(-&CycloNumber::inv_sqrt2_pow(1)));
    }

    #[test]
    fn distinct_diagonals_differ() {
        let a = evaluate(&make_generator(Generator::Z(Phase::QUARTER_PI), 1, 1).unwrap()).unwrap();
        let b = evaluate(&make_generator(Generator::Z(Phase::HALF_PI), 1, 1).unwrap()).unwrap();
        assert!(!matrices_equal(&a, &b, Comparison::Exact).unwrap());
        assert!(!matrices_equal(&a.to_float(), &b.to_float(), Comparison::Tolerance(1e-9)).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = evaluate(&make_generator(Generator::Z(Phase::ZERO), 1, 1).unwrap()).unwrap();
        let b = evaluate(&make_generator(Generator::Z(Phase::ZERO), 0, 1).unwrap()).unwrap();
        assert!(matches!(matrices_equal(&a, &b, Comparison::Exact), Err(ZxError::Dimension(_))));
    }

    #[test]
    fn self_loop_drops_two_legs() {
        // Z(α) with a self-loop and one output equals Z(α) with one output
        let mut d = Diagram::with_boundary(0, 1);
        let v = d.add_vertex(VertexKind::Z(Phase::QUARTER_PI));
        d.add_wire(v, v);
        d.add_wire(v, crate::Endpoint::Output(0));
        let plain = make_generator(Generator::Z(Phase::QUARTER_PI), 0, 1).unwrap();
        assert!(semantically_equal(&d, &plain).unwrap());
    }

    #[test]
    fn limits() {
        let d = make_generator(Generator::Z(Phase::ZERO), 9, 9).unwrap();
        assert!(matches!(evaluate(&d), Err(ZxError::SizeLimit { wires: 18, limit: 16 })));
        let d = make_generator(Generator::Z(Phase::new(1, 3)), 1, 1).unwrap();
        assert!(matches!(evaluate(&d), Err(ZxError::NonDyadicPhase(_))));
        assert!(evaluate_float(&d).is_ok());
    }

    #[test]
    fn dump_format() {
        let m = evaluate(&make_generator(Generator::H, 1, 1).unwrap()).unwrap();
        assert_eq!(m.to_string(), "(1)·(1/√2)^1  (1)·(1/√2)^1\n(1)·(1/√2)^1  (-1)·(1/√2)^1\n");
    }
}
