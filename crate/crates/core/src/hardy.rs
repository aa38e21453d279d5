//! Disk extensions of dual coefficient sequences.
//!
//! A coefficient sequence `{⟨f, g_n⟩}` becomes the function
//! `A(f)(re^{2πiθ}) = Σ_n ⟨f, g_n⟩ r^{|n|} e^{2πinθ}` on the disk. This module
//! covers Cauchy and normalized Cauchy transforms, Abel means at the
//! boundary, and the reproducing kernels of spaces spanned by finite frames.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::dextrodual::DualSystem;
use crate::error::{Error, Result};
use crate::measure::{CircleMeasure, FunctionSpec};
use crate::partial_sum::{partial_sum_error, Coefficients};

/// Smallest frame-operator eigenvalue accepted as a frame.
pub const FRAME_EIGENVALUE_FLOOR: f64 = 1e-10;

/// Kernel truncations stop once `|w|^L` drops below this.
pub const KERNEL_TAIL: f64 = 1e-12;

/// Largest `|w|` at which kernels are evaluated.
pub const MAX_KERNEL_RADIUS: f64 = 0.999;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `Σ_{|n|≤M} c_n r^{|n|} e^{2πinθ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskSeries {
    coefficients: Coefficients,
}

impl DiskSeries {
    pub fn new(coefficients: Coefficients) -> Self {
        Self { coefficients }
    }

    pub fn one_sided(values: &[Complex64]) -> Self {
        let order = values.len().saturating_sub(1);
        Self { coefficients: Coefficients::from_one_sided(values, order) }
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    /// Coefficients of `z⁰, z¹, …`.
    pub fn nonnegative(&self) -> &[Complex64] {
        &self.coefficients.values()[self.coefficients.order()..]
    }

    pub fn evaluate(&self, r: f64, theta: f64) -> Complex64 {
        disk_extension(&self.coefficients, r, theta)
    }

    /// Value at `z` for a one-sided series, by Horner's rule.
    pub fn evaluate_at(&self, z: Complex64) -> Complex64 {
        self.nonnegative().iter().rev().fold(zero(), |acc, c| acc * z + c)
    }
}

/// `C_μ(f)`: coefficients `⟨f, e_n⟩_μ` for `0 ≤ n ≤ M`.
pub fn cauchy_series(measure: &CircleMeasure, f: &FunctionSpec, order: usize) -> Result<DiskSeries> {
    Ok(DiskSeries::one_sided(&measure.exponential_projections(f, 0, order as i64)?))
}

/// Power-series quotient `a / b` to the length of `a`.
pub fn series_divide(numerator: &[Complex64], denominator: &[Complex64]) -> Result<Vec<Complex64>> {
    let lead = denominator.first().copied().unwrap_or_else(zero);
    if lead == zero() {
        return Err(Error::ZeroMass);
    }
    let mut q: Vec<Complex64> = Vec::with_capacity(numerator.len());
    for n in 0..numerator.len() {
        let mut acc = numerator[n];
        for k in 1..=n.min(denominator.len() - 1) {
            acc -= denominator[k] * q[n - k];
        }
        q.push(acc / lead);
    }
    Ok(q)
}

/// `V_μ(f) = C_μ(f) / C_μ(1)`.
pub fn normalized_cauchy_series(measure: &CircleMeasure, f: &FunctionSpec, order: usize) -> Result<DiskSeries> {
    let num = measure.exponential_projections(f, 0, order as i64)?;
    let den: Vec<Complex64> = (0..=order as i64).map(|n| measure.moment(n)).collect();
    Ok(DiskSeries::one_sided(&series_divide(&num, &den)?))
}

/// `A(f)(re^{2πiθ})` for the given coefficients.
pub fn disk_extension(coefficients: &Coefficients, r: f64, theta: f64) -> Complex64 {
    coefficients.abel_weighted(r).evaluate(theta)
}

/// `‖Σ_{|n|≤M} ⟨f, G_n⟩ r^{|n|} e_n − f‖²_μ`.
pub fn boundary_error<D: DualSystem + ?Sized>(dual: &D, f: &FunctionSpec, r: f64, order: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidArgument(format!("radius {r} is not in [0, 1]")));
    }
    let coeffs = dual.coefficients(f, order)?.abel_weighted(r);
    Ok(partial_sum_error(dual.measure(), &coeffs, f)?.total_error_sq)
}

/// Boundary errors along several radii, sharing one coefficient computation.
pub fn boundary_errors<D: DualSystem + ?Sized>(
    dual: &D,
    f: &FunctionSpec,
    radii: &[f64],
    order: usize,
) -> Result<Vec<(f64, f64)>> {
    let coeffs = dual.coefficients(f, order)?;
    radii
        .iter()
        .map(|&r| {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::InvalidArgument(format!("radius {r} is not in [0, 1]")));
            }
            let e = partial_sum_error(dual.measure(), &coeffs.abel_weighted(r), f)?.total_error_sq;
            Ok((r, e))
        })
        .collect()
}

/// Vectors `g_0, …, g_{L−1}` in `ℂ^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteFrameFamily {
    dimension: usize,
    vectors: Vec<DVector<Complex64>>,
}

impl FiniteFrameFamily {
    pub fn new(vectors: Vec<DVector<Complex64>>) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(Error::InvalidArgument("family is empty".into()));
        };
        let dimension = first.len();
        if dimension == 0 || vectors.iter().any(|v| v.len() != dimension) {
            return Err(Error::InvalidArgument("family vectors must share a positive dimension".into()));
        }
        Ok(Self { dimension, vectors })
    }

    /// The standard basis `e_0, …, e_{d−1}`.
    pub fn orthonormal(dimension: usize) -> Result<Self> {
        Self::new((0..dimension).map(|n| basis_vector(dimension, n, 1.0)).collect())
    }

    /// `e_0`, then each `e_j / √j` repeated `j` times, for `j < d`.
    pub fn repeated_basis(dimension: usize) -> Result<Self> {
        let mut vectors = Vec::new();
        if dimension > 0 {
            vectors.push(basis_vector(dimension, 0, 1.0));
        }
        for j in 1..dimension {
            let scale = 1.0 / (j as f64).sqrt();
            vectors.extend((0..j).map(|_| basis_vector(dimension, j, scale)));
        }
        Self::new(vectors)
    }

    /// `g_n = Tⁿ g_0` for `n < len`.
    pub fn orbit(operator: &DMatrix<Complex64>, start: DVector<Complex64>, len: usize) -> Result<Self> {
        let mut vectors = Vec::with_capacity(len);
        let mut v = start;
        for _ in 0..len {
            let next = operator * &v;
            vectors.push(v);
            v = next;
        }
        Self::new(vectors)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[DVector<Complex64>] {
        &self.vectors
    }

    /// `G_{nk} = ⟨g_k, g_n⟩`.
    pub fn gram(&self) -> DMatrix<Complex64> {
        let l = self.len();
        DMatrix::from_fn(l, l, |n, k| self.vectors[n].dotc(&self.vectors[k]))
    }

    /// `S = Σ_n g_n g_n*`.
    pub fn frame_operator(&self) -> DMatrix<Complex64> {
        let mut s = DMatrix::zeros(self.dimension, self.dimension);
        for g in &self.vectors {
            s += g * g.adjoint();
        }
        s
    }

    pub fn frame_bounds(&self) -> (f64, f64) {
        let eig = self.frame_operator().symmetric_eigenvalues();
        (eig.min(), eig.max())
    }

    pub fn is_parseval(&self, tol: f64) -> bool {
        let s = self.frame_operator();
        let id = DMatrix::<Complex64>::identity(self.dimension, self.dimension);
        (s - id).iter().all(|v| v.norm() <= tol)
    }

    /// `⟨x, g_n⟩` for every `n`.
    pub fn analysis(&self, x: &DVector<Complex64>) -> Vec<Complex64> {
        self.vectors.iter().map(|g| g.dotc(x)).collect()
    }

    fn inverse_frame_operator(&self) -> Result<DMatrix<Complex64>> {
        let s = self.frame_operator();
        let smallest = s.clone().symmetric_eigenvalues().min();
        if smallest.is_nan() || smallest <= FRAME_EIGENVALUE_FLOOR {
            return Err(Error::NotAFrame { smallest_eigenvalue: smallest });
        }
        s.cholesky().map(|c| c.inverse()).ok_or(Error::NotAFrame { smallest_eigenvalue: smallest })
    }

    /// `κ_k = Σ_{n<L} ⟨S⁻¹ g_n, g_k⟩ w̄ⁿ`, the coefficients of `K_w`.
    fn kernel_coefficients(&self, w: Complex64, truncation: usize) -> Result<Vec<Complex64>> {
        check_radius(w)?;
        let inv = self.inverse_frame_operator()?;
        let l = truncation.min(self.len());
        let mut h = DVector::zeros(self.dimension);
        let mut wn = Complex64::new(1.0, 0.0);
        for g in &self.vectors[..l] {
            h += &inv * g * wn.conj();
            wn *= w;
        }
        Ok(self.vectors[..l].iter().map(|g| g.dotc(&h)).collect())
    }
}

fn basis_vector(dimension: usize, n: usize, scale: f64) -> DVector<Complex64> {
    let mut v = DVector::zeros(dimension);
    v[n] = Complex64::new(scale, 0.0);
    v
}

fn check_radius(w: Complex64) -> Result<()> {
    if w.norm() >= MAX_KERNEL_RADIUS {
        return Err(Error::InvalidArgument(format!("|w| = {} is too close to the boundary", w.norm())));
    }
    Ok(())
}

/// Smallest `L` with `|w|^L < tail`.
pub fn kernel_truncation(w: Complex64, tail: f64) -> usize {
    let r = w.norm();
    if r == 0.0 {
        return 1;
    }
    let l = (tail.ln() / r.ln()).ceil().max(1.0) as usize;
    if r.powi(l as i32) < tail {
        l
    } else {
        l + 1
    }
}

/// `K_w(z) = Σ_{k,n<L} ⟨S⁻¹ g_n, g_k⟩ w̄ⁿ zᵏ`.
pub fn reproducing_kernel_eval(
    family: &FiniteFrameFamily,
    w: Complex64,
    z: Complex64,
    truncation: usize,
) -> Result<Complex64> {
    check_radius(z)?;
    let kappa = family.kernel_coefficients(w, truncation)?;
    Ok(kappa.iter().rev().fold(zero(), |acc, c| acc * z + c))
}

/// `(A(x)(w), ⟨A(x), K_w⟩)` with the pairing taken on power-series
/// coefficients.
pub fn kernel_reproduces(
    family: &FiniteFrameFamily,
    x: &DVector<Complex64>,
    w: Complex64,
) -> Result<(Complex64, Complex64)> {
    if x.len() != family.dimension() {
        return Err(Error::InvalidArgument(format!(
            "vector has dimension {}, family has {}",
            x.len(),
            family.dimension()
        )));
    }
    let coeffs = family.analysis(x);
    let kappa = family.kernel_coefficients(w, family.len())?;
    let lhs = coeffs.iter().rev().fold(zero(), |acc, c| acc * w + c);
    let rhs = coeffs.iter().zip(&kappa).map(|(c, k)| c * k.conj()).sum();
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftFit {
    /// `min_T Σ_n ‖T g_n − g_{n+1}‖²`.
    pub residual: f64,
    /// Spectral norm of the minimum-norm minimizer.
    pub operator_norm: f64,
}

/// Least-squares search for an operator mapping each `g_n` to `g_{n+1}`.
pub fn shift_residual(family: &FiniteFrameFamily) -> Result<ShiftFit> {
    let l = family.len();
    if l < 2 {
        return Err(Error::InvalidArgument("shift fit needs at least two vectors".into()));
    }
    let d = family.dimension();
    let x = DMatrix::from_fn(d, l - 1, |i, j| family.vectors()[j][i]);
    let y = DMatrix::from_fn(d, l - 1, |i, j| family.vectors()[j + 1][i]);
    let svd = x.clone().svd(true, true);
    let eps = 1e-12 * svd.singular_values.max().max(f64::MIN_POSITIVE);
    let pinv = svd.pseudo_inverse(eps).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let t = &y * &pinv;
    let residual = (&t * &x - &y).norm_squared();
    let operator_norm = t.singular_values().max();
    Ok(ShiftFit { residual, operator_norm })
}
