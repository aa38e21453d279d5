//! Kaczmarz auxiliary sequences for stationary exponential families.
//!
//! For unit vectors `e_0, e_1, …` the auxiliary sequence is `g_0 = e_0`,
//! `g_n = e_n − Σ_{k<n} ⟨e_n, e_k⟩ g_k`. Each `g_n` is stored through its
//! coefficients in `e_0..e_n`. The Kaczmarz partial sums
//! `Σ_{k≤N} ⟨f, g_k⟩ e_k` converge to every `f` exactly when the `g_n` form a
//! Parseval frame, which for exponentials happens when the spectral measure
//! is singular (or normalized Lebesgue).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measure::{CircleMeasure, FunctionSpec, MomentTable};

/// Largest order accepted by [`auxiliary_sequence`].
pub const DEFAULT_ORDER_CAP: usize = 4096;

/// Defects this far below zero are rounding noise and are reported as zero.
pub const DEFECT_CLAMP: f64 = 1e-12;

/// Lower-triangular coefficients of `g_n = Σ_{k≤n} α_{n,k} e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTriangle {
    rows: Vec<Vec<Complex64>>,
    frequency_step: f64,
    mass: f64,
}

impl CoefficientTriangle {
    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &[Complex64] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.rows
    }

    /// Multiplier `s` such that `e_n = exp(2πi s n x)`.
    pub fn frequency_step(&self) -> f64 {
        self.frequency_step
    }

    pub fn with_frequency_step(mut self, step: f64) -> Self {
        self.frequency_step = step;
        self
    }

    /// Mass removed when the moment table was normalized.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// `⟨f, g_n⟩ = Σ_k conj(α_{n,k}) ⟨f, e_k⟩` from the projections
    /// `⟨f, e_k⟩`, for every `n` covered by both the triangle and the input.
    pub fn analyze(&self, projections: &[Complex64]) -> Vec<Complex64> {
        let n_max = self.rows.len().min(projections.len());
        self.rows[..n_max].iter().map(|row| row.iter().zip(projections).map(|(a, p)| a.conj() * p).sum()).collect()
    }
}

/// Builds the auxiliary triangle of order `order` from moments of the
/// spectral measure. The table is normalized to unit mass first.
pub fn auxiliary_sequence(moments: &MomentTable, order: usize) -> Result<CoefficientTriangle> {
    auxiliary_sequence_capped(moments, order, DEFAULT_ORDER_CAP)
}

pub fn auxiliary_sequence_capped(moments: &MomentTable, order: usize, cap: usize) -> Result<CoefficientTriangle> {
    if order > cap {
        return Err(Error::OrderTooLarge { order, cap });
    }
    if moments.order() < order {
        return Err(Error::MomentsTooShort { requested: order, available: moments.order() });
    }
    let (moments, mass) = moments.normalized()?;

    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut row = vec![Complex64::new(0.0, 0.0); n + 1];
        row[n] = Complex64::new(1.0, 0.0);
        for (k, prev) in rows.iter().enumerate() {
            // ⟨e_n, e_k⟩ = μ̂(k − n)
            let c = moments.get(k as i64 - n as i64);
            for (r, p) in row.iter_mut().zip(prev) {
                *r -= c * p;
            }
        }
        rows.push(row);
    }
    Ok(CoefficientTriangle { rows, frequency_step: 1.0, mass })
}

/// `‖Σ_{k≤n} c_k e_k − f‖²` from `‖f‖²`, the projections `⟨f, e_k⟩`, the
/// coefficients `c_k` and the (unit-mass) moments.
pub fn residual_from_parts(
    norm_sq: f64,
    projections: &[Complex64],
    coefficients: &[Complex64],
    moments: &MomentTable,
    n: usize,
) -> f64 {
    let c = &coefficients[..=n];
    let cross: Complex64 = c.iter().zip(projections).map(|(ck, pk)| ck.conj() * pk).sum();
    let mut quad = Complex64::new(0.0, 0.0);
    for (j, cj) in c.iter().enumerate() {
        let mut inner = Complex64::new(0.0, 0.0);
        for (k, ck) in c.iter().enumerate() {
            inner += ck.conj() * moments.get(k as i64 - j as i64);
        }
        quad += cj * inner;
    }
    clamp_defect(norm_sq - 2.0 * cross.re + quad.re)
}

pub(crate) fn clamp_defect(value: f64) -> f64 {
    if (-DEFECT_CLAMP..0.0).contains(&value) {
        0.0
    } else {
        value
    }
}

/// Projections `⟨f, e_k⟩` for `k = 0..=n` under `μ / |μ|`.
fn normalized_projections(measure: &CircleMeasure, f: &FunctionSpec, n: usize) -> Result<Vec<Complex64>> {
    let mass = measure.total_mass();
    let mut p = measure.exponential_projections(f, 0, n as i64)?;
    for v in &mut p {
        *v /= mass;
    }
    Ok(p)
}

/// `⟨f, g_n⟩` under the normalized measure, for `n = 0..=order`.
pub fn analysis_coefficients(
    triangle: &CoefficientTriangle,
    measure: &CircleMeasure,
    f: &FunctionSpec,
) -> Result<Vec<Complex64>> {
    let p = normalized_projections(measure, f, triangle.order())?;
    Ok(triangle.analyze(&p))
}

/// `‖f‖² − Σ_{n≤N} |⟨f, g_n⟩|²` under the normalized measure.
pub fn parseval_defect(
    measure: &CircleMeasure,
    triangle: &CoefficientTriangle,
    f: &FunctionSpec,
    n: usize,
) -> Result<f64> {
    check_order(triangle, n)?;
    let norm = measure.norm_sq(f)? / measure.total_mass();
    let p = normalized_projections(measure, f, n)?;
    let coeffs = triangle.analyze(&p);
    Ok(defect_from_coefficients(norm, &coeffs[..=n]))
}

/// `‖f − Σ_{k≤N} ⟨f, g_k⟩ e_k‖²` under the normalized measure.
pub fn reconstruction_residual(
    measure: &CircleMeasure,
    triangle: &CoefficientTriangle,
    f: &FunctionSpec,
    n: usize,
) -> Result<f64> {
    check_order(triangle, n)?;
    let (unit, _) = measure.normalized();
    let moments = MomentTable::from_measure(&unit, n);
    let norm = unit.norm_sq(f)?;
    let p = unit.exponential_projections(f, 0, n as i64)?;
    let coeffs = triangle.analyze(&p);
    Ok(residual_from_parts(norm, &p, &coeffs, &moments, n))
}

fn check_order(triangle: &CoefficientTriangle, n: usize) -> Result<()> {
    if n > triangle.order() {
        return Err(Error::TruncationOrder { requested: n, available: triangle.order() });
    }
    Ok(())
}

pub(crate) fn defect_from_coefficients(norm_sq: f64, coefficients: &[Complex64]) -> f64 {
    clamp_defect(norm_sq - coefficients.iter().map(|c| c.norm_sqr()).sum::<f64>())
}

/// One line of an effectiveness table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectRow {
    pub order: usize,
    pub defect: f64,
    pub residual: f64,
}

/// Defect and residual of `f` at each order, sharing one triangle built at
/// the largest order. `orders` must be strictly increasing.
pub fn effectiveness_table(measure: &CircleMeasure, f: &FunctionSpec, orders: &[usize]) -> Result<Vec<DefectRow>> {
    if orders.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("orders must be strictly increasing".into()));
    }
    let Some(&top) = orders.last() else {
        return Ok(Vec::new());
    };
    let (unit, _) = measure.normalized();
    let moments = MomentTable::from_measure(&unit, top);
    let triangle = auxiliary_sequence(&moments, top)?;
    let norm = unit.norm_sq(f)?;
    let p = unit.exponential_projections(f, 0, top as i64)?;
    let coeffs = triangle.analyze(&p);
    Ok(orders
        .iter()
        .map(|&n| DefectRow {
            order: n,
            defect: defect_from_coefficients(norm, &coeffs[..=n]),
            residual: residual_from_parts(norm, &p, &coeffs, &moments, n),
        })
        .collect())
}
