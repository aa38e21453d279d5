//! Symmetric trigonometric partial sums `S_M = Σ_{|n|≤M} c_n e_n` and their
//! exact squared distance to a test function in `L²(μ)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measure::{cis_turns, exp_integral, CircleMeasure, FunctionSpec};

/// Coefficients `c_n` for `n ∈ [-M, M]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    order: usize,
    values: Vec<Complex64>,
}

impl Coefficients {
    pub fn zeros(order: usize) -> Self {
        Self { order, values: vec![Complex64::new(0.0, 0.0); 2 * order + 1] }
    }

    /// `values[i]` is the coefficient of index `i - order`.
    pub fn from_values(order: usize, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != 2 * order + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients for order {order}, got {}",
                2 * order + 1,
                values.len()
            )));
        }
        Ok(Self { order, values })
    }

    /// Two-sided coefficients from a one-sided sequence (zero for `n < 0`).
    pub fn from_one_sided(one_sided: &[Complex64], order: usize) -> Self {
        let mut out = Self::zeros(order);
        for (n, v) in one_sided.iter().take(order + 1).enumerate() {
            out.values[order + n] = *v;
        }
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.order {
            return Complex64::new(0.0, 0.0);
        }
        self.values[(self.order as i64 + n) as usize]
    }

    pub fn indexed(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let m = self.order as i64;
        self.values.iter().enumerate().map(move |(i, v)| (i as i64 - m, *v))
    }

    pub fn truncated(&self, order: usize) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let start = self.order - order;
        Self { order, values: self.values[start..start + 2 * order + 1].to_vec() }
    }

    /// `Σ |c_n|²`.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    /// Abel weighting `c_n r^{|n|}`.
    pub fn abel_weighted(&self, r: f64) -> Self {
        let values = self.indexed().map(|(n, v)| v * r.powi(n.unsigned_abs() as i32)).collect();
        Self { order: self.order, values }
    }

    /// `S_M(x)`.
    pub fn evaluate(&self, x: f64) -> Complex64 {
        self.indexed().map(|(n, v)| v * cis_turns(n as f64 * x)).sum()
    }

    /// `R_j = Σ_n c_n conj(c_{n−j})` for `j ∈ [-2M, 2M]`, stored at `j + 2M`.
    fn autocorrelation(&self) -> Vec<Complex64> {
        let len = self.values.len();
        let mut out = vec![Complex64::new(0.0, 0.0); 2 * len - 1];
        for (a, ca) in self.values.iter().enumerate() {
            if *ca == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (b, cb) in self.values.iter().enumerate() {
                // j = a − b
                out[a + len - 1 - b] += ca * cb.conj();
            }
        }
        out
    }
}

/// Squared `L²(μ)` errors of a partial sum against a target function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub atom_error_sq: f64,
    pub density_error_sq: f64,
    pub total_error_sq: f64,
}

/// `‖S_M − f‖²_μ` split into atomic and density contributions, computed from
/// closed-form quadratic forms. Measures with a Cantor component are
/// rejected because `f` may contain interval indicators.
pub fn partial_sum_error(
    measure: &CircleMeasure,
    coefficients: &Coefficients,
    f: &FunctionSpec,
) -> Result<ErrorReport> {
    if measure.cantor_weight() > 0.0 {
        return Err(Error::InvalidArgument("partial-sum errors are defined for atoms and densities only".into()));
    }
    let atom_error_sq = measure
        .atoms()
        .iter()
        .map(|a| a.weight * (coefficients.evaluate(a.location) - f.evaluate(a.location)).norm_sqr())
        .sum::<f64>();

    let density_error_sq = match measure.absolutely_continuous_part() {
        None => 0.0,
        Some(ac) => {
            let f_norm = ac.norm_sq(f)?;
            let auto = coefficients.autocorrelation();
            let span = 2 * coefficients.order() as i64;
            let mut quad = 0.0;
            let mut cross = Complex64::new(0.0, 0.0);
            for p in ac.pieces().iter().filter(|p| p.height > 0.0) {
                let mut piece_quad = Complex64::new(0.0, 0.0);
                for (i, r) in auto.iter().enumerate() {
                    if *r != Complex64::new(0.0, 0.0) {
                        piece_quad += r * exp_integral(i as i64 - span, p.start, p.end);
                    }
                }
                quad += p.height * piece_quad.re;
                // ∫_p S conj(f) = Σ_n c_n Σ_s conj(a_s) ∫ e^{2πi(n − m_s)x}
                for t in f.terms() {
                    let a = t.start.max(p.start);
                    let b = t.end.min(p.end);
                    if b <= a {
                        continue;
                    }
                    let mut s = Complex64::new(0.0, 0.0);
                    for (n, c) in coefficients.indexed() {
                        s += c * exp_integral(n - t.frequency, a, b);
                    }
                    cross += p.height * t.coefficient.conj() * s;
                }
            }
            (quad - 2.0 * cross.re + f_norm).max(0.0)
        }
    };
    Ok(ErrorReport { atom_error_sq, density_error_sq, total_error_sq: atom_error_sq + density_error_sq })
}
