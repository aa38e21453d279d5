//! Dextrodual systems for measures mixing atoms and densities.
//!
//! A family `{G_n}` in `L²(μ)` is dextrodual to the exponentials when every
//! `f` equals `Σ_n ⟨f, G_n⟩_μ e_n`, summed symmetrically over `|n| ≤ M`.
//! Two constructions are provided:
//!
//! * [`ExtensionPlan`]: atoms to the left of the density. Each atom value is
//!   spread over an interval `J_k`, giving `f̃ ∈ L²[0,1)` whose Fourier
//!   coefficients are the dual coefficients.
//! * [`ExamplecaseDual`]: atoms in `[a, b]`, density in `[c, d]`, disjoint.
//!   The atomic part is reconstructed through its Kaczmarz expansion `A(f)`,
//!   localized to an open interval `I₁ ⊃ [a, b]`.
//!
//! [`nonrepresentability_witness`] covers the opposite situation, an atom
//! sitting inside the density support.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kaczmarz::{auxiliary_sequence, CoefficientTriangle};
use crate::measure::{exp_integral, Atom, CircleMeasure, DensityPiece, FunctionSpec, MomentTable};
use crate::partial_sum::{partial_sum_error, Coefficients, ErrorReport};

/// Default half-width rule: this fraction of the gap to the nearest atom.
pub const ATOM_GAP_FRACTION: f64 = 1.0 / 3.0;

/// `I₁`, `I₂` are inflated by this fraction of the gap on each side.
pub const INFLATION_FRACTION: f64 = 1.0 / 3.0;

/// Ridge added to a Gram matrix whose Cholesky factorization fails.
pub const GRAM_RIDGE: f64 = 1e-12;

const MIN_HALF_WIDTH: f64 = 1e-9;

/// Anything able to produce dual coefficients `⟨f, G_n⟩_μ`, `|n| ≤ M`.
pub trait DualSystem {
    fn measure(&self) -> &CircleMeasure;

    fn coefficients(&self, f: &FunctionSpec, order: usize) -> Result<Coefficients>;

    /// Errors of `S_M = Σ_{|n|≤M} ⟨f, G_n⟩ e_n` against `f`.
    fn reconstruct(&self, f: &FunctionSpec, order: usize) -> Result<ErrorReport> {
        let coeffs = self.coefficients(f, order)?;
        partial_sum_error(self.measure(), &coeffs, f)
    }
}

/// Lebesgue integral over `support ∩ [u, v)` of `coefficient · e^{2πi(m − n)x}`,
/// summed over the terms of `f`, for every `n ∈ [-M, M]`.
fn restricted_fourier(f: &FunctionSpec, support: &[DensityPiece], order: usize) -> Vec<Complex64> {
    let m = order as i64;
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * order + 1];
    for t in f.terms() {
        for p in support {
            let a = t.start.max(p.start);
            let b = t.end.min(p.end);
            if b <= a {
                continue;
            }
            for (i, slot) in out.iter_mut().enumerate() {
                let n = i as i64 - m;
                *slot += t.coefficient * exp_integral(t.frequency - n, a, b);
            }
        }
    }
    out
}

/// Pieces of positive height, i.e. the support of the density.
fn support_pieces(measure: &CircleMeasure) -> Vec<DensityPiece> {
    measure.pieces().iter().copied().filter(|p| p.height > 0.0).collect()
}

/// `∫_{support} |f|² dx`.
fn lebesgue_norm_on(f: &FunctionSpec, support: &[DensityPiece]) -> Result<f64> {
    if support.is_empty() {
        return Ok(0.0);
    }
    let unit: Vec<DensityPiece> = support.iter().map(|p| DensityPiece { height: 1.0, ..*p }).collect();
    CircleMeasure::new(Vec::new(), unit, 0.0)?.norm_sq(f)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionInterval {
    pub atom: Atom,
    pub start: f64,
    pub end: f64,
}

impl ExtensionInterval {
    pub fn len(&self) -> f64 {
        self.end - self.start
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ExtensionOptions {
    /// Request `|J_k| = a_k`, which makes `f ↦ f̃` isometric when every
    /// density height equals 1.
    pub parseval: bool,
    /// Left end `c` of the density region; defaults to the start of the
    /// first density piece (or 1 when there is none).
    pub boundary: Option<f64>,
}

/// Extension `f ↦ f̃ = Σ_k f(b_k) χ_{J_k} + f χ_{supp g}` for a measure whose
/// atoms lie in `(0, c)` and whose density lives in `[c, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionPlan {
    measure: CircleMeasure,
    boundary: f64,
    intervals: Vec<ExtensionInterval>,
    support: Vec<DensityPiece>,
}

pub fn build_extension_plan(measure: &CircleMeasure, options: ExtensionOptions) -> Result<ExtensionPlan> {
    if measure.cantor_weight() > 0.0 {
        return Err(Error::InvalidArgument("extension plans need finitely many atoms and no Cantor part".into()));
    }
    let boundary = options.boundary.unwrap_or_else(|| measure.pieces().first().map_or(1.0, |p| p.start));
    if let Some(p) = measure.pieces().iter().find(|p| p.start < boundary) {
        return Err(Error::NotSeparated(format!(
            "density piece [{}, {}) starts before c = {boundary}",
            p.start, p.end
        )));
    }
    let atoms = measure.atoms();
    if let Some(a) = atoms.iter().find(|a| !(0.0 < a.location && a.location < boundary)) {
        return Err(Error::NotSeparated(format!("atom {} is not inside (0, {boundary})", a.location)));
    }

    let intervals =
        if options.parseval { pack_parseval(atoms, boundary)? } else { default_intervals(atoms, boundary)? };
    Ok(ExtensionPlan { measure: measure.clone(), boundary, intervals, support: support_pieces(measure) })
}

fn default_intervals(atoms: &[Atom], boundary: f64) -> Result<Vec<ExtensionInterval>> {
    let mut out = Vec::with_capacity(atoms.len());
    for (k, a) in atoms.iter().enumerate() {
        let b = a.location;
        let mut delta = 0.5 * b.min(boundary - b);
        if k > 0 {
            delta = delta.min(ATOM_GAP_FRACTION * (b - atoms[k - 1].location));
        }
        if k + 1 < atoms.len() {
            delta = delta.min(ATOM_GAP_FRACTION * (atoms[k + 1].location - b));
        }
        if delta < MIN_HALF_WIDTH {
            let (left, right) =
                if k + 1 < atoms.len() { (b, atoms[k + 1].location) } else { (atoms[k.saturating_sub(1)].location, b) };
            return Err(Error::AtomTooClose { left, right });
        }
        out.push(ExtensionInterval { atom: *a, start: b - delta, end: b + delta });
    }
    Ok(out)
}

/// Places intervals of length `a_k` around each atom inside `[0, c]`,
/// centred where possible, each atom strictly interior.
fn pack_parseval(atoms: &[Atom], boundary: f64) -> Result<Vec<ExtensionInterval>> {
    let eta = MIN_HALF_WIDTH;
    let total: f64 = atoms.iter().map(|a| a.weight).sum();
    if total > boundary {
        return Err(Error::ParsevalInfeasible(format!(
            "total length {total} exceeds the room {boundary} left of the density"
        )));
    }
    // latest admissible start for each interval, packing from the right
    let mut latest = vec![0.0; atoms.len()];
    let mut right = boundary;
    for (k, a) in atoms.iter().enumerate().rev() {
        latest[k] = (right - a.weight).min(a.location - eta);
        right = latest[k];
    }
    let mut out = Vec::with_capacity(atoms.len());
    let mut left = 0.0f64;
    for (k, a) in atoms.iter().enumerate() {
        let lower = left.max(a.location - a.weight + eta);
        if lower > latest[k] {
            return Err(Error::ParsevalInfeasible(format!(
                "no room for an interval of length {} around atom {}",
                a.weight, a.location
            )));
        }
        let start = (a.location - 0.5 * a.weight).clamp(lower, latest[k]);
        out.push(ExtensionInterval { atom: *a, start, end: start + a.weight });
        left = start + a.weight;
    }
    Ok(out)
}

impl ExtensionPlan {
    pub fn intervals(&self) -> &[ExtensionInterval] {
        &self.intervals
    }

    pub fn boundary(&self) -> f64 {
        self.boundary
    }

    pub fn density_support(&self) -> &[DensityPiece] {
        &self.support
    }

    /// `‖f̃‖²_{L²[0,1)}` in closed form.
    pub fn extension_norm_sq(&self, f: &FunctionSpec) -> Result<f64> {
        let atoms: f64 = self.intervals.iter().map(|j| j.len() * f.evaluate(j.atom.location).norm_sqr()).sum();
        Ok(atoms + lebesgue_norm_on(f, &self.support)?)
    }

    /// Frame bounds `(A, B)` of the dual family, read off from
    /// `Σ_n |⟨f, G_n⟩|² = ‖f̃‖²`.
    pub fn frame_bounds(&self) -> (f64, f64) {
        let ratios =
            self.intervals.iter().map(|j| j.len() / j.atom.weight).chain(self.support.iter().map(|p| 1.0 / p.height));
        ratios.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r), hi.max(r)))
    }

    /// `⟨f̃, e_n⟩_{L²[0,1)}` for `|n| ≤ M`.
    pub fn analysis_coefficients(&self, f: &FunctionSpec, order: usize) -> Result<Coefficients> {
        let mut values = restricted_fourier(f, &self.support, order);
        let m = order as i64;
        for j in &self.intervals {
            let v = f.evaluate(j.atom.location);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (i, slot) in values.iter_mut().enumerate() {
                *slot += v * exp_integral(m - i as i64, j.start, j.end);
            }
        }
        Coefficients::from_values(order, values)
    }
}

impl DualSystem for ExtensionPlan {
    fn measure(&self) -> &CircleMeasure {
        &self.measure
    }

    fn coefficients(&self, f: &FunctionSpec, order: usize) -> Result<Coefficients> {
        self.analysis_coefficients(f, order)
    }
}

/// Dual family `χ_{I₁} A*(χ_{I₁} e_n) + χ_{supp g} e_n / g` for an atomic
/// part in `[a, b]` separated from a density on `[c, d]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExamplecaseDual {
    measure: CircleMeasure,
    singular: CircleMeasure,
    singular_hull: (f64, f64),
    density_hull: (f64, f64),
    i1: (f64, f64),
    i2: (f64, f64),
    triangle: CoefficientTriangle,
    support: Vec<DensityPiece>,
}

/// Default singular truncation `M̃ = 4M`.
pub fn default_singular_order(order: usize) -> usize {
    4 * order
}

pub fn build_examplecase_dual(measure: &CircleMeasure, singular_order: usize) -> Result<ExamplecaseDual> {
    if measure.cantor_weight() > 0.0 {
        return Err(Error::InvalidArgument("the singular part must be atomic".into()));
    }
    let atoms = measure.atoms();
    let support = support_pieces(measure);
    let (Some(first), Some(last)) = (atoms.first(), atoms.last()) else {
        return Err(Error::InvalidArgument("measure has no atoms".into()));
    };
    let (Some(p0), Some(p1)) = (support.first(), support.last()) else {
        return Err(Error::InvalidArgument("measure has no density".into()));
    };
    let (a, b) = (first.location, last.location);
    let (c, d) = (p0.start, p1.end);
    if a <= 0.0 {
        return Err(Error::NotSeparated(format!("singular part starts at a = {a}")));
    }
    if c <= 0.0 {
        return Err(Error::NotSeparated(format!("density starts at c = {c}")));
    }
    let inflate = |lo: f64, hi: f64, left_wall: f64, right_wall: f64| {
        (lo - INFLATION_FRACTION * (lo - left_wall), hi + INFLATION_FRACTION * (right_wall - hi))
    };
    let (i1, i2) = if b < c {
        (inflate(a, b, 0.0, c), inflate(c, d, b, 1.0))
    } else if d <= a {
        (inflate(a, b, d, 1.0), inflate(c, d, 0.0, a))
    } else {
        return Err(Error::NotSeparated(format!("[{a}, {b}] meets the density hull [{c}, {d}]")));
    };

    let singular = measure.singular_part().expect("atoms present");
    let moments = MomentTable::from_measure(&singular, singular_order);
    let triangle = auxiliary_sequence(&moments, singular_order)?;
    Ok(ExamplecaseDual {
        measure: measure.clone(),
        singular,
        singular_hull: (a, b),
        density_hull: (c, d),
        i1,
        i2,
        triangle,
        support,
    })
}

impl ExamplecaseDual {
    pub fn i1(&self) -> (f64, f64) {
        self.i1
    }

    pub fn i2(&self) -> (f64, f64) {
        self.i2
    }

    pub fn singular_hull(&self) -> (f64, f64) {
        self.singular_hull
    }

    pub fn density_hull(&self) -> (f64, f64) {
        self.density_hull
    }

    pub fn triangle(&self) -> &CoefficientTriangle {
        &self.triangle
    }

    pub fn singular_order(&self) -> usize {
        self.triangle.order()
    }

    /// One-sided coefficients of `A(f) = Σ_{k≤M̃} ⟨f, h_k⟩ e_k`, where `h_k`
    /// is the auxiliary sequence of the normalized atomic part.
    pub fn singular_expansion(&self, f: &FunctionSpec) -> Result<Vec<Complex64>> {
        let mass = self.singular.total_mass();
        let mut p = self.singular.exponential_projections(f, 0, self.singular_order() as i64)?;
        for v in &mut p {
            *v /= mass;
        }
        Ok(self.triangle.analyze(&p))
    }

    /// `⟨A(f) χ_{I₁}, e_n⟩ + ⟨f χ_{supp g}, e_n⟩` over Lebesgue measure.
    pub fn analysis_coefficients(&self, f: &FunctionSpec, order: usize) -> Result<Coefficients> {
        if self.singular_order() < order {
            return Err(Error::TruncationOrder { requested: order, available: self.singular_order() });
        }
        let a_f = self.singular_expansion(f)?;
        let mut values = restricted_fourier(f, &self.support, order);
        let m = order as i64;
        let (lo, hi) = self.i1;
        for (k, ak) in a_f.iter().enumerate() {
            if *ak == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (i, slot) in values.iter_mut().enumerate() {
                *slot += ak * exp_integral(k as i64 - (i as i64 - m), lo, hi);
            }
        }
        Coefficients::from_values(order, values)
    }

    /// `(Σ_{|n|≤M} |⟨f, G_n⟩|², ‖A(f) χ_{I₁}‖² + ‖f χ_{supp g}‖²)`.
    pub fn bessel_pythagoras_check(&self, f: &FunctionSpec, order: usize) -> Result<(f64, f64)> {
        let lhs = self.analysis_coefficients(f, order)?.energy();
        let a_f = self.singular_expansion(f)?;
        let (lo, hi) = self.i1;
        let mut localized = Complex64::new(0.0, 0.0);
        for (j, aj) in a_f.iter().enumerate() {
            if *aj == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut inner = Complex64::new(0.0, 0.0);
            for (k, ak) in a_f.iter().enumerate() {
                inner += ak.conj() * exp_integral(j as i64 - k as i64, lo, hi);
            }
            localized += aj * inner;
        }
        let rhs = localized.re + lebesgue_norm_on(f, &self.support)?;
        Ok((lhs, rhs))
    }
}

impl DualSystem for ExamplecaseDual {
    fn measure(&self) -> &CircleMeasure {
        &self.measure
    }

    fn coefficients(&self, f: &FunctionSpec, order: usize) -> Result<Coefficients> {
        self.analysis_coefficients(f, order)
    }
}

/// `Σ_{|n|≤M} |⟨f, e_n⟩_μ|²`, the truncated lower-frame energy of the
/// exponentials themselves.
pub fn exponential_energy(measure: &CircleMeasure, f: &FunctionSpec, order: usize) -> Result<f64> {
    let m = order as i64;
    Ok(measure.exponential_projections(f, -m, m)?.iter().map(|v| v.norm_sqr()).sum())
}

/// Result of the least-squares fit of a target by trigonometric polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessRow {
    pub order: usize,
    /// Largest `|p(b) − target(b)|` over the atoms of the measure.
    pub atom_mismatch: f64,
    /// `‖p‖²_{L²[0,1)} = Σ |c_n|²`.
    pub lebesgue_norm_sq: f64,
    /// `min_p ‖p − target‖²_μ`.
    pub distance_sq: f64,
    pub ridge_applied: bool,
    pub coefficients: Coefficients,
}

/// Best `L²(μ)` approximation of `target` by `p = Σ_{|n|≤M} c_n e_n`.
///
/// For an atom inside the density support, fitting its indicator forces the
/// minimizers to match the atom while their Lebesgue norms shrink, so no
/// single coefficient sequence converges to the indicator.
pub fn nonrepresentability_witness(measure: &CircleMeasure, target: &FunctionSpec, order: usize) -> Result<WitnessRow> {
    let m = order as i64;
    let size = 2 * order + 1;
    let moments = MomentTable::from_measure(measure, 2 * order);
    // G_{jk} = ⟨e_k, e_j⟩ = μ̂(j − k)
    let gram = DMatrix::from_fn(size, size, |j, k| moments.get(j as i64 - k as i64));
    let rhs = DVector::from_vec(measure.exponential_projections(target, -m, m)?);

    let mut ridge_applied = false;
    let chol = match gram.clone().cholesky() {
        Some(ch) => ch,
        None => {
            ridge_applied = true;
            let ridged = &gram + DMatrix::identity(size, size) * Complex64::new(GRAM_RIDGE, 0.0);
            ridged.cholesky().ok_or(Error::SingularGram)?
        }
    };
    let sol = chol.solve(&rhs);
    let coefficients = Coefficients::from_values(order, sol.iter().copied().collect())?;

    let target_norm = measure.norm_sq(target)?;
    let cross: Complex64 = sol.iter().zip(rhs.iter()).map(|(c, b)| c.conj() * b).sum();
    let quad = (sol.adjoint() * &gram * &sol)[(0, 0)].re;
    let distance_sq = (target_norm - 2.0 * cross.re + quad).max(0.0);
    let atom_mismatch = measure
        .atoms()
        .iter()
        .map(|a| (coefficients.evaluate(a.location) - target.evaluate(a.location)).norm())
        .fold(0.0, f64::max);
    Ok(WitnessRow {
        order,
        atom_mismatch,
        lebesgue_norm_sq: coefficients.energy(),
        distance_sq,
        ridge_applied,
        coefficients,
    })
}
