//! Finite Borel measures on `[0, 1)` built from atoms, a piecewise-constant
//! density and a Cantor component, together with test functions whose inner
//! products against such measures are available in closed form.
//!
//! Conventions used throughout the crate:
//!
//! * `e_n(x) = exp(2πi n x)`;
//! * `moment(n) = ∫ exp(-2πi n x) dμ(x)`;
//! * `⟨f, g⟩_μ = ∫ f · conj(g) dμ`, so `⟨e_n, e_k⟩_μ = moment(k - n)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Per-factor cutoff for the Cantor infinite product.
pub const CANTOR_FACTOR_CUTOFF: f64 = 1e-8;

/// Atom locations closer than this are identified when matching overrides.
pub const LOCATION_TOLERANCE: f64 = 1e-12;

/// `exp(2πi t)`, reducing `t` modulo 1 before the trigonometric call.
#[inline]
pub fn cis_turns(t: f64) -> Complex64 {
    let r = t - t.round();
    Complex64::from_polar(1.0, 2.0 * PI * r)
}

/// `∫_a^b exp(2πi k x) dx`.
pub fn exp_integral(k: i64, a: f64, b: f64) -> Complex64 {
    if b <= a {
        return Complex64::new(0.0, 0.0);
    }
    if k == 0 {
        return Complex64::new(b - a, 0.0);
    }
    let kf = k as f64;
    (cis_turns(kf * b) - cis_turns(kf * a)) / Complex64::new(0.0, 2.0 * PI * kf)
}

/// Fourier coefficient `∫ exp(-2πi n x) dν` of the unit Cantor component.
///
/// The component is the self-similar ratio-1/3 Cantor measure whose
/// transform is `(-1)^n ∏_{j≥1} cos(π n 3^{-j})`; it is symmetric about 1/2
/// and supported on `[1/4, 3/4]`. Factors with `|π n 3^{-j}|` below
/// [`CANTOR_FACTOR_CUTOFF`] are replaced by 1.
pub fn cantor_transform(n: i64) -> f64 {
    let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let mut arg = PI * (n as f64).abs() / 3.0;
    let mut product = 1.0;
    while arg >= CANTOR_FACTOR_CUTOFF {
        product *= arg.cos();
        arg /= 3.0;
    }
    sign * product
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub location: f64,
    pub weight: f64,
}

/// Constant density `height` on `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityPiece {
    pub start: f64,
    pub end: f64,
    pub height: f64,
}

impl DensityPiece {
    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn mass(&self) -> f64 {
        self.height * self.len()
    }
}

/// A finite measure on `[0, 1)`: atoms, a piecewise-constant density and a
/// multiple of the Cantor component. Immutable once constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleMeasure {
    atoms: Vec<Atom>,
    pieces: Vec<DensityPiece>,
    cantor: f64,
}

impl CircleMeasure {
    pub fn new(atoms: Vec<Atom>, pieces: Vec<DensityPiece>, cantor: f64) -> Result<Self> {
        let mut atoms = atoms;
        let mut pieces = pieces;
        for a in &atoms {
            if !(a.location.is_finite() && (0.0..1.0).contains(&a.location)) {
                return Err(Error::InvalidMeasure(format!("atom location {} outside [0, 1)", a.location)));
            }
            if !(a.weight.is_finite() && a.weight > 0.0) {
                return Err(Error::InvalidMeasure(format!("atom weight {} must be positive", a.weight)));
            }
        }
        atoms.sort_by(|a, b| a.location.total_cmp(&b.location));
        if let Some(w) = atoms.windows(2).find(|w| w[0].location == w[1].location) {
            return Err(Error::InvalidMeasure(format!("duplicate atom location {}", w[0].location)));
        }

        for p in &pieces {
            let ok = p.start.is_finite() && p.end.is_finite() && 0.0 <= p.start && p.start < p.end && p.end <= 1.0;
            if !ok {
                return Err(Error::InvalidMeasure(format!(
                    "density piece [{}, {}) must satisfy 0 <= start < end <= 1",
                    p.start, p.end
                )));
            }
            if !(p.height.is_finite() && p.height >= 0.0) {
                return Err(Error::InvalidMeasure(format!("density height {} must be nonnegative", p.height)));
            }
        }
        pieces.sort_by(|a, b| a.start.total_cmp(&b.start));
        if let Some(w) = pieces.windows(2).find(|w| w[0].end > w[1].start) {
            return Err(Error::InvalidMeasure(format!(
                "density pieces [{}, {}) and [{}, {}) overlap",
                w[0].start, w[0].end, w[1].start, w[1].end
            )));
        }

        if !(cantor.is_finite() && cantor >= 0.0) {
            return Err(Error::InvalidMeasure(format!("Cantor weight {cantor} must be nonnegative")));
        }

        let measure = Self { atoms, pieces, cantor };
        let mass = measure.total_mass();
        if mass.is_nan() || mass <= 0.0 {
            return Err(Error::ZeroMass);
        }
        Ok(measure)
    }

    /// Lebesgue measure on `[0, 1)`.
    pub fn lebesgue() -> Self {
        Self { atoms: Vec::new(), pieces: vec![DensityPiece { start: 0.0, end: 1.0, height: 1.0 }], cantor: 0.0 }
    }

    pub fn cantor(weight: f64) -> Result<Self> {
        Self::new(Vec::new(), Vec::new(), weight)
    }

    pub fn atomic(atoms: &[(f64, f64)]) -> Result<Self> {
        Self::new(atoms.iter().map(|&(location, weight)| Atom { location, weight }).collect(), Vec::new(), 0.0)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn pieces(&self) -> &[DensityPiece] {
        &self.pieces
    }

    pub fn cantor_weight(&self) -> f64 {
        self.cantor
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum::<f64>()
            + self.pieces.iter().map(DensityPiece::mass).sum::<f64>()
            + self.cantor
    }

    pub fn has_density(&self) -> bool {
        self.pieces.iter().any(|p| p.height > 0.0)
    }

    /// Atoms plus Cantor component, or `None` when both are absent.
    pub fn singular_part(&self) -> Option<Self> {
        if self.atoms.is_empty() && self.cantor == 0.0 {
            return None;
        }
        Some(Self { atoms: self.atoms.clone(), pieces: Vec::new(), cantor: self.cantor })
    }

    /// Density part, or `None` when it carries no mass.
    pub fn absolutely_continuous_part(&self) -> Option<Self> {
        if !self.has_density() {
            return None;
        }
        Some(Self { atoms: Vec::new(), pieces: self.pieces.clone(), cantor: 0.0 })
    }

    /// Returns `(μ / |μ|, |μ|)`.
    pub fn normalized(&self) -> (Self, f64) {
        let mass = self.total_mass();
        (self.scaled(1.0 / mass), mass)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            atoms: self.atoms.iter().map(|a| Atom { location: a.location, weight: a.weight * factor }).collect(),
            pieces: self.pieces.iter().map(|p| DensityPiece { height: p.height * factor, ..*p }).collect(),
            cantor: self.cantor * factor,
        }
    }

    /// `∫ exp(-2πi n x) dμ(x)`.
    pub fn moment(&self, n: i64) -> Complex64 {
        let nf = n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for a in &self.atoms {
            acc += a.weight * cis_turns(-nf * a.location);
        }
        for p in &self.pieces {
            acc += p.height * exp_integral(-n, p.start, p.end);
        }
        if self.cantor > 0.0 {
            acc += self.cantor * cantor_transform(n);
        }
        acc
    }

    /// Checks that `f` can be paired with this measure in closed form.
    pub fn check_function(&self, f: &FunctionSpec) -> Result<()> {
        if self.cantor > 0.0 {
            if let Some(t) = f.terms.iter().find(|t| !t.is_full()) {
                return Err(Error::CantorRestriction { start: t.start, end: t.end });
            }
        }
        Ok(())
    }

    /// `⟨f, g⟩_μ = ∫ f conj(g) dμ`.
    pub fn inner_product(&self, f: &FunctionSpec, g: &FunctionSpec) -> Result<Complex64> {
        self.check_function(f)?;
        self.check_function(g)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for a in &self.atoms {
            acc += a.weight * f.evaluate(a.location) * g.evaluate(a.location).conj();
        }
        for s in &f.terms {
            for t in &g.terms {
                let lo = s.start.max(t.start);
                let hi = s.end.min(t.end);
                if hi <= lo {
                    continue;
                }
                let weight = s.coefficient * t.coefficient.conj();
                let k = s.frequency - t.frequency;
                for p in &self.pieces {
                    let a = lo.max(p.start);
                    let b = hi.min(p.end);
                    if b > a && p.height > 0.0 {
                        acc += weight * p.height * exp_integral(k, a, b);
                    }
                }
                if self.cantor > 0.0 {
                    acc += weight * self.cantor * cantor_transform(-k);
                }
            }
        }
        Ok(acc)
    }

    pub fn norm_sq(&self, f: &FunctionSpec) -> Result<f64> {
        Ok(self.inner_product(f, f)?.re.max(0.0))
    }

    /// `⟨f, e_k⟩_μ` for `k` in `lo..=hi`.
    pub fn exponential_projections(&self, f: &FunctionSpec, lo: i64, hi: i64) -> Result<Vec<Complex64>> {
        self.check_function(f)?;
        let atom_values: Vec<(f64, f64, Complex64)> =
            self.atoms.iter().map(|a| (a.location, a.weight, f.evaluate(a.location))).collect();
        let mut out = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        for k in lo..=hi {
            let kf = k as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for &(x, w, v) in &atom_values {
                acc += w * v * cis_turns(-kf * x);
            }
            for s in &f.terms {
                let m = s.frequency - k;
                for p in &self.pieces {
                    let a = s.start.max(p.start);
                    let b = s.end.min(p.end);
                    if b > a && p.height > 0.0 {
                        acc += s.coefficient * p.height * exp_integral(m, a, b);
                    }
                }
                if self.cantor > 0.0 {
                    acc += s.coefficient * self.cantor * cantor_transform(-m);
                }
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// `coefficient · exp(2πi frequency x) · χ_[start, end)(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub frequency: i64,
    pub start: f64,
    pub end: f64,
    pub coefficient: Complex64,
}

impl Term {
    pub fn is_full(&self) -> bool {
        self.start == 0.0 && self.end == 1.0
    }

    pub fn evaluate(&self, x: f64) -> Complex64 {
        if self.start <= x && x < self.end {
            self.coefficient * cis_turns(self.frequency as f64 * x)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }
}

/// A test function: a finite sum of modulated interval indicators, with
/// optional point values that override the sum at chosen locations (used to
/// prescribe values at atoms).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FunctionSpec {
    terms: Vec<Term>,
    atom_values: Vec<(f64, Complex64)>,
}

impl FunctionSpec {
    pub fn new(terms: Vec<Term>, atom_values: Vec<(f64, Complex64)>) -> Result<Self> {
        for t in &terms {
            let ok = t.start.is_finite() && t.end.is_finite() && 0.0 <= t.start && t.start < t.end && t.end <= 1.0;
            if !ok {
                return Err(Error::InvalidFunction(format!(
                    "term interval [{}, {}) must satisfy 0 <= u < v <= 1",
                    t.start, t.end
                )));
            }
            if !(t.coefficient.re.is_finite() && t.coefficient.im.is_finite()) {
                return Err(Error::InvalidFunction("non-finite coefficient".into()));
            }
        }
        for &(x, v) in &atom_values {
            if !(x.is_finite() && (0.0..1.0).contains(&x)) {
                return Err(Error::InvalidFunction(format!("atom value location {x} outside [0, 1)")));
            }
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::InvalidFunction(format!("non-finite value at {x}")));
            }
        }
        let mut sorted: Vec<f64> = atom_values.iter().map(|p| p.0).collect();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[1] - w[0] <= LOCATION_TOLERANCE) {
            return Err(Error::InvalidFunction("repeated atom value location".into()));
        }
        Ok(Self { terms, atom_values })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::exponential(0, c)
    }

    /// `c · e_m` on all of `[0, 1)`.
    pub fn exponential(m: i64, c: Complex64) -> Self {
        Self { terms: vec![Term { frequency: m, start: 0.0, end: 1.0, coefficient: c }], atom_values: Vec::new() }
    }

    pub fn indicator(start: f64, end: f64) -> Result<Self> {
        Self::new(vec![Term { frequency: 0, start, end, coefficient: Complex64::new(1.0, 0.0) }], Vec::new())
    }

    /// A function given only by its values at the listed points.
    pub fn from_atom_values(values: &[(f64, Complex64)]) -> Result<Self> {
        Self::new(Vec::new(), values.to_vec())
    }

    pub fn with_term(mut self, term: Term) -> Result<Self> {
        self.terms.push(term);
        Self::new(self.terms, self.atom_values)
    }

    pub fn with_atom_value(mut self, x: f64, value: Complex64) -> Result<Self> {
        self.atom_values.retain(|p| (p.0 - x).abs() > LOCATION_TOLERANCE);
        self.atom_values.push((x, value));
        Self::new(self.terms, self.atom_values)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn atom_values(&self) -> &[(f64, Complex64)] {
        &self.atom_values
    }

    pub fn is_zero_spec(&self) -> bool {
        self.terms.iter().all(|t| t.coefficient == Complex64::new(0.0, 0.0))
            && self.atom_values.iter().all(|p| p.1 == Complex64::new(0.0, 0.0))
    }

    /// Value at `x`, honouring point overrides.
    pub fn evaluate(&self, x: f64) -> Complex64 {
        if let Some(&(_, v)) = self.atom_values.iter().find(|p| (p.0 - x).abs() <= LOCATION_TOLERANCE) {
            return v;
        }
        self.terms.iter().map(|t| t.evaluate(x)).sum()
    }

    /// The term formula at `x`, ignoring overrides.
    pub fn evaluate_terms(&self, x: f64) -> Complex64 {
        self.terms.iter().map(|t| t.evaluate(x)).sum()
    }
}

/// Moments `μ̂(n)` for `n ∈ [-N, N]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    order: usize,
    values: Vec<Complex64>,
}

impl MomentTable {
    pub fn from_measure(measure: &CircleMeasure, order: usize) -> Self {
        let n = order as i64;
        let mut values = vec![Complex64::new(0.0, 0.0); 2 * order + 1];
        for k in 0..=n {
            let m = measure.moment(k);
            values[(n + k) as usize] = m;
            values[(n - k) as usize] = m.conj();
        }
        values[order] = Complex64::new(values[order].re, 0.0);
        Self { order, values }
    }

    /// Builds a table from a moment function; `moment(0)` is forced real and
    /// negative indices are filled by conjugation.
    pub fn from_fn(order: usize, moment: impl Fn(i64) -> Complex64) -> Self {
        let n = order as i64;
        let mut values = vec![Complex64::new(0.0, 0.0); 2 * order + 1];
        values[order] = Complex64::new(moment(0).re, 0.0);
        for k in 1..=n {
            let m = moment(k);
            values[(n + k) as usize] = m;
            values[(n - k) as usize] = m.conj();
        }
        Self { order, values }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `μ̂(0)`.
    pub fn mass(&self) -> f64 {
        self.values[self.order].re
    }

    /// `μ̂(n)`; panics when `|n|` exceeds the order.
    pub fn get(&self, n: i64) -> Complex64 {
        assert!(n.unsigned_abs() as usize <= self.order, "moment index {n} out of range");
        self.values[(self.order as i64 + n) as usize]
    }

    /// Returns the table divided by its mass, and the mass.
    pub fn normalized(&self) -> Result<(Self, f64)> {
        let mass = self.mass();
        if mass.is_nan() || mass <= 0.0 {
            return Err(Error::ZeroMass);
        }
        let values = self.values.iter().map(|v| v / mass).collect();
        Ok((Self { order: self.order, values }, mass))
    }
}
