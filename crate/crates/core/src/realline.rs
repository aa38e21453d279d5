//! Atomic measures on the real line.
//!
//! Covers folding onto the circle, Kaczmarz expansions for measures on a
//! lattice `a + bℤ`, the split of a measure into an integer marginal and
//! per-slice conditional measures on `[0, 1)`, and the double-indexed
//! Parseval expansion built from that split.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kaczmarz::{auxiliary_sequence, clamp_defect, effectiveness_table, CoefficientTriangle, DefectRow};
use crate::measure::{cis_turns, Atom, CircleMeasure, FunctionSpec, MomentTable, LOCATION_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealAtom {
    pub position: f64,
    pub weight: f64,
}

/// Finite positive combination of point masses on `ℝ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealAtomicMeasure {
    atoms: Vec<RealAtom>,
}

impl RealAtomicMeasure {
    pub fn new(atoms: Vec<RealAtom>) -> Result<Self> {
        let mut atoms = atoms;
        for a in &atoms {
            if !a.position.is_finite() {
                return Err(Error::InvalidMeasure(format!("atom position {} is not finite", a.position)));
            }
            if !(a.weight.is_finite() && a.weight > 0.0) {
                return Err(Error::InvalidMeasure(format!("atom weight {} must be positive", a.weight)));
            }
        }
        if atoms.is_empty() {
            return Err(Error::ZeroMass);
        }
        atoms.sort_by(|a, b| a.position.total_cmp(&b.position));
        if let Some(w) = atoms.windows(2).find(|w| w[0].position == w[1].position) {
            return Err(Error::InvalidMeasure(format!("duplicate atom position {}", w[0].position)));
        }
        Ok(Self { atoms })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(position, weight)| RealAtom { position, weight }).collect())
    }

    pub fn atoms(&self) -> &[RealAtom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// Smallest gap between consecutive atoms, or 1 for a single atom.
    pub fn min_spacing(&self) -> f64 {
        self.atoms
            .windows(2)
            .map(|w| w[1].position - w[0].position)
            .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |a| a.min(d))))
            .unwrap_or(1.0)
    }
}

/// Values of a function at the atoms of a [`RealAtomicMeasure`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AtomValues {
    values: Vec<(f64, Complex64)>,
}

impl AtomValues {
    pub fn new(values: Vec<(f64, Complex64)>) -> Self {
        Self { values }
    }

    pub fn from_fn(measure: &RealAtomicMeasure, mut f: impl FnMut(f64) -> Complex64) -> Self {
        Self { values: measure.atoms().iter().map(|a| (a.position, f(a.position))).collect() }
    }

    pub fn pairs(&self) -> &[(f64, Complex64)] {
        &self.values
    }

    pub fn get(&self, position: f64) -> Result<Complex64> {
        self.values
            .iter()
            .find(|p| (p.0 - position).abs() <= LOCATION_TOLERANCE)
            .map(|p| p.1)
            .ok_or(Error::MissingAtomValue(position))
    }

    /// `‖f‖²` under `μ / |μ|`.
    pub fn norm_sq(&self, measure: &RealAtomicMeasure) -> Result<f64> {
        let mut acc = 0.0;
        for a in measure.atoms() {
            acc += a.weight * self.get(a.position)?.norm_sqr();
        }
        Ok(acc / measure.total_mass())
    }
}

fn fold_position(x: f64) -> f64 {
    let t = x.rem_euclid(1.0);
    if t >= 1.0 {
        0.0
    } else {
        t
    }
}

/// `ν(E) = Σ_n μ(E + an)`, rescaled to `[0, 1)`. Atoms landing on the same
/// point are merged, so the total mass is unchanged.
pub fn periodize(measure: &RealAtomicMeasure, period: f64) -> Result<CircleMeasure> {
    if !(period.is_finite() && period > 0.0) {
        return Err(Error::InvalidArgument(format!("period {period} must be positive")));
    }
    let mut folded: Vec<Atom> = measure
        .atoms()
        .iter()
        .map(|a| Atom { location: fold_position(a.position / period), weight: a.weight })
        .collect();
    folded.sort_by(|a, b| a.location.total_cmp(&b.location));
    let mut merged: Vec<Atom> = Vec::with_capacity(folded.len());
    for a in folded {
        match merged.last_mut() {
            Some(last) if (a.location - last.location).abs() <= LOCATION_TOLERANCE => last.weight += a.weight,
            _ => merged.push(a),
        }
    }
    // a point just below 1 coincides with 0 on the circle
    if merged.len() > 1 {
        let last = merged[merged.len() - 1];
        if 1.0 - last.location <= LOCATION_TOLERANCE {
            merged.pop();
            merged[0].weight += last.weight;
        }
    }
    CircleMeasure::new(merged, Vec::new(), 0.0)
}

/// Kaczmarz expansion in `e^{2πi n x / c}` for a measure on a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeExpansion {
    pub triangle: CoefficientTriangle,
    pub table: Vec<DefectRow>,
}

/// Maps `y ↦ y / c mod 1`; the generalized moments `∫ e^{−2πiqy/c} dμ` are
/// the ordinary moments of the image.
fn lattice_image(
    measure: &RealAtomicMeasure,
    values: &AtomValues,
    frequency_scale: f64,
) -> Result<(CircleMeasure, FunctionSpec)> {
    if !(frequency_scale.is_finite() && frequency_scale > 0.0) {
        return Err(Error::InvalidArgument(format!("c = {frequency_scale} must be positive")));
    }
    let mut atoms = Vec::with_capacity(measure.atoms().len());
    let mut pointwise = Vec::with_capacity(measure.atoms().len());
    for a in measure.atoms() {
        let t = fold_position(a.position / frequency_scale);
        atoms.push(Atom { location: t, weight: a.weight });
        pointwise.push((t, values.get(a.position)?));
    }
    atoms.sort_by(|a, b| a.location.total_cmp(&b.location));
    let collides = atoms.windows(2).any(|w| w[1].location - w[0].location <= LOCATION_TOLERANCE)
        || (atoms.len() > 1 && 1.0 - atoms[atoms.len() - 1].location + atoms[0].location <= LOCATION_TOLERANCE);
    if collides {
        return Err(Error::InvalidArgument(format!(
            "c = {frequency_scale} identifies two atoms; choose c incommensurable with the lattice"
        )));
    }
    Ok((CircleMeasure::new(atoms, Vec::new(), 0.0)?, FunctionSpec::from_atom_values(&pointwise)?))
}

pub fn lattice_effective_expansion(
    measure: &RealAtomicMeasure,
    frequency_scale: f64,
    values: &AtomValues,
    orders: &[usize],
) -> Result<LatticeExpansion> {
    let (image, f) = lattice_image(measure, values, frequency_scale)?;
    let top = orders.last().copied().unwrap_or(0);
    let triangle =
        auxiliary_sequence(&MomentTable::from_measure(&image, top), top)?.with_frequency_step(1.0 / frequency_scale);
    let table = effectiveness_table(&image, &f, orders)?;
    Ok(LatticeExpansion { triangle, table })
}

/// Conditional measure of `μ` on `[k, k + 1)`, shifted to `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Slice {
    pub index: i64,
    /// `μ([k, k + 1))`.
    pub weight: f64,
    /// Offsets `y − k` with the original weights.
    pub atoms: Vec<RealAtom>,
    /// The probability measure `γ^k`.
    pub measure: CircleMeasure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SliceSystem {
    slices: Vec<Slice>,
}

pub fn disintegrate(measure: &RealAtomicMeasure) -> Result<SliceSystem> {
    let mut slices: Vec<Slice> = Vec::new();
    for a in measure.atoms() {
        let k = a.position.floor();
        let offset = RealAtom { position: a.position - k, weight: a.weight };
        match slices.last_mut() {
            Some(s) if s.index == k as i64 => {
                s.weight += a.weight;
                s.atoms.push(offset);
            }
            _ => slices.push(Slice {
                index: k as i64,
                weight: a.weight,
                atoms: vec![offset],
                measure: CircleMeasure::lebesgue(),
            }),
        }
    }
    for s in &mut slices {
        let atoms = s.atoms.iter().map(|a| Atom { location: a.position, weight: a.weight / s.weight }).collect();
        s.measure = CircleMeasure::new(atoms, Vec::new(), 0.0)?;
    }
    Ok(SliceSystem { slices })
}

impl SliceSystem {
    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn total_mass(&self) -> f64 {
        self.slices.iter().map(|s| s.weight).sum()
    }

    /// `m(q) = Σ_k w_k e^{−iqk}`.
    pub fn marginal_moment(&self, q: i64) -> Complex64 {
        self.slices.iter().map(|s| s.weight * Complex64::from_polar(1.0, -(q as f64) * s.index as f64)).sum()
    }

    pub fn reassemble(&self) -> Result<RealAtomicMeasure> {
        RealAtomicMeasure::new(
            self.slices
                .iter()
                .flat_map(|s| {
                    s.atoms.iter().map(move |a| RealAtom { position: a.position + s.index as f64, weight: a.weight })
                })
                .collect(),
        )
    }

    /// Auxiliary triangle of `e^{imk}` in `L²` of the normalized marginal.
    /// On the circle these are the exponentials for atoms at `k / 2π`.
    pub fn marginal_triangle(&self, order: usize) -> Result<CoefficientTriangle> {
        let moments = MomentTable::from_fn(order, |q| self.marginal_moment(q));
        Ok(auxiliary_sequence(&moments, order)?.with_frequency_step(1.0 / (2.0 * PI)))
    }
}

/// `c[n][m]` for `n ≤ N`, `m ≤ M`, together with `‖f‖²` under `μ / |μ|`.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleCoefficients {
    pub rows: Vec<Vec<Complex64>>,
    pub norm_sq: f64,
}

impl DoubleCoefficients {
    pub fn inner_order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn outer_order(&self) -> usize {
        self.rows[0].len() - 1
    }

    /// `‖f‖² − Σ_{n≤N, m≤M} |c[n][m]|²` for any `(N, M)` within range.
    pub fn defect(&self, n: usize, m: usize) -> Result<f64> {
        if n > self.inner_order() || m > self.outer_order() {
            return Err(Error::TruncationOrder {
                requested: n.max(m),
                available: self.inner_order().min(self.outer_order()),
            });
        }
        let energy: f64 = self.rows[..=n].iter().flat_map(|r| &r[..=m]).map(|c| c.norm_sqr()).sum();
        Ok(clamp_defect(self.norm_sq - energy))
    }
}

/// Inner Kaczmarz coefficients per slice, then Kaczmarz coefficients of each
/// resulting function of `k` against the marginal.
pub fn double_expansion_coefficients(
    system: &SliceSystem,
    values: &AtomValues,
    inner_order: usize,
    outer_order: usize,
) -> Result<DoubleCoefficients> {
    let total = system.total_mass();
    // inner[s][n] = h_n(k_s)
    let mut inner = Vec::with_capacity(system.slices().len());
    let mut norm_sq = 0.0;
    for s in system.slices() {
        let triangle = auxiliary_sequence(&MomentTable::from_measure(&s.measure, inner_order), inner_order)?;
        let mut projections = vec![Complex64::new(0.0, 0.0); inner_order + 1];
        for a in &s.atoms {
            let v = values.get(a.position + s.index as f64)?;
            norm_sq += a.weight * v.norm_sqr();
            let p = a.weight / s.weight;
            for (j, slot) in projections.iter_mut().enumerate() {
                *slot += p * v * cis_turns(-(j as f64) * a.position);
            }
        }
        inner.push(triangle.analyze(&projections));
    }

    let marginal = system.marginal_triangle(outer_order)?;
    let rows = (0..=inner_order)
        .map(|n| {
            let mut projections = vec![Complex64::new(0.0, 0.0); outer_order + 1];
            for (s, h) in system.slices().iter().zip(&inner) {
                let p = s.weight / total * h[n];
                for (m, slot) in projections.iter_mut().enumerate() {
                    *slot += p * Complex64::from_polar(1.0, -(m as f64) * s.index as f64);
                }
            }
            marginal.analyze(&projections)
        })
        .collect();
    Ok(DoubleCoefficients { rows, norm_sq: norm_sq / total })
}

pub fn double_parseval_defect(
    system: &SliceSystem,
    values: &AtomValues,
    inner_order: usize,
    outer_order: usize,
) -> Result<f64> {
    double_expansion_coefficients(system, values, inner_order, outer_order)?.defect(inner_order, outer_order)
}

/// Positive sequences indexed from 0.
#[derive(Debug, Clone, PartialEq)]
pub enum Sequence {
    /// Listed values, zero afterwards.
    Finite(Vec<f64>),
    /// `first · ratioⁿ`, `0 ≤ ratio < 1`.
    Geometric { first: f64, ratio: f64 },
    /// `1 / (n + 1)`.
    Reciprocal,
}

impl Sequence {
    pub fn value(&self, n: usize) -> f64 {
        match self {
            Sequence::Finite(v) => v.get(n).copied().unwrap_or(0.0),
            Sequence::Geometric { first, ratio } => first * ratio.powi(n as i32),
            Sequence::Reciprocal => 1.0 / (n as f64 + 1.0),
        }
    }

    /// `Σ_n value(n)²` in closed form.
    pub fn sum_of_squares(&self) -> Result<f64> {
        match self {
            Sequence::Finite(v) => Ok(v.iter().map(|x| x * x).sum()),
            Sequence::Geometric { first, ratio } => {
                if !(0.0..1.0).contains(ratio) {
                    return Err(Error::InvalidArgument(format!("ratio {ratio} is not in [0, 1)")));
                }
                Ok(first * first / (1.0 - ratio * ratio))
            }
            Sequence::Reciprocal => Ok(PI * PI / 6.0),
        }
    }

    /// Upper bound on `Σ_{n≥len} value(n)²`.
    pub fn tail_bound(&self, len: usize) -> f64 {
        match self {
            Sequence::Finite(v) => v.iter().skip(len).map(|x| x * x).sum(),
            Sequence::Geometric { first, ratio } => first * first * ratio.powi(2 * len as i32) / (1.0 - ratio * ratio),
            // Σ_{n≥L} 1/(n+1)² ≤ ∫_L^∞ dx/x² = 1/L
            Sequence::Reciprocal => {
                if len == 0 {
                    f64::INFINITY
                } else {
                    1.0 / len as f64
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRow {
    pub index: usize,
    /// `a_n · Σ_k c_k²`.
    pub value: f64,
    /// `Σ_{k<K} |⟨f_n, c_k e_k⟩|²` with `f_n = χ_{n}/√a_n`.
    pub direct: f64,
    /// Bound on what the direct sum leaves out.
    pub tail_bound: f64,
}

/// Frame functional of `{c_k e^{ikx}}` on the unit vectors `χ_{n}/√a_n` of a
/// measure with weight `a_n` at each integer `n`. The entries tend to zero
/// with `a_n`, so there is no lower frame bound.
pub fn weighted_bessel_decay(
    weights: &Sequence,
    scales: &Sequence,
    indices: &[usize],
    direct_terms: usize,
) -> Result<Vec<DecayRow>> {
    let energy = scales.sum_of_squares()?;
    let mut rows = Vec::with_capacity(indices.len());
    for &n in indices {
        let a = weights.value(n);
        if a.is_nan() || a <= 0.0 {
            return Err(Error::InvalidArgument(format!("weight a_{n} = {a} must be positive")));
        }
        // ⟨f_n, c_k e_k⟩ = a_n · a_n^{-1/2} · c_k · e^{−ikn}
        let direct = (0..direct_terms)
            .map(|k| {
                let v = a * a.powf(-0.5) * scales.value(k) * Complex64::from_polar(1.0, -(k as f64) * n as f64);
                v.norm_sqr()
            })
            .sum();
        rows.push(DecayRow { index: n, value: a * energy, direct, tail_bound: a * scales.tail_bound(direct_terms) });
    }
    Ok(rows)
}
