mod common;

use common::*;
use framelab_core::hardy::normalized_cauchy_series;
use framelab_core::kaczmarz::{analysis_coefficients, auxiliary_sequence, parseval_defect, reconstruction_residual};
use framelab_core::measure::{CircleMeasure, FunctionSpec, MomentTable};
use framelab_core::testfns::generate_test_functions;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Kaczmarz iteration `x_n = x_{n−1} + ⟨f − x_{n−1}, e_n⟩ e_n` on coefficients.
fn kaczmarz_iterates(moments: &MomentTable, projections: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs: Vec<Complex64> = Vec::with_capacity(projections.len());
    for (n, p) in projections.iter().enumerate() {
        // ⟨e_j, e_n⟩ = μ̂(n − j)
        let seen: Complex64 = coeffs.iter().enumerate().map(|(j, cj)| cj * moments.get(n as i64 - j as i64)).sum();
        coeffs.push(p - seen);
    }
    coeffs
}

#[test]
fn triangle_matches_kaczmarz_iteration() {
    let mut r = rng(11);
    let measures = [
        CircleMeasure::cantor(1.0).unwrap(),
        CircleMeasure::atomic(&[(0.1, 0.2), (0.45, 0.5), (0.8, 0.3)]).unwrap(),
        random_measure(&mut r),
    ];
    for m in &measures {
        let (unit, _) = m.normalized();
        let n = 40;
        let moments = MomentTable::from_measure(&unit, n);
        let triangle = auxiliary_sequence(&moments, n).unwrap();
        for f in generate_test_functions(m, 5, 4) {
            let p = unit.exponential_projections(&f, 0, n as i64).unwrap();
            let via_triangle = triangle.analyze(&p);
            let via_iteration = kaczmarz_iterates(&moments, &p);
            for (a, b) in via_triangle.iter().zip(&via_iteration) {
                assert!((a - b).norm() < 1e-9 * (1.0 + b.norm()), "{a} vs {b}");
            }
        }
    }
}

/// Coefficients of `1 / Σ_j conj(μ̂(j)) z^j` by naive inversion.
fn reciprocal_series(moments: &MomentTable, n: usize) -> Vec<Complex64> {
    let b: Vec<Complex64> = (0..=n as i64).map(|j| moments.get(j).conj()).collect();
    let mut d = vec![Complex64::new(0.0, 0.0); n + 1];
    d[0] = Complex64::new(1.0, 0.0) / b[0];
    for k in 1..=n {
        let s: Complex64 = (1..=k).map(|j| b[j] * d[k - j]).sum();
        d[k] = -s / b[0];
    }
    d
}

#[test]
fn triangle_is_toeplitz_power_series_inverse() {
    for m in [
        CircleMeasure::cantor(1.0).unwrap(),
        CircleMeasure::atomic(&[(0.2, 0.7), (0.6, 0.3)]).unwrap(),
        mixed(&[(0.25, 0.5)], &[(0.5, 1.0, 1.0)]),
    ] {
        let (unit, _) = m.normalized();
        let n = 30;
        let moments = MomentTable::from_measure(&unit, n);
        let triangle = auxiliary_sequence(&moments, n).unwrap();
        let d = reciprocal_series(&moments, n);
        for (row_index, row) in triangle.rows().iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                let expected = d[row_index - k];
                assert!((a - expected).norm() < 1e-9 * (1.0 + expected.norm()));
            }
        }
    }
}

/// Auxiliary vectors built directly as values on the atoms.
fn gram_schmidt_defect(atoms: &[(f64, f64)], values: &[Complex64], n: usize) -> f64 {
    let e = |k: usize, x: f64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 * x);
    let inner = |u: &[Complex64], v: &[Complex64]| -> Complex64 {
        atoms.iter().zip(u.iter().zip(v)).map(|(a, (x, y))| a.1 * x * y.conj()).sum()
    };
    let mut g: Vec<Vec<Complex64>> = Vec::new();
    for k in 0..=n {
        let ek: Vec<Complex64> = atoms.iter().map(|a| e(k, a.0)).collect();
        let mut gk = ek.clone();
        for (j, gj) in g.iter().enumerate() {
            let ej: Vec<Complex64> = atoms.iter().map(|a| e(j, a.0)).collect();
            let coef = inner(&ek, &ej);
            for (x, y) in gk.iter_mut().zip(gj) {
                *x -= coef * y;
            }
        }
        g.push(gk);
    }
    let norm = inner(values, values).re;
    norm - g.iter().map(|gk| inner(values, gk).norm_sqr()).sum::<f64>()
}

#[test]
fn atomic_defect_matches_dense_gram_brute_force() {
    let atoms = [(0.0, 0.5), (0.5, 0.5)];
    let m = CircleMeasure::atomic(&atoms).unwrap();
    let triangle = auxiliary_sequence(&MomentTable::from_measure(&m, 64), 64).unwrap();
    for f in generate_test_functions(&m, 0, 20) {
        let values: Vec<Complex64> = atoms.iter().map(|a| f.evaluate(a.0)).collect();
        for n in [0, 1, 5, 64] {
            let brute = gram_schmidt_defect(&atoms, &values, n);
            let d = parseval_defect(&m, &triangle, &f, n).unwrap();
            assert!((d - brute).abs() < 1e-10, "n={n}: {d} vs {brute}");
        }
        assert!(parseval_defect(&m, &triangle, &f, 64).unwrap() <= 1e-10);
        let res = reconstruction_residual(&m, &triangle, &f, 64).unwrap();
        assert!((res - parseval_defect(&m, &triangle, &f, 64).unwrap()).abs() < 1e-8);
    }
}

#[test]
fn normalized_cauchy_coefficients_are_kaczmarz_coefficients() {
    let mut r = rng(3);
    for m in [
        CircleMeasure::cantor(1.0).unwrap(),
        CircleMeasure::atomic(&[(0.1, 0.2), (0.45, 0.5), (0.8, 0.3)]).unwrap(),
        random_measure(&mut r),
    ] {
        let n = 32;
        let triangle = auxiliary_sequence(&MomentTable::from_measure(&m, n), n).unwrap();
        for f in generate_test_functions(&m, 9, 3) {
            let v = normalized_cauchy_series(&m, &f, n).unwrap();
            let k = analysis_coefficients(&triangle, &m, &f).unwrap();
            for (a, b) in v.nonnegative().iter().zip(&k) {
                assert!((a - b).norm() < 1e-9 * (1.0 + b.norm()));
            }
        }
    }
}

/// Exact Gaussian rationals.
#[derive(Clone, Debug, PartialEq)]
struct Gauss {
    re: BigRational,
    im: BigRational,
}

impl Gauss {
    fn int(re: i64, im: i64) -> Self {
        Self { re: BigRational::from_integer(BigInt::from(re)), im: BigRational::from_integer(BigInt::from(im)) }
    }
    fn add(&self, o: &Self) -> Self {
        Self { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        Self { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
    fn scale(&self, q: &BigRational) -> Self {
        Self { re: &self.re * q, im: &self.im * q }
    }
    fn div(&self, o: &Self) -> Self {
        let den = &o.re * &o.re + &o.im * &o.im;
        let conj = Self { re: o.re.clone(), im: -o.im.clone() };
        self.mul(&conj).scale(&(BigRational::from_integer(BigInt::from(1)) / den))
    }
    fn to_f64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap(), self.im.to_f64().unwrap())
    }
}

#[test]
fn normalized_cauchy_matches_exact_rational_division() {
    // atoms at quarter turns, so every moment is a Gaussian rational
    let weights = [(0.0, 1i64, 6i64), (0.25, 1, 3), (0.5, 1, 6), (0.75, 1, 3)];
    let values = [(1i64, 0i64), (0, 2), (-3, 1), (2, -1)];
    let m = CircleMeasure::atomic(&weights.map(|(x, p, q)| (x, p as f64 / q as f64))).unwrap();
    let f = FunctionSpec::from_atom_values(
        &weights.iter().zip(values).map(|(w, (re, im))| (w.0, c(re as f64, im as f64))).collect::<Vec<_>>(),
    )
    .unwrap();
    let n = 24;
    // e^{−2πi n x} at x = j/4 is (−i)^{nj}
    let minus_i_pow = |k: usize| match k % 4 {
        0 => Gauss::int(1, 0),
        1 => Gauss::int(0, -1),
        2 => Gauss::int(-1, 0),
        _ => Gauss::int(0, 1),
    };
    let weight = |j: usize| BigRational::new(BigInt::from(weights[j].1), BigInt::from(weights[j].2));
    let mut num = Vec::new();
    let mut den = Vec::new();
    for k in 0..=n {
        let mut a = Gauss::int(0, 0);
        let mut b = Gauss::int(0, 0);
        for (j, &(re, im)) in values.iter().enumerate() {
            let e = minus_i_pow(k * j).scale(&weight(j));
            a = a.add(&Gauss::int(re, im).mul(&e));
            b = b.add(&e);
        }
        num.push(a);
        den.push(b);
    }
    let mut q: Vec<Gauss> = Vec::new();
    for k in 0..=n {
        let mut acc = num[k].clone();
        for j in 1..=k {
            acc = acc.sub(&den[j].mul(&q[k - j]));
        }
        q.push(acc.div(&den[0]));
    }
    let v = normalized_cauchy_series(&m, &f, n).unwrap();
    for (got, exact) in v.nonnegative().iter().zip(&q) {
        let e = exact.to_f64();
        assert!((got - e).norm() < 1e-12 * (1.0 + e.norm()), "{got} vs {e}");
    }
}
