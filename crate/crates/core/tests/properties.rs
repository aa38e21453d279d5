mod common;

use common::*;
use framelab_core::dextrodual::{build_examplecase_dual, build_extension_plan, ExtensionOptions};
use framelab_core::hardy::{normalized_cauchy_series, reproducing_kernel_eval, shift_residual, FiniteFrameFamily};
use framelab_core::kaczmarz::{auxiliary_sequence, effectiveness_table};
use framelab_core::measure::{CircleMeasure, FunctionSpec, MomentTable};
use framelab_core::realline::{
    disintegrate, double_expansion_coefficients, periodize, weighted_bessel_decay, AtomValues, RealAtomicMeasure,
    Sequence,
};
use framelab_core::testfns::generate_test_functions;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;

fn measure_and_seed() -> impl Strategy<Value = (CircleMeasure, u64)> {
    any::<u64>().prop_map(|seed| (random_measure(&mut rng(seed)), seed))
}

fn atomic_measure() -> impl Strategy<Value = CircleMeasure> {
    prop::collection::vec((0.0f64..1.0, 0.05f64..1.0), 1..5).prop_filter_map("distinct atoms", |pairs| {
        let mut xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        xs.sort_by(f64::total_cmp);
        if xs.windows(2).any(|w| w[1] - w[0] < 1e-3) {
            return None;
        }
        CircleMeasure::atomic(&pairs).ok()
    })
}

fn real_measure() -> impl Strategy<Value = RealAtomicMeasure> {
    prop::collection::vec((-5.0f64..5.0, 0.05f64..1.0), 1..6)
        .prop_filter_map("distinct atoms", |pairs| RealAtomicMeasure::from_pairs(&pairs).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inner_product_is_conjugate_symmetric((m, seed) in measure_and_seed()) {
        let mut r = rng(seed ^ 0x5eed);
        let f = random_function(&mut r, &m);
        let g = random_function(&mut r, &m);
        let fg = m.inner_product(&f, &g).unwrap();
        let gf = m.inner_product(&g, &f).unwrap();
        prop_assert!((fg - gf.conj()).norm() < 1e-12);
        prop_assert!(m.norm_sq(&f).unwrap() >= -1e-12);
    }

    #[test]
    fn exponential_gram_is_positive_semidefinite((m, _) in measure_and_seed()) {
        let n = 12;
        let moments = MomentTable::from_measure(&m, n);
        let gram = DMatrix::from_fn(n + 1, n + 1, |j, k| moments.get(j as i64 - k as i64));
        let eig = gram.symmetric_eigenvalues();
        prop_assert!(eig.min() >= -1e-10 * m.total_mass());
    }

    #[test]
    fn triangle_is_monic((m, _) in measure_and_seed()) {
        let t = auxiliary_sequence(&MomentTable::from_measure(&m, 16), 16).unwrap();
        for (n, row) in t.rows().iter().enumerate() {
            prop_assert_eq!(row.len(), n + 1);
            prop_assert_eq!(row[n], Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn defect_decreases_and_equals_residual(m in atomic_measure(), seed in any::<u64>()) {
        let orders = [0, 1, 2, 4, 8, 16, 32];
        for f in generate_test_functions(&m, seed, 3) {
            let table = effectiveness_table(&m, &f, &orders).unwrap();
            for w in table.windows(2) {
                prop_assert!(w[1].defect <= w[0].defect + 1e-12);
            }
            for row in &table {
                prop_assert!(row.defect >= -1e-10);
                prop_assert!((row.defect - row.residual).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn cantor_defect_decreases(seed in any::<u64>()) {
        let m = CircleMeasure::cantor(1.0).unwrap();
        let f = &generate_test_functions(&m, seed, 1)[0];
        let table = effectiveness_table(&m, f, &[4, 8, 16, 32, 64]).unwrap();
        for w in table.windows(2) {
            prop_assert!(w[1].defect <= w[0].defect + 1e-12);
        }
        for row in &table {
            prop_assert!((row.defect - row.residual).abs() < 1e-8);
        }
    }

    #[test]
    fn normalized_cauchy_energy_is_bounded(m in atomic_measure(), seed in any::<u64>()) {
        let (unit, _) = m.normalized();
        for f in generate_test_functions(&m, seed, 2) {
            let v = normalized_cauchy_series(&m, &f, 24).unwrap();
            let norm = unit.norm_sq(&f).unwrap();
            let mut partial = 0.0;
            for c in v.nonnegative() {
                let next = partial + c.norm_sqr();
                prop_assert!(next >= partial);
                partial = next;
            }
            prop_assert!(partial <= norm * (1.0 + 1e-6) + 1e-12);
        }
    }

    #[test]
    fn parseval_extension_is_isometric(
        atom in 0.05f64..0.45,
        weight in 0.05f64..0.5,
        seed in any::<u64>(),
    ) {
        let m = mixed(&[(atom, weight)], &[(0.5, 1.0, 1.0)]);
        let Ok(plan) = build_extension_plan(&m, ExtensionOptions { parseval: true, boundary: None }) else {
            return Ok(());
        };
        for f in generate_test_functions(&m, seed, 3) {
            let lhs = plan.extension_norm_sq(&f).unwrap();
            let rhs = m.norm_sq(&f).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + rhs));
        }
    }

    #[test]
    fn pythagoras_lhs_never_exceeds_rhs(seed in any::<u64>(), order in 1usize..24) {
        let m = mixed(&[(0.2, 0.4), (0.32, 0.3)], &[(0.55, 0.9, 1.5)]);
        let dual = build_examplecase_dual(&m, 4 * order).unwrap();
        for f in generate_test_functions(&m, seed, 2) {
            let (lhs, rhs) = dual.bessel_pythagoras_check(&f, order).unwrap();
            prop_assert!(lhs <= rhs + 1e-10);
        }
    }

    #[test]
    fn periodize_conserves_mass(m in real_measure(), period in 0.1f64..4.0) {
        let folded = periodize(&m, period).unwrap();
        prop_assert!((folded.total_mass() - m.total_mass()).abs() < 1e-12);
    }

    #[test]
    fn disintegration_round_trips(m in real_measure()) {
        let sys = disintegrate(&m).unwrap();
        prop_assert!((sys.total_mass() - m.total_mass()).abs() < 1e-12);
        for s in sys.slices() {
            prop_assert!((s.measure.total_mass() - 1.0).abs() < 1e-12);
        }
        let back = sys.reassemble().unwrap();
        prop_assert_eq!(back.atoms().len(), m.atoms().len());
        for (a, b) in back.atoms().iter().zip(m.atoms()) {
            prop_assert!((a.position - b.position).abs() <= 1e-15 * (1.0 + b.position.abs()) * 8.0);
            prop_assert_eq!(a.weight, b.weight);
        }
    }

    #[test]
    fn double_defect_is_monotone(m in real_measure(), seed in any::<u64>()) {
        let mut r = rng(seed);
        use rand::Rng;
        let values = AtomValues::from_fn(&m, |_| c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
        let sys = disintegrate(&m).unwrap();
        let d = double_expansion_coefficients(&sys, &values, 8, 16).unwrap();
        for n in 0..=8 {
            for k in 0..=16 {
                let here = d.defect(n, k).unwrap();
                prop_assert!(here >= -1e-10);
                if n > 0 {
                    prop_assert!(here <= d.defect(n - 1, k).unwrap() + 1e-12);
                }
                if k > 0 {
                    prop_assert!(here <= d.defect(n, k - 1).unwrap() + 1e-12);
                }
            }
        }
    }

    #[test]
    fn weighted_decay_routes_agree(first in 0.1f64..2.0, ratio in 0.0f64..0.8, n in 0usize..30) {
        let geo = Sequence::Geometric { first, ratio };
        let rows = weighted_bessel_decay(&Sequence::Reciprocal, &geo, &[n], 400).unwrap();
        prop_assert!((rows[0].value - rows[0].direct).abs() <= 1e-12 + rows[0].tail_bound);
        let expected = first * first / (1.0 - ratio * ratio) / (n as f64 + 1.0);
        prop_assert!((rows[0].value - expected).abs() < 1e-12 * (1.0 + expected));
    }

    #[test]
    fn shift_fit_is_exact_on_orbits(seed in any::<u64>(), d in 2usize..6) {
        use rand::Rng;
        let mut r = rng(seed);
        let t = DMatrix::from_fn(d, d, |_, _| c(r.gen_range(-0.4..0.4), r.gen_range(-0.4..0.4)) / d as f64);
        let g0 = DVector::from_fn(d, |_, _| c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
        let fam = FiniteFrameFamily::orbit(&t, g0, d + 3).unwrap();
        prop_assert!(shift_residual(&fam).unwrap().residual <= 1e-10);
    }
}

#[test]
fn repeated_basis_families_are_parseval() {
    for d in 1..=16 {
        assert!(FiniteFrameFamily::repeated_basis(d).unwrap().is_parseval(1e-10));
    }
}

#[test]
fn orthonormal_kernel_is_szego() {
    let fam = FiniteFrameFamily::orthonormal(12).unwrap();
    for (w, z) in [(c(0.3, 0.1), c(-0.2, 0.5)), (c(0.0, 0.6), c(0.7, 0.0)), (c(-0.5, -0.5), c(0.1, 0.1))] {
        let k = reproducing_kernel_eval(&fam, w, z, 12).unwrap();
        let szego: Complex64 = (0..12).map(|n| (w.conj() * z).powu(n)).sum();
        assert!((k - szego).norm() < 1e-12);
    }
}

#[test]
fn zero_function_has_zero_everything() {
    let m = mixed(&[(0.25, 0.5)], &[(0.5, 1.0, 1.0)]);
    let z = FunctionSpec::zero();
    let table = effectiveness_table(&m, &z, &[0, 4, 16]).unwrap();
    assert!(table.iter().all(|r| r.defect == 0.0 && r.residual == 0.0));
}
