//! Seeded random test functions.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::measure::{CircleMeasure, FunctionSpec, Term};

pub const MAX_FREQUENCY: i64 = 8;
pub const MAX_TERMS: usize = 4;

fn unit_box(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

/// `count` functions with up to four terms `c e^{2πimx} χ_{[u,v)}`, `|m| ≤ 8`,
/// and an explicit value at every atom of `measure`. When the measure has a
/// Cantor part every term is a full trigonometric monomial. The output
/// depends only on `(measure, seed, count)`.
pub fn generate_test_functions(measure: &CircleMeasure, seed: u64, count: usize) -> Vec<FunctionSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full_only = measure.cantor_weight() > 0.0;
    (0..count)
        .map(|_| {
            let n_terms = rng.gen_range(1..=MAX_TERMS);
            let terms = (0..n_terms)
                .map(|_| {
                    let frequency = rng.gen_range(-MAX_FREQUENCY..=MAX_FREQUENCY);
                    let coefficient = unit_box(&mut rng);
                    let (start, end) = if full_only || rng.gen_bool(0.5) {
                        (0.0, 1.0)
                    } else {
                        let a: f64 = rng.gen_range(0.0..1.0);
                        let b: f64 = rng.gen_range(0.0..1.0);
                        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                        if hi - lo < 1e-6 {
                            (0.0, 1.0)
                        } else {
                            (lo, hi)
                        }
                    };
                    Term { frequency, start, end, coefficient }
                })
                .collect();
            let values = measure.atoms().iter().map(|a| (a.location, unit_box(&mut rng))).collect();
            FunctionSpec::new(terms, values).expect("generated terms are valid")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mixed() -> CircleMeasure {
        CircleMeasure::new(
            vec![crate::measure::Atom { location: 0.25, weight: 0.5 }],
            vec![crate::measure::DensityPiece { start: 0.5, end: 1.0, height: 1.0 }],
            0.0,
        )
        .unwrap()
    }

    #[test]
    fn same_seed_same_functions() {
        let m = mixed();
        assert_eq!(generate_test_functions(&m, 0, 5), generate_test_functions(&m, 0, 5));
        assert_ne!(generate_test_functions(&m, 0, 5), generate_test_functions(&m, 1, 5));
    }

    #[test]
    fn shape_constraints() {
        let m = mixed();
        let fs = generate_test_functions(&m, 7, 50);
        assert_eq!(fs.len(), 50);
        for f in &fs {
            assert!((1..=MAX_TERMS).contains(&f.terms().len()));
            assert!(f.terms().iter().all(|t| t.frequency.abs() <= MAX_FREQUENCY));
            assert!(f.terms().iter().all(|t| t.coefficient.re.abs() <= 1.0 && t.coefficient.im.abs() <= 1.0));
            assert_eq!(f.atom_values().len(), 1);
        }
        assert!(fs.iter().any(|f| f.terms().iter().any(|t| !t.is_full())));
    }

    #[test]
    fn cantor_measures_get_trig_polynomials() {
        let m = CircleMeasure::cantor(1.0).unwrap();
        let fs = generate_test_functions(&m, 3, 20);
        assert_eq!(fs.len(), 20);
        assert!(fs.iter().all(|f| f.terms().iter().all(|t| t.is_full())));
        assert!(fs.iter().all(|f| m.check_function(f).is_ok()));
    }
}
