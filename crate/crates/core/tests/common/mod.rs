#![allow(dead_code)]

use framelab_core::measure::{Atom, CircleMeasure, DensityPiece, FunctionSpec, Term};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn mixed(atoms: &[(f64, f64)], pieces: &[(f64, f64, f64)]) -> CircleMeasure {
    CircleMeasure::new(
        atoms.iter().map(|&(location, weight)| Atom { location, weight }).collect(),
        pieces.iter().map(|&(start, end, height)| DensityPiece { start, end, height }).collect(),
        0.0,
    )
    .unwrap()
}

/// Up to three atoms and up to two density pieces, no Cantor part.
pub fn random_measure(rng: &mut ChaCha8Rng) -> CircleMeasure {
    let n_atoms = rng.gen_range(0..=3);
    let atoms: Vec<Atom> = (0..n_atoms)
        .map(|i| Atom {
            location: (i as f64 + rng.gen_range(0.05..0.95)) / n_atoms as f64,
            weight: rng.gen_range(0.1..1.0),
        })
        .collect();
    let n_pieces = if n_atoms == 0 { rng.gen_range(1..=2) } else { rng.gen_range(0..=2) };
    let mut cuts: Vec<f64> = (0..2 * n_pieces).map(|_| rng.gen_range(0.0..1.0)).collect();
    cuts.sort_by(f64::total_cmp);
    let pieces = cuts
        .chunks(2)
        .filter(|w| w[1] - w[0] > 1e-3)
        .map(|w| DensityPiece { start: w[0], end: w[1], height: rng.gen_range(0.2..2.0) })
        .collect::<Vec<_>>();
    if atoms.is_empty() && pieces.is_empty() {
        return CircleMeasure::lebesgue();
    }
    CircleMeasure::new(atoms, pieces, 0.0).unwrap()
}

pub fn random_function(rng: &mut ChaCha8Rng, measure: &CircleMeasure) -> FunctionSpec {
    let n = rng.gen_range(1..=3);
    let terms = (0..n)
        .map(|_| {
            let a = rng.gen_range(0.0..1.0);
            let b = rng.gen_range(0.0..1.0);
            let (start, end) = if rng.gen_bool(0.4) {
                (0.0, 1.0)
            } else if a < b {
                (a, b + 1e-3)
            } else {
                (b, a + 1e-3)
            };
            Term {
                frequency: rng.gen_range(-6..=6),
                start,
                end: end.min(1.0),
                coefficient: c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            }
        })
        .collect();
    let mut values = Vec::new();
    for a in measure.atoms() {
        if rng.gen_bool(0.5) {
            values.push((a.location, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))));
        }
    }
    FunctionSpec::new(terms, values).unwrap()
}

const GL_NODES: [f64; 5] =
    [-0.906_179_845_938_664, -0.538_469_310_105_683_1, 0.0, 0.538_469_310_105_683_1, 0.906_179_845_938_664];
const GL_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Composite 5-point Gauss–Legendre over `[a, b]` with `panels` panels.
pub fn gauss_legendre(a: f64, b: f64, panels: usize, f: impl Fn(f64) -> Complex64) -> Complex64 {
    let h = (b - a) / panels as f64;
    let mut acc = c(0.0, 0.0);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
            acc += w * 0.5 * h * f(mid + 0.5 * h * x);
        }
    }
    acc
}

/// `∫ f conj(g) dμ` by pointwise evaluation: atoms summed exactly, density
/// integrated panel by panel between every breakpoint of `μ`, `f` and `g`.
pub fn quadrature_inner(measure: &CircleMeasure, f: &FunctionSpec, g: &FunctionSpec) -> Complex64 {
    let mut acc: Complex64 =
        measure.atoms().iter().map(|a| a.weight * f.evaluate(a.location) * g.evaluate(a.location).conj()).sum();
    for p in measure.pieces() {
        let mut cuts = vec![p.start, p.end];
        for t in f.terms().iter().chain(g.terms()) {
            for x in [t.start, t.end] {
                if p.start < x && x < p.end {
                    cuts.push(x);
                }
            }
        }
        cuts.sort_by(f64::total_cmp);
        for w in cuts.windows(2) {
            if w[1] > w[0] {
                acc += p.height * gauss_legendre(w[0], w[1], 64, |x| f.evaluate_terms(x) * g.evaluate_terms(x).conj());
            }
        }
    }
    acc
}
