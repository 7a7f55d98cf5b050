//! Shared helpers for the integration suites.
#![allow(dead_code)]

use conekit::{Cone, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(dim: usize, rng: &mut ChaCha8Rng) -> Vector {
    Vector::new((0..dim).map(|_| rng.sample(StandardNormal)).collect()).unwrap()
}

/// An ambient draw: Gaussian direction with a spread of magnitudes.
pub fn ambient(dim: usize, rng: &mut ChaCha8Rng) -> Vector {
    let scale = rng.random_range(0.5..3.0);
    gaussian(dim, rng).scale(scale)
}

/// Random halfspace rows that keep the all-ones vector strictly
/// interior, so the default direction is admissible.
pub fn halfspace_rows(dim: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vector> {
    let mut rows = Vec::with_capacity(count);
    while rows.len() < count {
        let row = gaussian(dim, rng);
        let norm = row.norm();
        if norm < 1e-6 {
            continue;
        }
        let row = row.scale(1.0 / norm);
        if row.coords().iter().sum::<f64>() >= 0.5 {
            rows.push(row);
        }
    }
    rows
}

/// The four cone fixtures used across the acceptance sweeps.
pub fn standard_cones() -> Vec<(&'static str, Cone)> {
    let mut r = rng(991);
    vec![
        ("orthant(2)", Cone::orthant(2).unwrap()),
        ("orthant(5)", Cone::orthant(5).unwrap()),
        (
            "halfspace(4 rows)",
            Cone::halfspace(halfspace_rows(3, 4, &mut r)).unwrap(),
        ),
        ("lorentz(3)", Cone::lorentz(3).unwrap()),
    ]
}
