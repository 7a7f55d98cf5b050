//! Shared fixtures for the criterion benches.

use conekit::{Cone, ConeMetricSpace, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The cone families benchmarked side by side, all in dimension 5.
pub fn cones() -> Vec<(&'static str, Cone)> {
    let mut rng = ChaCha8Rng::seed_from_u64(8_128);
    let mut rows = Vec::with_capacity(4);
    while rows.len() < 4 {
        let coords: Vec<f64> = (0..5).map(|_| rng.random_range(-1.0..1.0)).collect();
        let row = Vector::new(coords).unwrap();
        // Keep the all-ones direction strictly interior.
        if row.coords().iter().sum::<f64>() >= 0.5 * row.norm() {
            rows.push(row);
        }
    }
    vec![
        ("orthant", Cone::orthant(5).unwrap()),
        ("halfspace", Cone::halfspace(rows).unwrap()),
        ("lorentz", Cone::lorentz(5).unwrap()),
    ]
}

/// Deterministic ambient vectors for throughput measurements.
pub fn vectors(count: usize, dim: usize, seed: u64) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let coords: Vec<f64> = (0..dim).map(|_| rng.random_range(-10.0..10.0)).collect();
            Vector::new(coords).unwrap()
        })
        .collect()
}

/// The standard weighted-line space used by the solver benches.
pub fn line_space() -> ConeMetricSpace {
    let cone = Cone::orthant(2).unwrap();
    let w = Vector::from_slice(&[1.0, 2.0]).unwrap();
    ConeMetricSpace::weighted_line(cone, w).unwrap()
}
