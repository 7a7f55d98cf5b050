//! Seeded random generation of ambient vectors and cone members.
//!
//! All randomized verification in this crate flows through these helpers
//! with an explicit `ChaCha8Rng`, so every sweep is reproducible from its
//! seed.  Member generation is constructive per family (no rejection for
//! cones with a known interior direction): orthant members take entrywise
//! absolute values, Lorentz members stack `(x, ||x|| + h)`, and halfspace
//! members walk a ray `e + t u` up to the exit parameter of the cone.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::cone::{Cone, ConeKind};
use crate::vector::Vector;

/// One standard normal draw.
pub(crate) fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// |N(0, 1)| * scale.
pub(crate) fn abs_normal(rng: &mut ChaCha8Rng, scale: f64) -> f64 {
    normal(rng).abs() * scale
}

/// Vector of independent standard normals.
pub(crate) fn gaussian(dim: usize, rng: &mut ChaCha8Rng) -> Vector {
    Vector::new((0..dim).map(|_| normal(rng)).collect()).expect("gaussian vector is finite")
}

/// A random unit vector.
pub(crate) fn unit(dim: usize, rng: &mut ChaCha8Rng) -> Vector {
    loop {
        let g = gaussian(dim, rng);
        let n = g.norm();
        if n > 1e-6 {
            return g.scale(1.0 / n);
        }
    }
}

/// General ambient test vector: a Gaussian with a mild random scale, so
/// sweeps see magnitudes from a fraction of a unit up to a few units.
pub(crate) fn ambient(dim: usize, rng: &mut ChaCha8Rng) -> Vector {
    let scale = rng.random_range(0.5..3.0);
    gaussian(dim, rng).scale(scale)
}

/// Uniform choice from a nonempty pool.
pub(crate) fn pick<'a>(pool: &'a [Vector], rng: &mut ChaCha8Rng) -> &'a Vector {
    &pool[rng.random_range(0..pool.len())]
}

/// A random member of the cone, with a fair share of boundary points.
pub(crate) fn member(cone: &Cone, rng: &mut ChaCha8Rng) -> Vector {
    member_of_kind(cone.kind(), Some(cone.e()), rng)
        .expect("a cone with an interior direction always has members")
}

fn member_of_kind(
    kind: &ConeKind,
    e: Option<&Vector>,
    rng: &mut ChaCha8Rng,
) -> Option<Vector> {
    match kind {
        ConeKind::Orthant { dim } => {
            let mut coords: Vec<f64> = (0..*dim).map(|_| abs_normal(rng, 1.5)).collect();
            if rng.random_bool(0.25) {
                for c in coords.iter_mut() {
                    if rng.random_bool(0.5) {
                        *c = 0.0;
                    }
                }
            }
            Some(Vector::new(coords).expect("orthant member is finite"))
        }
        ConeKind::Lorentz { dim } => {
            let x = gaussian(*dim - 1, rng).scale(rng.random_range(0.3..2.0));
            let radius = x.norm();
            let last = if rng.random_bool(0.2) {
                radius
            } else {
                radius + abs_normal(rng, 1.0)
            };
            let mut coords = x.coords().to_vec();
            coords.push(last);
            Some(Vector::new(coords).expect("lorentz member is finite"))
        }
        ConeKind::Halfspace { rows } => {
            let e = e?;
            let dim = e.dim();
            let u = unit(dim, rng);
            // Largest t with e + t u still in the cone; infinite when u is
            // a recession direction for every row.
            let mut t_max = f64::INFINITY;
            for row in rows {
                let ru = row.dot(&u);
                if ru < 0.0 {
                    t_max = t_max.min(row.dot(e) / -ru);
                }
            }
            let t = if t_max <= 1e3 && rng.random_bool(0.2) {
                t_max
            } else {
                rng.random_range(0.0..1.0) * t_max.min(20.0)
            };
            let scale = abs_normal(rng, 1.5) + 0.05;
            Some((e + &u.scale(t)).scale(scale))
        }
    }
}

/// A member whose slack is at least `min_slack`, built by shifting a random
/// member along `e`; superadditivity of the slack makes the margin certain.
pub(crate) fn interior_member(cone: &Cone, rng: &mut ChaCha8Rng, min_slack: f64) -> Vector {
    let slack_e = cone.kind().slack(cone.e());
    let base = member(cone, rng);
    let delta = (min_slack / slack_e) * (1.0 + abs_normal(rng, 1.0));
    &base + &cone.e().scale(delta)
}

/// Pool of members for a cone with a valid interior direction.
pub(crate) fn member_pool(cone: &Cone, rng: &mut ChaCha8Rng, want: usize) -> Vec<Vector> {
    let mut pool = probes(cone.kind());
    while pool.len() < want {
        pool.push(member(cone, rng));
    }
    pool
}

/// Pool of members for a bare family, where no interior direction may
/// exist.  Deterministic probes come first; Gaussian rejection fills the
/// rest, switching to ray sampling when a strictly interior probe is known.
pub(crate) fn kind_member_pool(
    kind: &ConeKind,
    rng: &mut ChaCha8Rng,
    want: usize,
) -> Vec<Vector> {
    if !matches!(kind, ConeKind::Halfspace { .. }) {
        let cone = Cone::new(kind.clone(), None).expect("orthant and lorentz defaults are valid");
        return member_pool(&cone, rng, want);
    }

    let mut pool = probes(kind);
    let interior = pool
        .iter()
        .chain(std::iter::once(&kind.default_e()))
        .find(|v| kind.slack(v) > 0.01 * (1.0 + v.norm()))
        .cloned();
    if let Some(e) = interior {
        while pool.len() < want {
            if let Some(m) = member_of_kind(kind, Some(&e), rng) {
                pool.push(m);
            }
        }
        return pool;
    }

    let budget = 200 * want;
    for _ in 0..budget {
        if pool.len() >= want {
            break;
        }
        let g = gaussian(kind.dim(), rng).scale(rng.random_range(0.3..3.0));
        if kind.slack(&g) >= 0.0 {
            pool.push(g);
        }
    }
    pool
}

/// Deterministic membership candidates: signed basis vectors, signed
/// all-ones, and basis pair sums, filtered by exact membership.
fn probes(kind: &ConeKind) -> Vec<Vector> {
    let dim = kind.dim();
    let mut candidates = Vec::new();
    for i in 0..dim {
        candidates.push(Vector::basis(dim, i));
        candidates.push(Vector::basis(dim, i).scale(-1.0));
        for j in (i + 1)..dim {
            candidates.push(&Vector::basis(dim, i) + &Vector::basis(dim, j));
        }
    }
    candidates.push(Vector::ones(dim));
    candidates.push(Vector::ones(dim).scale(-1.0));
    candidates.retain(|v| kind.slack(v) >= 0.0);
    candidates
}
