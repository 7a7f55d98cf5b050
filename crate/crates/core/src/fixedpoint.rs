//! Self-maps on cone metric spaces, contraction verification, Picard
//! iteration, and the coupled-map conditions (C) and (C1).
//!
//! The key implication checked here: if `f` is a vectorial contraction,
//! `p(f(x), f(y)) <=_K phi(p(x, y))`, then it is a scalar contraction for
//! the induced metric with the transferred comparison function,
//! `d_p(f(x), f(y)) <= psi(d_p(x, y))`.  Picard iteration then converges
//! to the unique fixed point from any start.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::comparison::{transfer_psi, ScalarComparison, VectorialComparison};
use crate::cone::{tol_scale, Cone, MEMBERSHIP_TOL};
use crate::cone_metric::{
    random_valid_table, table_from_componentwise, ConeMetricSpace, InducedMetric, Point,
};
use crate::error::{Error, Result};
use crate::report::{CheckBuilder, PropertyReport};
use crate::sample;
use crate::scalarize::Scalarizer;
use crate::vector::Vector;

/// Orbit and residual history are truncated to this many entries; the
/// iteration itself is not.
pub const REPORT_CAP: usize = 10_000;

/// Additive slack allowed in scalar-side inequalities, absorbing the
/// floating point noise of `xi` round trips.
const SCALAR_SLACK: f64 = 1e-9;

/// Default sampling range for point pairs on line spaces.
const LINE_RANGE: f64 = 1e3;

/// How a self-map acts on its domain.
#[derive(Debug, Clone, PartialEq)]
pub enum MapRule {
    /// Finite spaces: point `i` maps to point `images[i]`.
    Assignment { images: Vec<usize> },
    /// Lines: `x` maps to `a * x + b` with `|a| < 1`.
    Affine { a: f64, b: f64 },
    /// Lines restricted to a finite grid: `points[i]` maps to
    /// `images[i]`, and every image is itself a grid point, so orbits
    /// stay inside the grid.
    Grid { points: Vec<f64>, images: Vec<f64> },
}

/// A self-map of a cone metric space.
///
/// Construction guarantees the rule maps every domain point to a domain
/// point, so `apply` only fails on points outside the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfMap {
    domain: ConeMetricSpace,
    rule: MapRule,
}

/// Matches `x` against a grid point within an absolute-plus-relative
/// tolerance; grid construction keeps points separated well beyond it.
fn grid_position(points: &[f64], x: f64) -> Option<usize> {
    points
        .iter()
        .position(|p| (p - x).abs() <= 1e-12 * (1.0 + x.abs()))
}

impl SelfMap {
    /// A map on a finite space given by image indices.
    pub fn assignment(domain: ConeMetricSpace, images: Vec<usize>) -> Result<Self> {
        let n = domain.point_count().ok_or_else(|| {
            Error::InvalidMap("assignment rules need a finite space".into())
        })?;
        if images.len() != n {
            return Err(Error::InvalidMap(format!(
                "assignment needs one image per point: {} points, {} images",
                n,
                images.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidMap(format!(
                "image index {bad} out of range for {n} points"
            )));
        }
        Ok(Self {
            domain,
            rule: MapRule::Assignment { images },
        })
    }

    /// A map on a finite space given by image labels, in point order.
    pub fn assignment_by_label(domain: ConeMetricSpace, images: &[&str]) -> Result<Self> {
        let indices = images
            .iter()
            .map(|l| domain.index_of(&Point::label(*l)))
            .collect::<Result<Vec<usize>>>()?;
        Self::assignment(domain, indices)
    }

    /// The affine map `x -> a * x + b` on the line.
    pub fn affine(domain: ConeMetricSpace, a: f64, b: f64) -> Result<Self> {
        if domain.is_finite() {
            return Err(Error::InvalidMap("affine rules need a line space".into()));
        }
        if !a.is_finite() || a.abs() >= 1.0 {
            return Err(Error::SlopeOutOfRange(a));
        }
        if !b.is_finite() {
            return Err(Error::NonFiniteScalar { value: b });
        }
        Ok(Self {
            domain,
            rule: MapRule::Affine { a, b },
        })
    }

    /// A lookup-table map on distinct line points, closed over its grid.
    pub fn grid(domain: ConeMetricSpace, points: Vec<f64>, images: Vec<f64>) -> Result<Self> {
        if domain.is_finite() {
            return Err(Error::InvalidMap("grid rules need a line space".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidMap("grid rules need at least one point".into()));
        }
        if images.len() != points.len() {
            return Err(Error::InvalidMap(format!(
                "grid needs one image per point: {} points, {} images",
                points.len(),
                images.len()
            )));
        }
        for &p in &points {
            if !p.is_finite() {
                return Err(Error::NonFiniteScalar { value: p });
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if (points[i] - points[j]).abs() <= 1e-9 * (1.0 + points[i].abs()) {
                    return Err(Error::InvalidMap(format!(
                        "grid points {} and {} are not distinct",
                        points[i], points[j]
                    )));
                }
            }
        }
        for &img in &images {
            if grid_position(&points, img).is_none() {
                return Err(Error::InvalidMap(format!(
                    "image {img} is not a grid point"
                )));
            }
        }
        Ok(Self {
            domain,
            rule: MapRule::Grid { points, images },
        })
    }

    /// The identity on a finite space.  Lines have no admissible identity
    /// rule: affine slopes must satisfy `|a| < 1`.
    pub fn identity(domain: ConeMetricSpace) -> Result<Self> {
        let n = domain.point_count().ok_or_else(|| {
            Error::InvalidMap("the identity on a line is not an admissible affine rule".into())
        })?;
        Self::assignment(domain, (0..n).collect())
    }

    /// The constant map onto `target`.
    pub fn constant(domain: ConeMetricSpace, target: &Point) -> Result<Self> {
        if domain.is_finite() {
            let n = domain.point_count().expect("finite");
            let i = domain.index_of(target)?;
            Self::assignment(domain, vec![i; n])
        } else {
            match target {
                Point::Real(c) => Self::affine(domain, 0.0, *c),
                Point::Label(_) => Err(Error::PointKindMismatch {
                    point: target.to_string(),
                }),
            }
        }
    }

    pub fn domain(&self) -> &ConeMetricSpace {
        &self.domain
    }

    pub fn rule(&self) -> &MapRule {
        &self.rule
    }

    /// Applies the map; errors exactly when `x` is outside the domain.
    pub fn apply(&self, x: &Point) -> Result<Point> {
        match (&self.rule, x) {
            (MapRule::Assignment { images }, _) => {
                let i = self.domain.index_of(x)?;
                Ok(self.domain.point_at(images[i]))
            }
            (MapRule::Affine { a, b }, Point::Real(v)) => {
                if !v.is_finite() {
                    return Err(Error::NonFiniteScalar { value: *v });
                }
                Ok(Point::Real(a * v + b))
            }
            (MapRule::Grid { points, images }, Point::Real(v)) => {
                if !v.is_finite() {
                    return Err(Error::NonFiniteScalar { value: *v });
                }
                match grid_position(points, *v) {
                    Some(i) => Ok(Point::Real(images[i])),
                    None => Err(Error::UnknownPoint(format!("{v}"))),
                }
            }
            (_, Point::Label(l)) => Err(Error::PointKindMismatch { point: l.clone() }),
        }
    }

    /// The default pair set for verification sweeps: every ordered pair
    /// (diagonal included) for finite spaces and grid rules, otherwise
    /// `samples` pairs drawn uniformly from `[-1e3, 1e3]^2`.
    pub fn sample_pairs(&self, samples: usize, seed: u64) -> Vec<(Point, Point)> {
        if let Some(n) = self.domain.point_count() {
            let mut pairs = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    pairs.push((self.domain.point_at(i), self.domain.point_at(j)));
                }
            }
            return pairs;
        }
        if let MapRule::Grid { points, .. } = &self.rule {
            let mut pairs = Vec::with_capacity(points.len() * points.len());
            for &p in points {
                for &q in points {
                    pairs.push((Point::Real(p), Point::Real(q)));
                }
            }
            return pairs;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| {
                (
                    Point::Real(rng.random_range(-LINE_RANGE..=LINE_RANGE)),
                    Point::Real(rng.random_range(-LINE_RANGE..=LINE_RANGE)),
                )
            })
            .collect()
    }
}

/// The trace of a Picard iteration.
///
/// `converged` implies the final stored residual is below the requested
/// tolerance and `fixed_point` holds the last iterate.  `iterations`
/// counts map applications even past the storage cap.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub orbit: Vec<Point>,
    pub residuals: Vec<f64>,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_point: Option<Point>,
    pub iterations: usize,
}

fn require_same_space(m: &InducedMetric, f: &SelfMap, what: &str) -> Result<()> {
    if m.space() != f.domain() {
        return Err(Error::ConeMismatch(format!(
            "{what}: induced metric and map use different spaces"
        )));
    }
    Ok(())
}

fn require_cone(vc: &VectorialComparison, f: &SelfMap, what: &str) -> Result<()> {
    if vc.cone() != f.domain().cone() {
        return Err(Error::ConeMismatch(format!(
            "{what}: comparison function and space use different cones"
        )));
    }
    Ok(())
}

fn require_same_domain(f: &SelfMap, g: &SelfMap) -> Result<()> {
    if f.domain() != g.domain() {
        return Err(Error::InvalidMap(
            "the two maps must share a domain".into(),
        ));
    }
    Ok(())
}

fn point_json(p: &Point) -> serde_json::Value {
    match p {
        Point::Label(l) => json!(l),
        Point::Real(x) => json!(x),
    }
}

/// Checks `p(f(x), f(y)) <=_K phi(p(x, y))` over the map's default pair
/// set, reporting the worst violating pair.
pub fn verify_vector_contraction(
    f: &SelfMap,
    vc: &VectorialComparison,
    samples: usize,
    seed: u64,
) -> Result<PropertyReport> {
    require_cone(vc, f, "verify_vector_contraction")?;
    let space = f.domain();
    let cone = space.cone();
    let mut check = CheckBuilder::new("vector_contraction");
    for (x, y) in f.sample_pairs(samples, seed) {
        let p_xy = space.distance(&x, &y)?;
        let fx = f.apply(&x)?;
        let fy = f.apply(&y)?;
        let p_f = space.distance(&fx, &fy)?;
        let bound = vc.apply(&p_xy)?;
        let diff = &bound - &p_f;
        let slack = cone.slack(&diff)?;
        let violation = -(slack + MEMBERSHIP_TOL * tol_scale(&diff));
        check.record(violation.max(0.0), || {
            json!({
                "x": point_json(&x),
                "y": point_json(&y),
                "p_xy": p_xy.coords(),
                "p_fx_fy": p_f.coords(),
                "phi_p_xy": bound.coords(),
                "slack": slack,
            })
        });
    }
    let mut report = PropertyReport::new();
    report.push(check.finish());
    Ok(report)
}

/// Checks `d_p(f(x), f(y)) <= psi(d_p(x, y)) + 1e-9` over the same
/// default pair set as the vector-side check.
pub fn verify_scalar_contraction(
    f: &SelfMap,
    sc: &ScalarComparison,
    m: &InducedMetric,
    samples: usize,
    seed: u64,
) -> Result<PropertyReport> {
    require_same_space(m, f, "verify_scalar_contraction")?;
    let mut check = CheckBuilder::new("scalar_contraction");
    for (x, y) in f.sample_pairs(samples, seed) {
        let d_xy = m.distance(&x, &y)?;
        let fx = f.apply(&x)?;
        let fy = f.apply(&y)?;
        let d_f = m.distance(&fx, &fy)?;
        let bound = sc.eval(d_xy);
        check.record(d_f - bound - SCALAR_SLACK, || {
            json!({
                "x": point_json(&x),
                "y": point_json(&y),
                "d_xy": d_xy,
                "d_fx_fy": d_f,
                "psi_d_xy": bound,
            })
        });
    }
    let mut report = PropertyReport::new();
    report.push(check.finish());
    Ok(report)
}

/// Cross-tabulates the vector-side and scalar-side contraction checks
/// pair by pair with `psi = transfer_psi(vc, s)`: a pair that passes the
/// vector inequality must pass the scalar one.  Pairs failing the vector
/// side are vacuous for the implication and cannot count against it.
pub fn theorem21_implication(
    f: &SelfMap,
    vc: &VectorialComparison,
    s: &Scalarizer,
    samples: usize,
    seed: u64,
) -> Result<PropertyReport> {
    require_cone(vc, f, "theorem21_implication")?;
    let psi = transfer_psi(vc, s)?;
    let m = InducedMetric::new(f.domain().clone(), s.clone())?;
    let space = f.domain();
    let cone = space.cone();
    let mut check = CheckBuilder::new("no_discordant_pairs");
    for (x, y) in f.sample_pairs(samples, seed) {
        let p_xy = space.distance(&x, &y)?;
        let fx = f.apply(&x)?;
        let fy = f.apply(&y)?;
        let p_f = space.distance(&fx, &fy)?;
        let vector_ok = cone.leq(&p_f, &vc.apply(&p_xy)?)?;
        let d_xy = m.distance(&x, &y)?;
        let d_f = m.distance(&fx, &fy)?;
        let bound = psi.eval(d_xy);
        let scalar_gap = d_f - bound - SCALAR_SLACK;
        let violation = if vector_ok { scalar_gap } else { 0.0 };
        check.record(violation.max(0.0), || {
            json!({
                "x": point_json(&x),
                "y": point_json(&y),
                "d_xy": d_xy,
                "d_fx_fy": d_f,
                "psi_d_xy": bound,
                "vector_side_passed": true,
            })
        });
    }
    let mut report = PropertyReport::new();
    report.push(check.finish());
    Ok(report)
}

/// Iterates `x -> f(x)` from `x0`, stopping when the step distance
/// `d_p(x_n, x_{n+1})` drops below `tol`.
///
/// Non-convergence within `max_iter` steps is a report state, not an
/// error; only bad parameters or a start outside the domain fail.
pub fn picard_solve(
    f: &SelfMap,
    m: &InducedMetric,
    x0: &Point,
    tol: f64,
    max_iter: usize,
) -> Result<FixedPointReport> {
    require_same_space(m, f, "picard_solve")?;
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive and finite, got {tol}"
        )));
    }
    if max_iter == 0 {
        return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
    }

    let mut orbit = vec![x0.clone()];
    let mut residuals = Vec::new();
    let mut x = x0.clone();
    for n in 1..=max_iter {
        let next = f.apply(&x)?;
        let r = m.distance(&x, &next)?;
        if orbit.len() < REPORT_CAP {
            orbit.push(next.clone());
        }
        if residuals.len() < REPORT_CAP {
            residuals.push(r);
        }
        if r < tol {
            return Ok(FixedPointReport {
                orbit,
                residuals,
                converged: true,
                fixed_point: Some(next),
                iterations: n,
            });
        }
        x = next;
    }
    Ok(FixedPointReport {
        orbit,
        residuals,
        converged: false,
        fixed_point: None,
        iterations: max_iter,
    })
}

/// Runs Picard iteration from every start and checks that all runs
/// converge and all limits coincide within `10 * tol` in `d_p`.
pub fn verify_uniqueness(
    f: &SelfMap,
    m: &InducedMetric,
    starts: &[Point],
    tol: f64,
    max_iter: usize,
) -> Result<PropertyReport> {
    if starts.len() < 2 {
        return Err(Error::InvalidParameter(
            "uniqueness needs at least two starts".into(),
        ));
    }
    let mut converge = CheckBuilder::new("all_starts_converge");
    let mut limits: Vec<(Point, Point)> = Vec::new();
    for x0 in starts {
        let run = picard_solve(f, m, x0, tol, max_iter)?;
        converge.record_bool(run.converged, || {
            json!({ "start": point_json(x0), "iterations": run.iterations })
        });
        if let Some(limit) = run.fixed_point {
            limits.push((x0.clone(), limit));
        }
    }

    let mut coincide = CheckBuilder::new("limits_coincide");
    for i in 0..limits.len() {
        for j in i + 1..limits.len() {
            let gap = m.distance(&limits[i].1, &limits[j].1)?;
            coincide.record(gap - 10.0 * tol, || {
                json!({
                    "start_a": point_json(&limits[i].0),
                    "limit_a": point_json(&limits[i].1),
                    "start_b": point_json(&limits[j].0),
                    "limit_b": point_json(&limits[j].1),
                    "gap": gap,
                })
            });
        }
    }

    let mut report = PropertyReport::new();
    report.push(converge.finish());
    report.push(coincide.finish());
    Ok(report)
}

/// Which of the three candidate arguments witness a condition for one
/// pair: index 0 is `u = p(gx, gy)`, 1 is `p(gx, fx)`, 2 is `p(gy, fy)`.
pub type CaseMask = [bool; 3];

/// For each pair, which cases witness condition (C):
/// `p(fx, fy) <=_K phi(u)` for `u` among the three candidates.
pub fn condition_c_cases(
    f: &SelfMap,
    g: &SelfMap,
    vc: &VectorialComparison,
    pairs: &[(Point, Point)],
) -> Result<Vec<CaseMask>> {
    require_same_domain(f, g)?;
    require_cone(vc, f, "condition_c")?;
    let space = f.domain();
    let cone = space.cone();
    let mut masks = Vec::with_capacity(pairs.len());
    for (x, y) in pairs {
        let fx = f.apply(x)?;
        let fy = f.apply(y)?;
        let gx = g.apply(x)?;
        let gy = g.apply(y)?;
        let p_f = space.distance(&fx, &fy)?;
        let candidates = [
            space.distance(&gx, &gy)?,
            space.distance(&gx, &fx)?,
            space.distance(&gy, &fy)?,
        ];
        let mut mask = [false; 3];
        for (k, u) in candidates.iter().enumerate() {
            mask[k] = cone.leq(&p_f, &vc.apply(u)?)?;
        }
        masks.push(mask);
    }
    Ok(masks)
}

/// Condition (C): every pair admits at least one witnessing case.
/// Per-pair case masks are available from [`condition_c_cases`].
pub fn check_condition_c(
    f: &SelfMap,
    g: &SelfMap,
    vc: &VectorialComparison,
    pairs: &[(Point, Point)],
) -> Result<PropertyReport> {
    let masks = condition_c_cases(f, g, vc, pairs)?;
    let mut check = CheckBuilder::new("every_pair_witnessed");
    for ((x, y), mask) in pairs.iter().zip(&masks) {
        check.record_bool(mask.iter().any(|&b| b), || {
            json!({ "x": point_json(x), "y": point_json(y), "cases": mask })
        });
    }
    let mut report = PropertyReport::new();
    report.push(check.finish());
    Ok(report)
}

/// For each pair, which cases witness condition (C1):
/// `d_p(fx, fy) <= psi(w) + 1e-9` for `w` among the three candidate
/// induced distances.
pub fn condition_c1_cases(
    f: &SelfMap,
    g: &SelfMap,
    sc: &ScalarComparison,
    m: &InducedMetric,
    pairs: &[(Point, Point)],
) -> Result<Vec<CaseMask>> {
    require_same_domain(f, g)?;
    require_same_space(m, f, "condition_c1")?;
    let mut masks = Vec::with_capacity(pairs.len());
    for (x, y) in pairs {
        let fx = f.apply(x)?;
        let fy = f.apply(y)?;
        let gx = g.apply(x)?;
        let gy = g.apply(y)?;
        let d_f = m.distance(&fx, &fy)?;
        let candidates = [
            m.distance(&gx, &gy)?,
            m.distance(&gx, &fx)?,
            m.distance(&gy, &fy)?,
        ];
        let mut mask = [false; 3];
        for (k, w) in candidates.iter().enumerate() {
            mask[k] = d_f <= sc.eval(*w) + SCALAR_SLACK;
        }
        masks.push(mask);
    }
    Ok(masks)
}

/// Condition (C1): every pair admits at least one witnessing case.
pub fn check_condition_c1(
    f: &SelfMap,
    g: &SelfMap,
    sc: &ScalarComparison,
    m: &InducedMetric,
    pairs: &[(Point, Point)],
) -> Result<PropertyReport> {
    let masks = condition_c1_cases(f, g, sc, m, pairs)?;
    let mut check = CheckBuilder::new("every_pair_witnessed");
    for ((x, y), mask) in pairs.iter().zip(&masks) {
        check.record_bool(mask.iter().any(|&b| b), || {
            json!({ "x": point_json(x), "y": point_json(y), "cases": mask })
        });
    }
    let mut report = PropertyReport::new();
    report.push(check.finish());
    Ok(report)
}

/// The case-preserving transfer from (C) to (C1): whenever case `k`
/// witnesses (C) for a pair, case `k` also witnesses (C1) with
/// `psi = transfer_psi(vc, s)`.
pub fn check_remark23(
    f: &SelfMap,
    g: &SelfMap,
    vc: &VectorialComparison,
    s: &Scalarizer,
    pairs: &[(Point, Point)],
) -> Result<PropertyReport> {
    let psi = transfer_psi(vc, s)?;
    let m = InducedMetric::new(f.domain().clone(), s.clone())?;
    let vector_masks = condition_c_cases(f, g, vc, pairs)?;
    let scalar_masks = condition_c1_cases(f, g, &psi, &m, pairs)?;
    let mut check = CheckBuilder::new("c_implies_c1_case_preserving");
    for (((x, y), vm), sm) in pairs.iter().zip(&vector_masks).zip(&scalar_masks) {
        let preserved = (0..3).all(|k| !vm[k] || sm[k]);
        check.record_bool(preserved, || {
            json!({
                "x": point_json(x),
                "y": point_json(y),
                "vector_cases": vm,
                "scalar_cases": sm,
            })
        });
    }
    let mut report = PropertyReport::new();
    report.push(check.finish());
    Ok(report)
}

/// A randomly generated finite space with a self-map and a comparison
/// function, for implication sweeps.
#[derive(Debug, Clone)]
pub struct FiniteInstance {
    pub space: ConeMetricSpace,
    pub map: SelfMap,
    pub comparison: VectorialComparison,
}

/// A random finite instance: a verified table over `cone`, a linear
/// comparison with `lambda` in {0.1, ..., 0.9}, and either a constant
/// map (a genuine contraction) or an arbitrary assignment.
pub fn random_finite_instance(cone: &Cone, seed: u64) -> Result<FiniteInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(3..=8);
    let space = random_valid_table(cone, n, rng.random::<u64>())?;
    let lambda = [0.1, 0.3, 0.5, 0.7, 0.9][rng.random_range(0..5)];
    let comparison = VectorialComparison::linear(cone.clone(), lambda)?;
    let map = if rng.random_bool(1.0 / 3.0) {
        let target = space.point_at(rng.random_range(0..n));
        SelfMap::constant(space.clone(), &target)?
    } else {
        let images = (0..n).map(|_| rng.random_range(0..n)).collect();
        SelfMap::assignment(space.clone(), images)?
    };
    Ok(FiniteInstance {
        space,
        map,
        comparison,
    })
}

/// A randomly generated instance on which condition (C) provably holds.
#[derive(Debug, Clone)]
pub struct ConditionCInstance {
    pub space: ConeMetricSpace,
    pub f: SelfMap,
    pub g: SelfMap,
    pub comparison: VectorialComparison,
}

/// Generates an instance where condition (C) holds on all ordered pairs,
/// re-verified before returning.
///
/// Three strategies rotate by seed: a constant `f` with arbitrary `g`
/// (case 1 always witnesses, since `p(fx, fy) = 0`); a geometric orbit
/// `z_j = mu + gamma^j v` with `f` the shift `j -> min(j+1, J)`, `g` the
/// identity, and `lambda > gamma` (case 1 witnesses algebraically); and
/// rejection sampling over random assignments with a constant-`f`
/// fallback.
pub fn random_condition_c_instance(cone: &Cone, seed: u64) -> Result<ConditionCInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidate = match seed % 3 {
        0 => constant_f_instance(cone, &mut rng)?,
        1 => geometric_orbit_instance(cone, &mut rng)?,
        _ => rejection_instance(cone, &mut rng)?,
    };
    let pairs = candidate.f.sample_pairs(0, seed);
    let masks = condition_c_cases(&candidate.f, &candidate.g, &candidate.comparison, &pairs)?;
    if masks.iter().any(|m| !m.iter().any(|&b| b)) {
        return Err(Error::InvalidParameter(
            "generated instance failed condition (C) re-verification".into(),
        ));
    }
    Ok(candidate)
}

fn constant_f_instance(cone: &Cone, rng: &mut ChaCha8Rng) -> Result<ConditionCInstance> {
    let n = rng.random_range(3..=8);
    let space = random_valid_table(cone, n, rng.random::<u64>())?;
    let target = space.point_at(rng.random_range(0..n));
    let f = SelfMap::constant(space.clone(), &target)?;
    let images = (0..n).map(|_| rng.random_range(0..n)).collect();
    let g = SelfMap::assignment(space.clone(), images)?;
    let lambda = [0.2, 0.5, 0.8][rng.random_range(0..3)];
    let comparison = VectorialComparison::linear(cone.clone(), lambda)?;
    Ok(ConditionCInstance {
        space,
        f,
        g,
        comparison,
    })
}

/// Anchors on a single geometric ray: the shift contracts every anchor
/// gap by a factor of at most `gamma`, so `lambda > gamma` makes case 1
/// (with `g` the identity, `u = p(x, y)`) hold exactly.
fn geometric_orbit_instance(cone: &Cone, rng: &mut ChaCha8Rng) -> Result<ConditionCInstance> {
    let levels = rng.random_range(4..=7);
    let gamma: f64 = rng.random_range(0.3..0.7);
    let mu = sample::gaussian(3, rng);
    let v = sample::unit(3, rng).scale(rng.random_range(1.0..3.0));
    let anchors: Vec<Vector> = (0..levels)
        .map(|j| &mu + &v.scale(gamma.powi(j as i32)))
        .collect();
    let columns: Vec<Vector> = (0..3)
        .map(|_| sample::interior_member(cone, rng, 0.05))
        .collect();
    let labels = (0..levels).map(|j| format!("p{j}")).collect();
    let space = table_from_componentwise(cone, labels, &anchors, &columns, rng.random::<u64>())?;
    let images = (0..levels).map(|j| (j + 1).min(levels - 1)).collect();
    let f = SelfMap::assignment(space.clone(), images)?;
    let g = SelfMap::identity(space.clone())?;
    let lambda = gamma + 0.3 * (1.0 - gamma);
    let comparison = VectorialComparison::linear(cone.clone(), lambda)?;
    Ok(ConditionCInstance {
        space,
        f,
        g,
        comparison,
    })
}

fn rejection_instance(cone: &Cone, rng: &mut ChaCha8Rng) -> Result<ConditionCInstance> {
    for _ in 0..40 {
        let n = rng.random_range(3..=6);
        let space = random_valid_table(cone, n, rng.random::<u64>())?;
        let f_images: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
        let g_images: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
        let f = SelfMap::assignment(space.clone(), f_images)?;
        let g = SelfMap::assignment(space.clone(), g_images)?;
        let lambda = [0.6, 0.75, 0.9][rng.random_range(0..3)];
        let comparison = VectorialComparison::linear(cone.clone(), lambda)?;
        let pairs = f.sample_pairs(0, 0);
        let masks = condition_c_cases(&f, &g, &comparison, &pairs)?;
        if masks.iter().all(|m| m.iter().any(|&b| b)) {
            return Ok(ConditionCInstance {
                space,
                f,
                g,
                comparison,
            });
        }
    }
    constant_f_instance(cone, rng)
}
