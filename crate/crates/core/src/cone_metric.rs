//! Cone metric spaces and their scalarized reduction to ordinary metrics.
//!
//! A cone metric takes values in a cone `K` instead of `[0, inf)`: it is
//! `theta` exactly on the diagonal, symmetric, and satisfies the triangle
//! inequality in the cone order.  Two concrete space backings are provided:
//!
//! * finite labeled point sets with an explicit distance table, checked
//!   exhaustively, and
//! * the weighted real line `p(x, y) = |x - y| w` for a fixed
//!   `w in K \ {theta}`, checked on random triples.
//!
//! [`InducedMetric`] composes a cone metric with a [`Scalarizer`], giving
//! the real-valued `d_p = xi_e . p`.  When the vector axioms hold, `d_p` is
//! an ordinary metric; `verify_axioms` on both layers makes that reduction
//! observable rather than assumed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cone::{tol_scale, Cone, MEMBERSHIP_TOL};
use crate::error::{Error, Result};
use crate::report::{CheckBuilder, PropertyReport};
use crate::sample;
use crate::scalarize::Scalarizer;
use crate::vector::Vector;

/// Largest admissible finite point set; tables this small are checked
/// exhaustively.
pub const MAX_TABLE_POINTS: usize = 100;

/// A point of a cone metric space: a label for finite spaces, a real number
/// for the weighted line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Point {
    Label(String),
    Real(f64),
}

impl Point {
    pub fn label(s: impl Into<String>) -> Self {
        Point::Label(s.into())
    }

    pub fn real(x: f64) -> Self {
        Point::Real(x)
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Label(s) => write!(f, "{s:?}"),
            Point::Real(x) => write!(f, "{x}"),
        }
    }
}

impl From<&str> for Point {
    fn from(s: &str) -> Self {
        Point::Label(s.to_string())
    }
}

impl From<f64> for Point {
    fn from(x: f64) -> Self {
        Point::Real(x)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Backend {
    Table {
        labels: Vec<String>,
        table: Vec<Vec<Vector>>,
    },
    WeightedLine {
        weight: Vector,
    },
}

/// A cone metric space: a point set together with a `K`-valued distance.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeMetricSpace {
    cone: Cone,
    backend: Backend,
}

impl ConeMetricSpace {
    /// Finite space from an explicit distance table.  Structural checks
    /// only: unique labels, a square table of correctly sized vectors.
    /// Whether the table is actually a cone metric is the business of
    /// [`ConeMetricSpace::verify_axioms`].
    pub fn finite_table(
        cone: Cone,
        labels: Vec<String>,
        table: Vec<Vec<Vector>>,
    ) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidTable("no points given".into()));
        }
        if labels.len() > MAX_TABLE_POINTS {
            return Err(Error::InvalidTable(format!(
                "{} points exceed the supported maximum of {MAX_TABLE_POINTS}",
                labels.len()
            )));
        }
        for (i, a) in labels.iter().enumerate() {
            for b in labels.iter().skip(i + 1) {
                if a == b {
                    return Err(Error::InvalidTable(format!("duplicate label {a:?}")));
                }
            }
        }
        let n = labels.len();
        if table.len() != n {
            return Err(Error::InvalidTable(format!(
                "table has {} rows for {n} points",
                table.len()
            )));
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "table row has {} entries for {n} points",
                    row.len()
                )));
            }
            for entry in row {
                if entry.dim() != cone.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: cone.dim(),
                        got: entry.dim(),
                    });
                }
            }
        }
        Ok(Self {
            cone,
            backend: Backend::Table { labels, table },
        })
    }

    /// The weighted real line `p(x, y) = |x - y| w`.  The weight must be a
    /// nonzero cone member.
    pub fn weighted_line(cone: Cone, weight: Vector) -> Result<Self> {
        let slack = cone.slack(&weight)?;
        if slack < -MEMBERSHIP_TOL * tol_scale(&weight) {
            return Err(Error::OutsideCone { slack });
        }
        if weight.norm() <= MEMBERSHIP_TOL {
            return Err(Error::InvalidParameter(
                "line weight must be a nonzero cone member".into(),
            ));
        }
        Ok(Self {
            cone,
            backend: Backend::WeightedLine { weight },
        })
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    /// The labels of a finite space, `None` for the line.
    pub fn points(&self) -> Option<Vec<Point>> {
        match &self.backend {
            Backend::Table { labels, .. } => {
                Some(labels.iter().map(|l| Point::label(l.clone())).collect())
            }
            Backend::WeightedLine { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.backend, Backend::Table { .. })
    }

    /// Number of points of a finite space, `None` for the line.
    pub fn point_count(&self) -> Option<usize> {
        match &self.backend {
            Backend::Table { labels, .. } => Some(labels.len()),
            Backend::WeightedLine { .. } => None,
        }
    }

    /// The `i`-th point of a finite space.  Panics if out of range or if
    /// the space is a line; callers index within `point_count`.
    pub(crate) fn point_at(&self, i: usize) -> Point {
        match &self.backend {
            Backend::Table { labels, .. } => Point::label(labels[i].clone()),
            Backend::WeightedLine { .. } => unreachable!("point_at is for finite spaces"),
        }
    }

    /// The line weight, when this space is a weighted line.
    pub fn line_weight(&self) -> Option<&Vector> {
        match &self.backend {
            Backend::WeightedLine { weight } => Some(weight),
            Backend::Table { .. } => None,
        }
    }

    pub(crate) fn index_of(&self, point: &Point) -> Result<usize> {
        match (&self.backend, point) {
            (Backend::Table { labels, .. }, Point::Label(l)) => labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownPoint(l.clone())),
            _ => Err(Error::PointKindMismatch {
                point: point.to_string(),
            }),
        }
    }

    /// The cone-valued distance `p(x, y)`.
    pub fn distance(&self, x: &Point, y: &Point) -> Result<Vector> {
        match &self.backend {
            Backend::Table { table, .. } => {
                let i = self.index_of(x)?;
                let j = self.index_of(y)?;
                Ok(table[i][j].clone())
            }
            Backend::WeightedLine { weight } => match (x, y) {
                (Point::Real(a), Point::Real(b)) => {
                    if !a.is_finite() {
                        return Err(Error::NonFiniteScalar { value: *a });
                    }
                    if !b.is_finite() {
                        return Err(Error::NonFiniteScalar { value: *b });
                    }
                    Ok(weight.scale((a - b).abs()))
                }
                _ => Err(Error::PointKindMismatch {
                    point: if matches!(x, Point::Real(_)) { y } else { x }.to_string(),
                }),
            },
        }
    }

    /// Checks the cone metric axioms.
    ///
    /// * `positivity_and_identity`: `p(x, y)` is in the cone, vanishes on
    ///   the diagonal, and is nonzero off it;
    /// * `symmetry`: `p(x, y) = p(y, x)` within 1e-12 relative;
    /// * `triangle`: `p(x, z) <= p(x, y) + p(y, z)` in the cone order.
    ///
    /// Finite tables are checked exhaustively (all pairs, all triples);
    /// `samples` and `seed` then play no role.  The line is checked on
    /// `samples` random triples from `[-1000, 1000]`.
    pub fn verify_axioms(&self, samples: usize, seed: u64) -> PropertyReport {
        let mut positivity = CheckBuilder::new("positivity_and_identity");
        let mut symmetry = CheckBuilder::new("symmetry");
        let mut triangle = CheckBuilder::new("triangle");

        let mut check_pair = |x: &Point, y: &Point, pxy: &Vector, pyx: &Vector| {
            let slack = self.cone.kind().slack(pxy);
            let member_violation = (-slack - MEMBERSHIP_TOL * tol_scale(pxy)).max(0.0);
            let identity_violation = if x == y {
                pxy.norm() - 1e-12
            } else {
                1e-12 - pxy.norm()
            };
            positivity.record(member_violation.max(identity_violation).max(0.0), || {
                json!({
                    "x": format!("{x}"), "y": format!("{y}"),
                    "p": pxy.coords(), "slack": slack,
                })
            });
            let asym = (pxy - pyx).norm() - 1e-12 * tol_scale(pxy);
            symmetry.record(asym.max(0.0), || {
                json!({
                    "x": format!("{x}"), "y": format!("{y}"),
                    "p_xy": pxy.coords(), "p_yx": pyx.coords(),
                })
            });
        };
        let mut check_triple =
            |x: &Point, y: &Point, z: &Point, pxz: &Vector, pxy: &Vector, pyz: &Vector| {
                let sum = pxy + pyz;
                let diff = &sum - pxz;
                let slack = self.cone.kind().slack(&diff);
                let violation = (-slack - MEMBERSHIP_TOL * tol_scale(&diff)).max(0.0);
                triangle.record(violation, || {
                    json!({
                        "x": format!("{x}"), "y": format!("{y}"), "z": format!("{z}"),
                        "p_xz": pxz.coords(), "p_xy": pxy.coords(), "p_yz": pyz.coords(),
                        "slack": slack,
                    })
                });
            };

        match &self.backend {
            Backend::Table { labels, table } => {
                let pts: Vec<Point> = labels.iter().map(|l| Point::label(l.clone())).collect();
                let n = pts.len();
                for i in 0..n {
                    for j in 0..n {
                        check_pair(&pts[i], &pts[j], &table[i][j], &table[j][i]);
                    }
                }
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            check_triple(
                                &pts[i],
                                &pts[k],
                                &pts[j],
                                &table[i][j],
                                &table[i][k],
                                &table[k][j],
                            );
                        }
                    }
                }
            }
            Backend::WeightedLine { .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..samples {
                    let x = Point::real(rng.random_range(-1e3..1e3));
                    let y = Point::real(rng.random_range(-1e3..1e3));
                    let z = Point::real(rng.random_range(-1e3..1e3));
                    let pxy = self.distance(&x, &y).expect("line points are finite");
                    let pyx = self.distance(&y, &x).expect("line points are finite");
                    check_pair(&x, &y, &pxy, &pyx);
                    let pxx = self.distance(&x, &x).expect("finite");
                    check_pair(&x, &x, &pxx, &pxx);
                    let pxz = self.distance(&x, &z).expect("finite");
                    let pyz = self.distance(&y, &z).expect("finite");
                    check_triple(&x, &y, &z, &pxz, &pxy, &pyz);
                }
            }
        }

        let mut report = PropertyReport::new();
        report.push(positivity.finish());
        report.push(symmetry.finish());
        report.push(triangle.finish());
        report
    }
}

/// The scalarized metric `d_p = xi_e . p` over a cone metric space.
#[derive(Clone, Debug)]
pub struct InducedMetric {
    space: ConeMetricSpace,
    scalarizer: Scalarizer,
}

impl InducedMetric {
    /// Pairs a space with a scalarizer over the same cone.
    pub fn new(space: ConeMetricSpace, scalarizer: Scalarizer) -> Result<Self> {
        if scalarizer.cone() != space.cone() {
            return Err(Error::ConeMismatch(
                "scalarizer and space use different cones".into(),
            ));
        }
        Ok(Self { space, scalarizer })
    }

    /// Builds the scalarizer from the space's own cone.
    pub fn from_space(space: ConeMetricSpace) -> Self {
        let scalarizer = Scalarizer::new(space.cone().clone());
        Self { space, scalarizer }
    }

    pub fn space(&self) -> &ConeMetricSpace {
        &self.space
    }

    pub fn scalarizer(&self) -> &Scalarizer {
        &self.scalarizer
    }

    /// The induced real distance `d_p(x, y) = xi_e(p(x, y))`.
    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        let p = self.space.distance(x, y)?;
        self.scalarizer.xi(&p)
    }

    /// Checks the ordinary metric axioms for `d_p`, mirroring
    /// [`ConeMetricSpace::verify_axioms`]: nonnegativity with identity,
    /// symmetry within 1e-12, and the triangle inequality with slack at
    /// most 1e-9 (relative to the distances involved).
    pub fn verify_axioms(&self, samples: usize, seed: u64) -> PropertyReport {
        let mut positivity = CheckBuilder::new("nonnegativity_and_identity");
        let mut symmetry = CheckBuilder::new("symmetry");
        let mut triangle = CheckBuilder::new("triangle");

        let d = |x: &Point, y: &Point| {
            self.distance(x, y)
                .expect("points come from the space itself")
        };

        let mut check_pair = |x: &Point, y: &Point| {
            let dxy = d(x, y);
            let dyx = d(y, x);
            let nonneg_violation = -dxy - 1e-12;
            let identity_violation = if x == y {
                dxy.abs() - 1e-12
            } else {
                1e-12 - dxy.abs()
            };
            positivity.record(nonneg_violation.max(identity_violation).max(0.0), || {
                json!({ "x": format!("{x}"), "y": format!("{y}"), "d": dxy })
            });
            symmetry.record(
                ((dxy - dyx).abs() - 1e-12 * (1.0 + dxy.abs())).max(0.0),
                || json!({ "x": format!("{x}"), "y": format!("{y}"), "d_xy": dxy, "d_yx": dyx }),
            );
        };
        let mut check_triple = |x: &Point, y: &Point, z: &Point| {
            let dxz = d(x, z);
            let dxy = d(x, y);
            let dyz = d(y, z);
            let slack = dxz - dxy - dyz;
            let tol = 1e-9 * (1.0 + dxz.abs() + dxy.abs() + dyz.abs());
            triangle.record((slack - tol).max(0.0), || {
                json!({
                    "x": format!("{x}"), "y": format!("{y}"), "z": format!("{z}"),
                    "d_xz": dxz, "d_xy": dxy, "d_yz": dyz, "slack": slack,
                })
            });
        };

        if let Some(pts) = self.space.points() {
            let n = pts.len();
            for i in 0..n {
                for j in 0..n {
                    check_pair(&pts[i], &pts[j]);
                }
            }
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        check_triple(&pts[i], &pts[k], &pts[j]);
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let x = Point::real(rng.random_range(-1e3..1e3));
                let y = Point::real(rng.random_range(-1e3..1e3));
                let z = Point::real(rng.random_range(-1e3..1e3));
                check_pair(&x, &y);
                check_pair(&x, &x);
                check_triple(&x, &y, &z);
            }
        }

        let mut report = PropertyReport::new();
        report.push(positivity.finish());
        report.push(symmetry.finish());
        report.push(triangle.finish());
        report
    }
}

/// Generates a finite cone metric space that provably satisfies the axioms.
///
/// Points are distinct anchors `z_i` in R^3; distances push the exact
/// metric `sum_k |z_x[k] - z_y[k]|` into the cone through fixed interior
/// member columns: `p(x, y) = sum_k |z_x[k] - z_y[k]| c_k`.  Componentwise
/// triangle inequalities transport along the nonnegative combination, so
/// the construction is valid for every cone family; the axioms are still
/// re-verified before returning.
pub fn random_valid_table(cone: &Cone, n_points: usize, seed: u64) -> Result<ConeMetricSpace> {
    if n_points == 0 || n_points > MAX_TABLE_POINTS {
        return Err(Error::InvalidParameter(format!(
            "n_points must be in 1..={MAX_TABLE_POINTS}, got {n_points}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let source_dim = 3;
    let columns: Vec<Vector> = (0..source_dim)
        .map(|_| sample::interior_member(cone, &mut rng, 0.05))
        .collect();

    let mut anchors: Vec<Vector> = Vec::with_capacity(n_points);
    let mut attempts = 0;
    while anchors.len() < n_points {
        attempts += 1;
        if attempts > 10_000 {
            return Err(Error::InvalidTable(
                "could not place distinct anchor points".into(),
            ));
        }
        let z = sample::gaussian(source_dim, &mut rng).scale(2.0);
        let separated = anchors.iter().all(|a| {
            a.coords()
                .iter()
                .zip(z.coords())
                .map(|(p, q)| (p - q).abs())
                .fold(f64::NEG_INFINITY, f64::max)
                >= 1e-3
        });
        if separated {
            anchors.push(z);
        }
    }

    let labels: Vec<String> = (0..n_points).map(|i| format!("p{i}")).collect();
    table_from_componentwise(cone, labels, &anchors, &columns, seed)
}

/// Builds and re-verifies a finite table whose entries are the
/// componentwise anchor gaps pushed through interior member columns:
/// `p(i, j) = sum_k |anchors[i][k] - anchors[j][k]| columns[k]`.
pub(crate) fn table_from_componentwise(
    cone: &Cone,
    labels: Vec<String>,
    anchors: &[Vector],
    columns: &[Vector],
    seed: u64,
) -> Result<ConeMetricSpace> {
    let n_points = anchors.len();
    let mut table = vec![vec![Vector::zeros(cone.dim()); n_points]; n_points];
    for i in 0..n_points {
        for j in 0..n_points {
            let mut entry = Vector::zeros(cone.dim());
            for (k, column) in columns.iter().enumerate() {
                let gap = (anchors[i][k] - anchors[j][k]).abs();
                entry = &entry + &column.scale(gap);
            }
            table[i][j] = entry;
        }
    }

    let space = ConeMetricSpace::finite_table(cone.clone(), labels, table)?;
    let report = space.verify_axioms(0, seed);
    if !report.passed() {
        return Err(Error::InvalidTable(
            "generated table failed re-verification".into(),
        ));
    }
    Ok(space)
}
