//! Convex cones in R^n and the partial orders they induce.
//!
//! Three concrete families are supported:
//!
//! * the nonnegative orthant `{ y : y_i >= 0 }`,
//! * polyhedral halfspace intersections `{ y : A y >= 0 }` for an m x n
//!   matrix `A`,
//! * the Lorentz (second order) cone `{ y : y_n >= ||(y_1..y_{n-1})|| }`.
//!
//! Each cone carries a designated interior direction `e`, required by the
//! scalarization machinery.  Membership is decided through a single signed
//! slack function per family: `slack(y) >= 0` exactly on the cone and
//! `> 0` exactly on its interior.  The numeric predicates compare the slack
//! against `MEMBERSHIP_TOL * (1 + ||y||)`, so tests behave consistently for
//! both small and large vectors.
//!
//! The slack functions are positively homogeneous and superadditive
//! (`slack(a + b) >= slack(a) + slack(b)`), which downstream modules use to
//! build interior points with a guaranteed margin.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::report::{CheckBuilder, ValidationReport};
use crate::sample;
use crate::vector::Vector;

/// Relative tolerance for cone membership decisions.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Scale factor used by every tolerance comparison on a vector `y`.
pub(crate) fn tol_scale(y: &Vector) -> f64 {
    1.0 + y.norm()
}

/// The geometric family of a cone, without a designated direction.
#[derive(Clone, Debug, PartialEq)]
pub enum ConeKind {
    /// Nonnegative orthant in R^dim.
    Orthant { dim: usize },
    /// `{ y : A y >= 0 }` with the rows of `A` stored individually.
    Halfspace { rows: Vec<Vector> },
    /// Second order cone `{ y : y_n >= ||(y_1, ..., y_{n-1})|| }`.
    Lorentz { dim: usize },
}

impl ConeKind {
    /// Ambient dimension.  Meaningful only after `validate_shape`.
    pub fn dim(&self) -> usize {
        match self {
            ConeKind::Orthant { dim } => *dim,
            ConeKind::Halfspace { rows } => rows.first().map_or(0, Vector::dim),
            ConeKind::Lorentz { dim } => *dim,
        }
    }

    /// Checks the structural requirements of the family.
    pub fn validate_shape(&self) -> Result<()> {
        match self {
            ConeKind::Orthant { dim } => {
                if *dim == 0 {
                    return Err(Error::BadConeDimension {
                        kind: "orthant",
                        min: 1,
                        dim: *dim,
                    });
                }
            }
            ConeKind::Halfspace { rows } => {
                if rows.is_empty() {
                    return Err(Error::EmptyHalfspace);
                }
                let dim = rows[0].dim();
                for (i, row) in rows.iter().enumerate() {
                    if row.dim() != dim {
                        return Err(Error::DimensionMismatch {
                            expected: dim,
                            got: row.dim(),
                        });
                    }
                    if row.norm() == 0.0 {
                        return Err(Error::ZeroHalfspaceRow { row: i });
                    }
                }
            }
            ConeKind::Lorentz { dim } => {
                if *dim < 2 {
                    return Err(Error::BadConeDimension {
                        kind: "lorentz",
                        min: 2,
                        dim: *dim,
                    });
                }
            }
        }
        Ok(())
    }

    /// Signed membership margin; assumes `y.dim() == self.dim()`.
    pub fn slack(&self, y: &Vector) -> f64 {
        match self {
            ConeKind::Orthant { .. } => {
                y.coords().iter().copied().fold(f64::INFINITY, f64::min)
            }
            ConeKind::Halfspace { rows } => rows
                .iter()
                .map(|row| row.dot(y))
                .fold(f64::INFINITY, f64::min),
            ConeKind::Lorentz { dim } => y[*dim - 1] - y.norm_head(*dim - 1),
        }
    }

    /// The conventional direction for this family: all-ones for the orthant
    /// and halfspace families, the last basis vector for the Lorentz cone.
    pub fn default_e(&self) -> Vector {
        match self {
            ConeKind::Orthant { dim } => Vector::ones(*dim),
            ConeKind::Halfspace { rows } => Vector::ones(rows[0].dim()),
            ConeKind::Lorentz { dim } => Vector::basis(*dim, *dim - 1),
        }
    }

    /// Family name used in reports and error messages.
    pub fn name(&self) -> &'static str {
        match self {
            ConeKind::Orthant { .. } => "orthant",
            ConeKind::Halfspace { .. } => "halfspace",
            ConeKind::Lorentz { .. } => "lorentz",
        }
    }
}

/// A validated cone together with an interior direction `e`.
///
/// Construction guarantees the shape is sound, `e` matches the ambient
/// dimension, and `e` passes the strict interior test.  Every operation that
/// takes vectors checks dimensions and reports [`Error::DimensionMismatch`]
/// rather than panicking.
#[derive(Clone, Debug, PartialEq)]
pub struct Cone {
    kind: ConeKind,
    e: Vector,
}

impl Cone {
    /// Builds a cone from a family and an optional direction.  When `e` is
    /// `None` the family default is used; it must itself be interior.
    pub fn new(kind: ConeKind, e: Option<Vector>) -> Result<Self> {
        kind.validate_shape()?;
        let e = e.unwrap_or_else(|| kind.default_e());
        if e.dim() != kind.dim() {
            return Err(Error::DimensionMismatch {
                expected: kind.dim(),
                got: e.dim(),
            });
        }
        let slack = kind.slack(&e);
        if slack.is_nan() || slack <= MEMBERSHIP_TOL * tol_scale(&e) {
            return Err(Error::DirectionNotInterior { slack });
        }
        Ok(Self { kind, e })
    }

    /// Orthant cone with the default direction (1, ..., 1).
    pub fn orthant(dim: usize) -> Result<Self> {
        Self::new(ConeKind::Orthant { dim }, None)
    }

    /// Lorentz cone with the default direction (0, ..., 0, 1).
    pub fn lorentz(dim: usize) -> Result<Self> {
        Self::new(ConeKind::Lorentz { dim }, None)
    }

    /// Halfspace cone `{ y : A y >= 0 }` with the default direction
    /// (1, ..., 1), which must be interior for the given rows.
    pub fn halfspace(rows: Vec<Vector>) -> Result<Self> {
        Self::new(ConeKind::Halfspace { rows }, None)
    }

    pub fn kind(&self) -> &ConeKind {
        &self.kind
    }

    pub fn e(&self) -> &Vector {
        &self.e
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    pub(crate) fn check_dim(&self, y: &Vector) -> Result<()> {
        if y.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: y.dim(),
            });
        }
        Ok(())
    }

    /// Signed membership margin of `y`.
    pub fn slack(&self, y: &Vector) -> Result<f64> {
        self.check_dim(y)?;
        Ok(self.kind.slack(y))
    }

    /// Tolerant membership: `slack(y) >= -MEMBERSHIP_TOL * (1 + ||y||)`.
    pub fn contains(&self, y: &Vector) -> Result<bool> {
        Ok(self.slack(y)? >= -MEMBERSHIP_TOL * tol_scale(y))
    }

    /// Tolerant interior test: `slack(y) > MEMBERSHIP_TOL * (1 + ||y||)`.
    pub fn in_interior(&self, y: &Vector) -> Result<bool> {
        Ok(self.slack(y)? > MEMBERSHIP_TOL * tol_scale(y))
    }

    /// Partial order x <= y, i.e. y - x in K.
    pub fn leq(&self, x: &Vector, y: &Vector) -> Result<bool> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        self.contains(&(y - x))
    }

    /// Strong order x << y, i.e. y - x in the interior of K.
    pub fn ll(&self, x: &Vector, y: &Vector) -> Result<bool> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        self.in_interior(&(y - x))
    }

    /// Strict order x < y, i.e. x <= y and x != y at tolerance.
    pub fn lt(&self, x: &Vector, y: &Vector) -> Result<bool> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let diff_norm = (y - x).norm();
        Ok(self.leq(x, y)? && diff_norm > MEMBERSHIP_TOL * (1.0 + x.norm() + y.norm()))
    }

    /// Randomized validation of the cone axioms; see [`validate_cone_kind`].
    pub fn validate(&self, samples: usize, seed: u64) -> ValidationReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool = sample::member_pool(self, &mut rng, pool_size(samples));
        validate_with_pool(&self.kind, pool, samples, &mut rng)
    }
}

fn pool_size(samples: usize) -> usize {
    samples.clamp(16, 256)
}

/// Randomized validation of the cone axioms for a bare family, without
/// requiring a valid interior direction.
///
/// This is the entry point that can exercise degenerate geometries such as
/// `A = [[1, 0], [-1, 0]]`, whose cone is the line `{ y : y_1 = 0 }`: no
/// interior direction exists, so a [`Cone`] cannot be built, yet the axioms
/// are still checkable (and pointedness fails).  Structural problems (ragged
/// rows, zero rows, bad dimensions) are errors; axiom violations are
/// reported, not thrown.
///
/// Checked items, `samples` trials each where meaningful:
///
/// * `nonempty`: a member other than the origin was found;
/// * `closed_under_nonneg_combinations`: `a x + b y` stays in the cone for
///   members `x, y` and nonnegative weights;
/// * `pointed`: no unit member `u` has `-u` in the cone.
pub fn validate_cone_kind(kind: &ConeKind, samples: usize, seed: u64) -> Result<ValidationReport> {
    kind.validate_shape()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = sample::kind_member_pool(kind, &mut rng, pool_size(samples));
    Ok(validate_with_pool(kind, pool, samples, &mut rng))
}

fn validate_with_pool(
    kind: &ConeKind,
    pool: Vec<Vector>,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    let contains = |y: &Vector| kind.slack(y) >= -MEMBERSHIP_TOL * tol_scale(y);

    let mut nonempty = CheckBuilder::new("nonempty");
    let witness = pool.iter().find(|m| m.norm() > MEMBERSHIP_TOL);
    nonempty.record_bool(witness.is_some(), || {
        json!({ "note": "no member other than the origin was found" })
    });
    report.push(nonempty.finish());

    let mut closure = CheckBuilder::new("closed_under_nonneg_combinations");
    if !pool.is_empty() {
        for _ in 0..samples {
            let x = sample::pick(&pool, rng);
            let y = sample::pick(&pool, rng);
            let a = sample::abs_normal(rng, 1.5);
            let b = sample::abs_normal(rng, 1.5);
            let combo = &x.scale(a) + &y.scale(b);
            let violation = -kind.slack(&combo) - MEMBERSHIP_TOL * tol_scale(&combo);
            closure.record(violation.max(0.0), || {
                json!({
                    "x": x.coords(),
                    "y": y.coords(),
                    "a": a,
                    "b": b,
                    "combination": combo.coords(),
                    "slack": kind.slack(&combo),
                })
            });
        }
    }
    report.push(closure.finish());

    let mut pointed = CheckBuilder::new("pointed");
    for m in &pool {
        if m.norm() <= MEMBERSHIP_TOL {
            continue;
        }
        let u = m.scale(1.0 / m.norm());
        let neg = u.scale(-1.0);
        let line_found = contains(&neg);
        pointed.record_bool(!line_found, || {
            json!({
                "member": u.coords(),
                "negated_member": neg.coords(),
                "slack_of_negated": kind.slack(&neg),
            })
        });
    }
    report.push(pointed.finish());

    report
}
