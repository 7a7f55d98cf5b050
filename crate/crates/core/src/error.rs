//! Error type shared across the crate.
//!
//! Construction and evaluation functions return `Err` only for structural
//! problems: bad shapes, mismatched dimensions, points outside a required
//! set, or numeric preconditions that make the requested computation
//! meaningless.  Property *failures* (an axiom that does not hold, a
//! contraction bound that is violated) are never errors; they are reported
//! through [`crate::report::PropertyReport`] so that negative instances can
//! be examined rather than thrown away.

use thiserror::Error;

/// Everything that can go wrong while building or evaluating conekit objects.
#[derive(Debug, Error)]
pub enum Error {
    /// A vector had no coordinates.
    #[error("vector must have at least one coordinate")]
    EmptyVector,

    /// A coordinate was NaN or infinite.
    #[error("non-finite coordinate at index {index}")]
    NonFiniteCoordinate { index: usize },

    /// A scalar argument was NaN or infinite.
    #[error("non-finite scalar argument {value}")]
    NonFiniteScalar { value: f64 },

    /// Two objects that must share a dimension did not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An orthant or Lorentz cone was requested with too small a dimension.
    #[error("cone kind {kind:?} needs dimension at least {min}, got {dim}")]
    BadConeDimension {
        kind: &'static str,
        min: usize,
        dim: usize,
    },

    /// A halfspace description had no rows.
    #[error("halfspace cone needs at least one row")]
    EmptyHalfspace,

    /// A halfspace row was identically zero.
    #[error("halfspace row {row} is zero")]
    ZeroHalfspaceRow { row: usize },

    /// The designated direction e failed the interior test.
    #[error("direction e is not interior to the cone (slack {slack:.3e})")]
    DirectionNotInterior { slack: f64 },

    /// An argument that must belong to the cone did not.
    #[error("vector lies outside the cone (slack {slack:.3e})")]
    OutsideCone { slack: f64 },

    /// The scalarization oracle could not bracket the membership transition.
    #[error("scalarization bracket failed to close after {doublings} doublings")]
    BracketFailure { doublings: u32 },

    /// A tolerance or sample-count argument was not usable.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A finite-space point label was not found.
    #[error("unknown point label {0:?}")]
    UnknownPoint(String),

    /// A point of the wrong flavour (label vs. real) was used with a space.
    #[error("point {point} does not belong to this space")]
    PointKindMismatch { point: String },

    /// A distance table failed a structural requirement.
    #[error("invalid distance table: {0}")]
    InvalidTable(String),

    /// Two objects built over different cones were combined.
    #[error("cone mismatch: {0}")]
    ConeMismatch(String),

    /// A linear comparison factor was outside [0, 1).
    #[error("comparison factor must lie in [0, 1), got {0}")]
    LambdaOutOfRange(f64),

    /// A componentwise comparison was requested on a non-orthant cone.
    #[error("componentwise comparison functions require an orthant cone")]
    ComponentwiseNeedsOrthant,

    /// A scalar comparison check needs the monotonicity flags declared.
    #[error("scalar comparison must be declared increasing and right-continuous for this check")]
    HypothesesNotDeclared,

    /// An affine self-map had |a| >= 1.
    #[error("affine slope must satisfy |a| < 1, got {0}")]
    SlopeOutOfRange(f64),

    /// A self-map description did not match its domain.
    #[error("invalid self-map: {0}")]
    InvalidMap(String),

    /// A JSON input had the right shape but inconsistent content.
    #[error("invalid input spec: {0}")]
    InvalidSpec(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
