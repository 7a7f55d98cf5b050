//! conekit: convex cones, nonlinear scalarization, cone metric spaces, and
//! scalarized fixed point solvers.

pub mod comparison;
pub mod cone;
pub mod cone_metric;
pub mod error;
pub mod fixedpoint;
pub mod report;
mod sample;
pub mod scalarize;
pub mod schema;
pub mod vector;

pub use comparison::{log_grid, transfer_psi, ScalarComparison, ScalarFn, VectorialComparison};
pub use cone::{validate_cone_kind, Cone, ConeKind, MEMBERSHIP_TOL};
pub use cone_metric::{random_valid_table, ConeMetricSpace, InducedMetric, Point};
pub use error::{Error, Result};
pub use fixedpoint::{
    check_condition_c, check_condition_c1, check_remark23, condition_c1_cases, condition_c_cases,
    picard_solve, random_condition_c_instance, random_finite_instance, theorem21_implication,
    verify_scalar_contraction, verify_uniqueness, verify_vector_contraction, CaseMask,
    ConditionCInstance, FiniteInstance, FixedPointReport, MapRule, SelfMap,
};
pub use report::{PropertyCheck, PropertyReport, ValidationReport};
pub use scalarize::Scalarizer;
pub use schema::{parse_spec, ConeSpec, MapSpec, PhiSpec, SpaceBody, SpaceSpec};
pub use vector::Vector;
