//! JSON input schemas: declarative descriptions of cones, spaces,
//! comparison functions, and maps that build the corresponding values.
//!
//! These are the shapes the command line accepts; keeping them in the
//! core crate lets tests and other frontends share the exact parsing
//! and validation behavior.

use serde::{Deserialize, Serialize};

use crate::comparison::{ScalarFn, VectorialComparison};
use crate::cone::{Cone, ConeKind};
use crate::cone_metric::ConeMetricSpace;
use crate::error::{Error, Result};
use crate::fixedpoint::SelfMap;
use crate::vector::Vector;

/// A cone family plus an optional designated interior direction `e`
/// (each family has a default when omitted).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConeSpec {
    Orthant {
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        e: Option<Vec<f64>>,
    },
    Halfspace {
        rows: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        e: Option<Vec<f64>>,
    },
    Lorentz {
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        e: Option<Vec<f64>>,
    },
}

impl ConeSpec {
    /// The bare family, without the direction; usable even for cones
    /// that admit no interior point.
    pub fn build_kind(&self) -> Result<ConeKind> {
        let kind = match self {
            ConeSpec::Orthant { dim, .. } => ConeKind::Orthant { dim: *dim },
            ConeSpec::Halfspace { rows, .. } => ConeKind::Halfspace {
                rows: rows
                    .iter()
                    .map(|r| Vector::new(r.clone()))
                    .collect::<Result<Vec<_>>>()?,
            },
            ConeSpec::Lorentz { dim, .. } => ConeKind::Lorentz { dim: *dim },
        };
        kind.validate_shape()?;
        Ok(kind)
    }

    pub fn direction(&self) -> Option<&Vec<f64>> {
        match self {
            ConeSpec::Orthant { e, .. }
            | ConeSpec::Halfspace { e, .. }
            | ConeSpec::Lorentz { e, .. } => e.as_ref(),
        }
    }

    /// The full cone with its direction validated as interior.
    pub fn build(&self) -> Result<Cone> {
        let kind = self.build_kind()?;
        let e = self
            .direction()
            .map(|e| Vector::new(e.clone()))
            .transpose()?;
        Cone::new(kind, e)
    }
}

/// The point set and distance data of a space.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceBody {
    /// A finite table: `p[i][j]` is the cone-valued distance between
    /// `points[i]` and `points[j]`.
    Table {
        points: Vec<String>,
        p: Vec<Vec<Vec<f64>>>,
    },
    /// The real line with `p(x, y) = |x - y| * w`.
    WeightedLine { w: Vec<f64> },
}

/// A cone metric space: a cone plus its distance data.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub cone: ConeSpec,
    pub space: SpaceBody,
}

impl SpaceSpec {
    pub fn build(&self) -> Result<ConeMetricSpace> {
        let cone = self.cone.build()?;
        match &self.space {
            SpaceBody::Table { points, p } => {
                let table = p
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|entry| Vector::new(entry.clone()))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                ConeMetricSpace::finite_table(cone, points.clone(), table)
            }
            SpaceBody::WeightedLine { w } => {
                ConeMetricSpace::weighted_line(cone, Vector::new(w.clone())?)
            }
        }
    }
}

/// A vectorial comparison function; the cone comes from the enclosing
/// space at build time.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PhiSpec {
    Linear { lambda: f64 },
    Componentwise { components: Vec<ScalarFn> },
}

impl PhiSpec {
    pub fn build(&self, cone: Cone) -> Result<VectorialComparison> {
        match self {
            PhiSpec::Linear { lambda } => VectorialComparison::linear(cone, *lambda),
            PhiSpec::Componentwise { components } => {
                VectorialComparison::componentwise(cone, components.clone())
            }
        }
    }
}

/// A self-map rule; the domain comes from the enclosing space at build
/// time.  Assignment images are labels in the space's point order.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapSpec {
    Affine { a: f64, b: f64 },
    Assignment { images: Vec<String> },
    Grid { points: Vec<f64>, images: Vec<f64> },
}

impl MapSpec {
    pub fn build(&self, domain: ConeMetricSpace) -> Result<SelfMap> {
        match self {
            MapSpec::Affine { a, b } => SelfMap::affine(domain, *a, *b),
            MapSpec::Assignment { images } => {
                let refs: Vec<&str> = images.iter().map(String::as_str).collect();
                SelfMap::assignment_by_label(domain, &refs)
            }
            MapSpec::Grid { points, images } => {
                SelfMap::grid(domain, points.clone(), images.clone())
            }
        }
    }
}

/// Parses a JSON document into a spec type with a uniform error.
pub fn parse_spec<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
}
