use thiserror::Error;

use crate::geometry::Vertex;

/// Failures raised by the geometric solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("vector has zero length")]
    ZeroVector,

    #[error("edges ({a}, {b}, {c}) do not form a triangle")]
    NotATriangle { a: f64, b: f64, c: f64 },

    #[error("triangle is degenerate (collinear vertices)")]
    DegenerateTriangle,

    #[error("line-intersection system is singular (det = {det:e})")]
    SingularSystem { det: f64 },

    /// The interior angle at `vertex` is at least 120 degrees, so the Fermat
    /// point collapses onto that vertex. `clamped` holds the distances for
    /// that collapsed configuration (zero at `vertex`, adjacent edges at the
    /// other two), for diagnostics only.
    #[error("interior angle at vertex {vertex} is {angle_degrees:.9} degrees (>= 120)")]
    AngleAtLeast120 {
        vertex: Vertex,
        angle_degrees: f64,
        clamped: [f64; 3],
    },

    #[error("closed form and construction disagree (relative difference {difference:e})")]
    CrossCheckMismatch { difference: f64 },

    #[error("angle {name} = {degrees} degrees is outside (0, 180)")]
    AngleOutOfRange { name: &'static str, degrees: f64 },

    #[error("angles sum to {sum} degrees, expected 360")]
    AngleSum { sum: f64 },

    #[error("closed-form denominator vanishes ({denominator:e})")]
    SingularConfiguration { denominator: f64 },

    #[error("no interior point sees the edges under the given angles: {reason}")]
    InfeasibleConfiguration { reason: String },

    #[error("circumcircles have no intersection inside the triangle")]
    NoInteriorIntersection,

    #[error("both circumcircle intersections lie inside the triangle")]
    AmbiguousIntersection,

    #[error("circles are concentric")]
    ConcentricCircles,

    #[error("simplex search did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
