//! Numeric tolerances shared by the solvers.
//!
//! All values are IEEE-754 binary64. Relative tolerances are scaled by the
//! natural magnitude of the quantity being checked (edge length, perimeter,
//! squared edge sum) at the point of use.

/// Norm below which a vector is treated as zero (absolute).
pub const ZERO_LENGTH: f64 = 1e-300;

/// Angle-sum and angle-bound slack, in degrees.
pub const ANGLE_DEGREES: f64 = 1e-9;

/// Relative slack on the linear Heron factors before a triple is rejected
/// as violating the triangle inequality. Scaled by the perimeter.
pub const TRIANGLE_SLACK: f64 = 1e-12;

/// Relative size of the point-agreement band, scaled by the perimeter.
pub const POINT_SLACK: f64 = 1e-9;

/// Relative bound under which a closed-form denominator is treated as
/// vanishing. Scaled by `a^2 + b^2 + c^2`.
pub const DENOMINATOR_SLACK: f64 = 1e-10;

/// Maximum relative law-of-cosines residual accepted for a solution.
pub const CLOSURE: f64 = 1e-8;

/// Maximum relative disagreement between two independent solution routes.
pub const CROSS_CHECK: f64 = 1e-8;

/// Barycentric slack used when deciding whether a point is inside a triangle.
pub const BARYCENTRIC_SLACK: f64 = 1e-9;

/// Tolerance bundle. [`Tolerances::default`] carries the constants above;
/// callers that need different thresholds build their own.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub zero_length: f64,
    pub angle_degrees: f64,
    pub triangle_slack: f64,
    pub point_slack: f64,
    pub denominator_slack: f64,
    pub closure: f64,
    pub cross_check: f64,
    pub barycentric_slack: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        zero_length: ZERO_LENGTH,
        angle_degrees: ANGLE_DEGREES,
        triangle_slack: TRIANGLE_SLACK,
        point_slack: POINT_SLACK,
        denominator_slack: DENOMINATOR_SLACK,
        closure: CLOSURE,
        cross_check: CROSS_CHECK,
        barycentric_slack: BARYCENTRIC_SLACK,
    };

    /// Same as the defaults but with a different closure tolerance.
    pub fn with_closure(closure: f64) -> Self {
        Tolerances {
            closure,
            ..Self::DEFAULT
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
