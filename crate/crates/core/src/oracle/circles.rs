use crate::error::{GeometryError, Result};
use crate::geometry::PlaneVector;
use crate::tolerance::POINT_SLACK;

/// Intersection of the circles `|p - c1| = r1` and `|p - c2| = r2`.
///
/// Returns zero, one (tangency, within `POINT_SLACK * (r1 + r2)`) or two
/// points, ordered by `x` then `y`.
pub fn intersect_circles(c1: PlaneVector, r1: f64, c2: PlaneVector, r2: f64) -> Result<Vec<PlaneVector>> {
    let eps = POINT_SLACK * (r1 + r2);
    let axis = c2 - c1;
    let d = axis.norm();
    if d <= f64::EPSILON * (r1 + r2) {
        return Err(GeometryError::ConcentricCircles);
    }
    if d > r1 + r2 + eps || d < (r1 - r2).abs() - eps {
        return Ok(Vec::new());
    }
    // Foot of the radical line on the center axis, measured from c1.
    let along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h = ((r1 - along) * (r1 + along)).max(0.0).sqrt();
    let unit = (1.0 / d) * axis;
    let foot = c1 + along * unit;
    if h <= eps {
        return Ok(vec![foot]);
    }
    let offset = h * unit.perp();
    let mut points = vec![foot + offset, foot - offset];
    points.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tangent_circles_meet_once() {
        let pts = intersect_circles(PlaneVector::ZERO, 1.0, PlaneVector::new(2.0, 0.0), 1.0).unwrap();
        assert_eq!(pts, vec![PlaneVector::new(1.0, 0.0)]);
    }

    #[test]
    fn equilateral_configuration() {
        let pts = intersect_circles(PlaneVector::ZERO, 1.0, PlaneVector::new(1.0, 0.0), 1.0).unwrap();
        assert_eq!(pts.len(), 2);
        let h = 3f64.sqrt() / 2.0;
        assert!(pts[0].distance(PlaneVector::new(0.5, -h)) < 1e-15);
        assert!(pts[1].distance(PlaneVector::new(0.5, h)) < 1e-15);
    }

    #[test]
    fn separated_and_nested_circles_do_not_meet() {
        let far = intersect_circles(PlaneVector::ZERO, 1.0, PlaneVector::new(3.0, 0.0), 1.0).unwrap();
        assert!(far.is_empty());
        let nested = intersect_circles(PlaneVector::ZERO, 3.0, PlaneVector::new(0.5, 0.0), 1.0).unwrap();
        assert!(nested.is_empty());
    }

    #[test]
    fn concentric_is_an_error() {
        assert_eq!(
            intersect_circles(PlaneVector::new(1.0, 1.0), 1.0, PlaneVector::new(1.0, 1.0), 2.0),
            Err(GeometryError::ConcentricCircles)
        );
    }

    #[test]
    fn points_lie_on_both_circles() {
        let (c1, r1) = (PlaneVector::new(-0.3, 1.7), 2.5);
        let (c2, r2) = (PlaneVector::new(1.9, -0.4), 1.75);
        for p in intersect_circles(c1, r1, c2, r2).unwrap() {
            assert!((p.distance(c1) - r1).abs() < 1e-9 * (r1 + r2));
            assert!((p.distance(c2) - r2).abs() < 1e-9 * (r1 + r2));
        }
    }
}
