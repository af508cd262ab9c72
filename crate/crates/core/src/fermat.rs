//! Fermat point of a triangle: distances from the point whose vertex rays
//! meet at 120 degrees.
//!
//! Two independent routes are provided. The closed form evaluates the
//! symmetric expressions in the edge lengths directly. The construction
//! erects equilateral triangles on two edges, intersects the lines from each
//! apex to the opposite vertex, and measures distances from that point.

use crate::error::{GeometryError, Result};
use crate::geometry::{
    angle_between, interior_angles, locate_from_distances, Angle, PlaneVector, TriangleEdges,
    TriangleInvariants, Vertex,
};
use crate::solution::{closure_residuals, relative_difference, StarSolution};
use crate::tolerance::Tolerances;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Cosine of the 120 degree angle, exact.
const COS_THIRD_TURN: f64 = -0.5;

/// Places `C` at the origin, `B` at `a_vec = (a, 0)` and `A` at `b_vec` in
/// the upper half-plane with `|b_vec| = b`, `|a_vec - b_vec| = c`.
pub fn embed_triangle(t: &TriangleEdges) -> (PlaneVector, PlaneVector) {
    let inv = TriangleInvariants::of(t);
    let a = t.a();
    // 2ab cos(phi) and 2ab sin(phi), divided by 2a.
    let b_vec = PlaneVector::new(inv.cos_terms[2] / (2.0 * a), inv.theta_sq / (2.0 * a));
    (PlaneVector::new(a, 0.0), b_vec)
}

/// Apexes of the equilateral triangles erected outward on `CB` and `CA`.
pub fn fermat_apexes(a_vec: PlaneVector, b_vec: PlaneVector) -> Result<(PlaneVector, PlaneVector)> {
    let scale = a_vec.norm() * b_vec.norm();
    if !(scale > 0.0) || a_vec.cross(b_vec).abs() <= 1e-15 * scale {
        return Err(GeometryError::DegenerateTriangle);
    }
    let h = SQRT_3 / 2.0;
    let p = 0.5 * a_vec - h * a_vec.perp();
    let q = 0.5 * b_vec + h * b_vec.perp();
    Ok((p, q))
}

/// Intermediate quantities of the line-intersection construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FermatIntermediate {
    /// Angle at `C` from `a_vec` to `b_vec`.
    pub phi: Angle,
    pub p: PlaneVector,
    pub q: PlaneVector,
    /// Parameter along the line from `A` towards `P`.
    pub tau0: f64,
    /// Parameter along the line from `B` towards `Q`.
    pub sigma0: f64,
    pub det_omega: f64,
    /// Intersection point, taken on the `A`-`P` line.
    pub m: PlaneVector,
    /// Distance between the two line evaluations at `(tau0, sigma0)`.
    pub line_gap: f64,
}

/// Intersects the line through `A = b_vec` and `P` with the line through
/// `B = a_vec` and `Q`.
///
/// Writing both lines in the basis `{a_vec, b_vec}` gives the 2x2 system
///
/// ```text
/// | sin(phi+60)              sin(phi) + √3 b/(2a) | |tau  |            |1|
/// | sin(phi) + √3 a/(2b)     sin(phi+60)          | |sigma| = sin(phi) |1|
/// ```
pub fn fermat_line_solution(
    a_vec: PlaneVector,
    b_vec: PlaneVector,
    p: PlaneVector,
    q: PlaneVector,
) -> Result<FermatIntermediate> {
    let a = a_vec.norm();
    let b = b_vec.norm();
    let phi = angle_between(a_vec, b_vec)?;
    let sin_phi = a_vec.cross(b_vec) / (a * b);
    let cos_phi = a_vec.inner(b_vec) / (a * b);
    let sin_phi_60 = 0.5 * sin_phi + 0.5 * SQRT_3 * cos_phi;

    let w11 = sin_phi_60;
    let w12 = sin_phi + SQRT_3 * b / (2.0 * a);
    let w21 = sin_phi + SQRT_3 * a / (2.0 * b);
    let w22 = sin_phi_60;
    let det = w11 * w22 - w12 * w21;
    let entry_scale = w11.abs().max(w12.abs()).max(w21.abs());
    if det.abs() < 1e-14 * entry_scale * entry_scale {
        return Err(GeometryError::SingularSystem { det });
    }

    let tau0 = sin_phi * (w22 - w12) / det;
    let sigma0 = sin_phi * (w11 - w21) / det;
    let m = b_vec + tau0 * (p - b_vec);
    let m_other = a_vec + sigma0 * (q - a_vec);

    Ok(FermatIntermediate {
        phi,
        p,
        q,
        tau0,
        sigma0,
        det_omega: det,
        m,
        line_gap: m.distance(m_other),
    })
}

fn check_angles_below_120(t: &TriangleEdges, tol: &Tolerances) -> Result<()> {
    let angles = interior_angles(t);
    let (wide, angle) = angles
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.degrees().total_cmp(&y.1.degrees()))
        .map(|(i, a)| (Vertex::from_index(i), *a))
        .expect("three angles");
    if angle.degrees() >= 120.0 - tol.angle_degrees {
        return Err(GeometryError::AngleAtLeast120 {
            vertex: wide,
            angle_degrees: angle.degrees(),
            clamped: vertex_clamped_distances(t, wide),
        });
    }
    Ok(())
}

/// Distances when the minimizing point sits on `wide`: zero there, and the
/// two adjacent edges for the other vertices.
pub fn vertex_clamped_distances(t: &TriangleEdges, wide: Vertex) -> [f64; 3] {
    let (a, b, c) = (t.a(), t.b(), t.c());
    match wide {
        Vertex::A => [0.0, c, b],
        Vertex::B => [c, 0.0, a],
        Vertex::C => [b, a, 0.0],
    }
}

/// Closed-form Fermat distances:
///
/// `(a')^2 = (√3 (b² + c² - a²) + Θ²)^2 / (6 (a² + b² + c² + √3 Θ²))`,
/// with `b'` and `c'` by relabeling.
pub fn fermat_distances_closed_form(t: &TriangleEdges) -> Result<StarSolution> {
    fermat_distances_closed_form_with(t, &Tolerances::DEFAULT)
}

pub fn fermat_distances_closed_form_with(t: &TriangleEdges, tol: &Tolerances) -> Result<StarSolution> {
    check_angles_below_120(t, tol)?;
    let inv = TriangleInvariants::of(t);
    if inv.theta_sq <= 0.0 {
        return Err(GeometryError::DegenerateTriangle);
    }
    let denom = 6.0 * (inv.sum_sq + SQRT_3 * inv.theta_sq);
    let mut distances = [0.0; 3];
    for (i, d) in distances.iter_mut().enumerate() {
        // Proportional to sin(angle + 60), positive below 120 degrees.
        let numer = SQRT_3 * inv.cos_terms[i] + inv.theta_sq;
        if numer <= 0.0 {
            let vertex = Vertex::from_index(i);
            return Err(GeometryError::AngleAtLeast120 {
                vertex,
                angle_degrees: interior_angles(t)[i].degrees(),
                clamped: vertex_clamped_distances(t, vertex),
            });
        }
        *d = numer / denom.sqrt();
    }
    Ok(StarSolution {
        distances,
        point: locate_from_distances(t.a(), distances[2], distances[1]),
        residuals: closure_residuals(t, distances, [COS_THIRD_TURN; 3]),
    })
}

/// Fermat distances by the line-intersection construction.
pub fn fermat_construction(t: &TriangleEdges) -> Result<(StarSolution, FermatIntermediate)> {
    fermat_construction_with(t, &Tolerances::DEFAULT)
}

pub fn fermat_construction_with(
    t: &TriangleEdges,
    tol: &Tolerances,
) -> Result<(StarSolution, FermatIntermediate)> {
    check_angles_below_120(t, tol)?;
    let (a_vec, b_vec) = embed_triangle(t);
    let (p, q) = fermat_apexes(a_vec, b_vec)?;
    let inter = fermat_line_solution(a_vec, b_vec, p, q)?;
    let m = inter.m;
    let distances = [m.distance(b_vec), m.distance(a_vec), m.norm()];
    let sol = StarSolution {
        distances,
        point: m,
        residuals: closure_residuals(t, distances, [COS_THIRD_TURN; 3]),
    };
    Ok((sol, inter))
}

/// Which route [`fermat_solve`] takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FermatMethod {
    ClosedForm,
    Construction,
    #[default]
    Both,
}

/// Runs the selected route. With [`FermatMethod::Both`], the two routes must
/// agree within the cross-check tolerance; the closed-form distances are
/// returned together with the constructed point.
pub fn fermat_solve(t: &TriangleEdges, method: FermatMethod) -> Result<StarSolution> {
    fermat_solve_with(t, method, &Tolerances::DEFAULT)
}

pub fn fermat_solve_with(t: &TriangleEdges, method: FermatMethod, tol: &Tolerances) -> Result<StarSolution> {
    match method {
        FermatMethod::ClosedForm => fermat_distances_closed_form_with(t, tol),
        FermatMethod::Construction => fermat_construction_with(t, tol).map(|(s, _)| s),
        FermatMethod::Both => {
            let closed = fermat_distances_closed_form_with(t, tol)?;
            let (built, _) = fermat_construction_with(t, tol)?;
            let difference = relative_difference(closed.distances, built.distances);
            if difference > tol.cross_check {
                return Err(GeometryError::CrossCheckMismatch { difference });
            }
            Ok(StarSolution {
                point: built.point,
                ..closed
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(x: f64, y: f64) -> f64 {
        (x - y).abs() / x.abs().max(y.abs())
    }

    fn e1() -> TriangleEdges {
        TriangleEdges::new(61f64.sqrt(), 7.0, 37f64.sqrt()).unwrap()
    }

    #[test]
    fn embed_examples() {
        let (a, b) = embed_triangle(&TriangleEdges::new(1.0, 1.0, 1.0).unwrap());
        assert_eq!(a, PlaneVector::new(1.0, 0.0));
        assert!(b.distance(PlaneVector::new(0.5, SQRT_3 / 2.0)) < 1e-15);

        let (a, b) = embed_triangle(&TriangleEdges::new(3.0, 4.0, 5.0).unwrap());
        assert_eq!(a, PlaneVector::new(3.0, 0.0));
        assert!(b.distance(PlaneVector::new(0.0, 4.0)) < 1e-15);

        let t = e1();
        let (a, b) = embed_triangle(&t);
        assert_eq!(a, PlaneVector::new(61f64.sqrt(), 0.0));
        assert!(rel(b.norm(), 7.0) < 1e-15);
        assert!(rel(a.distance(b), 37f64.sqrt()) < 1e-15);
        let phi = angle_between(a, b).unwrap().degrees();
        assert!(phi > 0.0 && phi < 180.0);
    }

    #[test]
    fn apex_examples() {
        let (p, _) = fermat_apexes(PlaneVector::new(1.0, 0.0), PlaneVector::new(0.0, 1.0)).unwrap();
        assert!(p.distance(PlaneVector::new(0.5, -SQRT_3 / 2.0)) < 1e-15);
        let (_, q) = fermat_apexes(PlaneVector::new(1.0, 0.0), PlaneVector::new(0.0, 1.0)).unwrap();
        assert!(q.distance(PlaneVector::new(-SQRT_3 / 2.0, 0.5)) < 1e-15);

        let (a, b) = embed_triangle(&TriangleEdges::new(1.0, 1.0, 1.0).unwrap());
        let (p, q) = fermat_apexes(a, b).unwrap();
        // Equilateral sides on each base.
        assert!(rel(p.norm(), 1.0) < 1e-15 && rel(p.distance(a), 1.0) < 1e-15);
        assert!(rel(q.norm(), 1.0) < 1e-15 && rel(q.distance(b), 1.0) < 1e-15);
        // For the equilateral triangle P reflects A across CB, so
        // |P - A| = 2 * height; P and Q sit at opposite ends of a diameter of
        // the circle of radius 1 about C.
        assert!(rel(p.distance(b), SQRT_3) < 1e-15);
        assert!(rel(p.distance(q), 2.0) < 1e-15);
    }

    #[test]
    fn apexes_reject_collinear() {
        let r = fermat_apexes(PlaneVector::new(1.0, 0.0), PlaneVector::new(2.0, 0.0));
        assert_eq!(r, Err(GeometryError::DegenerateTriangle));
    }

    #[test]
    fn line_solution_equilateral_gives_centroid() {
        let (a, b) = embed_triangle(&TriangleEdges::new(1.0, 1.0, 1.0).unwrap());
        let (p, q) = fermat_apexes(a, b).unwrap();
        let s = fermat_line_solution(a, b, p, q).unwrap();
        assert!((s.tau0 - s.sigma0).abs() < 1e-15);
        assert!(s.m.distance((1.0 / 3.0) * (a + b)) < 1e-15);
        assert!(s.det_omega < 0.0);
    }

    #[test]
    fn line_solution_matches_printed_parameters() {
        for t in [TriangleEdges::new(3.0, 4.0, 5.0).unwrap(), e1()] {
            let (av, bv) = embed_triangle(&t);
            let (p, q) = fermat_apexes(av, bv).unwrap();
            let s = fermat_line_solution(av, bv, p, q).unwrap();
            let (a, b) = (t.a(), t.b());
            let phi = s.phi.radians();
            let sixty = 60f64.to_radians();
            let denom = SQRT_3 * (a * a + b * b) - 2.0 * SQRT_3 * a * b * (phi + sixty).cos();
            let tau = (SQRT_3 * b * b + 2.0 * a * b * (phi - sixty).sin()) / denom;
            let sigma = (SQRT_3 * a * a + 2.0 * a * b * (phi - sixty).sin()) / denom;
            assert!(rel(s.tau0, tau) < 1e-13, "{} vs {}", s.tau0, tau);
            assert!(rel(s.sigma0, sigma) < 1e-13);
            let det = -(SQRT_3 * phi.sin() / (2.0 * a * b))
                * (a * a + b * b - 2.0 * a * b * (phi + sixty).cos());
            assert!(rel(s.det_omega, det) < 1e-13);
            assert!(s.line_gap < 1e-9 * t.perimeter());
            assert!(s.tau0 > 0.0 && s.tau0 < 1.0 && s.sigma0 > 0.0 && s.sigma0 < 1.0);
        }
        let t = e1();
        let (av, bv) = embed_triangle(&t);
        let (p, q) = fermat_apexes(av, bv).unwrap();
        let s = fermat_line_solution(av, bv, p, q).unwrap();
        assert!(rel(s.m.norm(), 5.0) < 1e-14);
    }

    #[test]
    fn closed_form_examples() {
        let eq = fermat_distances_closed_form(&TriangleEdges::new(1.0, 1.0, 1.0).unwrap()).unwrap();
        for d in eq.distances {
            assert!(rel(d, 1.0 / SQRT_3) < 1e-15);
        }

        let s = fermat_distances_closed_form(&e1()).unwrap();
        for (d, want) in s.distances.iter().zip([3.0, 4.0, 5.0]) {
            assert!(rel(*d, want) < 1e-14, "{d} vs {want}");
        }
        assert!(s.max_residual() < 1e-14);

        let k = 230.94;
        let t = TriangleEdges::new(k * 61f64.sqrt(), 7.0 * k, k * 37f64.sqrt()).unwrap();
        let s = fermat_distances_closed_form(&t).unwrap();
        for (d, want) in s.distances.iter().zip([3.0 * k, 4.0 * k, 5.0 * k]) {
            assert!(rel(*d, want) < 1e-14);
        }
    }

    #[test]
    fn closed_form_point_is_fermat_point() {
        let t = e1();
        let s = fermat_distances_closed_form(&t).unwrap();
        let (sol, _) = fermat_construction(&t).unwrap();
        assert!(s.point.distance(sol.point) < 1e-12);
    }

    #[test]
    fn wide_angle_is_reported_with_clamped_distances() {
        // 150 degrees at A between unit-length edges b and c.
        let a = (2.0 - 2.0 * 150f64.to_radians().cos()).sqrt();
        let t = TriangleEdges::new(a, 1.0, 1.0).unwrap();
        match fermat_distances_closed_form(&t) {
            Err(GeometryError::AngleAtLeast120 { vertex, angle_degrees, clamped }) => {
                assert_eq!(vertex, Vertex::A);
                assert!((angle_degrees - 150.0).abs() < 1e-9);
                assert_eq!(clamped, [0.0, 1.0, 1.0]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            fermat_solve(&t, FermatMethod::Construction),
            Err(GeometryError::AngleAtLeast120 { vertex: Vertex::A, .. })
        ));
    }

    #[test]
    fn exactly_120_is_rejected() {
        // b' = c' = 1, a' = 0 places A at the star point: angle at A is 120.
        let t = TriangleEdges::new(3f64.sqrt(), 1.0, 1.0).unwrap();
        assert!(matches!(
            fermat_distances_closed_form(&t),
            Err(GeometryError::AngleAtLeast120 { vertex: Vertex::A, .. })
        ));
    }

    #[test]
    fn degenerate_triangle_is_rejected() {
        let t = TriangleEdges::new(2.0, 1.0, 1.0).unwrap();
        assert!(fermat_solve(&t, FermatMethod::ClosedForm).is_err());
    }

    #[test]
    fn both_routes_agree() {
        let s = fermat_solve(&TriangleEdges::new(1.0, 1.0, 1.0).unwrap(), FermatMethod::Both).unwrap();
        for d in s.distances {
            assert!(rel(d, 1.0 / SQRT_3) < 1e-12);
        }
        let s = fermat_solve(&e1(), FermatMethod::Both).unwrap();
        for (d, want) in s.distances.iter().zip([3.0, 4.0, 5.0]) {
            assert!(rel(*d, want) < 1e-12);
        }
    }
}
