//! Interior point seen under prescribed angles.
//!
//! Given edges `(a, b, c)` and viewing angles `psi_a = ∠BXC`,
//! `psi_b = ∠CXA`, `psi_c = ∠AXB` summing to 360 degrees, recover the
//! distances `a' = |XA|`, `b' = |XB|`, `c' = |XC|`.
//!
//! By the inscribed angle theorem `X` lies on the circle through `B`, `C`
//! whose arc above `BC` sees the chord under `psi_a`, and likewise on a circle
//! through `C`, `A` for `psi_b`. Both circles pass through `C`; `X` is their
//! other intersection. The closed form expresses `|X - C|` directly in the
//! edges and cotangents; `a'` and `b'` follow by cyclic relabeling.
//!
//! Every solver here first relabels cyclically so that the smallest angle
//! plays the role of `psi_c` (the other two are then at least 90 degrees) and
//! maps the results back to the caller's labels.

use crate::error::{GeometryError, Result};
use crate::fermat::embed_triangle;
use crate::geometry::{
    barycentric, from_barycentric, Angle, PlaneVector, TriangleEdges, TriangleInvariants, Vertex,
};
use crate::oracle::intersect_circles;
use crate::solution::{closure_residuals, relative_difference, StarSolution};
use crate::tolerance::Tolerances;

/// Viewing angles `(psi_a, psi_b, psi_c)`, each in `(0, 180)` degrees and
/// summing to 360.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseAngles {
    psi: [Angle; 3],
}

const NAMES: [&str; 3] = ["psi_a", "psi_b", "psi_c"];

impl PhaseAngles {
    /// The balanced configuration, all three at 120 degrees.
    pub const BALANCED: PhaseAngles = PhaseAngles {
        psi: [Angle::THIRD_TURN; 3],
    };

    pub fn new(psi_a: Angle, psi_b: Angle, psi_c: Angle) -> Result<Self> {
        Self::new_with(psi_a, psi_b, psi_c, &Tolerances::DEFAULT)
    }

    pub fn new_with(psi_a: Angle, psi_b: Angle, psi_c: Angle, tol: &Tolerances) -> Result<Self> {
        let psi = [psi_a, psi_b, psi_c];
        for (angle, name) in psi.iter().zip(NAMES) {
            let d = angle.degrees();
            if !(d > 0.0 && d < 180.0) {
                return Err(GeometryError::AngleOutOfRange { name, degrees: d });
            }
        }
        let sum: f64 = psi.iter().map(|a| a.degrees()).sum();
        if (sum - 360.0).abs() > tol.angle_degrees {
            return Err(GeometryError::AngleSum { sum });
        }
        debug_assert!(psi.iter().filter(|a| a.degrees() >= 90.0).count() >= 2);
        Ok(PhaseAngles { psi })
    }

    pub fn from_degrees(psi_a: f64, psi_b: f64, psi_c: f64) -> Result<Self> {
        Self::new(
            Angle::from_degrees(psi_a),
            Angle::from_degrees(psi_b),
            Angle::from_degrees(psi_c),
        )
    }

    pub fn psi_a(&self) -> Angle {
        self.psi[0]
    }

    pub fn psi_b(&self) -> Angle {
        self.psi[1]
    }

    pub fn psi_c(&self) -> Angle {
        self.psi[2]
    }

    pub fn get(&self, which: Vertex) -> Angle {
        self.psi[which.index()]
    }

    pub fn as_array(&self) -> [Angle; 3] {
        self.psi
    }

    pub fn cosines(&self) -> [f64; 3] {
        self.psi.map(Angle::cos)
    }

    /// Cyclic relabeling matching [`TriangleEdges::rotated`].
    pub fn rotated(&self, k: usize) -> PhaseAngles {
        PhaseAngles {
            psi: std::array::from_fn(|i| self.psi[(i + k) % 3]),
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.psi.iter().all(|a| a.degrees() == 120.0)
    }
}

/// Builds the angle triple from two phase differences; the third is
/// `360 - psi_a - psi_b`.
pub fn validate_angles(psi_a: Angle, psi_b: Angle) -> Result<PhaseAngles> {
    let psi_c = Angle::from_degrees(360.0 - psi_a.degrees() - psi_b.degrees());
    PhaseAngles::new(psi_a, psi_b, psi_c)
}

/// Circles through the chords `CB` and `CA` on which `X` must lie.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleData {
    /// Center of the circle through `B` and `C` (chord `a`).
    pub center_r: PlaneVector,
    /// Center of the circle through `C` and `A` (chord `b`).
    pub center_s: PlaneVector,
    pub rho_a: f64,
    pub rho_b: f64,
    /// Signed height of `R` over the chord `CB`, positive on the side away
    /// from the triangle.
    pub h_r: f64,
    /// Signed height of `S` over the chord `CA`, same convention.
    pub h_s: f64,
}

/// Centers `r = (a_vec + cot(psi_a) a_vec⊥)/2`, `s = (b_vec - cot(psi_b) b_vec⊥)/2`
/// and radii `rho = (len/2) sqrt(1 + cot^2)`.
pub fn circumcircle_data(a_vec: PlaneVector, b_vec: PlaneVector, angles: &PhaseAngles) -> Result<CircleData> {
    let scale = a_vec.norm() * b_vec.norm();
    if !(scale > 0.0) || a_vec.cross(b_vec).abs() <= 1e-15 * scale {
        return Err(GeometryError::DegenerateTriangle);
    }
    let cot_a = angles.psi_a().cot();
    let cot_b = angles.psi_b().cot();
    let (a, b) = (a_vec.norm(), b_vec.norm());
    Ok(CircleData {
        center_r: 0.5 * (a_vec + cot_a * a_vec.perp()),
        center_s: 0.5 * (b_vec - cot_b * b_vec.perp()),
        rho_a: 0.5 * a * (1.0 + cot_a * cot_a).sqrt(),
        rho_b: 0.5 * b * (1.0 + cot_b * cot_b).sqrt(),
        h_r: -0.5 * a * cot_a,
        h_s: -0.5 * b * cot_b,
    })
}

/// Coefficients of `x = (alpha/2) a_vec + (beta/2) b_vec`, with `beta = t alpha`
/// and `t_star = 1/t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralIntermediate {
    pub t: f64,
    pub t_star: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl GeneralIntermediate {
    /// Barycentric weights of `X` in `[A, B, C]` order.
    pub fn barycentric(&self) -> [f64; 3] {
        [
            0.5 * self.beta,
            0.5 * self.alpha,
            1.0 - 0.5 * self.alpha - 0.5 * self.beta,
        ]
    }
}

pub fn star_point_coefficients(t: &TriangleEdges, angles: &PhaseAngles) -> Result<GeneralIntermediate> {
    star_point_coefficients_with(t, angles, &Tolerances::DEFAULT)
}

pub fn star_point_coefficients_with(
    t: &TriangleEdges,
    angles: &PhaseAngles,
    tol: &Tolerances,
) -> Result<GeneralIntermediate> {
    let inv = TriangleInvariants::of(t);
    let (a2, b2) = (t.a() * t.a(), t.b() * t.b());
    let theta = inv.theta_sq;
    let g = inv.cos_terms[2];
    let cot_a = angles.psi_a().cot();
    let cot_b = angles.psi_b().cot();

    let num = inv.cos_terms[1] - cot_b * theta;
    let den = inv.cos_terms[0] - cot_a * theta;
    let eps = tol.denominator_slack * inv.sum_sq;
    if den.abs() < eps {
        return Err(GeometryError::SingularConfiguration { denominator: den });
    }
    if num.abs() < eps {
        return Err(GeometryError::SingularConfiguration { denominator: num });
    }
    let t_ratio = num / den;
    let t_star = den / num;

    let alpha = (2.0 * a2 + t_ratio * g + t_ratio * cot_a * theta)
        / (a2 + t_ratio * t_ratio * b2 + t_ratio * g);
    let beta = (2.0 * b2 + t_star * g + t_star * cot_b * theta)
        / (b2 + t_star * t_star * a2 + t_star * g);

    Ok(GeneralIntermediate {
        t: t_ratio,
        t_star,
        alpha,
        beta,
    })
}

/// Rotation that moves the smallest angle into the `psi_c` slot.
fn canonical_rotation(angles: &PhaseAngles) -> usize {
    let psi = angles.as_array();
    let smallest = (0..3)
        .min_by(|&i, &j| psi[i].degrees().total_cmp(&psi[j].degrees()))
        .expect("three angles");
    (smallest + 1) % 3
}

/// Rotation for the circle route: the two circles use `psi_a` and `psi_b`,
/// whose radii blow up as the angle nears 180 degrees, so the worst angle goes
/// to `psi_c`.
fn circles_rotation(angles: &PhaseAngles) -> usize {
    let sines = angles.as_array().map(|p| p.radians().sin().abs());
    let best = (0..3)
        .max_by(|&i, &j| {
            let others = |c: usize| sines[(c + 1) % 3].min(sines[(c + 2) % 3]);
            others(i).total_cmp(&others(j))
        })
        .expect("three angles");
    (best + 1) % 3
}

/// Maps a per-vertex triple computed in the labeling `rotated(k)` back to
/// the original labels.
fn unrotate<T: Copy>(values: [T; 3], k: usize) -> [T; 3] {
    std::array::from_fn(|j| values[(j + 3 - k) % 3])
}

/// `|XC|` from the edges and viewing angles, in the given labeling:
///
/// ```text
///          (cot_a + cot_b)^2 (g - Θ² cot_c)^2 / 4
/// c'^2 = -------------------------------------------------------------
///        a²(1+cot_a²) + b²(1+cot_b²) - (cot_a+cot_b)(g cot_c + Θ²)
/// ```
///
/// with `g = a² + b² - c²`. Squaring the numerator makes the sign convention
/// irrelevant; the nonnegative root is returned.
fn third_distance(t: &TriangleEdges, angles: &PhaseAngles, theta: f64, tol: &Tolerances) -> Result<f64> {
    let (a2, b2, c2) = (t.a() * t.a(), t.b() * t.b(), t.c() * t.c());
    let g = a2 + b2 - c2;
    let cot_a = angles.psi_a().cot();
    let cot_b = angles.psi_b().cot();
    let cot_c = angles.psi_c().cot();
    let cot_sum = cot_a + cot_b;
    let numer = 0.5 * cot_sum * (g - theta * cot_c);
    let denom = a2 * (1.0 + cot_a * cot_a) + b2 * (1.0 + cot_b * cot_b) - cot_sum * (g * cot_c + theta);
    if denom <= tol.denominator_slack * (a2 + b2 + c2) {
        return Err(GeometryError::SingularConfiguration { denominator: denom });
    }
    Ok(numer.abs() / denom.sqrt())
}

fn check_interior(w: [f64; 3], tol: &Tolerances) -> Result<()> {
    if let Some(i) = (0..3).find(|&i| !(w[i] >= -tol.barycentric_slack)) {
        return Err(GeometryError::InfeasibleConfiguration {
            reason: format!(
                "recovered point lies outside the triangle (weight {:.6} at vertex {})",
                w[i],
                Vertex::from_index(i)
            ),
        });
    }
    Ok(())
}

fn finish(
    t: &TriangleEdges,
    angles: &PhaseAngles,
    distances: [f64; 3],
    weights: [f64; 3],
    tol: &Tolerances,
) -> Result<StarSolution> {
    let residuals = closure_residuals(t, distances, angles.cosines());
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    if !(worst <= tol.closure) {
        return Err(GeometryError::InfeasibleConfiguration {
            reason: format!("law-of-cosines closure residual {worst:e} exceeds {:e}", tol.closure),
        });
    }
    let (a_vec, b_vec) = embed_triangle(t);
    Ok(StarSolution {
        distances,
        point: from_barycentric(weights, a_vec, b_vec),
        residuals,
    })
}

/// Closed-form distances for a prescribed-angle interior point.
pub fn general_distances_closed_form(t: &TriangleEdges, angles: &PhaseAngles) -> Result<StarSolution> {
    general_distances_closed_form_with(t, angles, &Tolerances::DEFAULT)
}

pub fn general_distances_closed_form_with(
    t: &TriangleEdges,
    angles: &PhaseAngles,
    tol: &Tolerances,
) -> Result<StarSolution> {
    let theta = TriangleInvariants::of(t).theta_sq;
    if theta <= 0.0 {
        return Err(GeometryError::DegenerateTriangle);
    }
    let k = canonical_rotation(angles);
    let tc = t.rotated(k);
    let ac = angles.rotated(k);

    // Canonical c' directly; a' and b' through the two further rotations.
    let c_prime = third_distance(&tc, &ac, theta, tol)?;
    let a_prime = third_distance(&tc.rotated(1), &ac.rotated(1), theta, tol)?;
    let b_prime = third_distance(&tc.rotated(2), &ac.rotated(2), theta, tol)?;

    let coeffs = star_point_coefficients_with(&tc, &ac, tol)?;
    let weights = coeffs.barycentric();
    check_interior(weights, tol)?;

    finish(
        t,
        angles,
        unrotate([a_prime, b_prime, c_prime], k),
        unrotate(weights, k),
        tol,
    )
}

/// Distances from the second intersection of the two circumcircles.
pub fn general_solve_by_circles(t: &TriangleEdges, angles: &PhaseAngles) -> Result<StarSolution> {
    general_solve_by_circles_with(t, angles, &Tolerances::DEFAULT)
}

pub fn general_solve_by_circles_with(
    t: &TriangleEdges,
    angles: &PhaseAngles,
    tol: &Tolerances,
) -> Result<StarSolution> {
    let k = circles_rotation(angles);
    let tc = t.rotated(k);
    let ac = angles.rotated(k);
    let (a_vec, b_vec) = embed_triangle(&tc);
    let circles = circumcircle_data(a_vec, b_vec, &ac)?;
    let mut points = intersect_circles(circles.center_r, circles.rho_a, circles.center_s, circles.rho_b)?;
    if points.is_empty() {
        return Err(GeometryError::NoInteriorIntersection);
    }
    // One of the intersections is C itself; keep the other.
    points.sort_by(|p, q| q.norm().total_cmp(&p.norm()));
    let x = points[0];
    let weights = barycentric(x, a_vec, b_vec);
    if weights.iter().any(|w| !(*w >= -tol.barycentric_slack)) {
        return Err(GeometryError::NoInteriorIntersection);
    }
    if let Some(&other) = points.get(1) {
        // C comes out of the intersection with an error that scales with the radii.
        let away_from_c = other.norm() > tol.point_slack * (circles.rho_a + circles.rho_b + tc.perimeter());
        let inside = barycentric(other, a_vec, b_vec)
            .iter()
            .all(|w| *w >= -tol.barycentric_slack);
        if away_from_c && inside {
            return Err(GeometryError::AmbiguousIntersection);
        }
    }
    let distances = [x.distance(b_vec), x.distance(a_vec), x.norm()];
    finish(t, angles, unrotate(distances, k), unrotate(weights, k), tol)
}

/// Which route [`general_solve`] takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GeneralMethod {
    /// Closed form, falling back to the circle intersection when a closed-form
    /// denominator vanishes.
    #[default]
    ClosedForm,
    Circles,
    /// Both routes, which must agree within the cross-check tolerance.
    Both,
}

pub fn general_solve(t: &TriangleEdges, angles: &PhaseAngles, method: GeneralMethod) -> Result<StarSolution> {
    general_solve_with(t, angles, method, &Tolerances::DEFAULT)
}

pub fn general_solve_with(
    t: &TriangleEdges,
    angles: &PhaseAngles,
    method: GeneralMethod,
    tol: &Tolerances,
) -> Result<StarSolution> {
    match method {
        GeneralMethod::ClosedForm => match general_distances_closed_form_with(t, angles, tol) {
            Err(GeometryError::SingularConfiguration { .. }) => general_solve_by_circles_with(t, angles, tol),
            other => other,
        },
        GeneralMethod::Circles => general_solve_by_circles_with(t, angles, tol),
        GeneralMethod::Both => {
            let closed = general_distances_closed_form_with(t, angles, tol)?;
            let circles = general_solve_by_circles_with(t, angles, tol)?;
            let difference = relative_difference(closed.distances, circles.distances);
            if difference > tol.cross_check {
                return Err(GeometryError::CrossCheckMismatch { difference });
            }
            Ok(closed)
        }
    }
}
