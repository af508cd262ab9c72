//! Plane vectors, angles and triangle invariants.
//!
//! Triangle conventions used throughout the crate: vertices `A`, `B`, `C`;
//! edge `a = |BC|` is opposite `A`, `b = |AC|` opposite `B`, `c = |AB|`
//! opposite `C`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{GeometryError, Result};
use crate::tolerance::Tolerances;

/// A 2-D Euclidean vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlaneVector {
    pub x: f64,
    pub y: f64,
}

impl PlaneVector {
    pub const ZERO: PlaneVector = PlaneVector { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        PlaneVector { x, y }
    }

    /// Unit vector at `angle` counterclockwise from the positive x-axis.
    pub fn from_angle(angle: Angle) -> Self {
        let (s, c) = angle.radians().sin_cos();
        PlaneVector::new(c, s)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn inner(self, other: PlaneVector) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product; positive when `other` lies
    /// counterclockwise of `self`.
    pub fn cross(self, other: PlaneVector) -> f64 {
        self.x * other.y - self.y * other.x
    }

    /// Rotation by +90 degrees: the unique vector of equal length that makes
    /// `{self, self.perp()}` a positively oriented basis.
    pub fn perp(self) -> PlaneVector {
        PlaneVector::new(-self.y, self.x)
    }

    pub fn distance(self, other: PlaneVector) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for PlaneVector {
    type Output = PlaneVector;
    fn add(self, rhs: PlaneVector) -> PlaneVector {
        PlaneVector::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for PlaneVector {
    type Output = PlaneVector;
    fn sub(self, rhs: PlaneVector) -> PlaneVector {
        PlaneVector::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for PlaneVector {
    type Output = PlaneVector;
    fn neg(self) -> PlaneVector {
        PlaneVector::new(-self.x, -self.y)
    }
}

impl Mul<PlaneVector> for f64 {
    type Output = PlaneVector;
    fn mul(self, rhs: PlaneVector) -> PlaneVector {
        PlaneVector::new(self * rhs.x, self * rhs.y)
    }
}

impl Mul<f64> for PlaneVector {
    type Output = PlaneVector;
    fn mul(self, rhs: f64) -> PlaneVector {
        rhs * self
    }
}

impl fmt::Display for PlaneVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Free-function form of [`PlaneVector::perp`].
pub fn perp(v: PlaneVector) -> PlaneVector {
    v.perp()
}

/// A plane angle. Stored in degrees so that interface values such as
/// `360 - 110 - 130` stay exact; trigonometry goes through radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Angle(f64);

impl Angle {
    pub const RIGHT: Angle = Angle(90.0);
    pub const THIRD_TURN: Angle = Angle(120.0);

    pub const fn from_degrees(degrees: f64) -> Self {
        Angle(degrees)
    }

    pub fn from_radians(radians: f64) -> Self {
        Angle(radians.to_degrees())
    }

    pub fn degrees(self) -> f64 {
        self.0
    }

    pub fn radians(self) -> f64 {
        self.0.to_radians()
    }

    pub fn sin(self) -> f64 {
        self.radians().sin()
    }

    /// Cosine; exact at multiples of 60 and 90 degrees within one turn.
    pub fn cos(self) -> f64 {
        match self.0 {
            d if d == 0.0 || d == 360.0 => 1.0,
            d if d == 60.0 || d == 300.0 => 0.5,
            d if d == 90.0 || d == 270.0 => 0.0,
            d if d == 120.0 || d == 240.0 => -0.5,
            d if d == 180.0 => -1.0,
            d => d.to_radians().cos(),
        }
    }

    /// Cotangent; exactly zero at 90 degrees.
    pub fn cot(self) -> f64 {
        if self.0 == 90.0 {
            return 0.0;
        }
        let (s, c) = self.radians().sin_cos();
        c / s
    }

    /// Same angle reduced into `[0, 360)`.
    pub fn normalized(self) -> Angle {
        let d = self.0.rem_euclid(360.0);
        Angle(if d >= 360.0 { 0.0 } else { d })
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}°", self.0)
    }
}

/// Counterclockwise angle from `u` to `v`, in `[0, 360)` degrees.
pub fn angle_between(u: PlaneVector, v: PlaneVector) -> Result<Angle> {
    angle_between_with(u, v, &Tolerances::DEFAULT)
}

pub fn angle_between_with(u: PlaneVector, v: PlaneVector, tol: &Tolerances) -> Result<Angle> {
    if u.norm() < tol.zero_length || v.norm() < tol.zero_length {
        return Err(GeometryError::ZeroVector);
    }
    Ok(Angle::from_radians(u.cross(v).atan2(u.inner(v))).normalized())
}

/// Triangle vertex label. Doubles as the label of the opposite edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vertex {
    A,
    B,
    C,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A, Vertex::B, Vertex::C];

    pub fn index(self) -> usize {
        match self {
            Vertex::A => 0,
            Vertex::B => 1,
            Vertex::C => 2,
        }
    }

    pub fn from_index(i: usize) -> Vertex {
        Vertex::ALL[i % 3]
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Vertex::A => "A",
            Vertex::B => "B",
            Vertex::C => "C",
        })
    }
}

/// Edge lengths `(a, b, c)` satisfying the (non-strict) triangle inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleEdges {
    a: f64,
    b: f64,
    c: f64,
}

impl TriangleEdges {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new_with(a, b, c, &Tolerances::DEFAULT)
    }

    pub fn new_with(a: f64, b: f64, c: f64, tol: &Tolerances) -> Result<Self> {
        let valid = [a, b, c].iter().all(|x| x.is_finite() && *x > 0.0);
        if !valid {
            return Err(GeometryError::NotATriangle { a, b, c });
        }
        heron_product(a, b, c, tol)?;
        Ok(TriangleEdges { a, b, c })
    }

    pub fn from_array(edges: [f64; 3]) -> Result<Self> {
        Self::new(edges[0], edges[1], edges[2])
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn edge(&self, which: Vertex) -> f64 {
        self.as_array()[which.index()]
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn perimeter(&self) -> f64 {
        self.a + self.b + self.c
    }

    pub fn sum_sq(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c
    }

    /// Cyclic relabeling: `rotated(1)` maps `(a, b, c)` to `(b, c, a)`.
    pub fn rotated(&self, k: usize) -> TriangleEdges {
        let e = self.as_array();
        TriangleEdges {
            a: e[k % 3],
            b: e[(k + 1) % 3],
            c: e[(k + 2) % 3],
        }
    }

    /// Edges reordered by `perm`: the new edge `i` is the old edge `perm[i]`.
    pub fn permuted(&self, perm: [usize; 3]) -> TriangleEdges {
        let e = self.as_array();
        TriangleEdges {
            a: e[perm[0]],
            b: e[perm[1]],
            c: e[perm[2]],
        }
    }

    pub fn scaled(&self, k: f64) -> Result<TriangleEdges> {
        TriangleEdges::new(k * self.a, k * self.b, k * self.c)
    }
}

/// Product of the four Heron factors, with Kahan's ordering: edges sorted
/// descending, parenthesized so that no subtraction cancels catastrophically.
/// A factor in `[-slack, 0]` is clamped to zero.
fn heron_product(a: f64, b: f64, c: f64, tol: &Tolerances) -> Result<f64> {
    let mut e = [a, b, c];
    e.sort_by(|x, y| y.total_cmp(x));
    let [x, y, z] = e;
    let slack = tol.triangle_slack * (a + b + c);
    // Only z - (x - y) can go negative once sorted.
    let mut f2 = z - (x - y);
    if f2 < -slack {
        return Err(GeometryError::NotATriangle { a, b, c });
    }
    if f2 < 0.0 {
        f2 = 0.0;
    }
    let f1 = x + (y + z);
    let f3 = z + (x - y);
    let f4 = x + (y - z);
    Ok(f1 * f2 * f3 * f4)
}

/// The Heron quantity `sqrt((a+b+c)(a+c-b)(b+c-a)(a+b-c))`, equal to four
/// times the area. Zero exactly for degenerate triangles.
pub fn theta_squared(t: &TriangleEdges) -> f64 {
    // Already validated at construction.
    heron_product(t.a, t.b, t.c, &Tolerances::DEFAULT)
        .unwrap_or(0.0)
        .sqrt()
}

/// [`theta_squared`] on an unvalidated triple.
pub fn theta_squared_raw(a: f64, b: f64, c: f64) -> Result<f64> {
    let t = TriangleEdges::new(a, b, c)?;
    Ok(theta_squared(&t))
}

/// Heron quantity for a triple that should be a triangle up to rounding;
/// any negative factor is treated as zero.
pub(crate) fn theta_squared_lenient(a: f64, b: f64, c: f64) -> f64 {
    let mut e = [a.abs(), b.abs(), c.abs()];
    e.sort_by(|x, y| y.total_cmp(x));
    let [x, y, z] = e;
    let f2 = (z - (x - y)).max(0.0);
    ((x + (y + z)) * f2 * (z + (x - y)) * (x + (y - z))).sqrt()
}

/// Derived quantities of a triangle that do not depend on its labeling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleInvariants {
    pub theta_sq: f64,
    pub sum_sq: f64,
    /// `b^2 + c^2 - a^2`, `c^2 + a^2 - b^2`, `a^2 + b^2 - c^2`: twice the
    /// product of the adjacent edges times the cosine of the angle at
    /// `A`, `B`, `C` respectively.
    pub cos_terms: [f64; 3],
}

impl TriangleInvariants {
    pub fn of(t: &TriangleEdges) -> Self {
        let (a2, b2, c2) = (t.a * t.a, t.b * t.b, t.c * t.c);
        TriangleInvariants {
            theta_sq: theta_squared(t),
            sum_sq: a2 + b2 + c2,
            cos_terms: [b2 + c2 - a2, c2 + a2 - b2, a2 + b2 - c2],
        }
    }
}

/// Interior angle at the vertex opposite `which`.
///
/// Evaluated as `atan2(Θ², b²+c²-a²)` (and rotations), which combines the
/// cosine theorem `2bc cos = b²+c²-a²` with `2bc sin = Θ²`.
pub fn law_of_cosines_angle(t: &TriangleEdges, which: Vertex) -> Angle {
    let inv = TriangleInvariants::of(t);
    Angle::from_radians(inv.theta_sq.atan2(inv.cos_terms[which.index()]))
}

/// All three interior angles, indexed by vertex.
pub fn interior_angles(t: &TriangleEdges) -> [Angle; 3] {
    let inv = TriangleInvariants::of(t);
    inv.cos_terms
        .map(|ct| Angle::from_radians(inv.theta_sq.atan2(ct)))
}

/// Point `P` in the closed upper half-plane with `|P| = to_origin` and
/// `|P - (base, 0)| = to_base_end`.
pub(crate) fn locate_from_distances(base: f64, to_origin: f64, to_base_end: f64) -> PlaneVector {
    if to_origin == 0.0 {
        return PlaneVector::ZERO;
    }
    let two_area = theta_squared_lenient(base, to_origin, to_base_end);
    let cos_term = to_origin * to_origin + base * base - to_base_end * to_base_end;
    let denom = 2.0 * to_origin * base;
    PlaneVector::new(cos_term / denom, two_area / denom) * to_origin
}

/// Barycentric weights of `p` with respect to the triangle `A = b_vec`,
/// `B = a_vec`, `C = 0`, returned in `[A, B, C]` order.
pub fn barycentric(p: PlaneVector, a_vec: PlaneVector, b_vec: PlaneVector) -> [f64; 3] {
    let det = a_vec.cross(b_vec);
    let w_b = p.cross(b_vec) / det;
    let w_a = a_vec.cross(p) / det;
    [w_a, w_b, 1.0 - w_a - w_b]
}

/// Inverse of [`barycentric`].
pub fn from_barycentric(w: [f64; 3], a_vec: PlaneVector, b_vec: PlaneVector) -> PlaneVector {
    w[0] * b_vec + w[1] * a_vec
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
    }

    #[test]
    fn perp_examples() {
        assert_eq!(perp(PlaneVector::new(1.0, 0.0)), PlaneVector::new(0.0, 1.0));
        assert_eq!(perp(PlaneVector::ZERO), PlaneVector::ZERO);
        let v = PlaneVector::new(3.0, 4.0);
        assert_eq!(perp(v), PlaneVector::new(-4.0, 3.0));
        assert_eq!(perp(v).norm(), 5.0);
        assert_eq!(v.inner(v.perp()), 0.0);
        assert!(v.cross(v.perp()) > 0.0);
    }

    #[test]
    fn angle_between_examples() {
        let e1 = PlaneVector::new(1.0, 0.0);
        let deg = |v| angle_between(e1, v).unwrap().degrees();
        assert!(close(deg(PlaneVector::new(0.0, 1.0)), 90.0, 1e-15));
        assert!(close(deg(PlaneVector::new(0.0, -1.0)), 270.0, 1e-15));
        assert!(close(deg(PlaneVector::new(1.0, 1.0)), 45.0, 1e-15));
        assert_eq!(deg(PlaneVector::new(2.0, 0.0)), 0.0);
    }

    #[test]
    fn angle_between_rejects_zero() {
        let e1 = PlaneVector::new(1.0, 0.0);
        assert_eq!(angle_between(e1, PlaneVector::ZERO), Err(GeometryError::ZeroVector));
        assert_eq!(angle_between(PlaneVector::ZERO, e1), Err(GeometryError::ZeroVector));
    }

    #[test]
    fn theta_squared_examples() {
        let eq = theta_squared_raw(1.0, 1.0, 1.0).unwrap();
        assert!(close(eq, 3f64.sqrt(), 1e-15));
        assert_eq!(theta_squared_raw(2.0, 1.0, 1.0).unwrap(), 0.0);
        // Shoelace on (0,0), (3,0), (3,4): area 6.
        let shoelace = 0.5 * (3.0f64 * 4.0 - 0.0 * 3.0).abs();
        assert_eq!(theta_squared_raw(3.0, 4.0, 5.0).unwrap(), 4.0 * shoelace);
    }

    #[test]
    fn near_degenerate_is_clamped_but_gross_violation_is_rejected() {
        // 1 + 1 - 2(1 + 1e-14) is well inside the clamp band.
        let t = TriangleEdges::new(2.0 * (1.0 + 1e-14), 1.0, 1.0).unwrap();
        assert_eq!(theta_squared(&t), 0.0);
        assert!(matches!(
            TriangleEdges::new(10.0, 1.0, 1.0),
            Err(GeometryError::NotATriangle { .. })
        ));
        assert!(TriangleEdges::new(0.0, 1.0, 1.0).is_err());
        assert!(TriangleEdges::new(-1.0, 1.0, 1.0).is_err());
        assert!(TriangleEdges::new(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn law_of_cosines_examples() {
        let eq = TriangleEdges::new(1.0, 1.0, 1.0).unwrap();
        assert!(close(law_of_cosines_angle(&eq, Vertex::C).degrees(), 60.0, 1e-14));
        let right = TriangleEdges::new(3.0, 4.0, 5.0).unwrap();
        assert!(close(law_of_cosines_angle(&right, Vertex::C).degrees(), 90.0, 1e-14));

        let t = TriangleEdges::new(61f64.sqrt(), 7.0, 37f64.sqrt()).unwrap();
        let expected = ((49.0 + 37.0 - 61.0) / (2.0 * 7.0 * 37f64.sqrt())).acos();
        assert!(close(law_of_cosines_angle(&t, Vertex::A).radians(), expected, 1e-14));
        let sum: f64 = interior_angles(&t).iter().map(|a| a.degrees()).sum();
        assert!((sum - 180.0).abs() < 1e-9);
    }

    #[test]
    fn cot_is_exact_at_right_angle() {
        assert_eq!(Angle::RIGHT.cot(), 0.0);
        assert!(close(Angle::THIRD_TURN.cot(), -1.0 / 3f64.sqrt(), 1e-15));
    }

    #[test]
    fn barycentric_round_trip() {
        let a_vec = PlaneVector::new(3.0, 0.0);
        let b_vec = PlaneVector::new(1.0, 2.0);
        let p = PlaneVector::new(1.5, 0.5);
        let w = barycentric(p, a_vec, b_vec);
        assert!(close(w.iter().sum(), 1.0, 1e-15));
        let q = from_barycentric(w, a_vec, b_vec);
        assert!(p.distance(q) < 1e-15);
        assert_eq!(barycentric(PlaneVector::ZERO, a_vec, b_vec), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn locate_from_distances_matches_coordinates() {
        let p = PlaneVector::new(1.25, 0.75);
        let base = 4.0;
        let q = locate_from_distances(base, p.norm(), p.distance(PlaneVector::new(base, 0.0)));
        assert!(p.distance(q) < 1e-14);
    }
}
