use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::general::PhaseAngles;
use crate::geometry::{Angle, PlaneVector, TriangleEdges};
use crate::solution::{closure_residuals, StarSolution};

/// A planted answer: distances from the interior point to `A`, `B`, `C` and
/// the angles under which it sees the edges `a`, `b`, `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthesisSpec {
    pub distances: [f64; 3],
    pub angles: PhaseAngles,
    pub seed: u64,
}

const MIN_DISTANCE: f64 = 0.1;
const MAX_DISTANCE: f64 = 10.0;

impl SynthesisSpec {
    /// Seeded random instance. Distances are log-uniform in `[0.1, 10]`.
    /// Angles are uniform on the 360-degree simplex (normalized exponential
    /// draws), redrawn until every angle lies in `(60, 180)`. With
    /// `balanced`, all angles are 120 degrees.
    pub fn random(seed: u64, balanced: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::draw(&mut rng, seed, balanced)
    }

    /// Draws the next instance from a caller-owned generator.
    pub fn draw<R: Rng + ?Sized>(rng: &mut R, seed: u64, balanced: bool) -> Self {
        let (lo, hi) = (MIN_DISTANCE.ln(), MAX_DISTANCE.ln());
        let distances: [f64; 3] = std::array::from_fn(|_| rng.random_range(lo..hi).exp());
        let angles = if balanced {
            PhaseAngles::BALANCED
        } else {
            loop {
                let draws: [f64; 3] = std::array::from_fn(|_| -(1.0 - rng.random::<f64>()).ln());
                let total: f64 = draws.iter().sum();
                let psi_a = 360.0 * draws[0] / total;
                let psi_b = 360.0 * draws[1] / total;
                let psi_c = 360.0 - psi_a - psi_b;
                let in_band = [psi_a, psi_b, psi_c].iter().all(|p| *p > 60.0 && *p < 180.0);
                if in_band {
                    if let Ok(angles) = PhaseAngles::from_degrees(psi_a, psi_b, psi_c) {
                        break angles;
                    }
                }
            }
        };
        SynthesisSpec {
            distances,
            angles,
            seed,
        }
    }
}

/// Edges from planted distances by the law of cosines,
/// `a^2 = b'^2 + c'^2 - 2 b' c' cos(psi_a)` and cyclic.
///
/// The expected solution carries the planted distances and the planted point
/// expressed in the solver frame (`C` at the origin, `B` on the positive
/// x-axis, `A` above it), located from explicit coordinates.
pub fn synthesize_triangle(spec: &SynthesisSpec) -> Result<(TriangleEdges, StarSolution)> {
    let d = spec.distances;
    let cosines = spec.angles.cosines();
    let edge = |i: usize| {
        let (p, q) = (d[(i + 1) % 3], d[(i + 2) % 3]);
        (p * p + q * q - 2.0 * p * q * cosines[i]).sqrt()
    };
    let edges = TriangleEdges::new(edge(0), edge(1), edge(2))?;

    // Vertices around the star point, clockwise A -> B -> C.
    let psi = spec.angles.as_array();
    let va = d[0] * PlaneVector::new(1.0, 0.0);
    let vb = d[1] * PlaneVector::from_angle(Angle::from_degrees(-psi[2].degrees()));
    let vc = d[2] * PlaneVector::from_angle(Angle::from_degrees(-psi[2].degrees() - psi[0].degrees()));
    let cb = vb - vc;
    let unit = (1.0 / cb.norm()) * cb;
    let to_frame = |v: PlaneVector| {
        let rel = v - vc;
        PlaneVector::new(rel.inner(unit), unit.cross(rel))
    };
    debug_assert!(to_frame(va).y > 0.0);

    let expected = StarSolution {
        distances: d,
        point: to_frame(PlaneVector::ZERO),
        residuals: closure_residuals(&edges, d, cosines),
    };
    Ok((edges, expected))
}
