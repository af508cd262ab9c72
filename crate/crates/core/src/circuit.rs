//! Electrical front end.
//!
//! Index convention: `u1`, `u2`, `u3` are the phase-to-phase voltages opposite
//! terminals 1, 2, 3, which map to the triangle edges `a`, `b`, `c`. The line
//! voltage `u1p` is the amplitude between terminal 1 and the star point, so
//! `u1p = a'`. The phase difference `psi1` is the angle between the line
//! voltages of terminals 2 and 3, i.e. `psi_a`.
//!
//! Everything is homogeneous of degree one in the voltages, so amplitudes and
//! RMS values can be used interchangeably as long as inputs are consistent.

use thiserror::Error;

use crate::error::GeometryError;
use crate::fermat::{embed_triangle, fermat_distances_closed_form_with};
use crate::general::{general_solve_with, validate_angles, GeneralMethod, PhaseAngles};
use crate::geometry::{Angle, PlaneVector, TriangleEdges, Vertex};
use crate::solution::{closure_residuals_raw, StarSolution};
use crate::tolerance::Tolerances;

/// Relative size below which a recovered line voltage is reported as zero.
pub const VANISHING_LINE_VOLTAGE: f64 = 1e-8;

/// Measured amplitudes between pairs of phase terminals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseToPhaseVoltages {
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
}

impl PhaseToPhaseVoltages {
    /// Rejects non-positive values and triples that violate the triangle
    /// inequality.
    pub fn new(u1: f64, u2: f64, u3: f64) -> Result<Self, MeasurementError> {
        let u = PhaseToPhaseVoltages { u1, u2, u3 };
        u.edges()?;
        Ok(u)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.u1, self.u2, self.u3]
    }

    /// The voltage triangle, edges `(a, b, c) = (u1, u2, u3)`.
    pub fn edges(&self) -> Result<TriangleEdges, MeasurementError> {
        TriangleEdges::new(self.u1, self.u2, self.u3).map_err(|e| self.measurement_error(e))
    }

    fn measurement_error(&self, e: GeometryError) -> MeasurementError {
        match e {
            GeometryError::NotATriangle { .. } | GeometryError::DegenerateTriangle => {
                MeasurementError::InconsistentMeasurement {
                    u1: self.u1,
                    u2: self.u2,
                    u3: self.u3,
                }
            }
            other => MeasurementError::from(other),
        }
    }
}

/// Recovered amplitudes between each terminal and the star point.
#[derive(Debug, Clone, PartialEq)]
pub struct LineVoltages {
    pub u1p: f64,
    pub u2p: f64,
    pub u3p: f64,
    /// Direction of each line-voltage phasor, from the star point towards the
    /// terminal, in a frame with terminal 3 at the origin and terminal 2 on
    /// the positive real axis. Only differences between these phases carry
    /// physical meaning.
    pub phases: Option<[Angle; 3]>,
    pub diagnostics: Vec<String>,
}

impl LineVoltages {
    pub fn as_array(&self) -> [f64; 3] {
        [self.u1p, self.u2p, self.u3p]
    }

    fn from_solution(u: &PhaseToPhaseVoltages, sol: &StarSolution) -> Self {
        let edges = TriangleEdges::new(u.u1, u.u2, u.u3).ok();
        let phases = edges.map(|t| {
            // The embedding puts terminal 2 at `a_vec` and terminal 1 at `b_vec`.
            let (a_vec, b_vec) = embed_triangle(&t);
            let terminals = [b_vec, a_vec, PlaneVector::ZERO];
            terminals.map(|v| {
                let d = v - sol.point;
                Angle::from_radians(d.y.atan2(d.x)).normalized()
            })
        });
        let scale = u.as_array().iter().copied().fold(0.0, f64::max);
        let mut diagnostics = Vec::new();
        for (i, d) in sol.distances.iter().enumerate() {
            if *d < VANISHING_LINE_VOLTAGE * scale {
                diagnostics.push(format!(
                    "u{}p vanishes: the star point coincides with terminal {}",
                    i + 1,
                    i + 1
                ));
            }
        }
        let [u1p, u2p, u3p] = sol.distances;
        LineVoltages {
            u1p,
            u2p,
            u3p,
            phases,
            diagnostics,
        }
    }
}

/// A sinusoid `amplitude * cos(wt + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phasor {
    pub amplitude: f64,
    /// In `[0, 360)` degrees.
    pub phase: Angle,
}

impl Phasor {
    pub fn new(amplitude: f64, phase: Angle) -> Result<Self, MeasurementError> {
        if !(amplitude >= 0.0 && amplitude.is_finite()) || !phase.degrees().is_finite() {
            return Err(MeasurementError::InvalidPhasor { amplitude });
        }
        Ok(Phasor {
            amplitude,
            phase: phase.normalized(),
        })
    }

    pub fn to_vector(self) -> PlaneVector {
        self.amplitude * PlaneVector::from_angle(self.phase)
    }

    fn from_vector(v: PlaneVector) -> Self {
        let amplitude = v.norm();
        let phase = if amplitude > 0.0 {
            Angle::from_radians(v.y.atan2(v.x)).normalized()
        } else {
            Angle::from_degrees(0.0)
        };
        Phasor { amplitude, phase }
    }
}

/// The phasor of `p1 - p2`.
pub fn phasor_difference(p1: Phasor, p2: Phasor) -> Phasor {
    if p1.amplitude == p2.amplitude {
        // Equal amplitudes: 2U sin(d/2) at phase (phi1 + phi2)/2 + 90, exact
        // when the phases coincide.
        let half = 0.5 * (p1.phase.degrees() - p2.phase.degrees());
        let s = Angle::from_degrees(half).sin();
        let amplitude = 2.0 * p1.amplitude * s.abs();
        let mid = 0.5 * (p1.phase.degrees() + p2.phase.degrees()) + if s >= 0.0 { 90.0 } else { -90.0 };
        return Phasor {
            amplitude,
            phase: if amplitude > 0.0 {
                Angle::from_degrees(mid).normalized()
            } else {
                Angle::from_degrees(0.0)
            },
        };
    }
    Phasor::from_vector(p1.to_vector() - p2.to_vector())
}

/// Failures in measurement terms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasurementError {
    #[error("voltages ({u1}, {u2}, {u3}) violate the triangle inequality")]
    InconsistentMeasurement { u1: f64, u2: f64, u3: f64 },

    /// The voltage triangle has an angle of at least 120 degrees at
    /// `terminal`, so no star point sees the terminals at 120 degrees.
    /// `clamped` holds the line voltages if the star point sat on that
    /// terminal.
    #[error("voltage triangle angle at terminal {terminal} is {angle_degrees:.6} degrees (>= 120)")]
    PhaseDiagnostic {
        terminal: usize,
        angle_degrees: f64,
        clamped: [f64; 3],
    },

    #[error("invalid phase differences: {reason}")]
    InvalidPhase { reason: String },

    #[error("no star point is consistent with the measurement: {reason}")]
    Infeasible { reason: String },

    #[error("invalid phasor amplitude {amplitude}")]
    InvalidPhasor { amplitude: f64 },
}

impl From<GeometryError> for MeasurementError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::AngleAtLeast120 {
                vertex,
                angle_degrees,
                clamped,
            } => MeasurementError::PhaseDiagnostic {
                terminal: terminal_of(vertex),
                angle_degrees,
                clamped,
            },
            GeometryError::AngleOutOfRange { .. } | GeometryError::AngleSum { .. } => {
                MeasurementError::InvalidPhase { reason: e.to_string() }
            }
            GeometryError::NotATriangle { a, b, c } => MeasurementError::InconsistentMeasurement { u1: a, u2: b, u3: c },
            other => MeasurementError::Infeasible {
                reason: other.to_string(),
            },
        }
    }
}

fn terminal_of(v: Vertex) -> usize {
    v.index() + 1
}

/// Line voltages of a star circuit whose load phases differ by 120 degrees.
pub fn solve_symmetric_star(u: &PhaseToPhaseVoltages) -> Result<LineVoltages, MeasurementError> {
    solve_symmetric_star_with(u, &Tolerances::DEFAULT)
}

pub fn solve_symmetric_star_with(u: &PhaseToPhaseVoltages, tol: &Tolerances) -> Result<LineVoltages, MeasurementError> {
    let t = u.edges()?;
    let sol = fermat_distances_closed_form_with(&t, tol).map_err(|e| u.measurement_error(e))?;
    Ok(LineVoltages::from_solution(u, &sol))
}

/// Line voltages for load phase differences `psi1`, `psi2` (degrees); the
/// third is `360 - psi1 - psi2`.
pub fn solve_general_star(u: &PhaseToPhaseVoltages, psi1: Angle, psi2: Angle) -> Result<LineVoltages, MeasurementError> {
    solve_general_star_with(u, psi1, psi2, &Tolerances::DEFAULT)
}

pub fn solve_general_star_with(
    u: &PhaseToPhaseVoltages,
    psi1: Angle,
    psi2: Angle,
    tol: &Tolerances,
) -> Result<LineVoltages, MeasurementError> {
    let t = u.edges()?;
    let angles = validate_angles(psi1, psi2)?;
    let sol = general_solve_with(&t, &angles, GeneralMethod::ClosedForm, tol).map_err(|e| u.measurement_error(e))?;
    Ok(LineVoltages::from_solution(u, &sol))
}

/// Mesh-rule closure check of a claimed solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// Relative residual of `u2p^2 + u3p^2 - 2 u2p u3p cos(psi1) = u1^2`
    /// and its cyclic versions.
    pub residuals: [f64; 3],
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn verify_solution(u: &PhaseToPhaseVoltages, lv: &LineVoltages, angles: &PhaseAngles) -> ResidualReport {
    verify_solution_with(u, lv, angles, Tolerances::DEFAULT.closure)
}

pub fn verify_solution_with(
    u: &PhaseToPhaseVoltages,
    lv: &LineVoltages,
    angles: &PhaseAngles,
    tolerance: f64,
) -> ResidualReport {
    let residuals = closure_residuals_raw(u.as_array(), lv.as_array(), angles.cosines());
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    ResidualReport {
        residuals,
        max_residual,
        tolerance,
        passed: residuals.iter().all(|r| *r < tolerance),
    }
}
