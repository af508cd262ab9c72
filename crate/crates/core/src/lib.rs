//! Line voltages of three-phase star circuits from phase-to-phase
//! measurements.
//!
//! In the phasor diagram the three terminals form a triangle whose edges are
//! the measured phase-to-phase voltages, and the star point is an interior
//! point whose distances to the vertices are the line voltages. For a
//! balanced load the star point is the Fermat point ([`fermat`]); in general
//! it is the point that sees the edges under the load phase differences
//! ([`general`]). [`circuit`] wraps both in electrical terms and [`oracle`]
//! holds independent checks.

pub mod batch;
pub mod circuit;
pub mod error;
pub mod fermat;
pub mod general;
pub mod geometry;
pub mod oracle;
pub mod solution;
pub mod tolerance;

pub use circuit::{
    phasor_difference, solve_general_star, solve_symmetric_star, verify_solution, LineVoltages, MeasurementError,
    PhaseToPhaseVoltages, Phasor, ResidualReport,
};
pub use error::{GeometryError, Result};
pub use fermat::{fermat_distances_closed_form, fermat_solve, FermatMethod};
pub use general::{general_distances_closed_form, general_solve, GeneralMethod, PhaseAngles};
pub use geometry::{theta_squared, Angle, PlaneVector, TriangleEdges, Vertex};
pub use solution::StarSolution;
pub use tolerance::Tolerances;
