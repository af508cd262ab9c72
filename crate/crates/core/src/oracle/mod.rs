//! Independent checks for the solvers: forward synthesis of instances with a
//! planted answer, direct minimization of the vertex-distance sum, a plain
//! circle-circle intersection kernel, and time-domain waveform sampling.
//!
//! Nothing here calls into [`crate::fermat`] or [`crate::general`].

mod circles;
mod minimize;
mod synthesis;
mod waveform;

pub use circles::intersect_circles;
pub use minimize::{minimize_distance_sum, nelder_mead_2d, MinimizationResult, SimplexOptions};
pub use synthesis::{synthesize_triangle, SynthesisSpec};
pub use waveform::{sample_waveform_amplitude, WAVEFORM_SAMPLES};
