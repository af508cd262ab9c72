use std::f64::consts::TAU;

use crate::circuit::Phasor;

/// Samples per period. The peak of a sampled sinusoid is underestimated by at
/// most `1 - cos(pi / N)`, about `2.9e-7` here.
pub const WAVEFORM_SAMPLES: usize = 4096;

/// Amplitude of `sum_k s_k A_k cos(wt + phi_k)` measured in the time domain:
/// half the spread between the largest and smallest sample over one period.
///
/// `signs` pairs with `phasors`; missing signs count as `+1`.
pub fn sample_waveform_amplitude(phasors: &[Phasor], signs: &[f64]) -> f64 {
    let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::INFINITY);
    for k in 0..WAVEFORM_SAMPLES {
        let wt = TAU * k as f64 / WAVEFORM_SAMPLES as f64;
        let v: f64 = phasors
            .iter()
            .enumerate()
            .map(|(i, p)| signs.get(i).copied().unwrap_or(1.0) * p.amplitude * (wt + p.phase.radians()).cos())
            .sum();
        hi = hi.max(v);
        lo = lo.min(v);
    }
    if phasors.is_empty() {
        return 0.0;
    }
    (hi - lo) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Angle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ph(amplitude: f64, degrees: f64) -> Phasor {
        Phasor::new(amplitude, Angle::from_degrees(degrees)).unwrap()
    }

    #[test]
    fn single_unit_phasor() {
        assert!((sample_waveform_amplitude(&[ph(1.0, 0.0)], &[1.0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn third_turn_difference_is_root_three() {
        let amp = sample_waveform_amplitude(&[ph(1.0, 120.0), ph(1.0, 0.0)], &[1.0, -1.0]);
        assert!((amp - 3f64.sqrt()).abs() / 3f64.sqrt() < 1e-6);
    }

    #[test]
    fn quarter_turn_difference_is_root_five() {
        let amp = sample_waveform_amplitude(&[ph(2.0, 90.0), ph(1.0, 0.0)], &[1.0, -1.0]);
        assert!((amp - 5f64.sqrt()).abs() / 5f64.sqrt() < 1e-6);
    }

    #[test]
    fn agrees_with_complex_modulus() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let (a1, p1) = (rng.random_range(0.1..10.0), rng.random_range(0.0..360.0));
            let (a2, p2) = (rng.random_range(0.1..10.0), rng.random_range(0.0..360.0));
            let (r1, r2): (f64, f64) = (f64::to_radians(p1), f64::to_radians(p2));
            let re = a1 * r1.cos() - a2 * r2.cos();
            let im = a1 * r1.sin() - a2 * r2.sin();
            let exact = re.hypot(im);
            if exact < 1e-3 {
                continue;
            }
            let amp = sample_waveform_amplitude(&[ph(a1, p1), ph(a2, p2)], &[1.0, -1.0]);
            assert!((amp - exact).abs() / exact < 1e-6, "{amp} vs {exact}");
        }
    }
}
