use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{BatchError, Field, Format, Outcome, RecordWriter};
use crate::oracle::{synthesize_triangle, SynthesisSpec};

/// Names of the planted line-voltage columns.
pub const TRUTH_COLUMNS: [&str; 3] = ["u1p_true", "u2p_true", "u3p_true"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthOptions {
    pub count: usize,
    pub seed: u64,
    /// All phase differences at 120 degrees; the psi columns stay empty.
    pub balanced: bool,
    /// Multiplies every voltage.
    pub scale: f64,
}

/// Deterministic stream of measurement rows with planted line voltages.
pub fn synth_records(opts: SynthOptions) -> impl Iterator<Item = Vec<(String, Field)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    (0..opts.count).map(move |i| {
        let (edges, expected, spec) = loop {
            let spec = SynthesisSpec::draw(&mut rng, opts.seed, opts.balanced);
            if let Ok((edges, expected)) = synthesize_triangle(&spec) {
                break (edges, expected, spec);
            }
        };
        let [u1, u2, u3] = edges.as_array().map(|e| e * opts.scale);
        let (psi1, psi2) = if opts.balanced {
            (Field::Empty, Field::Empty)
        } else {
            let psi = spec.angles.as_array();
            (Field::Num(psi[0].degrees()), Field::Num(psi[1].degrees()))
        };
        let mut row = vec![
            ("id".to_owned(), Field::Text(format!("synth-{}-{:06}", opts.seed, i))),
            ("u1".to_owned(), Field::Num(u1)),
            ("u2".to_owned(), Field::Num(u2)),
            ("u3".to_owned(), Field::Num(u3)),
            ("psi1".to_owned(), psi1),
            ("psi2".to_owned(), psi2),
        ];
        for (name, d) in TRUTH_COLUMNS.iter().zip(expected.distances) {
            row.push(((*name).to_owned(), Field::Num(d * opts.scale)));
        }
        row
    })
}

/// `star-solve synth`.
pub fn run_synth<W: Write>(opts: SynthOptions, format: Format, output: W) -> Result<Outcome, BatchError> {
    if opts.count == 0 {
        return Err(BatchError::Usage("--count must be at least 1".into()));
    }
    if !(opts.scale > 0.0 && opts.scale.is_finite()) {
        return Err(BatchError::Usage(format!("--scale must be positive, got {}", opts.scale)));
    }
    let mut writer = RecordWriter::new(output, format);
    for row in synth_records(opts) {
        writer.write(&row)?;
    }
    writer.flush()?;
    Ok(Outcome::AllPassed)
}
