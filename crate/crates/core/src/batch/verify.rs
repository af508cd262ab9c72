use std::io::Write;

use super::solve::{record_angles, solve_record, Status};
use super::synth::TRUTH_COLUMNS;
use super::{
    detect_format, format_number, map_records, open_input, parse_number, BatchError, Field, MeasurementRecord,
    Outcome, RecordReader, RecordWriter,
};
use crate::circuit::{verify_solution_with, LineVoltages, PhaseToPhaseVoltages};
use crate::general::general_solve_by_circles;
use crate::oracle::minimize_distance_sum;
use crate::solution::relative_difference;

/// Agreement required between claimed line voltages and the oracles
/// (simplex minimization, circle intersection, planted values).
pub const ORACLE_TOLERANCE: f64 = 1e-6;

/// Verdict on one measurement/solution pair.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOutcome {
    pub id: String,
    pub claimed: Status,
    pub closure_residual: Option<f64>,
    pub oracle_difference: Option<f64>,
    pub truth_difference: Option<f64>,
    pub passed: bool,
    pub details: Vec<String>,
}

/// Checks a solved record.
///
/// A record claimed `ok` must satisfy the closure relations within `closure`,
/// agree with an independent oracle within [`ORACLE_TOLERANCE`] and, when
/// planted values are present, match them within the same bound. A record
/// claiming any other status passes when solving it again yields that status.
pub fn verify_record(rec: &MeasurementRecord, closure: f64) -> Result<VerifyOutcome, BatchError> {
    let status_text = rec
        .meta_value("status")
        .ok_or_else(|| BatchError::parse(rec.line, "missing field 'status' (verify expects solver output)"))?;
    let claimed = Status::parse(status_text)
        .ok_or_else(|| BatchError::parse(rec.line, format!("unknown status '{status_text}'")))?;
    let mut out = VerifyOutcome {
        id: rec.id.clone(),
        claimed,
        closure_residual: None,
        oracle_difference: None,
        truth_difference: None,
        passed: false,
        details: Vec::new(),
    };

    if claimed != Status::Ok {
        let again = solve_record(rec, closure).status;
        out.passed = again == claimed;
        if !out.passed {
            out.details.push(format!("re-solving gives status {again}"));
        }
        return Ok(out);
    }

    let number = |name: &str| -> Result<f64, BatchError> {
        let v = rec
            .meta_value(name)
            .filter(|s| !s.is_empty())
            .ok_or_else(|| BatchError::parse(rec.line, format!("missing field '{name}'")))?;
        parse_number(rec.line, name, v)
    };
    let claimed_lv = [number("u1p")?, number("u2p")?, number("u3p")?];

    let u = match PhaseToPhaseVoltages::new(rec.u1, rec.u2, rec.u3) {
        Ok(u) => u,
        Err(e) => {
            out.details.push(e.to_string());
            return Ok(out);
        }
    };
    let angles = match record_angles(rec) {
        Ok(a) => a,
        Err(e) => {
            out.details.push(e.to_string());
            return Ok(out);
        }
    };
    let lv = LineVoltages {
        u1p: claimed_lv[0],
        u2p: claimed_lv[1],
        u3p: claimed_lv[2],
        phases: None,
        diagnostics: Vec::new(),
    };
    let report = verify_solution_with(&u, &lv, &angles, closure);
    out.closure_residual = Some(report.max_residual);
    let mut passed = report.passed;
    if !report.passed {
        out.details.push(format!(
            "closure residual {} exceeds {}",
            format_number(report.max_residual),
            format_number(closure)
        ));
    }

    let edges = u.edges().expect("validated above");
    let oracle = if angles.is_balanced() {
        minimize_distance_sum(&edges).map(|m| {
            let sum: f64 = claimed_lv.iter().sum();
            (m.value - sum).abs() / m.value.max(sum)
        })
    } else {
        general_solve_by_circles(&edges, &angles).map(|s| relative_difference(s.distances, claimed_lv))
    };
    match oracle {
        Ok(d) => {
            out.oracle_difference = Some(d);
            if !(d <= ORACLE_TOLERANCE) {
                passed = false;
                out.details.push(format!("oracle differs by {}", format_number(d)));
            }
        }
        Err(e) => {
            passed = false;
            out.details.push(format!("oracle failed: {e}"));
        }
    }

    if TRUTH_COLUMNS.iter().any(|c| rec.meta_value(c).is_some_and(|v| !v.is_empty())) {
        let truth = [
            number(TRUTH_COLUMNS[0])?,
            number(TRUTH_COLUMNS[1])?,
            number(TRUTH_COLUMNS[2])?,
        ];
        let d = relative_difference(truth, claimed_lv);
        out.truth_difference = Some(d);
        if !(d <= ORACLE_TOLERANCE) {
            passed = false;
            out.details.push(format!("planted values differ by {}", format_number(d)));
        }
    }
    out.passed = passed;
    Ok(out)
}

fn outcome_row(o: &VerifyOutcome) -> Vec<(String, Field)> {
    let num = |v: Option<f64>| v.map_or(Field::Empty, Field::Num);
    vec![
        ("id".into(), Field::Text(o.id.clone())),
        ("status".into(), Field::Text(o.claimed.to_string())),
        ("closure_residual".into(), num(o.closure_residual)),
        ("oracle_difference".into(), num(o.oracle_difference)),
        ("truth_difference".into(), num(o.truth_difference)),
        ("result".into(), Field::Text(if o.passed { "pass" } else { "fail" }.into())),
        ("details".into(), Field::List(o.details.clone())),
    ]
}

/// `star-solve verify`: one report row per record; returns the counts of
/// records checked and failed alongside the outcome.
pub fn run_verify<W: Write>(path: &str, closure: f64, output: W) -> Result<(Outcome, usize, usize), BatchError> {
    use std::sync::atomic::{AtomicUsize, Ordering};

    let (mut input, hint) = open_input(path)?;
    let format = detect_format(&mut input, hint)?;
    let reader = RecordReader::new(input, format)?;
    let mut writer = RecordWriter::new(output, format);
    let (total, failed) = (AtomicUsize::new(0), AtomicUsize::new(0));
    let outcome = map_records(reader, &mut writer, false, |rec| {
        let o = verify_record(&rec, closure)?;
        total.fetch_add(1, Ordering::Relaxed);
        if !o.passed {
            failed.fetch_add(1, Ordering::Relaxed);
        }
        Ok((outcome_row(&o), o.passed))
    })?;
    Ok((outcome, total.into_inner(), failed.into_inner()))
}
