use std::fmt;
use std::io::Write;

use super::{detect_format, map_records, open_input, BatchError, Field, Format, MeasurementRecord, Outcome};
use super::{RecordReader, RecordWriter};
use crate::circuit::{
    solve_general_star_with, solve_symmetric_star_with, verify_solution_with, LineVoltages, MeasurementError,
    PhaseToPhaseVoltages,
};
use crate::general::{validate_angles, PhaseAngles};
use crate::geometry::Angle;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Infeasible,
    Inconsistent,
    AngleGe120,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Infeasible => "infeasible",
            Status::Inconsistent => "inconsistent",
            Status::AngleGe120 => "angle_ge_120",
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        [Status::Ok, Status::Infeasible, Status::Inconsistent, Status::AngleGe120]
            .into_iter()
            .find(|st| st.as_str() == s)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of solving one measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionRecord {
    pub id: String,
    /// Line voltages; absent unless the record was solved.
    pub line_voltages: Option<[f64; 3]>,
    pub max_residual: Option<f64>,
    pub status: Status,
    pub diagnostics: Vec<String>,
}

impl SolutionRecord {
    fn failed(id: &str, status: Status, diagnostic: String) -> Self {
        SolutionRecord {
            id: id.to_owned(),
            line_voltages: None,
            max_residual: None,
            status,
            diagnostics: vec![diagnostic],
        }
    }
}

/// Angles of a record: 120 degrees each when no phase differences are given.
pub(crate) fn record_angles(rec: &MeasurementRecord) -> Result<PhaseAngles, MeasurementError> {
    match (rec.psi1, rec.psi2) {
        (Some(p1), Some(p2)) => Ok(validate_angles(Angle::from_degrees(p1), Angle::from_degrees(p2))?),
        _ => Ok(PhaseAngles::BALANCED),
    }
}

fn status_of(e: &MeasurementError) -> Status {
    match e {
        MeasurementError::InconsistentMeasurement { .. } => Status::Inconsistent,
        MeasurementError::PhaseDiagnostic { .. } => Status::AngleGe120,
        _ => Status::Infeasible,
    }
}

fn diagnostic_of(e: &MeasurementError) -> String {
    match e {
        MeasurementError::PhaseDiagnostic { clamped, .. } => {
            let [a, b, c] = clamped.map(super::format_number);
            format!("{e}; star point at the terminal gives ({a}, {b}, {c})")
        }
        _ => e.to_string(),
    }
}

fn solve_measurement(rec: &MeasurementRecord, tol: &Tolerances) -> Result<LineVoltages, MeasurementError> {
    let u = PhaseToPhaseVoltages::new(rec.u1, rec.u2, rec.u3)?;
    match (rec.psi1, rec.psi2) {
        (Some(p1), Some(p2)) => solve_general_star_with(&u, Angle::from_degrees(p1), Angle::from_degrees(p2), tol),
        _ => solve_symmetric_star_with(&u, tol),
    }
}

/// Solves one record. A record passes only if its closure residual is below
/// `closure`.
pub fn solve_record(rec: &MeasurementRecord, closure: f64) -> SolutionRecord {
    let tol = Tolerances::with_closure(closure);
    let lv = match solve_measurement(rec, &tol) {
        Ok(lv) => lv,
        Err(e) => return SolutionRecord::failed(&rec.id, status_of(&e), diagnostic_of(&e)),
    };
    let angles = record_angles(rec).expect("angles validated by the solver");
    let u = PhaseToPhaseVoltages {
        u1: rec.u1,
        u2: rec.u2,
        u3: rec.u3,
    };
    let report = verify_solution_with(&u, &lv, &angles, closure);
    let mut diagnostics = lv.diagnostics.clone();
    let status = if report.passed {
        Status::Ok
    } else {
        diagnostics.push(format!(
            "closure residual {} exceeds tolerance {}",
            super::format_number(report.max_residual),
            super::format_number(closure)
        ));
        Status::Infeasible
    };
    SolutionRecord {
        id: rec.id.clone(),
        line_voltages: Some(lv.as_array()),
        max_residual: Some(report.max_residual),
        status,
        diagnostics,
    }
}

pub(crate) fn solution_row(rec: &MeasurementRecord, sol: &SolutionRecord) -> Vec<(String, Field)> {
    let mut row = rec.fields();
    let lv = sol.line_voltages.map(|v| v.map(Field::Num));
    let [u1p, u2p, u3p] = lv.unwrap_or([Field::Empty, Field::Empty, Field::Empty]);
    row.extend([
        ("u1p".into(), u1p),
        ("u2p".into(), u2p),
        ("u3p".into(), u3p),
        ("max_residual".into(), sol.max_residual.map_or(Field::Empty, Field::Num)),
        ("status".into(), Field::Text(sol.status.to_string())),
        ("diagnostics".into(), Field::List(sol.diagnostics.clone())),
    ]);
    row.extend(rec.meta.iter().map(|(k, v)| (k.clone(), Field::Meta(v.clone()))));
    row
}

/// `star-solve solve`: one solution row per input record, in input order.
pub fn run_solve<W: Write>(
    path: &str,
    format: Option<Format>,
    parallel: bool,
    closure: f64,
    output: W,
) -> Result<Outcome, BatchError> {
    let (mut input, hint) = open_input(path)?;
    let in_format = detect_format(&mut input, hint)?;
    let reader = RecordReader::new(input, in_format)?;
    let mut writer = RecordWriter::new(output, format.unwrap_or(in_format));
    map_records(reader, &mut writer, parallel, |rec| {
        let sol = solve_record(&rec, closure);
        let ok = sol.status == Status::Ok;
        Ok((solution_row(&rec, &sol), ok))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(u: [f64; 3], psi: Option<(f64, f64)>) -> MeasurementRecord {
        MeasurementRecord {
            id: "r".into(),
            u1: u[0],
            u2: u[1],
            u3: u[2],
            psi1: psi.map(|p| p.0),
            psi2: psi.map(|p| p.1),
            meta: Vec::new(),
            line: 2,
        }
    }

    #[test]
    fn statuses() {
        let ok = solve_record(&rec([400.0, 400.0, 400.0], None), 1e-8);
        assert_eq!(ok.status, Status::Ok);
        let v = ok.line_voltages.unwrap();
        assert!((v[0] - 400.0 / 3f64.sqrt()).abs() < 1e-9);

        assert_eq!(solve_record(&rec([10.0, 1.0, 1.0], None), 1e-8).status, Status::Inconsistent);
        assert_eq!(solve_record(&rec([-1.0, 1.0, 1.0], None), 1e-8).status, Status::Inconsistent);

        let wide = (2.0 - 2.0 * 150f64.to_radians().cos()).sqrt();
        let s = solve_record(&rec([wide, 1.0, 1.0], None), 1e-8);
        assert_eq!(s.status, Status::AngleGe120);
        assert!(s.diagnostics[0].contains("(0, 1, 1)"));

        let s = solve_record(&rec([1.0, 1.0, 1.0], Some((170.0, 150.0))), 1e-8);
        assert_eq!(s.status, Status::Infeasible);
        let s = solve_record(&rec([1.0, 1.0, 1.0], Some((200.0, 100.0))), 1e-8);
        assert_eq!(s.status, Status::Infeasible);
    }

    #[test]
    fn status_names_round_trip() {
        for s in [Status::Ok, Status::Infeasible, Status::Inconsistent, Status::AngleGe120] {
            assert_eq!(Status::parse(s.as_str()), Some(s));
        }
        assert_eq!(Status::parse("fine"), None);
    }
}
