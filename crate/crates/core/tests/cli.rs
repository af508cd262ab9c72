use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_star-solve");

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}

fn scratch(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn run(args: &[&str], stdin: &[u8], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args)
        .env_remove("STAR_SOLVE_TOLERANCE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    let mut pipe = child.stdin.take().unwrap();
    let input = stdin.to_vec();
    let writer = std::thread::spawn(move || {
        let _ = pipe.write_all(&input);
    });
    let out = child.wait_with_output().unwrap();
    writer.join().unwrap();
    out
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

#[test]
fn mixed_batch_matches_golden_and_exits_2() {
    let out = run(&["solve", golden("mixed.csv").to_str().unwrap()], b"", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(text(&out.stdout), std::fs::read_to_string(golden("mixed.solved.csv")).unwrap());
}

#[test]
fn mixed_batch_in_json_lines() {
    let out = run(&["solve", golden("mixed.csv").to_str().unwrap(), "--format", "jsonl"], b"", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(text(&out.stdout), std::fs::read_to_string(golden("mixed.solved.jsonl")).unwrap());
}

#[test]
fn verify_report_matches_golden() {
    let out = run(&["verify", golden("mixed.solved.csv").to_str().unwrap()], b"", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text(&out.stdout), std::fs::read_to_string(golden("mixed.verified.csv")).unwrap());
    assert!(text(&out.stderr).contains("verified 7 records: 7 passed, 0 failed"));
}

#[test]
fn single_symmetric_record_from_stdin() {
    let out = run(&["solve", "-"], b"id,u1,u2,u3,psi1,psi2\nmains,400,400,400,,\n", &[]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = text(&out.stdout);
    let row = stdout.lines().nth(1).unwrap();
    assert!(row.starts_with("mains,400,400,400,,,230.940107676,230.940107676,230.940107676,"));
    assert!(row.contains(",ok,"));
}

#[test]
fn json_lines_are_detected_and_mirrored() {
    let input = b"{\"id\":\"e\",\"u1\":400,\"u2\":400,\"u3\":400}\n";
    let out = run(&["solve", "-"], input, &[]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = text(&out.stdout);
    assert!(stdout.starts_with("{\"id\":\"e\",\"u1\":400"));
    assert!(stdout.contains("\"status\":\"ok\""));
}

#[test]
fn parse_errors_name_the_line_and_exit_1() {
    let input = b"id,u1,u2,u3,psi1,psi2\nok,400,400,400,,\nbad,400,abc,400,,\n";
    let out = run(&["solve", "-"], input, &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("line 3"), "{}", text(&out.stderr));

    let input = b"id,u1,u2,u3,psi1,psi2\nhalf,400,400,400,120,\n";
    let out = run(&["solve", "-"], input, &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("line 2"));

    let out = run(&["solve", "/nonexistent/input.csv"], b"", &[]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["frobnicate"], b"", &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_rejects_an_edited_solution() {
    let solved = run(&["solve", "-"], b"id,u1,u2,u3,psi1,psi2\nm,400,400,400,,\n", &[]);
    let edited = text(&solved.stdout).replacen("230.940107676", "242.48711306", 1);
    let out = run(&["verify", "-"], edited.as_bytes(), &[]);
    assert_eq!(out.status.code(), Some(2));
    let report = text(&out.stdout);
    assert!(report.contains(",fail,"));
    assert!(report.contains("closure residual"));
}

#[test]
fn verify_of_an_empty_file_passes() {
    let path = scratch("empty.csv");
    std::fs::write(&path, "").unwrap();
    let out = run(&["verify", path.to_str().unwrap()], b"", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(text(&out.stderr).contains("verified 0 records"));
}

#[test]
fn verify_requires_solver_output() {
    let out = run(&["verify", "-"], b"id,u1,u2,u3,psi1,psi2\nm,400,400,400,,\n", &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("status"));
}

#[test]
fn synth_is_deterministic() {
    let a = run(&["synth", "--count", "50", "--seed", "9"], b"", &[]);
    let b = run(&["synth", "--count", "50", "--seed", "9"], b"", &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["synth", "--count", "50", "--seed", "10"], b"", &[]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn symmetric_synth_leaves_psi_empty() {
    let out = run(&["synth", "--count", "1", "--seed", "42", "--symmetric"], b"", &[]);
    let stdout = text(&out.stdout);
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("id,u1,u2,u3,psi1,psi2,u1p_true,u2p_true,u3p_true"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "synth-42-000000");
    assert_eq!((row[4], row[5]), ("", ""));
    assert!(row[6..].iter().all(|v| v.parse::<f64>().unwrap() > 0.0));
}

#[test]
fn synth_rejects_zero_count() {
    let out = run(&["synth", "--count", "0", "--seed", "1"], b"", &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn thousand_synthetic_records_all_solve() {
    let synth = run(&["synth", "--count", "1000", "--seed", "7"], b"", &[]);
    let solved = run(&["solve", "-"], &synth.stdout, &[]);
    assert_eq!(solved.status.code(), Some(0));
    let stdout = text(&solved.stdout);
    assert_eq!(stdout.lines().count(), 1001);
    assert!(stdout.lines().skip(1).all(|l| l.contains(",ok,")));
}

#[test]
fn pipeline_passes_for_several_seeds() {
    for seed in ["1", "2", "3"] {
        for extra in [&[][..], &["--symmetric"][..]] {
            let mut args = vec!["synth", "--count", "40", "--seed", seed, "--format", "jsonl"];
            args.extend_from_slice(extra);
            let synth = run(&args, b"", &[]);
            let solved = run(&["solve", "-"], &synth.stdout, &[]);
            assert_eq!(solved.status.code(), Some(0));
            let verified = run(&["verify", "-"], &solved.stdout, &[]);
            assert_eq!(verified.status.code(), Some(0), "seed {seed} {extra:?}");
        }
    }
}

#[test]
fn parallel_output_preserves_order() {
    let synth = run(&["synth", "--count", "2500", "--seed", "11"], b"", &[]);
    let sequential = run(&["solve", "-"], &synth.stdout, &[]);
    let parallel = run(&["solve", "-", "--parallel"], &synth.stdout, &[]);
    assert_eq!(parallel.status.code(), Some(0));
    assert_eq!(sequential.stdout, parallel.stdout);
    let ids: Vec<String> = text(&parallel.stdout)
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().to_owned())
        .collect();
    let expected: Vec<String> = (0..2500).map(|i| format!("synth-11-{i:06}")).collect();
    assert_eq!(ids, expected);
}

#[test]
fn tolerance_flag_overrides_environment() {
    let input = std::fs::read(golden("mixed.csv")).unwrap();
    let status_of = |out: &Output, id: &str| {
        let stdout = text(&out.stdout);
        let row = stdout.lines().find(|l| l.starts_with(&format!("{id},"))).unwrap().to_owned();
        row.split(',').nth(10).unwrap().to_owned()
    };
    // The planted record closes to about 2e-16, short of an absurd 1e-30.
    let strict = run(&["solve", "-"], &input, &[("STAR_SOLVE_TOLERANCE", "1e-30")]);
    assert_eq!(strict.status.code(), Some(2));
    assert_eq!(status_of(&strict, "planted"), "infeasible");
    let flagged = run(&["solve", "-", "--tolerance", "1e-8"], &input, &[("STAR_SOLVE_TOLERANCE", "1e-30")]);
    assert_eq!(status_of(&flagged, "planted"), "ok");
    let garbage = run(&["solve", "-"], &input, &[("STAR_SOLVE_TOLERANCE", "tight")]);
    assert_eq!(garbage.status.code(), Some(1));
}
