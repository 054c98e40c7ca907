use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn hqcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hqcm")).args(args).output().expect("binary runs")
}

fn circuit(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("circuits").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table1_matches_golden() {
    let out = hqcm(&["table1"]);
    assert!(out.status.success());
    let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/table1.txt")).unwrap();
    assert_eq!(stdout(&out), golden);
}

#[test]
fn grover_two_qubits_always_succeeds() {
    let out = hqcm(&["grover", "--n", "2", "--marked", "1", "--shots", "200", "--seed", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("iterations = 1"), "{text}");
    assert!(text.contains("success frequency: 1.000000"), "{text}");
}

#[test]
fn grover_three_qubits_reports_unitary_probability() {
    let out = hqcm(&["grover", "--n", "3", "--marked", "5", "--mode", "both", "--shots", "300"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("success probability (unitary): 0.945313"), "{text}");
}

#[test]
fn verify_bundled_circuits() {
    for name in ["three_control_z.hqc", "grover3.hqc", "controlled_phase.hqc"] {
        let out = hqcm(&["verify", &circuit(name), "--trials", "5"]);
        assert!(out.status.success(), "{name}");
        assert!(stdout(&out).contains("PASS"));
    }
}

#[test]
fn bad_input_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.hqc");
    std::fs::write(&bad, "qubits 2\nCZ 1 3\n").unwrap();
    let out = hqcm(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");

    assert_eq!(hqcm(&["run", "/nonexistent/file.hqc"]).status.code(), Some(1));
    assert_eq!(hqcm(&["run", &circuit("three_control_z.hqc"), "--shots", "many"]).status.code(), Some(1));
    assert_eq!(hqcm(&["run", &circuit("three_control_z.hqc"), "--shots", "3", "--symbolic"]).status.code(), Some(1));
}

fn run_to_file(dir: &Path, name: &str, seed: &str) -> (PathBuf, Vec<u8>) {
    let path = dir.join(name);
    let out = hqcm(&[
        "run",
        &circuit("controlled_phase.hqc"),
        "--shots",
        "64",
        "--seed",
        seed,
        "--mode",
        "both",
        "--trace",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let bytes = std::fs::read(&path).unwrap();
    (path, bytes)
}

#[test]
fn run_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (_, a) = run_to_file(dir.path(), "a.json", "11");
    let (_, b) = run_to_file(dir.path(), "b.json", "11");
    let (_, c) = run_to_file(dir.path(), "c.json", "12");
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn seed_from_environment() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_hqcm"))
            .args(["run", &circuit("three_control_z.hqc"), "--shots", "4"])
            .env("HQCM_SEED", seed)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("5"), run("5"));
    assert_ne!(run("5"), run("6"));
}

#[test]
fn symbolic_trace_in_json() {
    let out = hqcm(&["run", &circuit("three_control_z.hqc"), "--trace", "--symbolic"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.trim_start().starts_with('{'));
    assert!(text.contains("\"m31+m32+m71+m72\""));
}
