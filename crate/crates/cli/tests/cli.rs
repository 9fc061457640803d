//! End-to-end tests of the binary: output shapes, exit codes, witness
//! round-trips and byte-determinism.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_reispec"))
}

fn write_file(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn rnum_prints_total_and_summands() {
    let dir = TempDir::new().unwrap();
    let group = write_file(&dir, "g.txt", "ring = Z[1/3]\nn = 1\ntheta = -1\n");
    let auto = write_file(&dir, "a.txt", "N = 3\neps = -1\n");
    let out = bin().arg("rnum").arg(&group).arg(&auto).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "R = 6 (= 2 + 4)\n");

    let out = bin()
        .arg("rnum")
        .arg(&group)
        .arg(&auto)
        .args(["--format", "lines"])
        .output()
        .unwrap();
    assert_eq!(stdout_of(&out), "R 6\nSUMMAND 2\nSUMMAND 4\n");
}

#[test]
fn rnum_infinite_cases() {
    let dir = TempDir::new().unwrap();
    let group = write_file(&dir, "g.txt", "ring = Q\nn = 1\ntheta = 1\n");
    let plus = write_file(&dir, "plus.txt", "N = 5\neps = +1\n");
    let out = bin().arg("rnum").arg(&group).arg(&plus).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "R = inf\n");

    // N = 1 on theta = 1: both summands have zero determinant shift
    let ident = write_file(&dir, "ident.txt", "N = 1\neps = -1\n");
    let out = bin().arg("rnum").arg(&group).arg(&ident).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).starts_with("R = inf"));
}

#[test]
fn rnum_exit_codes() {
    let dir = TempDir::new().unwrap();
    let group = write_file(&dir, "g.txt", "ring = Q\nn = 2\ntheta = 2,0;0,3\n");
    let auto = write_file(&dir, "a.txt", "N = 1,0;0,1\neps = -1\n");
    let out = bin().arg("rnum").arg(&group).arg(&auto).output().unwrap();
    assert_eq!(out.status.code(), Some(3)); // incompatible (N, eps)

    let bad_group = write_file(&dir, "bad.txt", "ring = Z[1/2]\nn = 1\ntheta = 3\n");
    let out = bin().arg("rnum").arg(&bad_group).arg(&auto).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not invertible over Z[1/2]"), "{err}");

    let bad_prime = write_file(&dir, "badp.txt", "ring = Z[1/6]\nn = 1\ntheta = 2\n");
    let out = bin().arg("rnum").arg(&bad_prime).arg(&auto).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_rational_dichotomy() {
    let dir = TempDir::new().unwrap();
    // no eps = -1 automorphism at all
    let g1 = write_file(&dir, "g1.txt", "ring = Q\nn = 2\ntheta = 2,0;0,3\n");
    let out = bin().arg("spectrum").arg(&g1).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("SPEC inf"));
    assert!(!text.contains("SPEC 2"));

    let g2 = write_file(&dir, "g2.txt", "ring = Q\nn = 2\ntheta = 2,0;0,1/2\n");
    let out = bin().arg("spectrum").arg(&g2).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("SPEC 2 WITNESS"));
    assert!(text.contains("SPEC inf"));
}

#[test]
fn spectrum_discrepancy_exit_code() {
    let dir = TempDir::new().unwrap();
    let g = write_file(&dir, "g.txt", "ring = Z[1/2]\nn = 2\ntheta = 0,-1;1,0\n");
    let out = bin()
        .arg("spectrum")
        .arg(&g)
        .args(["--bound", "3", "--value-cap", "200"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));
    let text = stdout_of(&out);
    assert!(text.contains("CLOSED-FORM P3.6b stated DISCREPANCY"));
    assert!(text.contains("CLOSED-FORM P3.6b engine-derived MATCH"));
}

#[test]
fn spectrum_general_theta_needs_bound() {
    let dir = TempDir::new().unwrap();
    let g = write_file(&dir, "g.txt", "ring = Z[1/2]\nn = 2\ntheta = 1,1;0,1\n");
    let out = bin().arg("spectrum").arg(&g).output().unwrap();
    assert_eq!(out.status.code(), Some(4));

    let out = bin()
        .arg("spectrum")
        .arg(&g)
        .args(["--coeff-bound", "2", "--bound", "1", "--value-cap", "100"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("SPEC 6 WITNESS"));
}

#[test]
fn spectrum_values_match_known_set() {
    let dir = TempDir::new().unwrap();
    let g = write_file(&dir, "g.txt", "ring = Z[1/3]\nn = 1\ntheta = -1\n");
    let out = bin()
        .arg("spectrum")
        .arg(&g)
        .args(["--bound", "5", "--value-cap", "1000", "--format", "lines"])
        .output()
        .unwrap();
    let text = stdout_of(&out);
    let values: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("SPEC ") && !l.ends_with("inf"))
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(values, vec!["6", "18", "54", "162", "486"]);
}

#[test]
fn classify_examples() {
    let dir = TempDir::new().unwrap();
    let g = write_file(&dir, "g.txt", "ring = Q\nn = 1\ntheta = 1\n");
    let out = bin().arg("classify").arg(&g).output().unwrap();
    let text = stdout_of(&out);
    assert!(text.contains("case P3.1a, Spec = {2, inf}"), "{text}");

    let g = write_file(&dir, "g36c.txt", "ring = Z[1/2]\nn = 2\ntheta = 0,2;1,0\n");
    let out = bin().arg("classify").arg(&g).output().unwrap();
    let text = stdout_of(&out);
    assert!(text.contains("case P3.6c, Spec = {inf}"), "{text}");

    let g = write_file(
        &dir,
        "g235.txt",
        "ring = Q\nn = 3\ntheta = 2,0,0;0,3,0;0,0,5\n",
    );
    let out = bin().arg("classify").arg(&g).output().unwrap();
    let text = stdout_of(&out);
    assert!(
        text.contains("R-infinity: yes (centralizer space trivial)"),
        "{text}"
    );

    let g = write_file(&dir, "g35b.txt", "ring = Z[1/2]\nn = 2\ntheta = 1,0;0,-1\n");
    let out = bin()
        .arg("classify")
        .arg(&g)
        .args(["--format", "lines"])
        .output()
        .unwrap();
    let text = stdout_of(&out);
    assert!(text.contains("CASE DIAG r=1 s=-1"), "{text}");
    assert!(text.contains("CLAUSE P3.5b"), "{text}");
}

#[test]
fn oracle_agreement() {
    let out = bin()
        .args(["oracle", "1/2,0;0,3", "--p", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "det = 3/2\nformula = 3\noracle = 3\nAGREE\n"
    );

    let out = bin()
        .args(["oracle", "1,2;2,4", "--p", "3", "--format", "lines"])
        .output()
        .unwrap();
    assert_eq!(
        stdout_of(&out),
        "DET 0\nFORMULA inf\nORACLE inf\nAGREE\n"
    );

    let out = bin().args(["oracle", "1/3", "--p", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2)); // entry outside Z[1/2]
}

// Every printed witness re-parses, revalidates, and reproduces its value.
#[test]
fn witness_round_trip() {
    let dir = TempDir::new().unwrap();
    let group_text = "ring = Z[1/2]\nn = 2\ntheta = 1,0;0,-1\n";
    let g = write_file(&dir, "g.txt", group_text);
    let out = bin()
        .arg("spectrum")
        .arg(&g)
        .args(["--bound", "2", "--value-cap", "100", "--format", "lines"])
        .output()
        .unwrap();
    let text = stdout_of(&out);
    let mut seen = 0;
    for line in text.lines() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() == 4 && parts[0] == "SPEC" && parts[2] == "WITNESS" {
            let auto = write_file(
                &dir,
                "replay.txt",
                &format!("N = {}\neps = -1\n", parts[3]),
            );
            let replay = bin()
                .arg("rnum")
                .arg(&g)
                .arg(&auto)
                .args(["--format", "lines"])
                .output()
                .unwrap();
            assert_eq!(replay.status.code(), Some(0));
            let first = stdout_of(&replay);
            let value = first.lines().next().unwrap();
            assert_eq!(value, format!("R {}", parts[1]));
            seen += 1;
        }
    }
    assert!(seen >= 5, "expected several witnesses, saw {seen}");
}

#[test]
fn spectrum_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = write_file(&dir, "g.txt", "ring = Z[1/5]\nn = 2\ntheta = 0,1;1,0\n");
    let run = || {
        bin()
            .arg("spectrum")
            .arg(&g)
            .args(["--bound", "3", "--value-cap", "500"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn verify_small_bound_has_no_failures() {
    let out = bin()
        .args(["verify", "--bound", "1", "--value-cap", "120"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(!text.contains("FAIL"), "{text}");
    assert!(text.contains("P2.5a PASS"));
    assert!(text.contains("Franz-gcd PASS"));
    assert!(text.lines().any(|l| l.starts_with("P3.1b-p3-theta=1 DISCREPANCY")));
}
