use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jordanforge"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jordanforge-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str], files: &[&Path]) -> Output {
    let mut c = bin();
    c.args(args);
    for f in files {
        c.arg(f);
    }
    c.output().unwrap()
}

#[test]
fn jnf_then_verify() {
    let d = scratch("jnf");
    let a = write(&d, "a.json", r#"{"kind":"int_matrix","entries":[["0","2"],["1","0"]]}"#);
    let out = d.join("j.json");
    let st = bin().args(["jnf", "--check", "--input"]).arg(&a).arg("--output").arg(&out).status().unwrap();
    assert_eq!(st.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"kind\": \"jnf\"") && text.contains("\"diagnostics\""));
    let v = bin().args(["verify", "--input"]).arg(&a).arg("--result").arg(&out).output().unwrap();
    assert_eq!(v.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&v.stdout).contains("\"pass\": true"));
}

#[test]
fn tampered_result_fails_verification() {
    let d = scratch("tamper");
    let a = write(&d, "a.json", r#"{"kind":"int_matrix","entries":[["1","1"],["0","2"]]}"#);
    let out = d.join("j.json");
    assert_eq!(bin().args(["jnf", "--input"]).arg(&a).arg("--output").arg(&out).status().unwrap().code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let bad = write(&d, "bad.json", &text.replacen("\"re_num\": \"2\"", "\"re_num\": \"3\"", 1));
    assert_ne!(text, std::fs::read_to_string(&bad).unwrap());
    let v = bin().args(["verify", "--input"]).arg(&a).arg("--result").arg(&bad).output().unwrap();
    assert_eq!(v.status.code(), Some(1));
}

#[test]
fn specfact_exit_codes() {
    let d = scratch("specfact");
    let psd = write(&d, "psd.json", r#"{"kind":"matrix_poly","n":1,"degree":2,"coeffs":[[["1"]],[["0"]]]}"#);
    let o = run(&["specfact", "--input"], &[&psd]);
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8_lossy(&o.stdout);
    assert!(s.contains("\"im_num\": \"-1\""), "{s}");
    let not = write(&d, "not.json", r#"{"kind":"matrix_poly","n":1,"degree":2,"coeffs":[[["-1"]],[["0"]]]}"#);
    let o = run(&["specfact", "--input"], &[&not]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stdout).contains("\"kind\": \"not_psd\""));
    let odd = write(&d, "odd.json", r#"{"kind":"matrix_poly","n":1,"degree":1,"coeffs":[[["1"]]]}"#);
    assert_eq!(run(&["specfact", "--input"], &[&odd]).status.code(), Some(1));
}

#[test]
fn nonmonic_needs_v() {
    let d = scratch("nonmonic");
    // P = 4x² + 4 = Q*Q with Q = 2x − 2i and V = 2
    let p = write(
        &d,
        "p.json",
        r#"{"kind":"matrix_poly","n":1,"degree":2,"coeffs":[[["4"]],[["0"]]],"leading":[["4"]]}"#,
    );
    assert_eq!(run(&["specfact", "--input"], &[&p]).status.code(), Some(1));
    let v = write(&d, "v.json", r#"{"kind":"int_matrix","entries":[["2"]]}"#);
    let o = bin().args(["specfact", "--input"]).arg(&p).arg("--nonmonic-v").arg(&v).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("\"leading\""));
}

#[test]
fn errors_exit_one_with_message() {
    let d = scratch("errors");
    let bad = write(&d, "bad.json", r#"{"kind":"int_matrix","entries":[["1","x"]]}"#);
    let o = run(&["jnf", "--input"], &[&bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    let o = run(&["jnf", "--input", "/nonexistent/a.json"], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/a.json"));
    let a = write(&d, "a.json", r#"{"kind":"int_matrix","entries":[["1"]]}"#);
    assert_eq!(run(&["jnf", "--bprime-constant", "0", "--input"], &[&a]).status.code(), Some(1));
    assert_eq!(run(&["roots", "--input"], &[&a]).status.code(), Some(1));
}

#[test]
fn roots_and_frobenius() {
    let d = scratch("roots");
    let p = write(&d, "p.json", r#"{"kind":"int_polynomial","coeffs":["4","-4","1"]}"#);
    let o = run(&["roots", "--input"], &[&p]);
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8_lossy(&o.stdout);
    assert!(s.contains("\"multiplicity\": 2") && s.contains("\"exact\": true"), "{s}");
    let a = write(&d, "a.json", r#"{"kind":"int_matrix","entries":[["1","0"],["0","1"]]}"#);
    let o = run(&["frobenius", "--input"], &[&a]);
    assert_eq!(o.status.code(), Some(0));
    let out = d.join("f.json");
    std::fs::write(&out, &o.stdout).unwrap();
    let v = bin().args(["verify", "--input"]).arg(&a).arg("--result").arg(&out).output().unwrap();
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn selftest_is_reproducible() {
    let a = run(&["selftest", "--seed", "9"], &[]);
    let b = run(&["selftest", "--seed", "9", "--threads", "2"], &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains("instances passed"));
}
