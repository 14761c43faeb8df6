use std::path::{Path, PathBuf};

use gtl::cli::run;
use tempfile::TempDir;

fn gtl(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("gtl").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn file(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decide_flagship_writes_a_certified_witness() {
    let dir = TempDir::new().unwrap();
    let w = dir.path().join("w.json");
    let (code, out, _) = gtl(&["decide", "F (p -> X p)", "--witness", s(&w)]);
    assert_eq!((code, out.as_str()), (1, "FALSIFIABLE\n"));
    assert_eq!(gtl(&["certify", "--witness", s(&w)]).0, 0);
    assert_eq!(gtl(&["certify", "--witness", s(&w), "--formula", "F (p -> X p)"]).0, 0);
    let (code, out, _) = gtl(&["certify", "--witness", s(&w), "--formula", "G p"]);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn decide_exit_codes() {
    assert_eq!(gtl(&["decide", "(p -> q) | (q -> p)"]), (0, "VALID\n".into(), String::new()));
    let (code, _, err) = gtl(&["decide", "p & &"]);
    assert_eq!(code, 2);
    assert!(err.contains("syntax"), "{err}");
    assert_eq!(gtl(&["decide", "p", "--oracle"]).0, 1);
    assert_eq!(gtl(&["decide", "G p -> p", "--oracle"]).0, 0);
}

#[test]
fn decide_exhaustion_is_three() {
    let (code, out, _) = gtl(&["decide", "G (p -> X p) -> G p", "--max-states", "1"]);
    assert_eq!(code, 3, "{out}");
}

#[test]
fn decide_reads_at_files_and_prints_witness() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "f.gtl", "F (p -> X p)\n");
    let arg = format!("@{}", s(&f));
    let (code, out, _) = gtl(&["decide", &arg, "--falsify"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("FALSIFIABLE\n{"), "{out}");
    assert_eq!(gtl(&["decide", "@/no/such/file"]).0, 2);
}

#[test]
fn certify_reports_the_first_broken_clause() {
    let dir = TempDir::new().unwrap();
    let w = dir.path().join("w.json");
    gtl(&["decide", "F (p -> X p)", "--witness", s(&w)]);
    let mut j: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&w).unwrap()).unwrap();
    let fut = j["anchors"]["future"].as_u64().unwrap();
    j["anchors"]["future"] = (fut - 1).into();
    let bad = file(&dir, "bad.json", &j.to_string());
    let (code, out, _) = gtl(&["certify", "--witness", s(&bad)]);
    assert_eq!(code, 1);
    assert!(out.contains("clause (B)"), "{out}");
    let text = std::fs::read_to_string(&w).unwrap();
    let cut = file(&dir, "cut.json", &text[..text.len() / 2]);
    assert_eq!(gtl(&["certify", "--witness", s(&cut)]).0, 2);
}

#[test]
fn eval_real_and_bi() {
    let dir = TempDir::new().unwrap();
    let real = file(&dir, "r.json", r#"{"period": 1, "valuation": {"p": ["1/2"]}}"#);
    assert_eq!(gtl(&["eval", "--model", s(&real), "--formula", "~p"]), (0, "0\n".into(), String::new()));
    assert_eq!(gtl(&["eval", "--model", s(&real), "--formula", "p -> p"]).1, "1\n");
    assert_eq!(gtl(&["eval", "--model", s(&real), "--formula", "p & true"]).1, "1/2\n");
    let bi = file(&dir, "b.json", r#"{"worlds": 1, "period": 2, "membership": {"p": [[0, 0], [0, 1]]}}"#);
    assert_eq!(gtl(&["eval", "--model", s(&bi), "--formula", "G p -> p", "--at", "0", "--world", "0"]).1, "true\n");
    assert_eq!(gtl(&["eval", "--model", s(&bi), "--formula", "~G p"]).1, "false\n");
    let junk = file(&dir, "j.json", r#"{"period": 1}"#);
    assert_eq!(gtl(&["eval", "--model", s(&junk), "--formula", "p"]).0, 2);
    assert_eq!(gtl(&["eval", "--model", s(&real), "--formula", "p", "--world", "0"]).0, 2);
}

#[test]
fn translate_and_unicode() {
    let (code, out, _) = gtl(&["translate", "p & q"]);
    assert_eq!((code, out.as_str()), (0, "((p -> false) -> false) & ((q -> false) -> false)\n"));
    let (_, out, _) = gtl(&["--unicode", "translate", "p"]);
    assert!(!out.is_ascii(), "{out}");
    assert_eq!(gtl(&["translate", "p -< q"]).0, 2);
}

#[test]
fn check_proof_corpus() {
    for l in ["a", "b", "c", "d", "e", "f"] {
        let p = data(&format!("proofs/lemma_{l}.json"));
        assert_eq!(gtl(&["check-proof", &p]).0, 0, "lemma {l}");
        assert_eq!(gtl(&["check-proof", "--proof", &p]).0, 0, "lemma {l}");
    }
    let dir = TempDir::new().unwrap();
    let mut j: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(data("proofs/lemma_a.json")).unwrap()).unwrap();
    let steps = j["steps"].as_array_mut().unwrap();
    let last = steps.len() - 1;
    steps.swap(0, last);
    let bad = file(&dir, "bad.json", &j.to_string());
    assert_eq!(gtl(&["check-proof", s(&bad)]).0, 1);
    assert_eq!(gtl(&["check-proof", "/no/such/proof.json"]).0, 2);
}

#[test]
fn quotient_and_unwind() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("q.json");
    let (code, text, _) = gtl(&["quotient", &data("fig1_system.json"), "--out", s(&out)]);
    assert_eq!((code, text.as_str()), (0, "worlds=3 height=3\n"));
    assert_eq!(gtl(&["quotient", "--system", s(&out)]).1, "worlds=3 height=3\n");
    let (code, text, _) = gtl(&["unwind", "--system", s(&out), "--from", "q0", "--steps", "0"]);
    assert_eq!(code, 0);
    assert!(text.starts_with(r#"{"bounds":[-1,1],"paths":[["q0"]]}"#), "{text}");
    assert_eq!(gtl(&["unwind", "--system", s(&out), "--from", "zz"]).0, 2);
}

#[test]
fn json_mode_wraps_results() {
    let (code, out, _) = gtl(&["--json", "decide", "G p -> p"]);
    assert_eq!(code, 0);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["verdict"], "valid");
    assert_eq!(j["exit"], 0);
    let (code, out, _) = gtl(&["--json", "decide", "p &"]);
    assert_eq!(code, 2);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(j["error"].is_string());
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(gtl(&[]).0, 2);
    assert_eq!(gtl(&["frobnicate"]).0, 2);
    assert_eq!(gtl(&["decide"]).0, 2);
    let (code, out, _) = gtl(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("decide"));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    for f in ["F (p -> X p)", "G (p | q) -> F p", "H p -> p"] {
        let a = gtl(&["--json", "decide", f, "--jobs", "1"]);
        let b = gtl(&["--json", "decide", f, "--jobs", "3"]);
        assert_eq!(a, b, "{f}");
    }
    let (w1, w2) = (dir.path().join("1.json"), dir.path().join("2.json"));
    gtl(&["decide", "F (p -> X p)", "--witness", s(&w1)]);
    gtl(&["decide", "F (p -> X p)", "--witness", s(&w2)]);
    assert_eq!(std::fs::read(w1).unwrap(), std::fs::read(w2).unwrap());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_gtl");
    let st = std::process::Command::new(bin).args(["decide", "F (p -> X p)"]).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    assert_eq!(st.stdout, b"FALSIFIABLE\n");
    let st = std::process::Command::new(bin).args(["decide", "p & &"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
}
