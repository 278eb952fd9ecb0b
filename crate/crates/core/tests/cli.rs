use std::process::Command;

use fusionkit::report::parse_machine;

fn fusionkit(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_fusionkit")).args(args).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn machine(args: &[&str]) -> Vec<(String, String)> {
    let mut all = vec!["--format", "machine"];
    all.extend_from_slice(args);
    let (out, err, code) = fusionkit(&all);
    assert_eq!(code, 0, "{err}");
    parse_machine(&out).unwrap()
}

fn get<'a>(m: &'a [(String, String)], key: &str) -> &'a str {
    m.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str()).unwrap_or_else(|| panic!("no key {key}"))
}

#[test]
fn analyze_ising() {
    let m = machine(&["analyze", "ising.fr"]);
    assert_eq!(get(&m, "total_exact"), "4");
    assert_eq!(get(&m, "grading.group"), "Z_2");
    assert_eq!(get(&m, "verdict"), "SolvableSinglePrime");
    assert_eq!(get(&m, "verdict.prime"), "2");
    assert_eq!(get(&m, "simple.2.fpdim").parse::<f64>().unwrap(), 2f64.sqrt());
}

#[test]
fn scan_flags_divergence() {
    let m = machine(&["scan", "1800"]);
    assert_eq!(get(&m, "exceptions"), "900,1764");
    assert_eq!(get(&m, "claimed"), "900");
    assert_eq!(get(&m, "divergence"), "1764");
    let (text, _, _) = fusionkit(&["scan", "33075", "--odd"]);
    assert!(text.contains("DIVERGENCE: found but not claimed {27225}"));
}

#[test]
fn classify_11025() {
    let (text, _, code) = fusionkit(&["classify", "11025"]);
    assert_eq!(code, 0);
    assert!(text.contains("SolvableOddBelow33075"));
    assert!(text.contains("11025 = 3^2 5^2 7^2"));
}

#[test]
fn witt_verbs() {
    assert_eq!(get(&machine(&["witt-order", "z3_1"]), "class_order"), "4");
    assert_eq!(get(&machine(&["witt-class", "hyperbolic3"]), "class.identity"), "true");
    let m = machine(&["witt-subgroup", "z5_1", "z5_2"]);
    assert_eq!(get(&m, "subgroup.invariant_factors"), "2,2");
    let (_, err, code) = fusionkit(&["witt-order", "semion", "--order-cap", "4"]);
    assert_eq!(code, 1);
    assert!(err.contains("exceeds cap 4"));
}

#[test]
fn element_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fusionkit"))
        .args(["witt-class", "hyperbolic3"])
        .env("FUSIONKIT_ELEMENT_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the element cap 4"));
}

#[test]
fn bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let (_, err, code) = fusionkit(&["validate", &write("zero.fr", "rank 0\n")]);
    assert_eq!(code, 1);
    assert!(err.contains("line 1"));
    let (_, err, code) = fusionkit(&["validate", &write("nodual.fr", "rank 1\nlabels 1\nN 0 0 0 1\n")]);
    assert_eq!(code, 1);
    assert!(err.contains("missing dual"));
    let (out, _, code) = fusionkit(&["validate", &write("third.mg", "orders 2\nq 1/3\n")]);
    assert_eq!(code, 1);
    assert!(out.contains("violations"));
    let (_, err, code) = fusionkit(&["validate", &write("noq.mg", "orders 2\n")]);
    assert_eq!(code, 1);
    assert!(err.contains("missing q"));
    // a rigidity failure: s ⊗ s lacks the unit
    let broken = "rank 2\nlabels 1 s\ndual 0 1\nN 0 0 0 1\nN 0 1 1 1\nN 1 0 1 1\nN 1 1 1 1\n";
    let path = write("broken.fr", broken);
    let (out, _, code) = fusionkit(&["analyze", &path]);
    assert_eq!(code, 1);
    assert!(out.contains("rigidity"));
    assert_eq!(fusionkit(&["analyze", &path, "--force"]).2, 0);
}

#[test]
fn reports_are_deterministic() {
    for args in [&["analyze", "rep_s3"][..], &["witt-subgroup", "semion", "z4_1", "three_fermion"], &["scan", "5000"]] {
        assert_eq!(fusionkit(args), fusionkit(args));
    }
}

#[test]
fn every_corpus_file_validates() {
    for (name, _) in fusionkit::corpus::RINGS.iter().chain(fusionkit::corpus::METRIC_GROUPS) {
        assert_eq!(fusionkit(&["validate", name]).2, 0, "{name}");
    }
}
