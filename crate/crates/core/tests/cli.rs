use bandzeta::cli::run;
use bandzeta::report::AnalyticsReport;

fn bandzeta(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("bandzeta").chain(args.iter().copied()), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn classify_gp23() {
    let (code, out, _) = bandzeta(&["classify", "gp23"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: NonDomestic"));
    assert!(out.contains("spectral radius R = 1.3247"));
    assert!(out.contains("μ-series rational: no"));
}

#[test]
fn zeta_gp23() {
    let (code, out, _) = bandzeta(&["zeta", "gp23", "--terms", "6"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("det(I − tA) = 1 − 2t² − 2t³ + t⁴ + 2t⁵ + t⁶\n"));
}

#[test]
fn domestic_closed_form() {
    for name in ["kronecker2", "sb1"] {
        let (code, out, _) = bandzeta(&["classify", name]);
        assert_eq!(code, 0);
        assert!(out.contains("verdict: Domestic"));
        assert!(out.contains("μ-series: t²/(1 − t²)"));
    }
}

#[test]
fn unknown_arrow_is_a_parse_failure() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(
        &dir,
        "broken.json",
        r#"{"vertices":["v"],"arrows":[{"name":"a","source":"v","target":"v"}],"relations":[["a","c"]]}"#,
    );
    let (code, _, err) = bandzeta(&["validate", &broken]);
    assert_eq!(code, 3);
    assert!(err.contains("unknown arrow `c`"), "{err}");
    let (code, _, _) = bandzeta(&["validate", "no-such-presentation"]);
    assert_eq!(code, 3);
}

#[test]
fn inadmissible_and_non_string_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let free = write(
        &dir,
        "free.json",
        r#"{"vertices":["v"],"arrows":[{"name":"a","source":"v","target":"v"}]}"#,
    );
    let (code, out, _) = bandzeta(&["validate", &free]);
    assert_eq!(code, 2);
    assert!(out.contains("admissible: no"));
    assert_eq!(bandzeta(&["zeta", &free]).0, 2);

    // three loops: admissible, but too many arrows leave the vertex
    let three = write(
        &dir,
        "three.json",
        r#"{"vertices":["v"],
            "arrows":[{"name":"a","source":"v","target":"v"},
                      {"name":"b","source":"v","target":"v"},
                      {"name":"c","source":"v","target":"v"}],
            "relations":[["a","a"],["b","b"],["c","c"],["a","b"],["b","a"],["a","c"],["c","a"],["b","c"],["c","b"]]}"#,
    );
    let (code, out, _) = bandzeta(&["validate", &three]);
    assert_eq!(code, 0);
    assert!(out.contains("string algebra: no"));
    let (code, _, err) = bandzeta(&["classify", &three]);
    assert_eq!(code, 2);
    assert!(err.contains("not a string algebra"));
}

#[test]
fn pnt_needs_growth() {
    let (code, _, err) = bandzeta(&["pnt", "kronecker2", "--from", "1", "--to", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("not above 1"));
    let (code, out, _) = bandzeta(&["pnt", "gp23", "--from", "2", "--to", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("1.139"), "{out}");
}

#[test]
fn resource_limit_exit_code() {
    let (code, _, err) = bandzeta(&["strings", "gp23", "--length", "30", "--max-strings", "500"]);
    assert_eq!(code, 4);
    assert!(err.contains("resource limit"));
}

#[test]
fn report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["gp23", "kronecker2", "sb1"] {
        let path = dir.path().join(format!("{name}.json"));
        let (code, _, _) = bandzeta(&["report", name, "--json", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        let text = std::fs::read_to_string(&path).unwrap();
        let report = AnalyticsReport::from_json(&text).unwrap();
        assert_eq!(report.to_json(), text);
    }
    let text = std::fs::read_to_string(dir.path().join("gp23.json")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["counts"]["n"][1], "4");
    assert_eq!(value["reciprocal_char_poly"]["coefficients"][2], "-2");
    assert_eq!(value["pnt"]["constants"]["c"], 2);
    assert_eq!(value["zeta"]["series"][4], "3");
    let kr: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("kronecker2.json")).unwrap()).unwrap();
    assert_eq!(kr["classification"]["mu_closed_form"], "t²/(1 − t²)");
    assert!(kr["pnt"]["rows"].as_array().unwrap().is_empty());
}

#[test]
fn help_and_usage() {
    let (code, out, _) = bandzeta(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("classify"));
    let (code, _, err) = bandzeta(&["strings", "gp23"]);
    assert_eq!(code, 2);
    assert!(err.contains("--length"));
}

#[test]
fn uppercase_flag() {
    let (_, plain, _) = bandzeta(&["strings", "gp23", "--length", "2"]);
    let (_, upper, _) = bandzeta(&["strings", "gp23", "--length", "2", "--uppercase"]);
    assert!(plain.contains("ab⁻¹"));
    assert!(upper.contains("aB"));
}
