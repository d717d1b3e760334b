//! End-to-end tests for the `ntriv` binary: exit codes, report rendering,
//! and the documented behavior on the bundled instance files.

use std::path::{Path, PathBuf};
use std::process::Command;

fn instance(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../instances")
        .join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ntriv"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn arg(path: &Path) -> String {
    path.to_str().expect("utf-8 path").to_string()
}

#[test]
fn suite_passes_on_the_z4_chain() {
    let (code, stdout, _) = run(&["suite", &arg(&instance("z4_chain2.ntriv"))]);
    assert_eq!(code, 0, "suite output:\n{stdout}");
    assert!(stdout.contains("# suite — Z4⋉Z4⋉Z4"));
    assert!(stdout.contains("[HOLDS] presimplifiable-transfer"));
    assert!(stdout.contains("[HOLDS] poly-iso"));
    assert!(!stdout.contains("[FAILS]"));
}

#[test]
fn validate_flags_the_asymmetric_constants() {
    let (code, stdout, _) = run(&["validate", &arg(&instance("nonassoc_z5.ntriv"))]);
    assert_eq!(code, 1);
    assert!(stdout.contains("[HOLDS] map-bilinearity"));
    assert!(stdout.contains("[FAILS] map-symmetry"));
    assert!(stdout.contains("[FAILS] map-associativity"));
}

#[test]
fn symmetric_constants_fail_only_associativity() {
    let (code, stdout, _) = run(&["validate", &arg(&instance("sym_nonassoc_z11.ntriv"))]);
    assert_eq!(code, 1);
    assert!(stdout.contains("[HOLDS] map-symmetry"));
    assert!(stdout.contains("[FAILS] map-associativity"));
}

#[test]
fn classify_refuses_exploratory_instances() {
    let (code, stdout, _) = run(&["classify", &arg(&instance("nonassoc_z5.ntriv"))]);
    assert_eq!(code, 1);
    assert!(stdout.contains("classify-refused"));
    assert!(
        stdout.contains("associativity fails"),
        "refusal must carry the nonassociativity witness:\n{stdout}"
    );
}

#[test]
fn factor_reports_the_degree_shift_square() {
    let (code, stdout, _) = run(&[
        "factor",
        &arg(&instance("f2_chain2.ntriv")),
        "--element",
        "0,1,0",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("(0,1,0)² = (0,0,1)"), "output:\n{stdout}");
    assert!(stdout.contains("irreducible: true"));
}

#[test]
fn json_reports_are_deterministic_and_structured() {
    let args = [
        "classify",
        &arg(&instance("f2_tower.ntriv")),
        "--format",
        "json",
    ];
    let (code, first, _) = run(&args);
    let (_, second, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(first, second, "reruns must be byte-identical");
    let v: serde_json::Value = serde_json::from_str(&first).expect("valid json");
    assert_eq!(v["title"], "classify");
    let records = v["records"].as_array().expect("records array");
    assert_eq!(records.len(), 5);
    for r in records {
        assert_eq!(r["verdict"], "Holds");
        assert_eq!(r["runtime_ms"], 0);
    }
}

#[test]
fn exit_codes_separate_usage_from_check_failures() {
    let (code, _, stderr) = run(&["validate", "/nonexistent/path.ntriv"]);
    assert_eq!(code, 2, "{stderr}");

    let (code, _, stderr) = run(&["factor", &arg(&instance("f2_chain2.ntriv"))]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--element"));

    let (code, _, stderr) = run(&[
        "validate",
        &arg(&instance("z4_chain2.ntriv")),
        "--checks",
        "no-such-check",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown check name"));

    let (code, _, stderr) = run(&[
        "localize",
        &arg(&instance("z12_chain2.ntriv")),
        "--mult-set",
        "no-such-set",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("no multiplicative set"));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("broken.ntriv");
    std::fs::write(&path, "[ring]\nkind = zm\nm = four\n").expect("write");
    let (code, _, stderr) = run(&["validate", &arg(&path)]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 3"), "stderr: {stderr}");
}

#[test]
fn out_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("report.txt");
    let (code, stdout, _) = run(&[
        "classify",
        &arg(&instance("z6_classical.ntriv")),
        "--out",
        &arg(&path),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty(), "with --out nothing goes to stdout");
    let text = std::fs::read_to_string(&path).expect("report written");
    assert!(text.starts_with("# classify — Z6⋉Z6"));
}

#[test]
fn checks_filter_limits_the_report() {
    let (code, stdout, _) = run(&[
        "validate",
        &arg(&instance("z4_chain2.ntriv")),
        "--checks",
        "map-symmetry",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 2, "header plus exactly one record:\n{stdout}");
    assert!(lines[1].starts_with("[HOLDS] map-symmetry"));
}

#[test]
fn localize_uses_named_sets_from_the_file() {
    let (code, stdout, _) = run(&["localize", &arg(&instance("z12_chain2.ntriv"))]);
    assert_eq!(code, 0);
    assert!(stdout.contains("[HOLDS] localization-S"));
    assert!(stdout.contains("localized order 27"), "output:\n{stdout}");
    assert!(stdout.contains("R_S order: 3"));
}

#[test]
fn product_instances_decompose() {
    let (code, stdout, _) = run(&["suite", &arg(&instance("z2z3_product.ntriv"))]);
    assert_eq!(code, 0);
    assert!(stdout.contains("[HOLDS] product-iso"));
    assert!(
        stdout.contains("components: Z2⋉") && stdout.contains("× Z3⋉"),
        "output:\n{stdout}"
    );
}
