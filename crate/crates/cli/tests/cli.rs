use std::process::Command;

use congruence_lab::{consolidate, run, EXIT_CONSTRUCTION, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

fn lab(args: &[&str]) -> congruence_lab::Output {
    run(std::iter::once("congruence-lab").chain(args.iter().copied()))
}

#[test]
fn schubert_expression() {
    let out = lab(&["schubert", "s(1,0)^6 @ n=4"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "5 s(3,3)\nintersection number: 5\n");

    let out = lab(&["schubert", "--json", "s(1)*s(2,1) @ n=4"]);
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["expansion"], "s(3,1) + s(2,2)");
}

#[test]
fn schubert_errors_are_usage_errors() {
    for bad in ["s(1,0)^6 n=4", "s(4,0) @ n=4", "s(1,"] {
        let out = lab(&["schubert", bad]);
        assert_eq!(out.code, EXIT_USAGE, "{bad}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn classify_text_and_json() {
    let out = lab(&["classify"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("   5   6   3   8  19   0"));
    assert!(out.stdout.contains("m=7:"));

    let out = lab(&["classify", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["rows"][3]["row"]["pi"], 3);
}

#[test]
fn invariant_formulas() {
    let cases: [(&[&str], &str); 9] = [
        (&["invariants", "au", "10", "6", "0"], "40\n"),
        (&["invariants", "3ple", "5", "1", "5", "1", "n=5"], "1\n"),
        (&["invariants", "3ple", "4", "0", "9", "1", "n=5"], "1\n"),
        (&["invariants", "genus", "3", "8"], "10\n"),
        (&["invariants", "bounds", "4", "1"], "(3,9)\n"),
        (&["invariants", "decompose", "5"], "5x mu=3\n"),
        (&["invariants", "residual", "4", "0", "9", "1"], "residual 0, delta 0\n"),
        (
            &["invariants", "residual", "4", "0", "0", "0"],
            "residual 6, delta -3\n",
        ),
        (
            &["invariants", "residual", "6", "3", "-1", "1"],
            "residual 0, delta 0\n",
        ),
    ];
    for (args, want) in cases {
        let out = lab(args);
        assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
        assert_eq!(out.stdout, want, "{args:?}");
    }
}

#[test]
fn invariant_errors() {
    assert_eq!(lab(&["invariants", "nope", "1"]).code, EXIT_USAGE);
    assert_eq!(lab(&["invariants", "au", "10", "6"]).code, EXIT_USAGE);
    assert_eq!(lab(&["invariants", "gate", "5"]).code, EXIT_USAGE);
    assert_eq!(lab(&["invariants", "cayley", "-1", "4"]).code, EXIT_USAGE);
}

#[test]
fn invariants_json_flag_after_arguments() {
    let out = lab(&["invariants", "decompose", "19", "--json"]);
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["value"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors() {
    assert_eq!(lab(&[]).code, EXIT_USAGE);
    assert_eq!(lab(&["verify", "klein"]).code, EXIT_USAGE);
    assert_eq!(lab(&["verify", "bordiga", "--q", "100"]).code, EXIT_USAGE);
    assert_eq!(lab(&["verify", "bordiga", "--trials", "0"]).code, EXIT_USAGE);
    assert_eq!(lab(&["--help"]).code, EXIT_OK);
}

#[test]
fn tiny_field_reports_construction_failure() {
    let out = lab(&["verify", "scroll14", "--q", "5", "--trials", "2"]);
    assert_eq!(out.code, EXIT_CONSTRUCTION);
    assert!(out.stderr.contains("construction failed"));
}

#[test]
fn verify_writes_report_and_report_consolidates() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("bordiga.json");
    let b = dir.path().join("degenerate.json");
    let out = lab(&["verify", "bordiga", "--trials", "4", "--out", a.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("mode 1 (expected 1)"));
    let out = lab(&[
        "verify",
        "veronese-degenerate",
        "--trials",
        "4",
        "--json",
        "--out",
        b.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, std::fs::read_to_string(&b).unwrap());
    assert!(!out.stdout.contains("wall_time_ms"));

    let out = lab(&["report", "--json", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["agreement"], true);
    assert_eq!(v["entries"].as_array().unwrap().len(), 2);
}

#[test]
fn timing_only_on_request() {
    let out = lab(&["verify", "bordiga", "--trials", "2", "--json", "--timing"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("wall_time_ms"));
}

fn report_doc(family: &str, q: u32, mode: u64) -> String {
    serde_json::json!({
        "schema": "v1",
        "family": family,
        "q": q,
        "seed": 0,
        "trials": 1,
        "counts": [{ "point": [1, 0, 0, 0, 0], "count": mode, "contained": 0 }],
        "mode": mode,
        "anomalies": [],
    })
    .to_string()
}

#[test]
fn consolidate_flags_disagreement() {
    let s = consolidate(&[report_doc("bordiga", 101, 1), report_doc("bordiga", 131, 2)]).unwrap();
    assert!(!s.agreement);
    assert!(!s.entries[0].matches_expected);

    let s = consolidate(&[
        report_doc("quartic-scroll", 131, 0),
        report_doc("quartic-scroll", 101, 0),
    ])
    .unwrap();
    assert!(s.agreement);
    assert!(s.entries[0].matches_expected);
    assert_eq!(s.entries[0].observed[0].q, 101);

    let s = consolidate(&[]).unwrap();
    assert!(s.entries.is_empty() && s.agreement);
}

#[test]
fn report_rejects_other_schema() {
    let doc = report_doc("bordiga", 101, 1).replace("\"v1\"", "\"v0\"");
    assert!(consolidate(std::slice::from_ref(&doc)).unwrap_err().contains("schema"));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("old.json");
    std::fs::write(&p, doc).unwrap();
    assert_eq!(lab(&["report", p.to_str().unwrap()]).code, EXIT_USAGE);
    let p = dir.path().join("bad.json");
    std::fs::write(&p, report_doc("bordiga", 101, 2)).unwrap();
    assert_eq!(lab(&["report", p.to_str().unwrap()]).code, EXIT_MISMATCH);
}

#[test]
fn binary_exit_codes_and_thread_invariance() {
    let bin = env!("CARGO_BIN_EXE_congruence-lab");
    let status = Command::new(bin)
        .args(["verify", "bordiga", "--q", "4"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_USAGE));

    let run_with = |threads: &str| {
        Command::new(bin)
            .args([
                "verify", "delpezzo", "--q", "101", "--trials", "5", "--seed", "3", "--json",
            ])
            .env("CONGRUENCE_LAB_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run_with("1");
    let three = run_with("3");
    assert_eq!(one.status.code(), Some(EXIT_OK));
    assert_eq!(one.stdout, three.stdout);
}
