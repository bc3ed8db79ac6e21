use std::process::Command;

use serde_json::Value as Json;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("divsum").chain(args.iter().copied());
    let code = divsum::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Json {
    let mut args = args.to_vec();
    args.extend(["--format", "json"]);
    let (code, out, err) = run(&args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_divsum");
    let status = |args: &[&str]| Command::new(bin).args(args).status().unwrap().code();
    assert_eq!(status(&["compute", "totient", "--n", "9"]), Some(0));
    assert_eq!(status(&["compute", "nonsense", "--n", "9"]), Some(2));
    assert_eq!(
        status(&[
            "verify",
            "--g",
            "power:0.5",
            "--range",
            "1..100",
            "--tolerance",
            "1e-300"
        ]),
        Some(1)
    );
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["compute", "bogus", "--n", "3"][..],
        &["compute", "sigma", "--range", "9..3"],
        &["compute", "sigma", "--range", "0..3"],
        &["compute", "sigma"],
        &["compute", "sigma", "--n", "3", "--method", "eq7"],
        &["compute", "sigma_gamma", "--n", "3"],
        &["verify", "--g", "power:x", "--n", "3"],
        &[
            "verify",
            "--g",
            "power:0.5",
            "--domain",
            "exact",
            "--n",
            "3",
        ],
        &["verify", "--g", "power:1", "--n", "3", "--tolerance=0"],
        &["frobnicate"],
    ] {
        let (code, out, err) = run(args);
        assert_eq!(code, 2, "{args:?}: {out}{err}");
        assert!(!err.is_empty(), "{args:?} should explain itself on stderr");
    }
}

#[test]
fn unwritable_output_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.json");
    let (code, _, err) = run(&[
        "compute",
        "sigma",
        "--n",
        "6",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot write"), "{err}");
}

#[test]
fn output_file_receives_the_rendering() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["table", "sigma", "--range", "1..6", "--output", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let (_, stdout_render, _) = run(&["table", "sigma", "--range", "1..6"]);
    assert_eq!(written, stdout_render);
    assert!(written.starts_with("n,value,oracle,agree\n"));
    assert!(written.contains("\n6,12,12,true\n"));
}

#[test]
fn verify_mismatch_exits_one_and_reports_counts() {
    let doc = json(&["verify", "--g", "power:1", "--range", "1..50"]);
    assert_eq!(doc["summary"]["mismatches"], 0);
    let (code, out, _) = run(&[
        "verify",
        "--g",
        "power:0.5",
        "--range",
        "1..200",
        "--tolerance",
        "1e-300",
        "--format",
        "json",
    ]);
    assert_eq!(code, 1);
    let doc: Json = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["summary"]["checked"], 200);
    assert!(doc["summary"]["mismatches"].as_u64().unwrap() > 0);
}

/// Every CSV cell carries the same number (or exact string) as its JSON twin.
#[test]
fn csv_and_json_carry_identical_content() {
    for args in [
        &["table", "sigma", "--range", "1..60"][..],
        &[
            "table",
            "divisor_count",
            "--range",
            "1..60",
            "--method",
            "eq8",
        ],
        &["table", "sigma_gamma", "--gamma", "0.5", "--range", "1..60"],
        &["table", "sigma_gamma", "--gamma", "-1", "--range", "1..60"],
        &["table", "log_product", "--range", "1..60"],
        &["table", "sigma_series", "--range", "1..10", "-K", "500"],
        &["verify", "--g", "mobius", "--range", "1..60"],
        &["verify", "--g", "log", "--range", "1..60"],
    ] {
        let doc = json(args);
        let mut csv_args = args.to_vec();
        csv_args.extend(["--format", "csv"]);
        let (code, out, _) = run(&csv_args);
        assert_eq!(code, 0);
        let mut reader = csv::Reader::from_reader(out.as_bytes());
        let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
        let rows = doc["results"].as_array().unwrap();
        let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        assert_eq!(records.len(), rows.len(), "{args:?}");
        for (row, record) in rows.iter().zip(&records) {
            for (name, cell) in header.iter().zip(record.iter()) {
                let want = &row[name.as_str()];
                match want {
                    Json::Number(x) => {
                        let got: f64 = cell.parse().unwrap();
                        assert_eq!(got, x.as_f64().unwrap(), "{args:?} {name}");
                    }
                    Json::String(s) => assert_eq!(cell, s, "{args:?} {name}"),
                    Json::Bool(b) => assert_eq!(cell, b.to_string()),
                    other => panic!("unexpected JSON cell {other}"),
                }
            }
        }
    }
}

#[test]
fn parallel_runs_match_serial_runs() {
    for args in [
        &[
            "table",
            "sigma_gamma",
            "--gamma",
            "0.5",
            "--range",
            "1..400",
        ][..],
        &[
            "verify", "--g", "power:2", "--range", "1..400", "--method", "eq8",
        ],
        &[
            "table",
            "log_product",
            "--range",
            "1..300",
            "--method",
            "eq8",
        ],
    ] {
        let mut serial = args.to_vec();
        serial.extend(["--format", "csv", "--jobs", "1"]);
        let mut parallel = args.to_vec();
        parallel.extend(["--format", "csv", "--jobs", "4"]);
        let (a, out_a, _) = run(&serial);
        let (b, out_b, _) = run(&parallel);
        assert_eq!(a, 0, "{args:?}");
        assert_eq!((a, &out_a), (b, &out_b), "{args:?}");
    }
}

#[test]
fn repeated_runs_are_deterministic() {
    let args = [
        "table",
        "log_product",
        "--range",
        "1..100",
        "--method",
        "eq8",
    ];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn compute_text_forms() {
    let cases: &[(&[&str], &str)] = &[
        (&["compute", "sigma", "--n", "6"], "sigma(6) = 12"),
        (
            &["compute", "divisor_count", "--n", "12"],
            "divisor_count(12) = 6",
        ),
        (&["compute", "mobius", "--n", "30"], "mobius(30) = -1"),
        (&["compute", "totient", "--n", "36"], "totient(36) = 12"),
        (&["compute", "kronecker", "--n", "1"], "kronecker(1) = 1"),
        (
            &["compute", "sigma", "--n", "28", "--method", "oracle"],
            "sigma(28) = 56",
        ),
    ];
    for (args, want) in cases {
        let (code, out, _) = run(args);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), *want);
    }
}

#[test]
fn check_reports_robin_violations_below_threshold() {
    let (code, out, _) = run(&["check", "robin", "--range", "3..5040"]);
    // violations below 5041 are expected and do not fail the run
    assert_eq!(code, 0);
    assert!(out.contains("5040"), "{out}");
    assert!(!out.contains("violations: 0"));
}

#[test]
fn config_is_echoed_in_json() {
    let doc = json(&[
        "table",
        "sigma_series",
        "--range",
        "1..3",
        "-K",
        "123",
        "--jobs",
        "2",
    ]);
    let cfg = &doc["config"];
    assert_eq!(cfg["subcommand"], "table");
    assert_eq!(cfg["function"], "sigma_series");
    assert_eq!(cfg["K"], 123);
    assert_eq!(cfg["jobs"], 2);
    assert_eq!(cfg["range"]["start"], 1);
    assert_eq!(cfg["range"]["end"], 3);
}
