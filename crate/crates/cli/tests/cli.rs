use std::process::{Command, Output};

use serde_json::Value;

fn apery(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apery")).args(args).env_remove("APERY_GUARD_DIGITS").output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Vec<Value> {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["zeta", "--target", "3", "--digits", "40"], 0),
        (&["zeta", "--target", "3", "--digits", "0"], 2),
        (&["zeta", "--target", "9", "--digits", "30", "--method", "fast"], 2),
        (&["zeta", "--target", "9", "--digits", "30", "--method", "corollary1"], 2),
        (&["zeta", "--target", "7", "--digits", "30", "--method", "corollary1", "--n", "2"], 2),
        (&["zeta", "--target", "3", "--digits", "30", "--method", "maple"], 2),
        (&["zeta", "--digits", "30"], 2),
        (&["verify", "--identity", "chu", "--n-max", "20"], 0),
        (&["verify", "--identity", "apery", "--n-max", "20"], 2),
        (&["verify", "--identity", "chu", "--n-max", "0"], 2),
        (&["hyper", "--eval", "eq61", "--n", "5"], 0),
        (&["hyper", "--eval", "eq61", "--n", "0"], 2),
        (&["hyper", "--eval", "gosper", "--n", "3"], 0),
        (&["gf", "--z", "0.25,-0.5", "--digits", "30"], 0),
        (&["gf", "--z", "half", "--digits", "30"], 2),
        (&["discover", "--n", "1", "--digits", "80"], 0),
        // the zeta(11) row needs coefficients up to 125
        (&["discover", "--n", "2", "--digits", "100", "--max-height", "10"], 1),
        (&["discover", "--target", "pi", "--n", "1", "--digits", "80"], 2),
        (&["discover", "--n", "1", "--digits", "80", "--s", "3"], 2),
        (&["bench", "--digits", "0"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, want) in cases {
        let out = apery(args);
        assert_eq!(code(&out), *want, "apery {}: {}", args.join(" "), String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn fast_zeta3_matches_reference_with_planned_terms() {
    let fast = json(&apery(&["zeta", "--target", "3", "--digits", "200", "--method", "fast", "--json"]));
    let reference = json(&apery(&["zeta", "--target", "3", "--digits", "200", "--method", "reference", "--json"]));
    assert_eq!(fast[0]["termCount"], 334);
    assert_eq!(fast[0]["digits"], 200);
    let (a, b) = (fast[0]["value"].as_str().unwrap(), reference[0]["value"].as_str().unwrap());
    assert_eq!(a.len(), 201);
    // last place may round differently
    assert_eq!(a[..199], b[..199]);
}

#[test]
fn coefficient_method_gives_zeta7() {
    let c1 = json(&apery(&["zeta", "--target", "7", "--digits", "50", "--method", "corollary1", "--n", "1", "--json"]));
    let fast = json(&apery(&["zeta", "--target", "7", "--digits", "50", "--json"]));
    assert_eq!(c1[0]["value"].as_str().unwrap()[..49], fast[0]["value"].as_str().unwrap()[..49]);
    assert!(c1[0]["value"].as_str().unwrap().starts_with("1.00834927738192282683979754984979675959986356056"));
}

#[test]
fn verify_reports_every_n_in_order() {
    let out = apery(&["verify", "--identity", "finite", "--n-max", "300", "--json"]);
    assert_eq!(code(&out), 0);
    let rows = json(&out);
    assert_eq!(rows.len(), 300);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r["parameters"]["n"], (i + 1).to_string());
        assert_eq!(r["outcome"], "pass");
        assert!(r["wallTimeSeconds"].as_f64().unwrap() >= 0.0);
    }
}

#[test]
fn csv_report_carries_the_same_outcomes_as_json() {
    let j = json(&apery(&["verify", "--identity", "all", "--n-max", "4", "--json"]));
    let c = apery(&["verify", "--identity", "all", "--n-max", "4", "--report", "csv"]);
    let mut reader = csv::Reader::from_reader(&c.stdout[..]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), j.len());
    for (row, r) in rows.iter().zip(&j) {
        let params: Value = serde_json::from_str(&row[1]).unwrap();
        assert_eq!(params, r["parameters"]);
        assert_eq!(&row[2], r["outcome"].as_str().unwrap());
        assert_eq!(&row[5], r["detail"].as_str().unwrap());
    }
}

#[test]
fn gamma_ratio_series_is_four_fifths() {
    let out = apery(&["hyper", "--eval", "cor3", "--digits", "30", "--json"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)[0];
    assert_eq!(r["value"], format!("0.{}", "8".to_string() + &"0".repeat(29)));
}

#[test]
fn generating_function_sides_agree() {
    let out = apery(&["gf", "--z", "0.5", "--digits", "50", "--json"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)[0];
    assert_eq!(r["outcome"], "pass");
    assert_eq!(r["value"], r["detail"].as_str().unwrap().trim_start_matches("rhs "));
    let k = apery(&["gf", "--z", "-0.6,0.3", "--digits", "40", "--koecher", "--json"]);
    assert_eq!(json(&k)[0]["outcome"], "pass");
}

#[test]
fn discovery_appends_to_the_ledger() {
    let dir = tempfile::tempdir().unwrap();
    let ledger = dir.path().join("relations.ndjson");
    let path = ledger.to_str().unwrap();
    for n in ["1", "2"] {
        let out = apery(&["discover", "--n", n, "--digits", "100", "--ledger", path, "--json"]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    let text = std::fs::read_to_string(&ledger).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["coefficients"], serde_json::json!(["2", "-5", "-25"]));
    assert_eq!(lines[1]["table"], serde_json::json!(["1", "5", "-15/2", "25/2"]));
    assert_eq!(lines[1]["partitions"], serde_json::json!(["0=", "1=1", "2=2", "2=1+1"]));
    assert_eq!(lines[1]["labels"][0], "zeta(11)");
}

#[test]
fn guard_digits_come_from_the_environment() {
    let run = |guard: &str| {
        Command::new(env!("CARGO_BIN_EXE_apery"))
            .args(["zeta", "--target", "5", "--digits", "60", "--json"])
            .env("APERY_GUARD_DIGITS", guard)
            .output()
            .unwrap()
    };
    let (plain, guarded) = (run("0"), run("25"));
    assert_eq!(json(&plain)[0]["value"], json(&guarded)[0]["value"]);
    assert!(json(&guarded)[0]["termCount"].as_u64() > json(&plain)[0]["termCount"].as_u64());
    assert_eq!(code(&run("lots")), 2);
}

#[test]
fn bench_table_shape_and_ordering() {
    let out = apery(&["bench", "--digits", "200,300", "--repeats", "3", "--json"]);
    assert_eq!(code(&out), 0);
    let rows = json(&out);
    let timed: Vec<&Value> = rows.iter().filter(|r| r["parameters"]["method"] != "fast3-digits-per-term").collect();
    assert_eq!(timed.len(), 8);
    for d in [200, 300] {
        let secs = |m: &str| {
            timed.iter().find(|r| r["parameters"]["method"] == m && r["digits"] == d).unwrap()["wallTimeSeconds"].as_f64().unwrap()
        };
        assert!(secs("fast3") < secs("reference"), "d = {d}");
    }
    let rate = rows.iter().find(|r| r["parameters"]["method"] == "fast3-digits-per-term").unwrap();
    let slope: f64 = rate["value"].as_str().unwrap().parse().unwrap();
    assert!((slope - 0.60).abs() <= 0.05, "{slope}");
}
