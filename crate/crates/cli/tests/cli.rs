use std::process::{Command, Output};

fn loopcard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopcard"))
        .args(args)
        .env_remove("LOOPCARD_ORDER_CAP")
        .env_remove("LOOPCARD_COMPONENT_BUDGET")
        .env_remove("LOOPCARD_WORK_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn card_of_bc2() {
    let out = loopcard(&["card", "-n", "3", "-p", "2", "B(C2)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "4\n");
}

#[test]
fn euler_of_bs3() {
    let out = loopcard(&["euler", "-n", "2", "B(S3)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "8 (not a p-space)\n");
    let out = loopcard(&["euler", "-n", "1..2", "B(Q8)"]);
    assert_eq!(stdout(&out), "n=1\t5\nn=2\t22\n");
}

#[test]
fn em_table() {
    let out = loopcard(&["table", "--em", "3", "5", "-p", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<Vec<u64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    // 2^binom(n-1, d) from Pascal's rule
    let mut pascal = vec![vec![1u32]];
    for i in 1..5 {
        let prev: &Vec<u32> = &pascal[i - 1];
        let mut row = vec![1u32; i + 1];
        for k in 1..i {
            row[k] = prev[k - 1] + prev[k];
        }
        pascal.push(row);
    }
    for (d, row) in rows.iter().enumerate() {
        assert_eq!(row[0], d as u64);
        for n in 1..=5usize {
            let e = pascal[n - 1].get(d).copied().unwrap_or(0);
            assert_eq!(row[n], 2u64.pow(e), "d = {d}, n = {n}");
        }
    }
}

#[test]
fn hcard_and_loop() {
    assert_eq!(stdout(&loopcard(&["hcard", "B(S3) + B(C2)"])), "2/3\n");
    assert_eq!(stdout(&loopcard(&["loop", "-k", "1", "B^2(C3)"])), "loop space with orders (1, 3, 3)\n");
}

#[test]
fn exit_codes() {
    // syntax error, unknown name, non-abelian B^2, missing prime, refused mix
    for args in [
        &["card", "-n", "1", "-p", "2", "B("][..],
        &["card", "-n", "1", "-p", "2", "B(Z7)"],
        &["card", "-n", "1", "-p", "2", "B^2(S3)"],
        &["card", "-n", "2", "B(S3)"],
        &["card", "-n", "1", "-p", "4", "B(C2)"],
        &["hcard", "B(S3) x B^2(C2)"],
        &["euler", "-n", "3..1", "B(C2)"],
        &["frobnicate"],
    ] {
        let out = loopcard(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
    let out = loopcard(&["--component-budget", "1", "card", "-n", "2", "-p", "2", "B(D8)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_report_shape() {
    let out = loopcard(&["--output", "json", "--stable-output", "card", "-n", "1..3", "-p", "2", "B(C2)"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["schema"], "loopcard-report/1");
    assert!(doc.get("elapsed_ms").is_none());
    let results = doc["results"].as_array().unwrap();
    let values: Vec<u64> = results.iter().map(|r| r["value"].as_u64().unwrap()).collect();
    assert_eq!(values, vec![1, 2, 4]);
    assert_eq!(results[2]["quantity"], "en_cardinality");
    assert_eq!(results[2]["n"], 3);
    assert_eq!(results[2]["p"], 2);
    assert_eq!(results[2]["within_paper_hypothesis"], true);

    let doc = json(&loopcard(&["--output", "json", "hcard", "B(S3)"]));
    assert_eq!(doc["results"][0]["value"], "1/6");
    assert!(doc["elapsed_ms"].is_u64());
}

#[test]
fn json_errors_carry_positions() {
    let out = loopcard(&["--output", "json", "card", "-n", "1", "-p", "2", "B(C2) x"]);
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(doc["error"]["kind"], "SyntaxError");
    assert_eq!(doc["error"]["details"]["line"], 1);
    assert_eq!(doc["error"]["details"]["column"], 8);
}

#[test]
fn big_values_stay_exact() {
    let out = loopcard(&["--output", "json", "--stable-output", "card", "-n", "12", "-p", "5", "B^3(C5)"]);
    let text = stdout(&out);
    // 5^binom(11, 3) = 5^165, far beyond f64
    let digits = text.split("\"value\": ").nth(1).unwrap();
    let digits: String = digits.chars().take_while(|c| c.is_ascii_digit()).collect();
    assert_eq!(digits.len(), 116);
    assert!(digits.starts_with("2138"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--output", "json", "--stable-output", "loop", "-k", "2", "B(D8) + B(Q8)"];
    assert_eq!(loopcard(&args).stdout, loopcard(&args).stdout);
}

#[test]
fn verify_suite() {
    let out = loopcard(&["verify", "--suite", "em"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("PASS em"));
    let doc = json(&loopcard(&["--output", "json", "--stable-output", "verify", "--suite", "stable"]));
    assert_eq!(doc["suites"][0]["passed"], true);
    assert_eq!(doc["suites"][0]["failures"], 0);
}
