use assert_cmd::Command;
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn pot(args: &[&str]) -> std::process::Output {
    Command::cargo_bin("pot").unwrap().args(args).output().unwrap()
}

fn stdout(out: &std::process::Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &std::process::Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn pot_table_for_example1() {
    let out = pot(&["pot", &data("example1.json"), "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("op_value      3/4 (≈ 0.750000)"), "{text}");
    let tsb = text.lines().find(|l| l.trim_start().starts_with("tsb_max")).unwrap();
    let cells: Vec<&str> = tsb.split_whitespace().collect();
    assert_eq!(cells[..2], ["tsb_max", "3/4"]);
    assert_eq!(cells.last(), Some(&"1"));
}

#[test]
fn pot_json_keeps_rational_strings() {
    let out = pot(&["pot", &data("example1.json")]);
    let body = json(&out);
    assert_eq!(body["op_value"], "3/4");
    assert_eq!(body["candidates"][0]["kind"], "tsb_max");
    assert_eq!(body["candidates"][0]["pot"], "1");
    assert_eq!(body["candidates"][1]["pot"], "5/9");
}

#[test]
fn solve_cs_equilibrium_passes_check() {
    let out = pot(&["solve-cs", &data("example1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let body = json(&out);
    assert_eq!(body["tsb_max"]["value"], "3/4");
    assert_eq!(body["tsb_max"]["weights"], serde_json::json!(["1/2", "1/2"]));

    let dir = tempfile::tempdir().unwrap();
    let eq = dir.path().join("eq.json");
    std::fs::write(&eq, body["tsb_max"]["equilibrium"].to_string()).unwrap();
    let checked = pot(&["check", &data("example1.json"), eq.to_str().unwrap()]);
    assert_eq!(checked.status.code(), Some(0));
    assert_eq!(json(&checked)["all_true"], true);
}

#[test]
fn check_reports_inverted_receiver() {
    let out = pot(&["check", &data("example1.json"), &data("inverted_eq.json")]);
    assert_eq!(out.status.code(), Some(0));
    let body = json(&out);
    assert_eq!(body["all_true"], false);
    assert_eq!(body["receiver_best_response"], false);
    assert!(body["receiver_witness"].is_object());
}

#[test]
fn enumerate_lists_three_tuples() {
    let body = json(&pot(&["enumerate", &data("example1.json")]));
    let values: Vec<&str> = body["equilibria"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["sender_value"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["1", "1/2", "1/3"]);
}

#[test]
fn solve_op_for_example1() {
    let body = json(&pot(&["solve-op", &data("example1.json")]));
    assert_eq!(body["value"], "3/4");
    assert_eq!(body["equilibrium"]["sender_value"], "3/4");
}

#[test]
fn infeasible_covert_signaling_exits_2() {
    let out = pot(&["solve-cs", &data("pennies_skewed.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["tsb_max"].is_null());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "no_belief_dominant_pbe");
    assert_eq!(pot(&["pot", &data("pennies_skewed.json")]).status.code(), Some(2));
}

#[test]
fn bad_input_exits_3_with_json_error() {
    for args in [
        vec!["pot".to_string(), data("missing.json")],
        vec!["quadratic".into(), "--b".into(), "-0.5".into()],
        vec!["quadratic".into(), "--b".into(), "0.1".into(), "--n".into(), "3".into()],
        vec!["no-such-command".into()],
        vec!["check".into(), data("example1.json"), data("example1.json")],
    ] {
        let out = pot(&args.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(out.status.code(), Some(3), "{args:?}");
        let err: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert!(err["error"]["kind"].is_string(), "{args:?}");
    }
}

#[test]
fn quadratic_for_b_one_tenth() {
    let body = json(&pot(&["quadratic", "--b", "0.1"]));
    assert_eq!(body["n"], 2);
    let bounds: Vec<f64> = body["boundaries"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    for (x, y) in bounds.iter().zip([0.0, 0.3, 1.0]) {
        assert!((x - y).abs() <= 1e-12);
    }
    assert!((body["ucs"].as_f64().unwrap() + 0.0408333333333333).abs() < 1e-12);
    assert!((body["uop"].as_f64().unwrap() + 0.01).abs() < 1e-12);
}

#[test]
fn sweep_csv_columns_and_determinism() {
    let args = ["quadratic-sweep", "--grid", "0.01,0.001,0.0001", "--simulate", "--trials", "2000", "--seed", "7", "--format", "csv"];
    let first = pot(&args);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    assert!(text.starts_with("b,N,ucs,uop,ratio_abs,"), "{text}");
    assert_eq!(text.lines().count(), 4);
    assert_eq!(first.stdout, pot(&args).stdout);
}
