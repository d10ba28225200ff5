use std::process::{Command, Output};

fn qdeform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdeform"))
        .args(args)
        .output()
        .expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = qdeform(args);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn values(doc: &serde_json::Value) -> Vec<String> {
    doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["value"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn rhat_gl2_has_five_entries() {
    let doc = json(&["emit", "rhat", "gl", "2"]);
    assert_eq!(doc["object"], "rhat");
    assert_eq!(doc["algebra"], "gl");
    assert_eq!(doc["N"], 2);
    let mut v = values(&doc);
    v.sort();
    assert_eq!(v, vec!["1", "1", "q", "q", "q - q^(-1)"]);
}

#[test]
fn document_keys_in_schema_order() {
    let o = qdeform(&["emit", "u", "so", "3"]);
    let s = stdout(&o);
    let pos: Vec<usize> = [
        "\"object\"",
        "\"algebra\"",
        "\"N\"",
        "\"params\"",
        "\"shape\"",
        "\"entries\"",
    ]
    .iter()
    .map(|k| s.find(k).unwrap())
    .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{}", s);
}

#[test]
fn flags_and_positionals_agree() {
    let a = qdeform(&["emit", "rhat", "so", "4"]);
    let b = qdeform(&["emit", "rhat", "--algebra", "so", "--n", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let c = qdeform(&["emit", "rhat", "so", "4", "--n", "3"]);
    assert_eq!(c.status.code(), Some(2));
}

#[test]
fn emission_is_deterministic_and_out_matches_stdout() {
    let args = ["emit", "proj", "so", "3", "--sign", "-", "--level", "3"];
    let a = qdeform(&args);
    let b = qdeform(&args);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let c = qdeform(&with_out);
    assert!(c.status.success());
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn entries_are_sorted_by_labels() {
    let doc = json(&["emit", "rhat", "so", "3"]);
    let keys: Vec<(Vec<i64>, Vec<i64>)> = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let l = |k: &str| {
                e[k].as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_i64().unwrap())
                    .collect()
            };
            (l("up"), l("low"))
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(keys.iter().any(|(u, _)| u.contains(&-1)));
}

#[test]
fn epsilon_so3_tabulated() {
    let doc = json(&["emit", "epsilon", "so", "3", "--normalization", "paper"]);
    let e = doc["entries"].as_array().unwrap();
    assert_eq!(e.len(), 7);
    let zero = e
        .iter()
        .find(|x| x["up"] == serde_json::json!([0, 0, 0]))
        .unwrap();
    assert_eq!(zero["value"], "-q^(1/2) + q^(-1/2)");
}

#[test]
fn metric_evaluated_at_four() {
    let doc = json(&["emit", "metric", "so", "3", "--eval", "q=4"]);
    let mut v = values(&doc);
    v.sort();
    assert_eq!(v, vec!["1", "1/2", "2"]);
    assert_eq!(doc["params"]["q"], "4");
}

#[test]
fn pole_names_the_denominator() {
    let o = qdeform(&["emit", "rhat-inv", "gl", "2", "--eval", "q=0"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert_eq!(e.lines().count(), 1, "{}", e);
    assert!(e.contains("denominator q vanishes"), "{}", e);
}

#[test]
fn invalid_combinations_are_one_line_errors() {
    for args in [
        vec!["emit", "metric", "gl", "3"],
        vec!["emit", "proj", "gl", "2", "--level", "2"],
        vec!["emit", "rhat", "gl", "2", "--sign", "+"],
        vec!["emit", "epsilon", "so", "5", "--normalization", "paper"],
        vec!["emit", "rhat", "so", "2"],
        vec!["emit", "rhat", "gl"],
        vec!["check", "hodge", "gl", "3"],
        vec!["check", "braid", "so", "7"],
        vec!["check", "epsilon", "so", "5"],
    ] {
        let o = qdeform(&args);
        assert_eq!(o.status.code(), Some(2), "{:?}", args);
        let e = stderr(&o);
        assert_eq!(e.lines().count(), 1, "{:?}: {}", args, e);
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn text_format() {
    let o = qdeform(&["emit", "u", "gl", "3", "--format", "text"]);
    assert_eq!(
        stdout(&o),
        "u gl(3)\n[1] [1] q^(-2)\n[2] [2] 1\n[3] [3] q^(2)\n"
    );
}

#[test]
fn coeffs_document() {
    let doc = json(&["emit", "coeffs", "so", "3"]);
    let e = doc["entries"].as_array().unwrap();
    let get = |name: &str, up: serde_json::Value| {
        e.iter()
            .find(|x| x["name"] == name && x["up"] == up)
            .unwrap()["value"]
            .as_str()
            .unwrap()
            .to_string()
    };
    assert_eq!(get("c", serde_json::json!([3])), "1");
    assert_eq!(get("rho", serde_json::json!([])), "1");
}

#[test]
fn check_braid_so3_passes() {
    let o = qdeform(&["check", "braid", "so", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s
        .lines()
        .all(|l| l.starts_with("PASS so(3): ") && l.contains(" ms)")));
    assert!(s.contains("trace projector against Rhat"));
}

#[test]
fn check_reports_counterexamples() {
    let o = qdeform(&["check", "epsilon", "so", "4", "--max-level", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    let fail: Vec<&str> = s.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fail.len(), 2, "{}", s);
    assert!(fail
        .iter()
        .any(|l| l.contains("[1, -1, 2, -2]: computed 1 vs tabulated q")));
}

#[test]
fn check_laplacian_modes() {
    let o = qdeform(&["check", "laplacian", "so", "3", "--mode", "extension"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 1);
    assert!(s.contains("extension mode"));
}

#[test]
fn selftest_passes() {
    let o = qdeform(&["selftest", "--seed", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("gl closed form vs reduced epsilon, gl(3)"));
}
