use std::process::{Command, Output};

use serde_json::Value;

const EIGHT_LINES: &str = "2,2,2,2,2,2,2,2";

fn gwcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwcount"))
        .args(args)
        .env_remove("GWCOUNT_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = gwcount(&all);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn count_examples() {
    let conics = json(&[
        "count",
        "--degree",
        "2",
        "--dim",
        "3",
        "--codims",
        EIGHT_LINES,
    ]);
    assert_eq!(conics["result"], "92");
    assert_eq!(conics["status"], "Countable");
    assert_eq!(conics["schema_version"], 1);

    let lines = json(&[
        "count",
        "--degree",
        "1",
        "--dim",
        "5",
        "--codims",
        EIGHT_LINES,
    ]);
    assert_eq!(lines["result"], "14");

    let zero = json(&["count", "--degree", "1", "--dim", "3", "--codims", "4,2"]);
    assert_eq!(zero["result"], "0");
    assert_eq!(zero["status"], "ZeroByConvention");
}

#[test]
fn count_breakdown_and_self_check() {
    let rec = json(&[
        "count",
        "--degree",
        "2",
        "--dim",
        "3",
        "--codims",
        EIGHT_LINES,
        "--breakdown",
        "--self-check",
    ]);
    let parts: Vec<(&str, &str)> = rec["breakdown"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["label"].as_str().unwrap(), c["value"].as_str().unwrap()))
        .collect();
    assert_eq!(parts, [("one_floor", "26"), ("two_floor", "66")]);
    assert_eq!(rec["checks"][0]["agrees"], true);

    let lines = json(&[
        "count",
        "--degree",
        "1",
        "--dim",
        "4",
        "--codims",
        "2,2,2,2,2,2",
        "--breakdown",
        "--self-check",
    ]);
    let sum: u64 = lines["breakdown"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["value"].as_str().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(sum, 5);
    assert_eq!(lines["checks"][0]["name"], "oracle");
}

#[test]
fn text_and_csv_renderings() {
    let text = gwcount(&[
        "count",
        "--degree",
        "2",
        "--dim",
        "3",
        "--codims",
        EIGHT_LINES,
    ]);
    assert_eq!(stdout(&text), "status: Countable\nresult: 92\n");
    let csv = gwcount(&[
        "count", "--degree", "1", "--dim", "3", "--codims", "4,2", "--format", "csv",
    ]);
    assert_eq!(
        stdout(&csv),
        "command,degree,dim,codims,l0,list1,list2,status,result\ncount,1,3,4 2,,,,ZeroByConvention,0\n"
    );
}

#[test]
fn enumerate_examples() {
    let all = json(&[
        "enumerate",
        "--degree",
        "2",
        "--dim",
        "3",
        "--codims",
        EIGHT_LINES,
    ]);
    assert_eq!(all["total_diagrams"], 73);
    assert_eq!(all["result"], "92");
    let diagrams = all["diagrams"].as_array().unwrap();
    assert_eq!(diagrams.len(), 73);
    let rendered: Vec<&str> = diagrams
        .iter()
        .map(|d| d["diagram"].as_str().unwrap())
        .collect();
    let mut sorted = rendered.clone();
    sorted.sort();
    assert_eq!(rendered, sorted, "canonical order is lexicographic");

    let lines = json(&[
        "enumerate",
        "--degree",
        "1",
        "--dim",
        "3",
        "--codims",
        "2,2,2,2",
    ]);
    assert_eq!(lines["total_diagrams"], 2);
    assert_eq!(lines["result"], "2");

    let limited = json(&[
        "enumerate",
        "--degree",
        "2",
        "--dim",
        "3",
        "--codims",
        EIGHT_LINES,
        "--limit",
        "5",
    ]);
    assert_eq!(limited["total_diagrams"], 73);
    assert_eq!(limited["result"], "92");
    assert_eq!(limited["diagrams"].as_array().unwrap()[..], diagrams[..5]);
}

#[test]
fn enumerate_grouped_by_shape() {
    let rec = json(&[
        "enumerate",
        "--degree",
        "2",
        "--dim",
        "3",
        "--codims",
        EIGHT_LINES,
        "--group-by",
        "shape",
    ]);
    let families = rec["breakdown"].as_array().unwrap();
    let diagrams: u64 = families
        .iter()
        .map(|f| f["diagrams"].as_u64().unwrap())
        .sum();
    let total: u64 = families
        .iter()
        .map(|f| {
            f["diagrams"].as_u64().unwrap() * f["value"].as_str().unwrap().parse::<u64>().unwrap()
        })
        .sum();
    assert_eq!((diagrams, total), (73, 92));
}

#[test]
fn verify_examples() {
    let conics = json(&[
        "verify",
        "--degree",
        "2",
        "--dim",
        "3",
        "--codims",
        EIGHT_LINES,
    ]);
    assert_eq!(conics["maximality"]["maximal"], true);
    assert_eq!(conics["maximality"]["invariant"], "92");
    assert_eq!(conics["maximality"]["distinct_solutions"], "92");

    let lines = json(&[
        "verify",
        "--degree",
        "1",
        "--dim",
        "4",
        "--codims",
        "3,3,2,2",
        "--oracle",
        "--closed-form",
    ]);
    assert_eq!(lines["result"], "2");
    let checks: Vec<(&str, &str, bool)> = lines["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            (
                c["name"].as_str().unwrap(),
                c["value"].as_str().unwrap(),
                c["agrees"].as_bool().unwrap(),
            )
        })
        .collect();
    assert_eq!(checks, [("oracle", "2", true), ("closed_form", "2", true)]);
}

#[test]
fn verify_batch_sweep() {
    let rec = json(&[
        "verify",
        "--degree",
        "1",
        "--dim",
        "6",
        "--all",
        "--oracle",
        "--closed-form",
    ]);
    assert_eq!(rec["result"], "30");
    let checks = rec["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 30);
    assert!(checks.iter().all(|c| c["agrees"] == true));

    let conics = json(&["verify", "--degree", "2", "--dim", "4", "--all"]);
    assert_eq!(conics["result"], "16");
}

#[test]
fn table_examples() {
    let cnl = stdout(&gwcount(&[
        "table", "--kind", "cnl", "--max-n", "5", "--check",
    ]));
    let rows: Vec<Vec<&str>> = cnl
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert!(rows.contains(&vec!["5", "2", "14", "14", "true"]));
    for row in rows.iter().filter(|r| r[0] == r[1]) {
        assert_eq!(row[2], "1", "diagonal {row:?}");
    }
    assert!(rows.iter().all(|r| r[4] == "true"));

    let catalan = stdout(&gwcount(&[
        "table", "--kind", "catalan", "--max-n", "6", "--check",
    ]));
    let values: Vec<&str> = catalan
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(values, ["1", "2", "5", "14", "42", "132"]);

    let kl = gwcount(&[
        "table", "--kind", "kl", "--max-n", "6", "--check", "--format", "json",
    ]);
    assert_eq!(kl.status.code(), Some(0));
    let kl: Value = serde_json::from_str(&stdout(&kl)).unwrap();
    assert_eq!(
        kl["header"],
        serde_json::json!(["n", "k", "l", "value", "recursion", "agrees"])
    );
    assert!(kl["rows"]
        .as_array()
        .unwrap()
        .contains(&serde_json::json!(["4", "3", "3", "2", "2", "true"])));
}

#[test]
fn reducible_examples() {
    let base = [
        "reducible",
        "--dim",
        "3",
        "--l0",
        "1",
        "--list1",
        "2,2,2",
        "--list2",
        "2,2,2",
    ];
    let both = json(&[&base[..], &["--method", "both"]].concat());
    assert_eq!(both["result"], "4");
    assert_eq!(both["checks"][0]["value"], "4");
    assert_eq!(both["checks"][0]["agrees"], true);

    for k0 in ["0", "1", "2", "3", "4"] {
        for method in ["product", "tropical", "both"] {
            let rec = json(&[&base[..], &["--k0", k0, "--method", method]].concat());
            assert_eq!(rec["result"], "4", "k0={k0} {method}");
        }
    }

    let unbalanced = json(&[
        "reducible",
        "--dim",
        "3",
        "--l0",
        "2",
        "--list1",
        "2,2,2",
        "--list2",
        "2,2,2",
    ]);
    assert_eq!(unbalanced["result"], "0");
    assert_eq!(unbalanced["status"], "ZeroByConvention");

    let empty = json(&[
        "reducible",
        "--dim",
        "2",
        "--l0",
        "2",
        "--list1",
        "",
        "--list2",
        "2,2",
    ]);
    assert_eq!(empty["query"]["list1"], serde_json::json!([]));
}

/// Re-runs the command described by a record's query echo.
fn rerun(record: &Value) -> Vec<String> {
    let q = &record["query"];
    let list = |v: &Value| {
        v.as_array()
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut args = vec![record["command"].as_str().unwrap().to_string()];
    let mut flag = |name: &str, value: String| {
        args.push(format!("--{name}"));
        args.push(value);
    };
    flag("dim", q["dim"].to_string());
    if let Some(d) = q.get("degree") {
        flag("degree", d.to_string());
    }
    if let Some(c) = q.get("codims") {
        flag("codims", list(c));
    }
    for name in ["list1", "list2"] {
        if let Some(c) = q.get(name) {
            flag(name, list(c));
        }
    }
    for name in ["l0", "k0"] {
        if let Some(v) = q.get(name) {
            flag(name, v.to_string());
        }
    }
    args.extend(["--format".to_string(), "json".to_string()]);
    args
}

#[test]
fn json_round_trip_is_byte_identical() {
    let commands: [&[&str]; 4] = [
        &[
            "count",
            "--degree",
            "2",
            "--dim",
            "3",
            "--codims",
            EIGHT_LINES,
            "--format",
            "json",
        ],
        &[
            "count",
            "--degree",
            "1",
            "--dim",
            "3",
            "--codims=-1,4,2",
            "--format",
            "json",
        ],
        &[
            "enumerate",
            "--degree",
            "1",
            "--dim",
            "4",
            "--codims",
            "3,2,2,2,2",
            "--format",
            "json",
        ],
        &[
            "reducible",
            "--dim",
            "3",
            "--l0",
            "1",
            "--list1",
            "2,2,2",
            "--list2",
            "2,2,2",
            "--k0",
            "2",
            "--format",
            "json",
        ],
    ];
    for args in commands {
        let first = stdout(&gwcount(args));
        let record: Value = serde_json::from_str(&first).unwrap();
        let again = rerun(&record);
        let again: Vec<&str> = again.iter().map(String::as_str).collect();
        assert_eq!(stdout(&gwcount(&again)), first, "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "enumerate",
        "--degree",
        "2",
        "--dim",
        "4",
        "--codims",
        "3,3,2,2,2,2,2,2,2",
        "--group-by",
        "shape",
    ];
    let first = gwcount(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&gwcount(&args)), stdout(&first));
}

#[test]
fn cache_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("memo.txt");
    let path = path.to_str().unwrap();
    let queries: [&[&str]; 3] = [
        &[
            "count",
            "--degree",
            "2",
            "--dim",
            "4",
            "--codims",
            "4,3,3,3,2,2,2",
        ],
        &[
            "count",
            "--degree",
            "1",
            "--dim",
            "5",
            "--codims",
            EIGHT_LINES,
        ],
        &[
            "verify",
            "--degree",
            "2",
            "--dim",
            "3",
            "--codims",
            EIGHT_LINES,
        ],
    ];
    for q in queries {
        let plain = stdout(&gwcount(q));
        let cold = stdout(&gwcount(&[q, &["--cache", path]].concat()));
        let warm = stdout(&gwcount(&[q, &["--cache", path]].concat()));
        assert_eq!(cold, plain);
        assert_eq!(warm, plain);
    }
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("# gwcount-memo v1\n"));
    assert!(text.contains("\n2:3:2,2,2,2,2,2,2,2=92\n"));

    let env_path = dir.path().join("env.txt");
    let out = Command::new(env!("CARGO_BIN_EXE_gwcount"))
        .args([
            "count",
            "--degree",
            "2",
            "--dim",
            "3",
            "--codims",
            EIGHT_LINES,
        ])
        .env("GWCOUNT_CACHE", &env_path)
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "status: Countable\nresult: 92\n");
    assert!(env_path.exists());
}

#[test]
fn stale_cache_version_is_ignored_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("memo.txt");
    std::fs::write(&path, "# gwcount-memo v0\n2:3:2,2,2,2,2,2,2,2=7\n").unwrap();
    let out = gwcount(&[
        "count",
        "--degree",
        "2",
        "--dim",
        "3",
        "--codims",
        EIGHT_LINES,
        "--cache",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "status: Countable\nresult: 92\n");
    assert!(stderr(&out).contains("version mismatch"));
}

#[test]
fn input_errors_exit_one() {
    let cases: [&[&str]; 9] = [
        &["count", "--degree", "2", "--dim", "3", "--codims", "2,x"],
        &["count", "--degree", "3", "--dim", "3", "--codims", "2,2"],
        &["count", "--degree", "1", "--dim", "1", "--codims", "2,2"],
        &["count", "--degree", "1", "--dim", "3", "--codims", ""],
        &["count", "--degree", "1", "--dim", "3"],
        &["frobnicate"],
        &["table", "--kind", "cnl", "--max-n", "1"],
        &[
            "reducible",
            "--dim",
            "3",
            "--l0",
            "1",
            "--list1",
            "2",
            "--list2",
            "2",
            "--k0",
            "9",
        ],
        &["verify", "--degree", "1", "--dim", "3"],
    ];
    for args in cases {
        let out = gwcount(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty());
    }
    assert_eq!(gwcount(&["--help"]).status.code(), Some(0));
    assert_eq!(gwcount(&["--version"]).status.code(), Some(0));
}

#[test]
fn negative_and_out_of_range_codims_vanish() {
    let rec = json(&[
        "count",
        "--degree",
        "2",
        "--dim",
        "4",
        "--codims",
        "-1,4,4,4,4",
    ]);
    assert_eq!(rec["result"], "0");
    assert_eq!(rec["status"], "ZeroByConvention");
    assert_eq!(rec["query"]["codims"], serde_json::json!([-1, 4, 4, 4, 4]));
}
