//! End-to-end runs of the `crossunion` binary: exit codes, JSON round trips
//! and the documented command examples.

use std::path::PathBuf;
use std::process::{Command, Output};

use crossunion::json::{self, family_to_string, parse_family, parse_pair, parse_witnesses};
use crossunion_core::transforms::is_shifted;
use crossunion_core::{GroundSet, SetFamily};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_crossunion"));
    c.env_remove("CROSSUNION_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("crossunion-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json_of(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("stdout is JSON")
}

#[test]
fn verify_examples_and_exit_codes() {
    let o = run(&["verify", "thm1.5", "--n", "6", "--s", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json_of(&o)[0];
    assert_eq!(r["status"], "confirmed");
    assert_eq!((r["formula_value"].as_u64(), r["oracle_value"].as_u64()), (Some(22), Some(22)));
    assert_eq!(r["witnesses_found"], 2);

    let o = run(&["verify", "thm1.6", "--n", "4", "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("confirmed formula=12 oracle=12 witnesses=1/1"));

    let o = run(&["verify", "prop1.4", "--n", "8", "--s", "2"]);
    assert!(stdout(&o).contains("(pairs 0,2)"));

    let o = run(&["verify", "thm1.6", "--n", "6", "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("skipped-scale"));

    assert_eq!(run(&["verify", "thm9.9", "--n", "4", "--s", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "thm1.5", "--n", "5", "--s", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "thm1.5"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_all_small() {
    let o = run(&["verify", "--all", "--n-max", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let reports = json_of(&o);
    let reports = reports.as_array().unwrap();
    assert!(reports.len() > 400);
    assert!(reports.iter().all(|r| r["status"] != "mismatch"));
}

#[test]
fn search_json_round_trips() {
    let o = run(&["search", "pair", "--n", "6", "--s", "3", "--json", "--threads", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json_of(&o);
    assert_eq!(doc["max"], 21);
    assert!(doc["nodes"].as_u64().unwrap() > 0);
    assert!(doc["ms"].is_u64());
    let witnesses = parse_witnesses(&doc).unwrap();
    assert_eq!(witnesses.len(), 2);
    for w in &witnesses {
        for f in w {
            let text = family_to_string(f);
            assert_eq!(parse_family(&text).unwrap(), *f);
        }
    }
    let emitted: Vec<&serde_json::Value> = doc["witnesses"].as_array().unwrap().iter().collect();
    for (w, raw) in witnesses.iter().zip(emitted) {
        let again: Vec<serde_json::Value> = w.iter().map(json::family_to_value).collect();
        assert_eq!(serde_json::Value::Array(again), *raw);
    }

    let o = run(&["search", "pair", "--forbid-empty", "--n", "5", "--s", "2", "--json"]);
    assert_eq!(json_of(&o)["max"], 10);
    let o = run(&["search", "co-union-pair", "--n", "4", "--json"]);
    assert_eq!(json_of(&o)["max"], 10);
    let o = run(&["search", "min-pair", "--n", "5", "--s", "2", "--json"]);
    assert_eq!(json_of(&o)["max"], 5);
    assert_eq!(run(&["search", "pair", "--n", "7", "--s", "3"]).status.code(), Some(2));
}

#[test]
fn threads_from_environment() {
    let o = bin()
        .args(["search", "triple", "--n", "5", "--s", "2"])
        .env("CROSSUNION_THREADS", "3")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("on 3 thread(s)"));
    assert!(stdout(&o).starts_with("max 12\n"));
}

#[test]
fn compress_examples() {
    let levels = temp(
        "levels.json",
        r#"[{"n":6,"sets":[[1],[2],[3],[4],[5],[6]]},
            {"n":6,"sets":[[1,2],[1,3],[1,4],[1,5],[1,6],[2,3],[2,4],[2,5],[2,6],[3,4],[3,5],[3,6],[4,5],[4,6],[5,6]]}]"#,
    );
    let o = run(&["compress", "--input", levels.to_str().unwrap(), "--s", "3", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json_of(&o);
    assert_eq!(doc["trace"], serde_json::json!([]));
    let input = parse_pair(&std::fs::read_to_string(&levels).unwrap()).unwrap();
    assert_eq!(parse_pair(&doc["pair"].to_string()).unwrap(), input);

    let empties = temp("empties.json", r#"[{"n":3,"sets":[[]]},{"n":3,"sets":[[]]}]"#);
    let out = std::env::temp_dir().join(format!("crossunion-cli-{}/out.json", std::process::id()));
    let o = run(&["compress", "--input", empties.to_str().unwrap(), "--s", "1", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written = parse_pair(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written, parse_pair(&std::fs::read_to_string(&empties).unwrap()).unwrap());

    let tops = temp("tops.json", r#"[{"n":4,"sets":[[1,2,3]]},{"n":4,"sets":[[1,2,3]]}]"#);
    let o = run(&["compress", "--input", tops.to_str().unwrap(), "--s", "3", "--trace"]);
    let doc = json_of(&o);
    let p = parse_pair(&doc["pair"].to_string()).unwrap();
    assert!(p.first.is_full_level() && p.second.is_full_level());
    assert!(p.is_cross_s_union(3).unwrap());
    assert!(p.total_len() > 2);
    let steps = doc["trace"].as_array().unwrap();
    assert!(!steps.is_empty());
    // Replaying the recorded sizes: each step grows the total.
    let mut total = 2;
    for st in steps {
        let before: u64 = st["sizes_before"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).sum();
        let after: u64 = st["sizes_after"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).sum();
        assert_eq!(before, total);
        assert!(after > before);
        total = after;
    }
    assert_eq!(total as usize, p.total_len());

    let bad = temp("bad.json", r#"[{"n":4,"sets":[[1],[1,2]]},{"n":4,"sets":[[1]]}]"#);
    let o = run(&["compress", "--input", bad.to_str().unwrap(), "--s", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let broken = temp("broken.json", r#"[{"n":4,"sets":[[1,1]]}"#);
    assert_eq!(run(&["compress", "--input", broken.to_str().unwrap(), "--s", "2"]).status.code(), Some(2));
}

#[test]
fn shift_family_and_pair() {
    let f = temp("fam.json", r#"{"n":4,"sets":[[3,4],[2,4]]}"#);
    let o = run(&["shift", "--input", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let g = parse_family(&stdout(&o)).unwrap();
    assert_eq!(g.len(), 2);
    assert!(is_shifted(&g));

    let o = run(&["shift", "--input", f.to_str().unwrap(), "--i", "1", "--j", "4"]);
    assert_eq!(stdout(&o).trim(), r#"{"n":4,"sets":[[1,2],[1,3]]}"#);

    let p = temp("pair.json", r#"[{"n":4,"sets":[[3,4]]},{"n":4,"sets":[[4]]}]"#);
    let o = run(&["shift", "--input", p.to_str().unwrap()]);
    let q = parse_pair(&stdout(&o)).unwrap();
    assert!(is_shifted(&q.first) && is_shifted(&q.second));
    assert!(q.is_cross_s_union(2).unwrap());
}

#[test]
fn bounds_commands() {
    let o = run(&["bounds", "table", "--n-max", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let row = |n: &str, s: &str| rows.iter().find(|r| &r[0] == n && &r[1] == s).unwrap().clone();
    assert_eq!((&row("4", "2")[2], &row("4", "2")[3]), ("1,1", "8"));
    assert_eq!((&row("6", "3")[2], &row("6", "3")[3]), ("0,3;1,2", "21"));
    assert_eq!((&row("10", "2")[2], &row("10", "2")[3]), ("0,2", "46"));
    assert_eq!(run(&["bounds", "table", "--n-max", "41"]).status.code(), Some(2));

    assert_eq!(stdout(&run(&["bounds", "binom", "--n", "40", "--k", "20"])).trim(), "137846528820");
    assert_eq!(stdout(&run(&["bounds", "union-family", "--n", "5", "--s", "3"])).trim(), "10");
    assert_eq!(stdout(&run(&["bounds", "union-sum", "--n", "3", "--s", "2"])).trim(), "8");
    assert_eq!(stdout(&run(&["bounds", "gap", "--n", "12", "--r", "2"])).trim(), "54");
    assert_eq!(stdout(&run(&["bounds", "maximal-pairs", "--n", "8", "--s", "2"])).trim(), "pairs 0,2 value 29");
    let o = run(&["bounds", "check", "--id", "odd-middle", "--s", "4", "--json"]);
    let doc = json_of(&o);
    assert_eq!((doc["lhs"].as_str(), doc["rhs"].as_str(), doc["holds"].as_bool()), (Some("28"), Some("35"), Some(true)));
    assert_eq!(run(&["bounds", "check", "--id", "odd-middle", "--s", "3"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "gap", "--n", "4", "--r", "3"]).status.code(), Some(2));
}

#[test]
fn oracle_is_seeded() {
    let args = ["oracle", "--cases", "300", "--n-max", "7", "--exhaustive-n", "3", "--seed", "42", "--json"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&run(&args)));
    let doc = json_of(&a);
    assert_eq!(doc["seed"], 42);
    assert!(doc["random"].as_array().unwrap().iter().all(|p| p["failures"] == 0 && p["cases"] == 300));
}

#[test]
fn family_output_is_canonical() {
    let f = SetFamily::empty(GroundSet::new(4).unwrap());
    assert_eq!(family_to_string(&f), r#"{"n":4,"sets":[]}"#);
}
