use std::path::{Path, PathBuf};
use std::process::Command;

use fairdiv_cli::demos::NAMES;
use fairdiv_cli::io::InstanceFile;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn fairdiv(args: &[&str]) -> Run {
    fairdiv_env(args, &[])
}

fn fairdiv_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_fairdiv"))
        .args(args)
        .env_remove("FAIRDIV_BUDGET")
        .envs(env.iter().copied())
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn check_reports_witness_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"bundles": [[1, 3], [2]]}"#);
    let lattice = data("lattice.json");

    let r = fairdiv(&["check", "--instance", &lattice, "--allocation", &a, "--criterion", "efx-plus-minus"]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    assert!(r.stdout.contains("own-item 3"), "{}", r.stdout);

    let r = fairdiv(&["check", "--instance", &lattice, "--allocation", &a, "--criterion", "efx-plus-minus", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["pass"], false);
    assert_eq!(v["witnesses"][0]["violations"][0]["item"], 3);
    assert_eq!(v["witnesses"][0]["own_classes"]["minus"], serde_json::json!([3]));

    let r = fairdiv(&["check", "--instance", &lattice, "--allocation", &a, "--criterion", "ef1"]);
    assert_eq!(r.code, 0);

    let missing = write(dir.path(), "m.json", r#"{"bundles": [[1], [2]]}"#);
    let r = fairdiv(&["check", "--instance", &lattice, "--allocation", &missing, "--criterion", "ef1"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("item 3 is not allocated"), "{}", r.stderr);

    let r = fairdiv(&["check", "--instance", &lattice, "--allocation", &a, "--criterion", "efy"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("efx-plus-minus"), "{}", r.stderr);
}

#[test]
fn all_witnesses_lists_every_failing_pair() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "i.json",
        r#"{"agents": 3, "items": 2, "identical": true, "utilities": [{"type": "additive", "values": [1, 1]}]}"#,
    );
    let a = write(dir.path(), "a.json", r#"{"bundles": [[1, 2], [], []]}"#);
    let r =
        fairdiv(&["check", "--instance", &inst, "--allocation", &a, "--criterion", "ef", "--all-witnesses", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 2);
    let r = fairdiv(&["check", "--instance", &inst, "--allocation", &a, "--criterion", "ef", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 1);
}

#[test]
fn malformed_files_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"bundles": [[1]]}"#);
    let cases = [
        (
            r#"{"agents": 1, "items": 1, "utilities": [{"type": "table", "values": [0, 0.5]}]}"#,
            "utilities[0].values[1]",
        ),
        (r#"{"agents": 1, "items": 1, "utilities": [{"type": "table", "values": [3, 1]}]}"#, "empty set has value 0"),
        (r#"{"agents": 1, "items": 1, "utilities": [{"type": "cubic", "values": [0, 1]}]}"#, "utilities[0].type"),
        (
            r#"{"agents": 1, "items": 1, "utilities": [{"type": "superset", "value": 1, "of": [2]}]}"#,
            "item 2 is outside",
        ),
        (r#"{"agents": 2, "items": 1, "utilities": [{"type": "additive", "values": [1]}]}"#, "expected 2 utility"),
        ("{\"agents\": 1,\n \"items\": 1,\n \"utilities\": [}", "line 3"),
    ];
    for (text, needle) in cases {
        let inst = write(dir.path(), "i.json", text);
        let r = fairdiv(&["check", "--instance", &inst, "--allocation", &a, "--criterion", "ef"]);
        assert_eq!(r.code, 2, "{text}");
        assert!(r.stderr.contains(needle), "{needle} not in {}", r.stderr);
    }
}

#[test]
fn solve_flaw_instance() {
    let flaw = data("flaw.json");
    let r = fairdiv(&["solve", "--instance", &flaw, "--algorithm", "aziz-ref", "--order", "1,2,3"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("allocation: ({1,2,3},{})"), "{}", r.stdout);
    assert!(r.stderr.contains("not EF1"), "{}", r.stderr);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("alloc.json").display().to_string();
    let r = fairdiv(&["solve", "--instance", &flaw, "--algorithm", "ef1-two", "--order", "1,2,3", "--out", &out]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("ef1: pass"));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "{\"bundles\":[[1],[2,3]]}\n");
    let r = fairdiv(&["check", "--instance", &flaw, "--allocation", &out, "--criterion", "ef1"]);
    assert_eq!(r.code, 0);
}

#[test]
fn solve_preconditions_and_orders() {
    let flaw = data("flaw.json");
    let r = fairdiv(&["solve", "--instance", &flaw, "--algorithm", "efx-chores"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("monotone-nonincreasing"), "{}", r.stderr);
    let r = fairdiv(&["solve", "--instance", &flaw, "--algorithm", "boolean"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("'boolean'"), "{}", r.stderr);
    let r = fairdiv(&["solve", "--instance", &flaw, "--algorithm", "ef1-two", "--order", "1,1,2"]);
    assert_eq!(r.code, 2);
    let r = fairdiv(&["solve", "--instance", &flaw, "--algorithm", "ef1-two", "--order", "1,2"]);
    assert_eq!(r.code, 2);
    let r = fairdiv(&["solve", "--instance", &data("chores.json"), "--algorithm", "efx-chores", "--order", "1,2"]);
    assert_eq!(r.code, 2);
    let r = fairdiv(&["solve", "--instance", &flaw, "--algorithm", "greedy"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("aziz-ref"));
}

#[test]
fn solve_trace_is_json_lines() {
    let chores = data("chores.json");
    let r = fairdiv(&["solve", "--instance", &chores, "--algorithm", "efx-chores", "--trace", "--json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let lines: Vec<serde_json::Value> = r.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (report, rounds) = lines.split_last().unwrap();
    assert_eq!(report["command"], "solve");
    assert_eq!(rounds[0]["event"], "start");
    assert_eq!(rounds.len() as u64, report["rounds"].as_u64().unwrap());
    assert!(rounds.iter().all(|r| r["potential"]["pool"].is_u64()));

    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.jsonl").display().to_string();
    let r = fairdiv(&["solve", "--instance", &chores, "--algorithm", "efx-chores", "--trace", &trace]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("algorithm: efx-chores"));
    assert_eq!(std::fs::read_to_string(&trace).unwrap().lines().count(), rounds.len());
}

#[test]
fn search_modes() {
    let lattice = data("lattice.json");
    let r = fairdiv(&["search", "--instance", &lattice, "--criterion", "efx-plus-minus", "--mode", "count"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("0 / 8"), "{}", r.stdout);

    let r = fairdiv(&["search", "--instance", &lattice, "--criterion", "ef1", "--mode", "first"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("found: ({1,2,3},{})"), "{}", r.stdout);

    let r = fairdiv(&["search", "--instance", &lattice, "--criterion", "ef1", "--mode", "all", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["all"].as_array().unwrap().len() as u64, v["count"].as_u64().unwrap());

    let r = fairdiv(&["search", "--instance", &data("single.json"), "--criterion", "ef"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("1 / 1"));
}

#[test]
fn search_jobs_do_not_change_output() {
    let lattice = data("lattice.json");
    for mode in ["first", "all", "count"] {
        let one = fairdiv(&["search", "--instance", &lattice, "--criterion", "ef1", "--mode", mode, "--json"]);
        let eight =
            fairdiv(&["search", "--instance", &lattice, "--criterion", "ef1", "--mode", mode, "--jobs", "8", "--json"]);
        assert_eq!(one.stdout, eight.stdout);
    }
}

#[test]
fn search_budget_from_environment() {
    let lattice = data("lattice.json");
    let r = fairdiv_env(&["search", "--instance", &lattice, "--criterion", "ef1"], &[("FAIRDIV_BUDGET", "7")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("8"), "{}", r.stderr);
    let r = fairdiv_env(&["search", "--instance", &lattice, "--criterion", "ef1"], &[("FAIRDIV_BUDGET", "8")]);
    assert_eq!(r.code, 0);
    let r = fairdiv_env(&["search", "--instance", &lattice, "--criterion", "ef1"], &[("FAIRDIV_BUDGET", "lots")]);
    assert_eq!(r.code, 2);
}

#[test]
fn gen_is_deterministic_and_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json").display().to_string();
    let b = dir.path().join("b.json").display().to_string();
    let args = |out: &str| {
        vec!["gen", "--class", "chores", "--agents", "3", "--items", "4", "--seed", "11", "--out"]
            .into_iter()
            .map(String::from)
            .chain([out.to_string()])
            .collect::<Vec<_>>()
    };
    for out in [&a, &b] {
        let args = args(out);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(fairdiv(&refs).code, 0);
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let inst = InstanceFile::parse(&text, "a").unwrap().to_instance("a").unwrap();
    assert!(inst.flags().class.nonincreasing);
    assert_eq!(InstanceFile::from_instance(&inst).to_json(), text);

    let r = fairdiv(&["solve", "--instance", &a, "--algorithm", "cut-choose"]);
    assert_eq!(r.code, 2, "three agents");

    let r = fairdiv(&["gen", "--class", "general", "--agents", "2", "--items", "25"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("cap"), "{}", r.stderr);
    let r = fairdiv(&["gen", "--class", "additive", "--agents", "2", "--items", "25", "--min", "-3", "--max", "3"]);
    assert_eq!(r.code, 0);
}

#[test]
fn demos_match_golden_files() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for name in NAMES {
        let r = fairdiv(&["demo", "--name", name]);
        assert_eq!(r.code, 0, "{name}: {}", r.stdout);
        let expected = std::fs::read_to_string(golden.join(format!("{name}.txt"))).unwrap();
        assert_eq!(r.stdout, expected, "{name}");
        let r = fairdiv(&["demo", "--name", name, "--json"]);
        let expected = std::fs::read_to_string(golden.join(format!("{name}.json"))).unwrap();
        assert_eq!(r.stdout, expected, "{name}");
    }
}

#[test]
fn unknown_demo_lists_names() {
    let r = fairdiv(&["demo", "--name", "nope"]);
    assert_eq!(r.code, 2);
    for name in NAMES {
        assert!(r.stderr.contains(name));
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(fairdiv(&[]).code, 2);
    assert_eq!(fairdiv(&["check"]).code, 2);
    assert_eq!(fairdiv(&["frobnicate"]).code, 2);
    let r = fairdiv(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("search"));
}
