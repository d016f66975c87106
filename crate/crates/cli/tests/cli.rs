//! Runs the built binary. Golden files live in tests/golden; regenerate
//! them with `UPDATE_GOLDEN=1 cargo test -p jobsphere-cli`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const NOW: &str = "2026-03-02T09:00:00Z";

fn core_data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data")
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run(data: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jobsphere"))
        .arg("--data-dir")
        .arg(data)
        .args(["--now", NOW])
        .args(args)
        .env_remove("DATA_DIR")
        .output()
        .unwrap()
}

fn json_ok(data: &Path, args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(data, &a);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?} printed invalid JSON: {e}"))
}

fn check_golden(name: &str, v: &Value) {
    let p = golden_path(name);
    // Paths inside messages depend on where the repo is checked out.
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).to_str().unwrap().to_string();
    let text = serde_json::to_string_pretty(v).unwrap().replace(&root, "<cli>") + "\n";
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&p, &text).unwrap();
    }
    let want = std::fs::read_to_string(&p).unwrap_or_else(|_| panic!("missing golden {}", p.display()));
    assert_eq!(text, want, "{name} drifted from its golden file");
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const PROFILE: &str = r#"{
  "user_id": "cli",
  "skills": ["excel", "tally", "accounting", "customer_service"],
  "education_level": "bachelor",
  "age": 24,
  "citizen": true,
  "home": {"lat": 30.901, "lon": 75.857},
  "desired_salary_min": 15000.0,
  "preferences": {"categories": ["Banking"], "job_types": []},
  "profile_text": "commerce graduate with tally and excel looking for banking jobs in ludhiana"
}"#;

#[test]
fn every_subcommand_emits_golden_json() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data");
    let s = |p: &Path| p.to_str().unwrap().to_string();

    let ingest = json_ok(&data, &["ingest", "--source", &s(&core_data().join("fixtures/ingest/alerts"))]);
    assert_eq!((ingest["created"].as_u64(), ingest["errors"].as_u64()), (Some(2), Some(1)));
    check_golden("ingest.json", &ingest);

    let build = json_ok(&data, &["index", "build"]);
    assert_eq!(build["documents"], 35);
    check_golden("index_build.json", &build);
    assert_eq!(json_ok(&data, &["index", "stats"]), build);

    let answer = json_ok(&data, &["query", "application deadline"]);
    assert_eq!(answer["answered"], true);
    assert!(!answer["citations"].as_array().unwrap().is_empty());
    check_golden("query.json", &answer);

    let profile = write(tmp.path(), "profile.json", PROFILE);
    let recs = json_ok(&data, &["recommend", "--profile", &s(&profile), "--top", "5", "--explain"]);
    assert_eq!(recs.as_array().unwrap().len(), 5);
    check_golden("recommend.json", &recs);
    let plain = json_ok(&data, &["recommend", "--profile", &s(&profile), "--top", "5"]);
    assert!(plain[0].get("explanation").is_none());

    let resume = json_ok(&data, &["resume", "parse", &s(&core_data().join("resumes/r01.txt"))]);
    let gold: Value = serde_json::from_str(&std::fs::read_to_string(core_data().join("resumes/r01.json")).unwrap()).unwrap();
    assert_eq!(resume["skills"], gold["skills"]);
    check_golden("resume.json", &resume);

    let bp = write(tmp.path(), "bp.json", r#"{"math": 3, "gk": 2}"#);
    let test = json_ok(&data, &["testgen", "--blueprint", &s(&bp), "--seed", "7"]);
    assert!(!test.to_string().contains("answer_key"));
    check_golden("testgen.json", &test);
    let keyed = json_ok(&data, &["testgen", "--blueprint", &s(&bp), "--seed", "7", "--answer-key"]);
    assert_eq!(keyed["test_id"], test["test_id"]);
    assert!(keyed["questions"][0]["answer_key"].is_string());
}

#[test]
fn testgen_twice_gives_identical_output() {
    let tmp = tempfile::tempdir().unwrap();
    let bp = write(tmp.path(), "bp.json", r#"{"reasoning": 4, "english": 2}"#);
    let a = run(tmp.path(), &["testgen", "--blueprint", bp.to_str().unwrap(), "--seed", "7", "--json"]);
    let b = run(tmp.path(), &["testgen", "--blueprint", bp.to_str().unwrap(), "--seed", "7", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(tmp.path(), &["testgen", "--blueprint", bp.to_str().unwrap(), "--seed", "8", "--json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn table_and_json_carry_the_same_answer() {
    let tmp = tempfile::tempdir().unwrap();
    let json = json_ok(tmp.path(), &["query", "forest guard vacancies"]);
    let table = String::from_utf8(run(tmp.path(), &["query", "forest guard vacancies"]).stdout).unwrap();
    assert!(table.contains(json["text"].as_str().unwrap()));
    for c in json["citations"].as_array().unwrap() {
        assert!(table.contains(c["chunk_id"].as_str().unwrap()));
    }
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let code = |args: &[&str]| run(d, args).status.code();

    let missing = run(d, &["recommend", "--profile", "missing.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("--profile"));
    assert_eq!(code(&["query", "x", "--lang", "fr"]), Some(2));
    assert_eq!(code(&["query", "x", "--k", "0"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["ingest", "--source", "no/such/dir"]), Some(2));
    let cfg = write(d, "bad.toml", "sede = 1\n");
    assert_eq!(code(&["--config", cfg.to_str().unwrap(), "index", "stats"]), Some(2));

    // Domain errors.
    assert_eq!(code(&["index", "stats"]), Some(1));
    assert_eq!(code(&["query", "   "]), Some(1));
    let bp = write(d, "big.json", r#"{"gk": 500}"#);
    let out = run(d, &["testgen", "--blueprint", bp.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "domain");
    let bad = write(d, "p.json", r#"{"user_id": "x"}"#);
    assert_eq!(code(&["recommend", "--profile", bad.to_str().unwrap()]), Some(1));

    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn config_file_sets_defaults_and_flags_win() {
    let tmp = tempfile::tempdir().unwrap();
    let from_file = tmp.path().join("from-file");
    let from_flag = tmp.path().join("from-flag");
    let cfg = write(tmp.path(), "c.toml", &format!("data_dir = {:?}\nseed = 7\n", from_file.to_str().unwrap()));
    let bp = write(tmp.path(), "bp.json", r#"{"math": 2}"#);
    let cfg_s = cfg.to_str().unwrap();
    let bp_s = bp.to_str().unwrap();
    let bin = || {
        let mut c = Command::new(env!("CARGO_BIN_EXE_jobsphere"));
        c.env_remove("DATA_DIR");
        c
    };
    let via_file = bin().args(["--config", cfg_s, "testgen", "--blueprint", bp_s, "--json"]).output().unwrap();
    let via_seed = bin().args(["testgen", "--blueprint", bp_s, "--seed", "7", "--json"]).current_dir(tmp.path()).output().unwrap();
    assert_eq!(via_file.stdout, via_seed.stdout);
    let overridden = bin().args(["--config", cfg_s, "testgen", "--blueprint", bp_s, "--seed", "8", "--json"]).output().unwrap();
    let v: Value = serde_json::from_slice(&overridden.stdout).unwrap();
    assert_eq!(v["seed"], 8);

    let st = bin().args(["--config", cfg_s, "index", "build"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(from_file.join("kb").is_dir());
    let st = bin().args(["--config", cfg_s, "--data-dir", from_flag.to_str().unwrap(), "index", "build", "--ef-search", "32", "--json"]).output().unwrap();
    let v: Value = serde_json::from_slice(&st.stdout).unwrap();
    assert_eq!(v["index"]["config"]["ef_search"], 32);
    assert!(from_flag.join("kb").is_dir());
}
