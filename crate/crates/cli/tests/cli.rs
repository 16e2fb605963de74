use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn genus2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genus2")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema")
}

/// Runs with `--format json`, validates against `schema/<name>.schema.json` and returns the value.
fn json_run(name: &str, args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = genus2(&all);
    assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).expect("valid JSON");
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_dir().join(format!("{name}.schema.json"))).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{v:#}");
    v
}

fn save(dir: &Path, name: &str, v: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path.to_string_lossy().into_owned()
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn invariants_of_the_order_24_point() {
    let v = json_run("invariants", &["invariants", "--p", "11", "--curve", "0,-1,0,0,0,1"]);
    let got = ints(&v["invariants"]["coords"]);
    // [20:30:-20:-325:64] mod 11, up to J_i -> λ^i J_i.
    let want = [20i64, 30, -20, -325, 64].map(|x| x.rem_euclid(11));
    let scaled = (1..11).any(|l: i64| (0..5).all(|i| (want[i] * l.pow(i as u32 + 1)).rem_euclid(11) == got[i]));
    assert!(scaled, "{got:?}");
}

#[test]
fn count_at_13_has_one_p_rank_one_c2xc2_component() {
    let o = genus2(&["count", "--p", "13", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("p,f,a,aut,dimension,components\n"));
    assert!(text.lines().any(|l| l == "13,1,1,C2xC2,1,1"), "{text}");
}

#[test]
fn classify_x5_plus_1_in_characteristic_3() {
    let v = json_run("classify", &["classify", "--p", "3", "--curve", "1,0,0,0,0,1"]);
    assert_eq!(v["eo"]["f"], 0);
    assert_eq!(v["eo"]["a"], 1);
    let o = genus2(&["classify", "--p", "3", "--curve", "1,0,0,0,0,1", "--eo"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("eo") && l.ends_with("(0,1)")), "{}", stdout(&o));
    let o = genus2(&["classify", "--p", "3", "--curve", "1,0,0,0,0,1", "--aut"]);
    assert!(stdout(&o).contains("reduced_order"));
    assert!(!stdout(&o).contains("hasse_witt"));
}

#[test]
fn json_outputs_round_trip_through_in() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    let inv = json_run("invariants", &["invariants", "--p", "13", "--ext", "2", "--random", "--seed", "5"]);
    let inv_path = save(d, "inv.json", &inv);
    assert_eq!(json_run("invariants", &["invariants", "--in", &inv_path]), inv);

    let cl = json_run("classify", &["classify", "--in", &inv_path]);
    let cl_path = save(d, "classify.json", &cl);
    assert_eq!(json_run("classify", &["classify", "--in", &cl_path]), cl);
    assert_eq!(cl["invariants"], inv["invariants"]);

    // y^2 = x^5 + x^3 + 2x lies on the D4 stratum.
    let d4 = json_run("invariants", &["invariants", "--p", "11", "--curve", "0,2,0,1,0,1"]);
    let d4_path = save(d, "d4.json", &d4);
    let m = json_run("model", &["model", "--stratum", "d4", "--in", &d4_path]);
    assert_eq!(m["matches"], true);
    let m_path = save(d, "model.json", &m);
    assert_eq!(json_run("model", &["model", "--stratum", "d4", "--in", &m_path]), m);
    json_run("classify", &["classify", "--in", &m_path]);

    let gl = json_run("glue", &["glue", "--p", "13", "--l1", "3", "--l2", "-4"]);
    let gl_path = save(d, "glue.json", &gl);
    assert_eq!(json_run("glue", &["glue", "--in", &gl_path]), gl);
    json_run("invariants", &["invariants", "--in", &gl_path]);

    let ct = json_run("count", &["count", "--p", "11"]);
    let ct_path = save(d, "count.json", &ct);
    assert_eq!(json_run("count", &["count", "--in", &ct_path]), ct);
    json_run("verify", &["verify", "--in", &ct_path]);
}

#[test]
fn model_from_a_point_on_the_command_line() {
    let inv = json_run("invariants", &["invariants", "--p", "13", "--curve", "0,2,0,1,0,1"]);
    let coords: Vec<String> = ints(&inv["invariants"]["coords"]).iter().map(|c| c.to_string()).collect();
    let point = coords.join(",");
    let m = json_run("model", &["model", "--p", "13", "--stratum", "d4", "--point", &point]);
    assert_eq!(m["matches"], true);
    let o = genus2(&["model", "--p", "13", "--stratum", "d4", "--point", "1,2,3,4,5"]);
    assert_eq!(code(&o), 1, "a point off the relation is an input error");
}

#[test]
fn glue_reports_both_elliptic_curves() {
    let v = json_run("glue", &["glue", "--p", "11", "--l1", "2", "--l2", "5"]);
    assert_eq!(v["checks"]["maps"], true);
    assert_eq!(v["checks"]["p_rank_additive"], true);
    assert_eq!(v["checks"]["has_c2xc2"], true);
    let ordinary = [&v["e1"], &v["e2"]].iter().filter(|e| e["ordinary"] == true).count();
    assert_eq!(v["eo"]["f"].as_u64().unwrap() as usize, ordinary);
}

#[test]
fn census_writes_files_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_string_lossy().into_owned();
    let v = json_run("census", &["census", "--p", "5", "--out", &out, "--workers", "1"]);
    let csv = dir.path().join("census/p5_k1.csv");
    assert!(csv.exists());
    assert!(dir.path().join("census/p5_k1.manifest.json").exists());
    let rows = std::fs::read_to_string(&csv).unwrap().lines().count() - 1;
    assert_eq!(rows as u64, v["distinct_points"].as_u64().unwrap());
    let summary = save(dir.path(), "summary.json", &v);
    json_run("verify", &["verify", "--in", &summary]);
    json_run("verify", &["verify", "--in", csv.to_str().unwrap()]);

    // Same points with another worker count.
    let w = json_run("census", &["census", "--p", "5", "--out", &out, "--workers", "3"]);
    assert_eq!(v["cells"], w["cells"]);
}

#[test]
fn tampered_census_csv_is_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bad.csv");
    std::fs::write(&csv, "p,k,a0,a1,a2,igusa_key,f,a,aut,strata\n7,1,1,2,3,k,1,1,D4,\n").unwrap();
    let o = genus2(&["verify", "--in", csv.to_str().unwrap()]);
    assert_eq!(code(&o), 2, "{}", stdout(&o));
}

#[test]
fn verify_modes_pass_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let v = json_run("verify", &["verify", "--p", "3", "--mode", "tables"]);
    assert_eq!(v["passed"], true);
    let path = save(dir.path(), "verify.json", &v);
    json_run("verify", &["verify", "--in", &path]);

    let v = json_run("verify", &["verify", "--p", "7", "--mode", "counts"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["table"]["p"], 7);
    let path = save(dir.path(), "counts.json", &v);
    json_run("verify", &["verify", "--in", &path]);

    let mut broken = v.clone();
    broken["report"]["violations"] = serde_json::json!([{
        "k": 2, "eo": {"f": 1, "a": 1}, "aut": "D4", "points": 1, "sample": ["0", "0", "0"], "reason": "planted"
    }]);
    let path = save(dir.path(), "broken.json", &broken);
    assert_eq!(code(&genus2(&["verify", "--in", &path])), 2);
}

#[test]
fn characteristic_two_is_refused() {
    let o = genus2(&["invariants", "--p", "2", "--curve", "1,0,0,0,0,1"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("characteristic 2 is out of scope"));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(code(&genus2(&["invariants", "--bogus"])), 1);
    assert_eq!(code(&genus2(&["frobnicate"])), 1);
    assert_eq!(code(&genus2(&["invariants", "--p", "7"])), 1);
    assert_eq!(code(&genus2(&["invariants", "--p", "9", "--curve", "1,0,0,0,0,1"])), 1);
    assert_eq!(code(&genus2(&["census", "--p", "13", "--ext", "2", "--budget", "1000"])), 1);
    assert_eq!(code(&genus2(&["--help"])), 0);
}

#[test]
fn environment_budget_overrides_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_string_lossy().into_owned();
    let o = Command::new(env!("CARGO_BIN_EXE_genus2"))
        .args(["census", "--p", "7", "--budget", "1000000", "--out", &out])
        .env("GENUS2_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/inv.txt");
    let o = genus2(&["invariants", "--p", "7", "--curve", "1,0,0,0,0,1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("invariants"));
}

#[test]
fn schemas_reject_malformed_output() {
    let mut v = json_run("classify", &["classify", "--p", "7", "--curve", "1,0,0,0,0,1"]);
    v["eo"] = serde_json::json!({"f": 3, "a": 0});
    v["aut"]["label"] = serde_json::json!("C7");
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_dir().join("classify.schema.json")).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    assert_eq!(validator.iter_errors(&v).count(), 2);
}
