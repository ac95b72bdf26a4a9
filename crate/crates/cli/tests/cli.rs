use std::process::{Command, Output};

use serde_json::Value;

fn ntl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ntl"))
        .args(args)
        .env_remove("NTL_MAX_COSETS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = ntl(&all);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is one JSON document");
    (out.status.code().unwrap(), v)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn tensor_of_cyclic_groups() {
    let (code, v) = json(&["tensor", "--group", "C4", "--other", "C6", "--trivial-actions"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], 2);
    assert_eq!(v["result"]["abelian_invariants"], serde_json::json!([2]));
    assert_eq!(v["result"]["tensor_count_m"], 2);
    assert!(v["stats"]["cosets_defined"].as_u64().unwrap() > 0);
    assert_eq!(v["query"]["actions"], "trivial");
}

#[test]
fn thmc_s3_all_true() {
    let (code, v) = json(&["thmc", "--group", "S3"]);
    assert_eq!(code, 0);
    let props = v["details"]["properties"].as_array().unwrap();
    assert_eq!(props.len(), 7);
    assert!(props.iter().all(|p| p["value"] == true));
    assert_eq!(v["result"]["order"], 6);
}

#[test]
fn thmc_z_all_false_with_witness() {
    let (code, v) = json(&["thmc", "--group", "Z"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], "infinite");
    assert!(v["details"]["properties"].as_array().unwrap().iter().all(|p| p["value"] == false));
    assert!(v["details"]["witness"].as_str().unwrap().contains("infinite order"));
}

#[test]
fn nu_of_z_exceeds_budget() {
    let out = ntl(&["nu", "--group", "Z"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("BudgetExceeded"), "{}", stderr(&out));
}

#[test]
fn structured_output_is_deterministic() {
    let run = || {
        let (_, mut v) = json(&["tensors", "--group", "S3"]);
        v["stats"]["elapsed_ms"] = Value::Null;
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn json_keys_are_sorted() {
    let out = ntl(&["--json", "nu", "--group", "C3"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with(r#"{"details":"#), "{s}");
    let v: Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["result"]["order"], 27);
}

#[test]
fn env_budget_and_flag_precedence() {
    let bin = env!("CARGO_BIN_EXE_ntl");
    let tight = Command::new(bin)
        .args(["nu", "--group", "S3"])
        .env("NTL_MAX_COSETS", "10")
        .output()
        .unwrap();
    assert_eq!(tight.status.code(), Some(1));
    assert!(stderr(&tight).contains("BudgetExceeded"));
    let flag_wins = Command::new(bin)
        .args(["nu", "--group", "S3", "--max-cosets", "100000"])
        .env("NTL_MAX_COSETS", "10")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0), "{}", stderr(&flag_wins));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ntl(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ntl(&["tensor"]).status.code(), Some(2));
    assert_eq!(ntl(&["nu", "--group", "C2", "--max-cosets", "0"]).status.code(), Some(2));
    let conj = ntl(&["tensor", "--group", "C4", "--other", "C6", "--conjugation"]);
    assert_eq!(conj.status.code(), Some(2));
    let bare = ntl(&["tensor", "--group", "C4", "--other", "C6"]);
    assert_eq!(bare.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one_with_code() {
    let out = ntl(&["nu", "--group", "Q16"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("UnknownCatalogName"));
    let (code, v) = json(&["three-connected", "--group", "C4", "--m", "a^2", "--n", "a^2"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "NotGeneratingPair");
}

#[test]
fn action_file() {
    let dir = std::env::temp_dir().join(format!("ntl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("inv.ntl");
    std::fs::write(
        &path,
        "group C2 { gens: a; rels: a^2; }\n\
         group C4 { gens: b; rels: b^4; }\n\
         action inv { from: C2; to: C4; a => (b -> b^-1); }\n\
         action triv { from: C4; to: C2; b => (a -> a); }\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (code, v) = json(&["tensor", "--group", "C2", "--other", "C4", "--action", p]);
    assert_eq!(code, 0);
    // a (x) b^2 = (a (x) b)^2 and nothing kills a (x) b.
    assert_eq!(v["result"]["order"], 4);

    let bad = dir.join("sq.ntl");
    std::fs::write(
        &bad,
        "group C5 { gens: a; rels: a^5; }\n\
         group D { gens: b; rels: b^5; }\n\
         action s { from: C5; to: D; a => (b -> b^2); }\n\
         action t { from: D; to: C5; b => (a -> a^2); }\n",
    )
    .unwrap();
    let out = ntl(&["tensor", "--group", "C5", "--other", "D", "--action", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("Incompatible"), "{}", stderr(&out));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn invariants_of_small_groups() {
    let order = |which: &str, g: &str| json(&["invariant", which, "--group", g]).1["result"]["order"].clone();
    assert_eq!(order("schur", "C2x2"), 2);
    assert_eq!(order("stable-pi2", "C2"), 2);
    assert_eq!(order("pi4-s2", "C3"), 1);
    assert_eq!(order("j2", "S3"), 2);
    assert_eq!(order("delta", "C4"), 4);
    assert_eq!(order("delta-tilde", "C2"), 1);
}

#[test]
fn pushout_and_three_connected() {
    let (_, v) = json(&["pushout", "--group", "C2x2", "--m", "a,b", "--n", "a,b"]);
    assert_eq!(v["result"]["order"], 16);
    assert_eq!(v["details"]["pi2"]["order"], 4);
    let (code, v) = json(&["three-connected", "--group", "C6", "--m", "a^3", "--n", "a^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["verdict"], "3-connected");
}

#[test]
fn bounds_with_chains() {
    let (_, v) = json(&["bound", "thma", "2", "3", "4", "5"]);
    assert_eq!(v["details"]["bound"], 120);
    assert_eq!(v["chain"].as_array().unwrap().len(), 3);
    assert_eq!(json(&["bound", "thmb", "2", "2"]).1["details"]["bound"], 4);
    assert_eq!(json(&["bound", "pushout", "2", "3", "4"]).1["details"]["bound"], 24);
    assert_eq!(json(&["bound", "thmb", "0", "2"]).0, 2);
}

#[test]
fn wedge_and_triad() {
    assert_eq!(json(&["wedge", "--group", "C4", "--other", "C8"]).1["result"]["order"], 4);
    assert_eq!(json(&["wedge", "--group", "C8", "--other", "C27"]).1["result"]["order"], 1);
    let (_, v) = json(&["triad", "--group", "C2", "--other", "C4", "--trivial-actions", "-p", "1", "-q", "2"]);
    assert_eq!(v["result"]["order"], 2);
    assert_eq!(v["details"]["dimension"], 4);
}

#[test]
fn infinite_abelian_tensor_fast_path() {
    let (code, v) = json(&["tensor", "--group", "Z", "--other", "C6", "--trivial-actions"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], 6);
    let (_, v) = json(&["tensor", "--group", "Z"]);
    assert_eq!(v["result"]["order"], "infinite");
}

#[test]
fn finiteness_and_exponent() {
    let (_, v) = json(&["finiteness", "--group", "S3"]);
    assert_eq!(v["details"]["embeds_in_delta"], true);
    assert_eq!(v["details"]["status"], "finite");
    let (_, v) = json(&["finiteness", "--group", "Z"]);
    assert_eq!(v["details"]["status"], "infinite");
    let (_, v) = json(&["exponent-check", "--group", "C3"]);
    assert_eq!(v["details"]["tensor_exponent"], 3);
}

#[test]
fn verify_scopes() {
    let (code, v) = json(&["verify", "--group", "S3"]);
    assert_eq!(code, 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["name"].as_str().unwrap().starts_with("S3: ")));
    let out = ntl(&["verify", "--group", "C2", "--skip-eta-relators", "--max-cosets", "20000"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL C2: decomposition"));
}
