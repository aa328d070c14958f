use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exactkit"))
        .args(args)
        .env_remove("EXACTKIT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "--category", "psets", "--max-size", "4"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--category", "psets", "--max-size", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--category", "nosuch", "--max-size", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--category", "psets", "--max-size", "3", "--bogus"]).status.code(), Some(2));
    let groups = run(&["verify", "--category", "groups-demo", "--max-size", "8"]);
    assert_eq!(groups.status.code(), Some(1));
    assert!(stdout(&groups).contains("FAIL groups-demo strict-monos-compose f="));
}

#[test]
fn verify_json_is_versioned() {
    let o = run(&["verify", "--category", "cmon", "--max-size", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["violations"], 0);
}

#[test]
fn hall_table_is_binomial_and_deterministic() {
    let a = run(&["hall", "--category", "psets", "--max-size", "4"]);
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    assert!(text.starts_with("z_key,x_key,y_key,count\n"));
    assert!(text.contains("FinPointedSet { n: 3 },FinPointedSet { n: 1 },FinPointedSet { n: 2 },3"));
    assert_eq!(stdout(&run(&["hall", "--category", "psets", "--max-size", "4"])), text);
    let empty = run(&["hall", "--category", "psets", "--max-size", "0"]);
    assert_eq!(stdout(&empty), "z_key,x_key,y_key,count\n");
    assert_eq!(run(&["hall", "--category", "cmon", "--max-size", "3", "--check"]).status.code(), Some(0));
    assert_eq!(run(&["hall", "--category", "polynorm", "--max-size", "2"]).status.code(), Some(2));
}

#[test]
fn fuzz_reports_seed_and_replays() {
    let a = run(&["fuzz", "--monad", "zinf", "--n", "5", "--trials", "1000", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).contains("# seed=42"));
    let b = run(&["fuzz", "--monad", "zinf", "--n", "5", "--trials", "1000", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run(&["fuzz", "--monad", "f1r:3", "--n", "3"]).status.code(), Some(0));
    assert_eq!(run(&["fuzz", "--monad", "nosuch"]).status.code(), Some(2));
}

#[test]
fn seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_exactkit"))
        .args(["fuzz", "--monad", "d", "--trials", "10"])
        .env("EXACTKIT_SEED", "9")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("# seed=9"));
}

#[test]
fn fmt_round_trips() {
    let dir = std::env::temp_dir().join(format!("exactkit-fmt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("space.json");
    std::fs::write(&path, r#"{"schema":1,"kind":"normed-space","dim":2,"generators":[["1","0"],["0","1"],["-1","0"],["0","-1"],["1/4","1/4"]]}"#).unwrap();
    let o = run(&["fmt", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("1/4"));
    std::fs::write(&path, stdout(&o)).unwrap();
    assert_eq!(stdout(&run(&["fmt", path.to_str().unwrap()])), stdout(&o));
    std::fs::write(&path, r#"{"schema":1,"kind":"pointed-map","dom":2,"cod":2,"table":[1,1]}"#).unwrap();
    assert_eq!(run(&["fmt", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn quiver_category_from_file() {
    let dir = std::env::temp_dir().join(format!("exactkit-quiver-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2.json");
    std::fs::write(&path, r#"{"schema":1,"kind":"quiver","vertices":2,"arrows":[[0,1]]}"#).unwrap();
    let cat = format!("quiver:{}", path.display());
    assert_eq!(run(&["verify", "--category", &cat, "--max-size", "3"]).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}
