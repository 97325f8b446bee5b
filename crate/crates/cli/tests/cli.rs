use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prodinv")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn owen_point_of_ex1() {
    let out = run(&["owen", &fixture("ex1.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "P1: 1, P2: 2\n");
    let out = run(&["owen", &fixture("ex1_prime.json")]);
    assert_eq!(stdout(&out), "P1: 2, P2: 1\n");
}

#[test]
fn game_table() {
    let out = run(&["game", &fixture("ex1.json")]);
    assert_eq!(stdout(&out), "coalition  cost\n{1}        2\n{2}        2\n{1,2}      3\n");
    let prime = run(&["game", &fixture("ex1_prime.json")]);
    assert_eq!(stdout(&prime), stdout(&out));
}

#[test]
fn verify_agrees() {
    let out = run(&["verify", &fixture("ex1.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "3/3 coalitions: closed-form = oracle = LP\n");
}

#[test]
fn verify_skips_oversized_oracle() {
    let out = run(&["--max-oracle-units", "1", "verify", &fixture("ex1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("1/3 coalitions: closed-form = oracle = LP"), "{text}");
    assert!(text.contains("2/3 coalitions: oracle skipped"), "{text}");
}

#[test]
fn solve_one_coalition() {
    let out = run(&["solve", &fixture("ex1.json"), "--coalition", "1"]);
    let text = stdout(&out);
    assert!(text.starts_with("coalition {1}\ncost: 2\nprices: 2, 1\n"), "{text}");
    let bad = run(&["solve", &fixture("ex1.json"), "--coalition", "3"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("out of range"));
}

#[test]
fn core_verdicts_set_exit_code() {
    let inside = run(&["core", &fixture("ex1.json"), "--alloc", "1,2"]);
    assert_eq!(inside.status.code(), Some(0));
    assert_eq!(stdout(&inside), "in core\n");
    let outside = run(&["core", &fixture("ex1.json"), "--alloc", "-1,4"]);
    assert_eq!(outside.status.code(), Some(1));
    assert_eq!(stdout(&outside), "not in core: coalition {2} is charged 4 > c = 2\n");
    let short = run(&["core", &fixture("ex1.json"), "--alloc", "3"]);
    assert_eq!(short.status.code(), Some(2));
    let fractional = run(&["core", &fixture("ex1.json"), "--alloc", "3/2,3/2"]);
    assert_eq!(fractional.status.code(), Some(0));
}

#[test]
fn scheme_and_essential_players() {
    let out = run(&["pmas", &fixture("ex1.json")]);
    assert_eq!(stdout(&out), "{1}: 2\n{2}: 2\n{1,2}: 1, 2\nscheme: efficient and monotone\n");
    let out = run(&["essential", &fixture("ex1.json")]);
    let text = stdout(&out);
    assert!(text.contains("essential: player 2 (period 1"), "{text}");
    assert!(text.contains("inessential: 1\n"), "{text}");
}

#[test]
fn combine_writes_a_readable_situation() {
    let path = scratch("combined.json");
    let out = run(&["combine", &fixture("ex1.json"), &fixture("ex1.json"), "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("separator cost 15"));
    let game = run(&["game", path.to_str().unwrap()]);
    assert_eq!(stdout(&game), "coalition  cost\n{1}        4\n{2}        4\n{1,2}      6\n");
}

#[test]
fn from_veto_round_trips() {
    let path = scratch("veto.json");
    let out = run(&["from-veto", &fixture("veto3.json"), "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("round-trip: game reproduced"));
    let game = run(&["--json", "game", path.to_str().unwrap()]);
    let got: serde_json::Value = serde_json::from_str(&stdout(&game)).unwrap();
    let want: serde_json::Value = serde_json::from_str(&fs::read_to_string(fixture("veto3.json")).unwrap()).unwrap();
    assert_eq!(got, want);
}

#[test]
fn from_veto_rejects_non_simple_games() {
    let path = scratch("not_simple.json");
    fs::write(&path, r#"{"players": ["a", "b"], "values": {"1": 2, "2": 2, "1,2": 3}}"#).unwrap();
    let out = run(&["from-veto", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn axioms_report() {
    let out = run(&["axioms", &fixture("ex1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("owen          ok    ok    ok    ok    ok    ok    ok    ok\n"), "{text}");
    assert!(text.contains("dump on ex1-prime: fails IR+IE (expected IR+IE) ok"), "{text}");
    assert!(text.contains("Owen rule passes all axioms: yes"));
    let owen = run(&["axioms", &fixture("ex1.json"), "--rule", "owen"]);
    assert_eq!(owen.status.code(), Some(0));
    let zero = run(&["axioms", &fixture("ex1.json"), "--rule", "zero"]);
    assert_eq!(zero.status.code(), Some(1));
    assert!(stdout(&zero).contains("zero EF: (0, 0) sums to 0, c(N) = 3"));
    let unknown = run(&["axioms", &fixture("ex1.json"), "--rule", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--json", "--seed", "7", "axioms", &fixture("ex1.json")],
        vec!["--seed", "7", "axioms", &fixture("ex1_prime.json")],
        vec!["--json", "verify", &fixture("ex1.json")],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn json_game_output_reads_back() {
    let out = run(&["--json", "game", &fixture("ex1.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v, serde_json::json!({"players": ["P1", "P2"], "values": {"1": 2, "2": 2, "1,2": 3}}));
}

#[test]
fn situation_round_trips_through_files() {
    // decimals and fractions survive a write and re-read exactly
    let src = scratch("decimal.json");
    fs::write(
        &src,
        r#"{"players": ["x", "y"], "T": 2, "demand": [[1, 2], [3, 0]],
            "production": [[0.5, "7/3"], [1.25, 2]], "holding": [[0.1], ["1/3"]], "backlogging": [[2], [1e-1]]}"#,
    )
    .unwrap();
    let first = scratch("decimal_once.json");
    let second = scratch("decimal_twice.json");
    let tiny = scratch("tiny.json");
    fs::write(&tiny, r#"{"players": ["x", "y"], "T": 1, "demand": [[0], [0]], "production": [[0], [0]], "holding": [[], []], "backlogging": [[], []]}"#).unwrap();
    // combining with an empty one-period situation keeps the costs visible
    assert_eq!(run(&["combine", src.to_str().unwrap(), tiny.to_str().unwrap(), "-o", first.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(run(&["combine", first.to_str().unwrap(), tiny.to_str().unwrap(), "-o", second.to_str().unwrap()]).status.code(), Some(0));
    let text = fs::read_to_string(&first).unwrap();
    assert!(text.contains(r#"["1/2", "7/3""#), "{text}");
    assert!(text.contains(r#"["1/10""#), "{text}");
    let a = run(&["--json", "game", first.to_str().unwrap()]);
    let b = run(&["--json", "game", src.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn validation_errors_exit_with_two() {
    let path = scratch("bad.json");
    fs::write(
        &path,
        r#"{"players": ["a"], "T": 2, "demand": [[-1, 0.5]], "production": [[1, 1]], "holding": [[1]], "backlogging": [[1]]}"#,
    )
    .unwrap();
    let out = run(&["owen", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("negative demand") && err.contains("non-integer demand"), "{err}");
    let missing = run(&["owen", &scratch("does_not_exist.json").to_string_lossy()]);
    assert_eq!(missing.status.code(), Some(2));
    let usage = run(&["owen"]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn full_width_carry_rows_warn() {
    let path = scratch("wide.json");
    fs::write(
        &path,
        r#"{"players": ["a"], "T": 2, "demand": [[1, 1]], "production": [[1, 3]], "holding": [[1, 5]], "backlogging": [[1, 5]]}"#,
    )
    .unwrap();
    let out = run(&["owen", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "a: 3\n");
    assert!(stderr(&out).contains("warning:"));
}
