use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const SQUARE_PATH: &str =
    r#"{"points":[[0,0],[10,0],[10,10],[0,10]],"edges":[[0,1],[1,2],[2,3]],"unhappy":[0,3]}"#;

fn parity(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn construct_writes_the_single_chord() {
    let dir = TempDir::new().unwrap();
    let inst = file(&dir, "sq.json", SQUARE_PATH);
    let happy = dir.path().join("h.json");
    let out = parity(&["construct", "-i", s(&inst), "-o", s(&happy)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(fs::read_to_string(&happy).unwrap(), r#"{"edges":[[0,3]]}"#);

    let out = parity(&["verify", "-i", s(&inst), "--happy", s(&happy)]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["decision"], "pass");
}

#[test]
fn decide_reports_route_and_digest() {
    let dir = TempDir::new().unwrap();
    let inst = file(&dir, "sq.json", SQUARE_PATH);
    let out = parity(&["decide", "-i", s(&inst), "--seed", "5"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["decision"], "feasible");
    assert_eq!(r["mode"], "decide");
    assert_eq!(r["seed"], 5);
    assert_eq!(r["digest"].as_str().unwrap().len(), 64);
    assert!(r["solver_path"].is_string());
}

#[test]
fn digest_ignores_input_formatting() {
    let dir = TempDir::new().unwrap();
    let a = file(&dir, "a.json", SQUARE_PATH);
    let b = file(
        &dir,
        "b.json",
        r#"{ "points": [[0,0],[10,0],[10,10],[0,10]], "edges": [[3,2],[1,0],[2,1]], "unhappy": [3,0] }"#,
    );
    let da = report(&parity(&["decide", "-i", s(&a)]))["digest"].clone();
    let db = report(&parity(&["decide", "-i", s(&b)]))["digest"].clone();
    assert_eq!(da, db);
}

#[test]
fn infeasible_exits_one() {
    let dir = TempDir::new().unwrap();
    // adjacent unhappy pair on a convex path: only their own edge is visible
    let inst = file(
        &dir,
        "adj.json",
        r#"{"points":[[0,0],[10,0],[10,10],[0,10]],"edges":[[0,1],[1,2],[2,3]],"unhappy":[1,2]}"#,
    );
    let out = parity(&["decide", "-i", s(&inst)]);
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["decision"], "infeasible");
    assert_eq!(code(&parity(&["construct", "-i", s(&inst)])), 1);
}

#[test]
fn odd_unhappy_set_is_infeasible_not_an_error() {
    let dir = TempDir::new().unwrap();
    let inst = file(
        &dir,
        "odd.json",
        r#"{"points":[[0,0],[10,0],[10,10],[0,10]],"edges":[[0,1],[1,2],[2,3]],"unhappy":[0]}"#,
    );
    let out = parity(&["decide", "-i", s(&inst)]);
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["solver_path"], "handshake");
}

#[test]
fn unsupported_graph_exits_two() {
    let dir = TempDir::new().unwrap();
    // a star with its centre inside the hull: not a path, not convex
    let inst = file(
        &dir,
        "star.json",
        r#"{"points":[[0,0],[10,0],[5,8],[5,3]],"edges":[[0,3],[1,3],[2,3]],"unhappy":[]}"#,
    );
    let out = parity(&["decide", "-i", s(&inst)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("hugging cycle"));
}

#[test]
fn malformed_and_missing_input_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.json", "{\"points\": [");
    assert_eq!(code(&parity(&["decide", "-i", s(&bad)])), 2);
    assert_eq!(code(&parity(&["decide", "-i", "/nonexistent/x.json"])), 2);
    let crossing = file(
        &dir,
        "x.json",
        r#"{"points":[[0,0],[10,10],[10,0],[0,10]],"edges":[[0,1],[2,3]],"unhappy":[]}"#,
    );
    assert_eq!(code(&parity(&["decide", "-i", s(&crossing)])), 2);
}

#[test]
fn verify_rejects_a_wrong_set() {
    let dir = TempDir::new().unwrap();
    let inst = file(&dir, "sq.json", SQUARE_PATH);
    let happy = file(&dir, "h.json", r#"{"edges":[[0,2]]}"#);
    let out = parity(&["verify", "-i", s(&inst), "--happy", s(&happy)]);
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["decision"], "fail");
}

#[test]
fn oracle_exit_codes() {
    let dir = TempDir::new().unwrap();
    let inst = file(&dir, "sq.json", SQUARE_PATH);
    assert_eq!(code(&parity(&["oracle", "-i", s(&inst)])), 0);

    let adj = file(
        &dir,
        "adj.json",
        r#"{"points":[[0,0],[10,0],[10,10],[0,10]],"edges":[[0,1],[1,2],[2,3]],"unhappy":[1,2]}"#,
    );
    assert_eq!(code(&parity(&["oracle", "-i", s(&adj)])), 1);

    let out = parity(&["oracle", "-i", s(&inst), "--node-budget", "1"]);
    assert_eq!(code(&out), 3);
    let out = parity(&["oracle", "-i", s(&inst), "--max-vis-edges", "1"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn gen_is_deterministic_and_solvable() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = parity(&["gen", "--kind", "convex-path", "--n", "30", "--seed", "7", "-o", s(p)]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let happy = dir.path().join("h.json");
    assert_eq!(code(&parity(&["construct", "-i", s(&a), "-o", s(&happy)])), 0);
    assert_eq!(code(&parity(&["verify", "-i", s(&a), "--happy", s(&happy)])), 0);
}

#[test]
fn unknown_family_is_rejected() {
    assert_eq!(code(&parity(&["gen", "--kind", "helix", "--n", "5"])), 2);
}

#[test]
fn render_counts_elements() {
    let dir = TempDir::new().unwrap();
    let inst = file(&dir, "sq.json", SQUARE_PATH);
    let happy = file(&dir, "h.json", r#"{"edges":[[0,3]]}"#);
    let svg = dir.path().join("out.svg");
    let out = parity(&["render", "-i", s(&inst), "--happy", s(&happy), "-o", s(&svg)]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches(r#"class="graph""#).count(), 3);
    assert_eq!(text.matches("stroke-dasharray").count(), 1);
    assert_eq!(text.matches("<rect").count(), 2);
    assert_eq!(text.matches("<circle").count(), 2);
    assert!(!text.contains("warning"));
}

#[test]
fn bench_writes_csv() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("b.csv");
    let out = parity(&[
        "bench", "--kind", "xmonotone", "--sizes", "20,40", "--seeds", "2", "-o", s(&csv),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("kind,n,seed,"));
    assert!(lines[1..].iter().all(|l| l.starts_with("xmonotone,")));
}

#[test]
fn oracle_with_no_unhappy_vertices_is_immediate() {
    let dir = TempDir::new().unwrap();
    let inst = file(
        &dir,
        "none.json",
        r#"{"points":[[0,0],[10,0],[10,10],[0,10]],"edges":[[0,1],[1,2],[2,3]],"unhappy":[]}"#,
    );
    let out = parity(&["oracle", "-i", s(&inst)]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["happy_set_size"], 0);
}

#[test]
fn bench_repeats_for_a_fixed_seed() {
    let run = || {
        let out = parity(&["bench", "--kind", "spiral", "--sizes", "15,31", "--seeds", "2"]);
        assert_eq!(code(&out), 0);
        // drop the two timing columns
        String::from_utf8(out.stdout)
            .unwrap()
            .lines()
            .map(|l| l.rsplitn(3, ',').nth(2).unwrap().to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
}
