use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multicone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], workers: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multicone"))
        .args(args)
        .env("MULTICONE_WORKERS", workers)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn wheel_laplacian_spectrum() {
    let o = run(&["spec", "--expr", "MC(1,1,4)", "--kind", "L"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{5:2, 3:2, 0:1}\n");
}

#[test]
fn exact_polynomial() {
    let o = run(&["spec", "--g6", "C~", "--exact"]);
    assert_eq!(stdout(&o), "{3:1, -1:3}\nx^4 - 6x^2 - 8x - 3\n");
}

#[test]
fn disconnected_pair_compare() {
    let o = run(&[
        "--json",
        "cmp",
        "--a",
        "(2*C4)~(3*C4+K3)+5*C4",
        "--b",
        "MC(3,10,4)",
        "--kind",
        "A",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cospectral"], true);
    assert_eq!(v["isomorphic"], false);
}

#[test]
fn hunt_star_finds_mate() {
    let o = run(&["--json", "hunt", "--target", "Ds_", "--kind", "A"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["verdict"], "MatesFound");
    assert_eq!(v["report"]["stats"]["scanned"], 1024);
}

#[test]
fn hunt_is_worker_independent() {
    let args = [
        "--json",
        "hunt",
        "--target",
        "MC(1,1,5)",
        "--kind",
        "L",
        "--connected-only",
    ];
    let a = run_env(&args, "1");
    let b = run_env(&args, "4");
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["report"]["verdict"], "UniqueAmongConnected");
}

#[test]
fn hunt_over_corpus_file() {
    let dir = std::env::temp_dir().join(format!("multicone-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("five.g6");
    std::fs::write(&path, "Ds_\nDl?\nD~{\n").unwrap();
    let o = run(&[
        "hunt",
        "--target",
        "Ds_",
        "--corpus",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("verdict: MatesFound"), "{text}");
    assert!(text.contains("mate Dl? disconnected"), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn perfect_and_invariants() {
    let o = run(&["perfect", "--expr", "MC(2,1,5)"]);
    assert!(stdout(&o).contains("not perfect, OddHole"));
    let o = run(&["perfect", "--expr", "co(C7)"]);
    assert!(stdout(&o).contains("OddAntihole"));
    let o = run(&["--json", "invariants", "--expr", "K1~C4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["invariants"]["laplacian_facts"]["spanning_tree_count"],
        "45"
    );
}

#[test]
fn closed_forms() {
    let o = run(&[
        "--json", "closed", "--w", "1", "--m", "1", "--n", "4", "--kind", "L",
    ]);
    assert!(o.status.success());
    let o = run(&["closed", "--w", "2", "--m", "3", "--n", "3", "--complement"]);
    assert!(o.status.success());
    let o = run(&["closed", "--w", "2", "--m", "3", "--n", "4", "--complement"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn gen_prints_graph6() {
    let o = run(&["gen", "--expr", "K4"]);
    assert_eq!(stdout(&o), "C~\n");
}

#[test]
fn verify_paper_quick_claims_pass() {
    let o = run(&["--json", "verify-paper"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], v["total"]);
    let again = run(&["--json", "verify-paper"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["spec", "--expr", "K1~"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["spec", "--g6", "B!"]).status.code(), Some(1));
    assert_eq!(run(&["hunt", "--target", "K8"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let o = run(&["spec", "--expr", "C4", "--g6", "Bw"]);
    assert_eq!(o.status.code(), Some(1));
}
