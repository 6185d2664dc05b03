use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pikdom::cli::Report;
use tempfile::TempDir;

fn pikdom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pikdom")).args(args).env_remove("PIKDOM_SEED").output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const P6: &str = "6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n";

#[test]
fn solve_p6_total() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "p6", P6);
    for algo in ["fast", "naive", "brute"] {
        let o = pikdom(&["solve", f.to_str().unwrap(), "--variant", "total", "--k", "1", "--algo", algo, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(r.cost.as_deref(), Some("4"));
        assert_eq!(r.engine, algo);
        assert_eq!((r.k, r.variant.as_str(), r.n), (1, "total", 6));
        assert!(r.stats.is_none());
    }
}

#[test]
fn solve_reports_are_reproducible_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "p6", P6);
    let args = ["solve", f.to_str().unwrap(), "--k", "1", "--format", "json", "--stats"];
    let a = pikdom(&args);
    let b = pikdom(&args);
    assert_eq!(a.stdout, b.stdout);
    let r: Report = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(serde_json::to_string(&r).unwrap() + "\n", stdout(&a));
    assert!(r.stats.unwrap().get("representative_tests").is_some());
}

#[test]
fn solve_isolated_vertex_is_infeasible() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "iso", "3\n0 1\n1 2\n5 6\n");
    let o = pikdom(&["solve", f.to_str().unwrap(), "--variant", "total", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("infeasible"));
}

#[test]
fn solve_k4_kdom() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "k4", "4\n0 5\n1 6\n2 7\n3 8\n");
    let o = pikdom(&["solve", f.to_str().unwrap(), "--variant", "kdom", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cost 2\n"));
}

#[test]
fn solve_errors_carry_codes() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("3\n0 1\n1 x\n2 3\n", "E_PARSE"),
        ("2\n0 10\n2 3\n", "E_NOT_PROPER"),
        ("2\n0 1\n0 1\n", "E_DUPLICATE"),
    ];
    for (text, code) in cases {
        let f = write(dir.path(), "bad", text);
        let o = pikdom(&["solve", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1));
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.contains(code), "{err}");
    }
    let f = write(dir.path(), "big", &format!("30\n{}", (0..30).map(|i| format!("{i} {}\n", i + 40)).collect::<String>()));
    let o = pikdom(&["solve", f.to_str().unwrap(), "--k", "3", "--cap-nodes", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("E_BUDGET"));
    let o = pikdom(&["solve", f.to_str().unwrap(), "--algo", "brute"]);
    assert!(String::from_utf8(o.stderr).unwrap().contains("E_TOO_LARGE"));
}

#[test]
fn dump_dag_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "p6", P6);
    let d1 = dir.path().join("d1");
    let d2 = dir.path().join("d2");
    pikdom(&["solve", f.to_str().unwrap(), "--dump-dag", d1.to_str().unwrap()]);
    pikdom(&["solve", f.to_str().unwrap(), "--algo", "naive", "--dump-dag", d2.to_str().unwrap()]);
    let text = fs::read_to_string(&d1).unwrap();
    assert_eq!(text, fs::read_to_string(&d2).unwrap());
    assert!(text.starts_with("0 source 0\n"));
}

#[test]
fn verify_examples() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "p6", P6);
    let run = |cand: &str, variant: &str| {
        let c = write(dir.path(), "cand", cand);
        pikdom(&["verify", f.to_str().unwrap(), c.to_str().unwrap(), "--variant", variant, "--k", "1"])
    };
    let o = run("2\n3\n5\n6\n", "total");
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "valid\n".into()));
    let o = run("2\n5\n", "total");
    assert_eq!((o.status.code(), stdout(&o)), (Some(2), "invalid: vertex 2\n".into()));
    let o = run("", "kdom");
    assert_eq!(o.status.code(), Some(2));
    let o = run("9\n", "kdom");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("E_INDEX"));
}

#[test]
fn gen_respects_seed_env_override() {
    let a = pikdom(&["gen", "--n", "12", "--seed", "5", "--max-cost", "9"]);
    let b = Command::new(env!("CARGO_BIN_EXE_pikdom"))
        .args(["gen", "--n", "12", "--seed", "77", "--max-cost", "9"])
        .env("PIKDOM_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let model = pikdom::ProperIntervalModel::parse(&stdout(&a)).unwrap();
    assert_eq!(model.n(), 12);
    assert!(model.is_weighted());
}

#[test]
fn bench_sweep_and_directory() {
    let o = pikdom(&["bench", "--n-min", "8", "--n-max", "12", "--k", "1", "--stretch", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(text.lines().next(), Some(pikdom::cli::BENCH_HEADER));
    assert_eq!(rows.len(), 10);
    for pair in rows.chunks(2) {
        assert_eq!((pair[0][3], pair[1][3]), ("naive", "fast"));
        assert_eq!(pair[0][7], pair[1][7]);
    }

    let dir = TempDir::new().unwrap();
    let o = pikdom(&["bench", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    write(dir.path(), "a", P6);
    let o = pikdom(&["bench", "--dir", dir.path().to_str().unwrap(), "--engines", "brute,naive,fast", "--k", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn selftest_quick_and_fault() {
    let o = pikdom(&["selftest", "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = pikdom(&["selftest", "--quick", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("FAILED") && text.contains("counterexample:"));
    let echoed: String = text.lines().skip_while(|l| *l != "counterexample:").skip(1).map(|l| format!("{l}\n")).collect();
    assert!(pikdom::ProperIntervalModel::parse(&echoed).is_ok());
}
