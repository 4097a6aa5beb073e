use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn boxlab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxlab"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn degree_then_verify_then_tamper() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    assert_eq!(
        code(&boxlab(
            p,
            &[
                "gen", "gnp", "--n", "60", "--p", "0.1", "--delta", "8", "--seed", "3", "--out",
                "g.txt"
            ]
        )),
        0
    );
    let o = boxlab(p, &["degree", "g.txt", "--seed", "5", "--out", "c.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("verified=true"));
    assert_eq!(code(&boxlab(p, &["verify", "g.txt", "c.json"])), 0);

    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(p.join("c.json")).unwrap()).unwrap();
    assert_eq!(json["seed"], 5);
    // collapse every box to the same point: some non-edge now intersects
    let mut bad = json.clone();
    for b in bad["boxes"].as_object_mut().unwrap().values_mut() {
        for iv in b.as_array_mut().unwrap() {
            *iv = serde_json::json!([0, 0]);
        }
    }
    std::fs::write(p.join("bad.json"), bad.to_string()).unwrap();
    let o = boxlab(p, &["verify", "g.txt", "bad.json"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr)
        .to_lowercase()
        .contains("spurious"));
}

#[test]
fn same_seed_same_bytes() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    boxlab(
        p,
        &[
            "gen", "gnp", "--n", "40", "--p", "0.2", "--delta", "10", "--seed", "1", "--out",
            "g.txt",
        ],
    );
    boxlab(p, &["degree", "g.txt", "--seed", "9", "--out", "a.json"]);
    boxlab(p, &["degree", "g.txt", "--seed", "9", "--out", "b.json"]);
    assert_eq!(
        std::fs::read(p.join("a.json")).unwrap(),
        std::fs::read(p.join("b.json")).unwrap()
    );
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    assert_eq!(code(&boxlab(p, &["degree", "missing.txt"])), 2);
    std::fs::write(p.join("junk.txt"), "graph 2 1\n0 7\n").unwrap();
    assert_eq!(code(&boxlab(p, &["degree", "junk.txt"])), 2);
    std::fs::write(p.join("ok.txt"), "graph 3 1\n0 1\n").unwrap();
    assert_eq!(
        code(&boxlab(p, &["partition", "ok.txt", "--d", "0", "--k", "1"])),
        3
    );
    std::fs::write(p.join("big.txt"), "graph 9 0\n").unwrap();
    assert_eq!(code(&boxlab(p, &["oracle", "bx", "big.txt"])), 3);
    std::fs::write(p.join("bad.txt"), "graph x\n").unwrap();
    assert_eq!(code(&boxlab(p, &["degree", "bad.txt"])), 2);
}

#[test]
fn ltw_grid_files() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    let o = boxlab(
        p,
        &[
            "gen", "grid", "--rows", "5", "--cols", "7", "--td", "td.txt", "--layers", "l.txt",
            "--out", "g.txt",
        ],
    );
    assert_eq!(code(&o), 0);
    let o = boxlab(
        p,
        &[
            "ltw", "g.txt", "--td", "td.txt", "--layers", "l.txt", "--ltw", "3", "--seed", "1",
            "--out", "c.json",
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("target_d=22"));
    assert_eq!(code(&boxlab(p, &["verify", "g.txt", "c.json"])), 0);
}

#[test]
fn oracle_and_dim_outputs() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    boxlab(
        p,
        &["gen", "matching-complement", "--n", "6", "--out", "g.txt"],
    );
    let o = boxlab(p, &["oracle", "bx", "g.txt"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], 3);

    boxlab(p, &["gen", "crown", "--m", "3", "--out", "s3.txt"]);
    let o = boxlab(p, &["oracle", "dim", "s3.txt"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], 3);
    let o = boxlab(p, &["dim", "s3.txt", "--seed", "2"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let d = v["certificate"]["d"].as_u64().unwrap() as usize;
    assert_eq!(v["orders"].as_array().unwrap().len(), 2 * d);
}

#[test]
fn suitable_exhaustive() {
    let dir = TempDir::new().unwrap();
    let o = boxlab(
        dir.path(),
        &[
            "suitable",
            "--n",
            "30",
            "--k",
            "3",
            "--seed",
            "4",
            "--verify",
            "exhaustive",
        ],
    );
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!v["perms"].as_array().unwrap().is_empty());
}

#[test]
fn bench_appends_rows() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    for _ in 0..2 {
        let o = boxlab(
            p,
            &[
                "bench", "degree", "--dmax", "16", "--trials", "1", "--seed", "1", "--out", "b.csv",
            ],
        );
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let text = std::fs::read_to_string(p.join("b.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].contains("seed"));
    assert_eq!(lines.iter().filter(|l| l.contains("seed")).count(), 1);
    assert_eq!(lines.len(), 1 + 2 * 2);
}
