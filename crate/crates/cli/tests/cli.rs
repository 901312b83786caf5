use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pentagram-lab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pentagram-lab-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, text: &str) -> PathBuf {
    let p = tmp(name);
    std::fs::write(&p, text).unwrap();
    p
}

const HEXAGON: &str = r#"{"format":"pentagram-lab/v1","space":"P2","labels":"odd",
"vertices":[["0","0"],["4","0"],["4","2"],["1","2"],["1","5"],["0","5"]]}"#;

const MIRROR3: &str = r#"{"format":"pentagram-lab/v1","space":"P2-mirror","P":[["1","-1"],["2","-1"],["6","-1"]]}"#;

#[test]
fn hexagon_collapses_to_centroid() {
    let p = write("hex.json", HEXAGON);
    let o = run(&["iterate", p.to_str().unwrap(), "--steps", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("all vertices = (5/3, 7/3)"));
}

#[test]
fn gen_then_iterate_round_trip() {
    let p = tmp("gen5.json");
    let o = run(&["gen", "--map", "pent2d", "--n", "5", "--seed", "4", "--out", p.to_str().unwrap()]);
    assert!(o.status.success());
    let o = run(&["iterate", p.to_str().unwrap(), "--steps", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("all vertices = "));
}

#[test]
fn gen_is_deterministic() {
    let a = run(&["gen", "--map", "corrugated", "--m", "3", "--n", "4", "--seed", "11"]);
    let b = run(&["gen", "--map", "corrugated", "--m", "3", "--n", "4", "--seed", "11"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn lower_pair_collapses_to_mean() {
    let p = write(
        "lower.json",
        r#"{"format":"pentagram-lab/v1","space":"P1","X":["inf","inf","inf"],"Y":["1","2","6"]}"#,
    );
    let o = run(&["iterate", p.to_str().unwrap(), "--steps", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("all entries = 3"), "{out}");
    let o = run(&["verify", "--theorem", "T008", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn frieze_rows() {
    let o = run(&["frieze", "--a1", "7,5,-3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("A_1: 7 5 -3"));
    assert!(out.contains("A_5: 3 3 3"));
    assert!(out.contains("A_6: 3 3 3"));

    let o = run(&["frieze", "--a1", "1,3,2,4", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    for r in &rows[7..] {
        assert!(r.as_array().unwrap().iter().all(|x| x == "5/2"));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frieze", "--a1", "2,2,2"]).status.code(), Some(2));
    assert_eq!(run(&["frieze", "--a1", "c"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "--theorem", "T999"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "--theorem", "T002"]).status.code(), Some(3));
    assert_eq!(run(&["iterate", "/nonexistent/file.json", "--steps", "1"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn non_axis_aligned_input_is_degenerate() {
    let p = write(
        "skew.json",
        r#"{"format":"pentagram-lab/v1","space":"P2","labels":"odd",
"vertices":[["0","0"],["4","1"],["4","2"],["1","2"],["1","5"],["0","5"]]}"#,
    );
    let o = run(&["verify", "--theorem", "T002", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_random_trials() {
    let o = run(&["verify", "--theorem", "T002", "--random", "--trials", "50", "--n", "4", "--seed", "9", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["theorem"], "T002");
    assert_eq!(v["trials"], 50);
    assert_eq!(v["passes"], 50);
    assert!(v["failures"].as_array().unwrap().is_empty());
    assert_eq!(v["results"][0]["seed"], 9);
}

#[test]
fn verify_frieze_value() {
    let o = run(&["verify", "--theorem", "T005", "--a1", "7,5,-3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("value = 3"));
}

#[test]
fn verify_mirror_parity() {
    let o = run(&["verify", "--theorem", "T007", "--random", "--n", "4", "--trials", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for r in v["results"].as_array().unwrap() {
        let collapse = r["values"][0][1].as_str().unwrap();
        assert!(collapse.ends_with(", 0)"), "{collapse}");
    }
    let p = write("mirror3.json", MIRROR3);
    let o = run(&["verify", "--theorem", "T007", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("collapse = (3, -1/3)"));
}

#[test]
fn verify_other_theorems() {
    for args in [
        &["verify", "--theorem", "T003", "--random", "--n", "4", "--m", "3", "--trials", "3"][..],
        &["verify", "--theorem", "T008", "--random", "--n", "5", "--trials", "3"],
        &["verify", "--theorem", "L4-correspondence", "--random", "--n", "5", "--trials", "3"],
        &["verify", "--theorem", "L2-mating", "--random", "--n", "5", "--trials", "2", "--map", "mirror"],
        &["verify", "--theorem", "L2-lifting", "--random", "--n", "4", "--trials", "2"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn lift_checks_on_hexagon() {
    let p = write("hex-lift.json", HEXAGON);
    let p = p.to_str().unwrap();
    let o = run(&["lift", "--check", "collapse-line", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("25x + 13y - 72 = 0"));
    let o = run(&["lift", "--check", "centroid", p]);
    assert!(stdout(&o).contains("projected centroid: (5/3, 7/3)"));
    for check in ["general-position", "mating", "fully-sliced"] {
        assert_eq!(run(&["lift", "--check", check, p]).status.code(), Some(0), "{check}");
    }
}

#[test]
fn lift_centroid_on_odd_mirror() {
    let p = write("mirror3-lift.json", MIRROR3);
    let o = run(&["lift", "--check", "centroid", "--json", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["check"], "centroid");
    assert_eq!(v["families"][0]["centroid"], "(3, -1/3)");
}

#[test]
fn lift_rejects_lower_pairs() {
    let p = write(
        "lower-lift.json",
        r#"{"format":"pentagram-lab/v1","space":"P1","X":["inf","inf","inf"],"Y":["1","2","6"]}"#,
    );
    assert_eq!(run(&["lift", "--check", "centroid", p.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn svg_is_deterministic() {
    let inst = tmp("svg-in.json");
    run(&["gen", "--map", "pent2d", "--n", "4", "--seed", "2", "--out", inst.to_str().unwrap()]);
    let (a, b) = (tmp("a.svg"), tmp("b.svg"));
    for out in [&a, &b] {
        let o = run(&["iterate", inst.to_str().unwrap(), "--steps", "3", "--svg", out.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    assert!(String::from_utf8(a).unwrap().contains("id=\"collapse\""));
}

#[test]
fn thread_count_does_not_change_results() {
    let args = ["verify", "--theorem", "T002", "--random", "--trials", "12", "--n", "4", "--seed", "3", "--json"];
    let one = bin().args(args).env("PENTAGRAM_LAB_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("PENTAGRAM_LAB_THREADS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}
