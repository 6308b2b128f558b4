use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bsens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsens"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn measures_examples() {
    let dir = TempDir::new().unwrap();
    let or3 = write(dir.path(), "or3.dnf", "dnf 3\n+1\n+2\n+3\n");
    let out = bsens(&["measures", path(&or3)]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("s 3 "), "{text}");
    assert!(text.contains("bs 3 "), "{text}");

    let g = write(dir.path(), "rub.dnf", "dnf 4\n+1 +2 -3 -4\n+3 +4 -1 -2\n");
    let text = stdout(&bsens(&["measures", path(&g)]));
    assert!(text.contains("s 4  s0 1  s1 4"), "{text}");
    assert!(text.contains("bs0 2 "), "{text}");

    let pair = stdout(&bsens(&["family", "pair", "--p", "2", "--q", "2"]));
    let f: String = pair.split("# g").next().unwrap().lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let f = write(dir.path(), "f.tt", &f);
    let text = stdout(&bsens(&["measures", path(&f)]));
    assert!(text.contains("s 2 "), "{text}");
}

#[test]
fn family_props_and_witness() {
    let dir = TempDir::new().unwrap();
    let out = bsens(&["family", "rubinstein", "--n", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("s 4 ") && text.contains("bs 8 "), "{text}");

    let g = write(dir.path(), "as.dnf", &stdout(&bsens(&["family", "as", "--n", "1"])));
    let out = bsens(&["props", path(&g), "--check", "block,mixing,transitive"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("mixing_max 3"));
    let out = bsens(&["props", path(&g), "--check", "mixing=4"]);
    assert_eq!(out.status.code(), Some(1));

    let or3 = write(dir.path(), "or3.dnf", "dnf 3\n+1\n+2\n+3\n");
    let text = stdout(&bsens(&["witness", "--proc", "block", path(&or3)]));
    assert!(text.contains("input 000") && text.contains("guaranteed 3"), "{text}");

    let text = stdout(&bsens(&["witness", "--proc", "solve", "--c", "4", path(&g)]));
    assert!(text.contains("sensitivity 5"), "{text}");

    let out = bsens(&["family", "as", "--n", "1", "--expand"]);
    assert!(stdout(&out).contains("dnf 30"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(bsens(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(bsens(&["frobnicate"]).status.code(), Some(2));

    let bad = write(dir.path(), "bad.dnf", "dnf 3\n+1 +x\n");
    let out = bsens(&["measures", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let wide = write(dir.path(), "wide.dnf", "dnf 16\n+1 +16\n");
    assert_eq!(bsens(&["measures", path(&wide)]).status.code(), Some(3));
    assert_eq!(bsens(&["--bs-max", "16", "measures", path(&wide)]).status.code(), Some(0));

    // parity on 4 variables cannot have sensitivity 1
    let parity = write(dir.path(), "parity.tt", "tt 4\n6996\n");
    let ball = stdout(&bsens(&["reconstruct", path(&parity), "--center", "0000", "--radius", "2"]));
    let ball = write(dir.path(), "parity.ball", &ball);
    assert_eq!(bsens(&["reconstruct", path(&ball), "--s-bound", "1"]).status.code(), Some(4));
}

#[test]
fn reconstruct_round_trip() {
    let dir = TempDir::new().unwrap();
    // AND of x1, x2 padded to 6 variables
    let f = "tt 6\n8888888888888888\n";
    let tt = write(dir.path(), "and.tt", f);
    let ball = stdout(&bsens(&["reconstruct", path(&tt), "--center", "000000", "--radius", "4"]));
    assert!(ball.starts_with("ball 6 000000 4"), "{ball}");
    let ball = write(dir.path(), "and.ball", &ball);
    let out = bsens(&["reconstruct", path(&ball), "--s-bound", "2"]);
    assert_eq!(stdout(&out), f);
    let out = bsens(&["reconstruct", path(&ball), "--monotone", "--s-bound", "2"]);
    assert_eq!(stdout(&out), f);
}

#[test]
fn verify_suites_and_replay() {
    let out = bsens(&["verify", "families"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let args = ["verify", "block-4s2", "--seed", "7", "--instances", "20"];
    let a = bsens(&args);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).contains("20/20"));
    assert_eq!(stdout(&a), stdout(&bsens(&args)));

    let json = stdout(&bsens(&["--format", "json-lines", "verify", "reconstruction", "--instances", "6"]));
    let last: serde_json::Value = serde_json::from_str(json.lines().last().unwrap()).unwrap();
    assert_eq!(last["passed"], serde_json::Value::Bool(true));
    assert_eq!(json.lines().count(), 7);

    let dir = TempDir::new().unwrap();
    let broken = write(dir.path(), "broken.dnf", "dnf 2\n+1\n+1 +2\n");
    let out = bsens(&["verify", "block-4s2", "--replay", path(&broken)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL block property"), "{}", stdout(&out));

    let fine = write(dir.path(), "fine.dnf", "dnf 3\n+1\n+2\n+3\n");
    assert_eq!(bsens(&["verify", "block-4s2", "--replay", path(&fine)]).status.code(), Some(0));
}
