use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use thinfree_core::vi_solver::io::read_checkpoint;

const GOLDEN: &[u8] = include_bytes!("golden/starshaped_contact.pgm");
const SMALL: [&str; 4] = ["--L", "2", "--h", "0.125"];

fn thinfree(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thinfree"))
        .args(args)
        .current_dir(cwd)
        .env_remove("THINFREE_OUT")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn starshaped_contact_matches_golden_raster() {
    let tmp = tempfile::tempdir().unwrap();
    let o = thinfree(&["example", "starshaped", "--out", "run"], tmp.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let got = fs::read(tmp.path().join("run/contact.pgm")).unwrap();
    assert!(got == GOLDEN, "contact raster differs from the golden file");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        let mut args = vec!["example", "twoballs", "--out", out];
        args.extend(SMALL);
        assert_eq!(code(&thinfree(&args, tmp.path())), 0);
    }
    for file in ["report.json", "contact.pgm", "overlay.pgm", "plane.csv"] {
        let a = fs::read(tmp.path().join("a").join(file)).unwrap();
        let b = fs::read(tmp.path().join("b").join(file)).unwrap();
        assert!(a == b, "{file} differs between runs");
    }
    let manifest = fs::read_to_string(tmp.path().join("runs.csv")).unwrap();
    let lines: Vec<&str> = manifest.lines().collect();
    assert_eq!(lines[0], "name,params_hash,pass,wall_time_s");
    assert_eq!(lines.len(), 3);
    let hash = |l: &str| l.split(',').nth(1).unwrap().to_string();
    assert_eq!(hash(lines[1]), hash(lines[2]));
}

#[test]
fn output_root_comes_from_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path().join("root");
    let mut args = vec!["example", "globk2"];
    args.extend(SMALL);
    let o = Command::new(env!("CARGO_BIN_EXE_thinfree"))
        .args(&args)
        .current_dir(tmp.path())
        .env("THINFREE_OUT", &root)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(root.join("globk2/report.json").exists());
    assert!(root.join("runs.csv").exists());
}

#[test]
fn usage_and_config_errors_exit_one() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(code(&thinfree(&["frobnicate"], tmp.path())), 1);
    assert_eq!(code(&thinfree(&["example", "nosuch"], tmp.path())), 1);
    assert_eq!(code(&thinfree(&["solve", "--poly", "x1 +* x2", "--mode", "compact"], tmp.path())), 1);
    assert_eq!(code(&thinfree(&["example", "globk2", "--omega", "3"], tmp.path())), 1);
    fs::write(tmp.path().join("bad.cfg"), "L = 2\ncolour = red\n").unwrap();
    assert_eq!(code(&thinfree(&["example", "globk2", "--config", "bad.cfg"], tmp.path())), 1);
    assert_eq!(code(&thinfree(&["approx", "--points", "missing.csv", "--eps", "0.2"], tmp.path())), 1);
    assert_eq!(code(&thinfree(&["--help"], tmp.path())), 0);
}

#[test]
fn config_file_supplies_grid_and_flags_override_it() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("run.cfg"), "# small grid\nL = 1\nh = 0.125\nout = cfg\n").unwrap();
    let o = thinfree(&["example", "globk2", "--config", "run.cfg", "--L", "2"], tmp.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let report = fs::read_to_string(tmp.path().join("cfg/report.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["inputs"]["L"], 2.0);
    assert_eq!(v["inputs"]["h"], 0.125);
}

#[test]
fn failures_exit_two_and_still_write_the_report() {
    let tmp = tempfile::tempdir().unwrap();
    // {x1 < 0} is a half plane: precondition error
    let mut args = vec!["solve", "--poly", "x1", "--mode", "compact", "--out", "err"];
    args.extend(SMALL);
    assert_eq!(code(&thinfree(&args, tmp.path())), 2);
    let report = fs::read_to_string(tmp.path().join("err/report.json")).unwrap();
    assert!(report.contains("pipeline error"));
    // a one-rung ladder cannot cover {f <= -delta}
    let mut args = vec!["subsets", "--poly", "x1^2+x2^2-0.5", "--delta", "0.1", "--ladder", "2", "--out", "short"];
    args.extend(SMALL);
    assert_eq!(code(&thinfree(&args, tmp.path())), 2);
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("short/report.json")).unwrap()).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn grid_dump_round_trips() {
    let tmp = tempfile::tempdir().unwrap();
    let mut args = vec!["solve", "--poly", "x1^2+x2^2-1", "--mode", "compact", "--dump-grid", "--out", "g"];
    args.extend(SMALL);
    assert_eq!(code(&thinfree(&args, tmp.path())), 0);
    let dir = tmp.path().join("g");
    let (dims, values) = read_checkpoint(fs::File::open(dir.join("checkpoint.bin")).unwrap()).unwrap();
    assert_eq!(dims, [33, 33, 17]);
    let csv = fs::read_to_string(dir.join("grid.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("i,j,k,x,y,z,u"));
    assert_eq!(lines.count(), values.len());
    let plane = fs::read_to_string(dir.join("plane.csv")).unwrap();
    assert!(plane.starts_with("i,j,x,y,u,phi\n"));
    let set = fs::read_to_string(dir.join("contact.csv")).unwrap();
    assert!(set.starts_with("i,j,x,y,in\n"));
}

#[test]
fn approx_single_point_and_verify_suite() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("k.csv"), "x,y\n0.05,0.0\n").unwrap();
    let o = thinfree(&["approx", "--points", "k.csv", "--eps", "0.2", "--L", "2", "--h", "0.0625", "--out", "k"], tmp.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = thinfree(&["verify", "--oracle", "10", "--comparison", "3", "--seed", "5", "--out", "v"], tmp.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(tmp.path().join("v/report.json").exists());
}

#[test]
fn positivity_mode_with_constant_q() {
    let tmp = tempfile::tempdir().unwrap();
    let o = thinfree(&["solve", "--poly", "1", "--mode", "positivity", "--L", "4", "--h", "0.25", "--out", "q"], tmp.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let px = fs::read_to_string(tmp.path().join("q/positivity.pgm")).unwrap();
    assert!(px.split_whitespace().skip(4).all(|v| v == "0"));
}
