use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn walg(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walg"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("failed to launch walg")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("terminated by signal")
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

fn rational(v: &Value) -> (String, String) {
    (v["num"].as_str().unwrap().to_string(), v["den"].as_str().unwrap().to_string())
}

#[test]
fn g2_short_root_report() {
    let dir = TempDir::new().unwrap();
    let o = walg(&["present", "G", "2", "--labels", "1,0"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(dir.path());
    assert_eq!(r["schema"], 1);
    assert_eq!(r["input"]["orbit"], "~A1");
    let dims = &r["dimensions"];
    assert_eq!((dims["n"].as_u64(), dims["r"].as_u64(), dims["b"].as_u64()), (Some(14), Some(6), Some(6)));
    assert_eq!(r["generators"].as_array().unwrap().len(), 6);
    let nonzero = r["relations"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|rel| !rel["terms"].as_array().unwrap().is_empty())
        .count();
    assert_eq!(nonzero, 12);
    assert_eq!(r["onedim"]["count"], 2);
    let t3: Vec<(String, String)> = r["onedim"]["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| rational(&s["values"]["t3"]["rational"]))
        .collect();
    assert!(t3.contains(&("-9".into(), "1".into())));
    assert!(t3.contains(&("-21".into(), "2".into())));
    assert_eq!(r["denominator"]["d"], "6");
    let algebra = &r["algebra"];
    assert_eq!(algebra["positive_roots"].as_array().unwrap().len(), 6);
    let brackets = algebra["brackets"].as_array().unwrap();
    assert!(brackets.iter().all(|t| t["i"].as_u64() < t["j"].as_u64()));
    let h1 = brackets.iter().find(|t| (t["i"].as_u64(), t["j"].as_u64()) == (Some(1), Some(7))).unwrap();
    assert_eq!(h1["terms"][0]["b"], 13);

    let text = fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(text.contains("[Theta4, Theta5] = T6 + 1/2"));
    assert!(text.contains("number of solutions: 2"));
    assert_eq!(String::from_utf8_lossy(&o.stdout), text);
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    assert_eq!(code(&walg(&["G", "2", "--orbit", "A1~", "--threads", "1"], a.path())), 0);
    assert_eq!(code(&walg(&["G", "2", "--orbit", "A1~", "--threads", "4"], b.path())), 0);
    for f in ["report.json", "report.txt"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
    let json = fs::read_to_string(a.path().join("report.json")).unwrap();
    assert!(!json.contains("time") && !json.contains("elapsed"));
}

#[test]
fn mode_flag_matches_positional_mode() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    assert_eq!(code(&walg(&["onedim-fast", "G", "2", "--orbit", "A1"], a.path())), 0);
    assert_eq!(code(&walg(&["G", "2", "--orbit", "A1", "--mode", "onedim-fast"], b.path())), 0);
    assert_eq!(
        fs::read(a.path().join("report.json")).unwrap(),
        fs::read(b.path().join("report.json")).unwrap()
    );
    assert_eq!(report(a.path())["onedim"]["count"], 1);
}

#[test]
fn generators_only_omits_relations() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&walg(&["generators-only", "G", "2", "--orbit", "A1"], dir.path())), 0);
    let r = report(dir.path());
    assert!(r.get("relations").is_none() || r["relations"].is_null());
    assert!(r.get("onedim").is_none() || r["onedim"].is_null());
    assert_eq!(r["generators"].as_array().unwrap().len(), 8);
}

#[test]
fn zero_orbit_runs() {
    let dir = TempDir::new().unwrap();
    let o = walg(&["present", "G", "2", "--labels", "0,0"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(dir.path());
    assert_eq!(r["dimensions"]["r"], 14);
    let primes: Vec<u64> = r["denominator"]["primes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["prime"].as_u64().unwrap())
        .collect();
    assert_eq!(primes, vec![2, 3]);
}

#[test]
fn invalid_input_exits_with_2() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["G", "2", "--labels", "1,0,1"][..],
        &["G", "2", "--labels", "a,b"],
        &["G", "2", "--labels", "-1,0"],
        &["X", "2", "--labels", "1,0"],
        &["G", "3", "--labels", "1,0,0"],
        &["G", "2", "--orbit", "B7"],
        &["G", "2"],
        &["sideways", "G", "2", "--orbit", "A1"],
        &["present", "G", "2", "--orbit", "A1", "--mode", "onedim-fast"],
        &["G", "2", "--labels", "1,0", "--orbit", "A1"],
    ] {
        let o = walg(args, dir.path());
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn exhausted_solver_budget_exits_with_3() {
    let dir = TempDir::new().unwrap();
    let o = walg(&["G", "2", "--orbit", "~A1", "--solver-degree-bound", "1"], dir.path());
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn orbit_listing_includes_all_types() {
    let o = Command::new(env!("CARGO_BIN_EXE_walg")).args(["--list-orbits"]).output().unwrap();
    assert_eq!(code(&o), 0);
    let s = String::from_utf8_lossy(&o.stdout);
    for needle in ["G2 ~A1", "F4 ~A2+A1", "E6 2A2+A1", "E7 (A3+A1)'"] {
        assert!(s.contains(needle), "{needle} missing from\n{s}");
    }
}
