//! End-to-end tests of the `hedet` binary: subcommand outputs, exit
//! codes, and report files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn hedet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hedet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmpfile(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("hedet-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn sizes_prints_target_counts() {
    let out = hedet(&["sizes", "--p", "83", "--q", "41"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("G: 3403"), "got: {text}");
    assert!(text.contains("H: 10501"), "got: {text}");
}

#[test]
fn chif_groetzsch() {
    let out = hedet(&["chif", "--seed", "groetzsch"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "29/10");
}

#[test]
fn chi_and_alpha() {
    let out = hedet(&["chi", "--seed", "petersen"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "3");
    let out = hedet(&["alpha", "--seed", "petersen"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "4");
    let out = hedet(&["oddgirth", "--seed", "c7"]);
    assert_eq!(stdout(&out).trim(), "7");
}

#[test]
fn verify_c7_writes_report_and_exits_1() {
    let report = tmpfile("c7-report.json");
    let out = hedet(&[
        "verify",
        "--seed",
        "c7",
        "--q",
        "3",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "the C7 instance is not a counterexample");
    let text = stdout(&out);
    assert!(text.contains("not a counterexample"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["params"]["c"], 11);
    let checks = json["checks"].as_array().unwrap();
    let status = |name: &str| {
        checks
            .iter()
            .find(|c| c["name"] == name)
            .unwrap_or_else(|| panic!("check {name} missing"))["status"]
            .clone()
    };
    assert_eq!(status("embedding"), "pass");
    assert_eq!(status("h_lower"), "pass");
    assert_eq!(status("g_lower"), "fail");
    std::fs::remove_file(&report).ok();
}

#[test]
fn verify_c5_reports_embedding_witness() {
    let report = tmpfile("c5-report.json");
    let out = hedet(&[
        "verify",
        "--seed",
        "c5",
        "--q",
        "2",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let embedding = json["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "embedding")
        .unwrap();
    assert_eq!(embedding["status"], "fail");
    assert_eq!(embedding["witness"]["kind"], "embedding");
    assert_eq!(embedding["witness"]["h_edge"][0], "mu:1:4");
    assert_eq!(embedding["witness"]["h_edge"][1], "mu:1:5");
    assert_eq!(embedding["witness"]["g_edge"][0], "3:1");
    assert_eq!(embedding["witness"]["g_edge"][1], "4:1");
    assert_eq!(embedding["witness"]["color"], 2);
    std::fs::remove_file(&report).ok();
}

#[test]
fn verify_unknown_exit_code() {
    // a (bogus, but trusted) alpha claim makes g_lower pass; a zero budget
    // leaves h_lower unknown, so the run is incomplete: exit 3
    let out = hedet(&[
        "verify", "--seed", "c7", "--q", "3", "--alpha", "1", "--budget", "0",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("incomplete"));
}

#[test]
fn build_h_dimacs() {
    let path = tmpfile("h.col");
    let out = hedet(&[
        "build", "--seed", "c7", "--q", "3", "--what", "h", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("p edge 89 731"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn maps_format() {
    let out = hedet(&["maps", "--seed", "c7", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let headers: Vec<&str> = text.lines().filter(|l| l.starts_with("# ")).collect();
    assert_eq!(headers.len(), 89);
    assert_eq!(headers[0], "# g:1");
    assert_eq!(headers[11], "# phi");
    assert_eq!(headers[12], "# mu:1:5");
    assert_eq!(headers[88], "# theta:7:11");
    // each map line has 21 colours, all within 1..=11
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        let colors: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        assert_eq!(colors.len(), 21);
        assert!(colors.iter().all(|&c| (1..=11).contains(&c)));
    }
    // phi's map is s repeated for each copy: 1 1 1 2 2 2 ...
    let phi_line = text.lines().nth(2 * 11 + 1).unwrap();
    assert_eq!(phi_line, "1 1 1 2 2 2 3 3 3 4 4 4 5 5 5 6 6 6 7 7 7");
}

#[test]
fn cnf_export() {
    let path = tmpfile("h.cnf");
    let out = hedet(&[
        "cnf", "--seed", "c7", "--q", "3", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("p cnf 979 8141"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn mycielski_chain_and_file_seed() {
    let path = tmpfile("m3333c7.col");
    let out = hedet(&[
        "mycielski", "--seed", "c7", "--chain", "3,3,3,3", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("607 vertices"));
    assert!(stdout(&out).contains("odd girth 7"));
    // round-trip the written graph through the file: seed syntax
    let seed = format!("file:{}", path.display());
    let out = hedet(&["oddgirth", "--seed", &seed]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "7");
    std::fs::remove_file(&path).ok();
}

#[test]
fn usage_errors_exit_2() {
    let out = hedet(&["chif", "--seed", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hedet(&["verify", "--seed", "c7", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2), "p=7 > 2q+1=5 is a usage error");
    let out = hedet(&["oddgirth", "--seed", "file:/does/not/exist.col"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hedet(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_deterministic_reports() {
    let (a, b) = (tmpfile("det-a.json"), tmpfile("det-b.json"));
    for path in [&a, &b] {
        let out = hedet(&[
            "verify", "--seed", "c5", "--q", "2", "--workers", "2", "--report",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(1));
    }
    let norm = |p: &PathBuf| {
        let mut v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        for c in v["checks"].as_array_mut().unwrap() {
            c["millis"] = 0.into();
        }
        v
    };
    assert_eq!(norm(&a), norm(&b));
    std::fs::remove_file(&a).ok();
    std::fs::remove_file(&b).ok();
}
