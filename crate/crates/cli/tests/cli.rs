//! End-to-end runs of the `subtile` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn subtile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subtile"))
        .args(args)
        .env_remove("SUBTILE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name);
    p.to_str().unwrap().to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn kr_report_matches_published_values() {
    let o = subtile(&["report", "--family", "kr", "--max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r.ends_with("\tyes")), "{out}");
    assert_eq!(rows[5], "7\t4/3\t2\t3/2\t1/3\t1/2\t1/3\t1/2\tyes");
    assert_eq!(out, stdout(&subtile(&["report", "--family", "kr", "--max", "8"])));
}

#[test]
fn kr_report_json_has_schema() {
    let o = subtile(&["report", "--family", "kr", "--max", "4", "--format", "json"]);
    let out = stdout(&o);
    assert!(out.contains("\"schema\": 1"), "{out}");
    assert!(out.contains("\"xi\": \"5/3\""), "{out}");
}

#[test]
fn params_of_c4_file() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.el", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let o = subtile(&["params", &c4]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in [
        "xi = 2/1",
        "hcf = INFINITY",
        "xi_star = 2/1",
        "threshold_even = 1/2",
        "threshold_odd = 1/2",
    ] {
        assert!(out.lines().any(|l| l == line), "missing {line:?} in\n{out}");
    }
}

#[test]
fn tile_certificate_round_trips_through_disk() {
    let dir = TempDir::new().unwrap();
    let host = write(&dir, "c6.el", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n");
    let o = subtile(&["tile", &host, "K3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("TILING FOUND"), "{out}");
    let cert = write(&dir, "c6.cert", &out);
    let v = subtile(&["verify-tiling", &host, "K3", &cert]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v), "certificate: valid\n");

    // Drop the last route line: the certificate no longer checks.
    let broken: Vec<&str> = out.lines().collect();
    let broken = broken[..broken.len() - 1].join("\n");
    let cert = write(&dir, "broken.cert", &broken);
    let v = subtile(&["verify-tiling", &host, "K3", &cert]);
    assert_ne!(v.status.code(), Some(0));
}

#[test]
fn tile_reports_absence_in_output_not_status() {
    let o = subtile(&["tile", "K(1,3)", "K2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "NO TILING\n");
}

#[test]
fn graph6_input() {
    let dir = TempDir::new().unwrap();
    // K4 in graph6.
    let k4 = write(&dir, "k4.g6", "C~\n");
    let o = subtile(&["--graph6", "params", &k4]);
    assert!(stdout(&o).contains("xi = 5/3"), "{}", stdout(&o));
}

#[test]
fn obstruction_for_unbalanced_bipartite_host() {
    let o = subtile(&["obstruct", "K(5,6)", "K7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("obstruction: divisibility"),
        "{}",
        stdout(&o)
    );
    let o = subtile(&["obstruct", "K(3,9)", "K5"]);
    assert!(stdout(&o).starts_with("obstruction: ratio"), "{}", stdout(&o));
}

#[test]
fn extremal_with_brute_force() {
    let o = subtile(&["extremal", "K7", "--n", "9", "--which", "P34", "--brute-force"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("# brute_force NoTiling"), "{out}");
    assert!(out.contains("# verdict pass"), "{out}");
}

#[test]
fn extremal_instance_is_a_readable_graph() {
    let dir = TempDir::new().unwrap();
    let o = subtile(&["extremal", "K5", "--n", "12", "--which", "P33"]);
    let g = write(&dir, "p33.el", &stdout(&o));
    let d = subtile(&["dominate", &g]);
    assert_eq!(d.status.code(), Some(0));
    assert!(stdout(&d).contains("min_degree 3"), "{}", stdout(&d));
}

#[test]
fn gadget_emission_and_verification() {
    let o = subtile(&["gadget", "K2", "--kind", "SHAT"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("4 4\n"), "{out}");
    assert!(out.contains("# role u "), "{out}");
    let v = subtile(&["gadget", "K3", "--kind", "T1", "--verify", "--certificates"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn hat_with_reservoir_tiling() {
    let o = subtile(&["hat", "K7", "--b", "3", "--a", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("parts 7 9 imbalance 2\n"), "{out}");
    assert!(out.contains("reservoir K(34,30) blocks 4 valid"), "{out}");
}

#[test]
fn hat_refuses_infinite_hcf() {
    let o = subtile(&["hat", "K3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dominate_petersen() {
    let o = subtile(&["dominate", &fixture("petersen.el")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("exact 3 :"), "{}", stdout(&o));
}

#[test]
fn absorb_golden_fixture() {
    let o = subtile(&[
        "absorb",
        &fixture("system20.txt"),
        "--p",
        "1/2",
        "--seed",
        "42",
        "--cap",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let golden = fs::read_to_string(fixture("selection_seed42.txt")).unwrap();
    let body: String = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    assert_eq!(body, golden);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(subtile(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(subtile(&["params"]).status.code(), Some(2));
    assert_eq!(
        subtile(&["params", "no-such-file-or-construction"]).status.code(),
        Some(2)
    );
    assert_eq!(
        subtile(&["extremal", "K5", "--n", "8", "--which", "P99"])
            .status
            .code(),
        Some(2)
    );
    let o = subtile(&["report", "--family", "kr", "--max", "99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = subtile(&["--budget", "1", "tile", "K(4,5)", "K7"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_subtile"))
        .args(["dominate", &fixture("petersen.el")])
        .env("SUBTILE_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn help_exits_0() {
    assert_eq!(subtile(&["--help"]).status.code(), Some(0));
}
