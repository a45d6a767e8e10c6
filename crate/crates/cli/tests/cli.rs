use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

fn cobweb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobweb"))
        .args(args)
        .env_remove("COBWEB_ORACLE_MAX")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = cobweb(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    cobweb(args).status.code().unwrap()
}

#[test]
fn every_command_is_deterministic() {
    let commands: &[&[&str]] = &[
        &["fib", "90"],
        &["fibonomial", "10", "4", "--method", "all"],
        &["zeta", "--levels", "4"],
        &["mobius", "--levels", "4", "--format", "csv"],
        &["chains", "2", "6", "--brute"],
        &["copies", "--level", "2", "--height", "2", "--greedy"],
        &["konvalina", "--weights", "1,1,3", "--k", "4"],
        &["gv", "6", "3", "--verbose", "--format", "json"],
        &["fence", "12", "--brute"],
        &["hasse", "--levels", "4", "--format", "json"],
        &["crosscheck", "--max-n", "6", "--oracle-max-n", "5"],
    ];
    for args in commands {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn crosscheck_rows_do_not_depend_on_jobs() {
    let one = stdout(&["crosscheck", "--max-n", "6", "--jobs", "1"]);
    let four = stdout(&["crosscheck", "--max-n", "6", "--jobs", "4"]);
    assert_eq!(one, four);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["fibonomial", "4", "2"]), 0);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["fibonomial", "4"]), 2);
    assert_eq!(code(&["fibonomial", "4", "x"]), 2);
    assert_eq!(code(&["fibonomial", "4", "2", "--method", "bogus"]), 2);
    assert_eq!(code(&["zeta", "--levels", "13"]), 2);
    assert_eq!(code(&["hasse", "--levels", "11"]), 2);
    assert_eq!(code(&["gv", "15", "2"]), 2);
    assert_eq!(code(&["chains", "3", "2"]), 2);
    assert_eq!(code(&["konvalina", "--weights", "0,1", "--k", "1"]), 2);
    assert_eq!(code(&["crosscheck", "--inject-fault", "no.such.check"]), 2);
    assert_eq!(
        code(&[
            "crosscheck",
            "--max-n",
            "5",
            "--inject-fault",
            "beck.identities"
        ]),
        1
    );
    assert_eq!(
        code(&["hasse", "--levels", "2", "--out", "/nonexistent/dir/h.dot"]),
        1
    );
}

#[test]
fn failed_crosscheck_still_prints_every_row() {
    let out = cobweb(&[
        "crosscheck",
        "--max-n",
        "5",
        "--inject-fault",
        "mobius.inverse",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let fails: Vec<_> = text.lines().filter(|l| l.contains(" FAIL ")).collect();
    assert_eq!(fails.len(), 1);
    assert!(fails[0].starts_with("mobius.inverse"));
    assert!(text.lines().filter(|l| l.contains(" PASS ")).count() >= 12);
}

#[test]
fn crosscheck_small_bound_gives_smaller_table() {
    let full = stdout(&["crosscheck"]);
    let small = stdout(&["crosscheck", "--max-n", "4"]);
    let rows = |t: &str| t.lines().filter(|l| l.contains(" PASS ")).count();
    assert!(rows(&full) >= 12);
    assert!(rows(&small) < rows(&full));
    assert!(!small.contains(" FAIL "));
}

#[test]
fn crosscheck_json() {
    let v: Value =
        serde_json::from_str(&stdout(&["crosscheck", "--max-n", "5", "--format", "json"])).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn zeta_sources_are_byte_identical() {
    for levels in 0..=10 {
        let l = levels.to_string();
        for format in ["dense", "csv", "json"] {
            let order = stdout(&[
                "zeta", "--levels", &l, "--source", "order", "--format", format,
            ]);
            let explicit = stdout(&[
                "zeta", "--levels", &l, "--source", "explicit", "--format", format,
            ]);
            assert_eq!(order, explicit, "levels {levels} {format}");
        }
    }
}

#[test]
fn zeta_dense_matches_staircase() {
    let out = stdout(&[
        "zeta", "--levels", "5", "--source", "order", "--format", "dense",
    ]);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 13);
    assert!(rows[0].split(' ').all(|c| c == "1"));
    // the two level-3 vertices are incomparable
    assert_eq!(rows[3].split(' ').nth(4), Some("0"));
}

#[test]
fn json_round_trips() {
    let text = stdout(&["zeta", "--levels", "6", "--format", "json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["size"], 21);
    let m = cobweb_core::TriangularMatrix::from_json(&text).unwrap();
    assert_eq!(format!("{}\n", m.to_json()), text);
    assert_eq!(m.to_dense(), stdout(&["zeta", "--levels", "6"]));

    let v: Value =
        serde_json::from_str(&stdout(&["fibonomial", "60", "30", "--format", "json"])).unwrap();
    assert_eq!(v["agree"], true);
    // big values stay exact as decimal strings
    assert!(v["values"]["def"]
        .as_str()
        .unwrap()
        .chars()
        .all(|c| c.is_ascii_digit()));
}

#[test]
fn hasse_counts() {
    for (levels, nodes, edges) in [(0, 1, 0), (3, 5, 4), (5, 13, 1 + 1 + 2 + 6 + 15)] {
        let dot = stdout(&["hasse", "--levels", &levels.to_string()]);
        assert!(dot.starts_with("digraph cobweb {"));
        assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), nodes);
        assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), edges);
        let v: Value = serde_json::from_str(&stdout(&[
            "hasse",
            "--levels",
            &levels.to_string(),
            "--format",
            "json",
        ]))
        .unwrap();
        assert_eq!(v["vertices"], nodes);
        assert_eq!(v["edges"].as_array().unwrap().len(), edges);
    }
}

#[test]
fn out_writes_file() {
    let dir = std::env::temp_dir().join(format!("cobweb-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.dot");
    let p = path.to_str().unwrap();
    let out = cobweb(&["hasse", "--levels", "3", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        stdout(&["hasse", "--levels", "3"])
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_env_overrides_bound() {
    assert_eq!(code(&["chains", "2", "9", "--brute"]), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_cobweb"))
        .args(["chains", "2", "9", "--brute"])
        .env("COBWEB_ORACLE_MAX", "9")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let total = text.lines().find(|l| l.starts_with("total ")).unwrap();
    let brute = text
        .lines()
        .find(|l| l.starts_with("brute_total "))
        .unwrap();
    assert_eq!(total[6..], brute[12..]);

    let bad = Command::new(env!("CARGO_BIN_EXE_cobweb"))
        .args(["chains", "2", "5", "--brute"])
        .env("COBWEB_ORACLE_MAX", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn worked_values_through_the_cli() {
    assert_eq!(
        stdout(&["fibonomial", "4", "2", "--method", "all"]),
        "6\n".repeat(5)
    );
    assert_eq!(stdout(&["fibonomial", "5", "0"]), "1\n");
    assert_eq!(stdout(&["fibonomial", "5", "3", "--method", "gv"]), "15\n");
    for (k, n, total) in [
        ("3", "4", "6"),
        ("2", "4", "6"),
        ("3", "5", "30"),
        ("2", "5", "15"),
        ("4", "5", "15"),
    ] {
        let out = stdout(&["chains", k, n]);
        assert!(
            out.contains(&format!("copies_total {total}\n")),
            "{k} {n}: {out}"
        );
    }
}

fn in_process(args: &[String]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cobweb_cli::run(
        std::iter::once("cobweb".to_string()).chain(args.iter().cloned()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn all_methods_agree(n in 0u32..=12, k in 0u32..=12) {
        prop_assume!(k <= n);
        let (code, out) = in_process(&["fibonomial".into(), n.to_string(), k.to_string(), "--method".into(), "all".into()]);
        prop_assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        prop_assert_eq!(lines.len(), 5);
        prop_assert!(lines.iter().all(|l| *l == lines[0]));
    }
}
