//! End-to-end checks of the `on3` binary: artifact emission, determinism,
//! and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn on3(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_on3"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_infinity_graph() {
    let dir = tempfile::tempdir().unwrap();
    let out = on3(dir.path(), &["analyze", "infinity-1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("omega = 1/2"), "{text}");
    assert!(text.contains("demigenus sum 1"), "{text}");
    assert!(dir.path().join("analyze_infinity-1.csv").exists());
}

#[test]
fn analyze_graph_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two-tetra.graph");
    std::fs::write(
        &path,
        "nodes 8\n0: 1-5 2-6 3-7 4-8\n1: 1-2 3-4 5-6 7-8\n2: 1-3 2-4 5-7 6-8\n3: 1-4 2-3 5-8 6-7\n",
    )
    .unwrap();
    let out = on3(dir.path(), &["analyze", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("melonic-base-I"));
}

#[test]
fn census_is_deterministic() {
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    assert!(on3(dir1.path(), &["census", "--n1", "1", "--n2", "1,0,0"]).status.success());
    assert!(on3(dir2.path(), &["census", "--n1", "1", "--n2", "1,0,0"]).status.success());
    let csv1 = std::fs::read(dir1.path().join("census_1_1_0_0.csv")).unwrap();
    let csv2 = std::fs::read(dir2.path().join("census_1_1_0_0.csv")).unwrap();
    assert!(!csv1.is_empty());
    assert_eq!(csv1, csv2);
}

#[test]
fn trees_cross_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = on3(dir.path(), &["trees", "--p", "1", "--q", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("6 by direct enumeration"), "{text}");
    assert!(text.contains("agree"), "{text}");
}

#[test]
fn series_tables_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = on3(dir.path(), &["--svg", "series", "--order", "8", "--mu", "-1/2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["series_alpha.csv", "series_h.csv", "series_flo.csv", "series_at_mu.csv"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let alpha = std::fs::read_to_string(dir.path().join("series_alpha.csv")).unwrap();
    assert!(alpha.starts_with("n,q,numerator,denominator\n"));
    // alpha_2 = 4 + 6 mu + 2 mu^2.
    assert!(alpha.contains("2,0,4,1\n") && alpha.contains("2,1,6,1\n") && alpha.contains("2,2,2,1\n"));
    assert!(dir.path().join("series_at_mu.svg").exists());
}

#[test]
fn critical_curve_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = on3(
        dir.path(),
        &["critical", "--mu-min", "0", "--mu-max", "5", "--step", "0.5"],
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("critical.csv")).unwrap();
    assert!(csv.starts_with("mu,G_c,g_c,K\n"));
    let mu3 = csv.lines().find(|l| l.starts_with("3,")).unwrap();
    let g_c: f64 = mu3.split(',').nth(2).unwrap().parse().unwrap();
    assert!((1.0 / g_c - 23.5895).abs() < 0.005);
}

#[test]
fn fit_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = on3(dir.path(), &["fit", "--mu", "1", "--nmax", "200"]);
    assert!(out.status.success());
    for f in ["fit_lo.csv", "fit_nlo.csv"] {
        let csv = std::fs::read_to_string(dir.path().join(f)).unwrap();
        assert!(csv.starts_with("n_max,growth,power,residual\n"), "{f}");
    }
    let text = stdout(&out);
    assert!(text.contains("power = -1.5"), "{text}");
    assert!(text.contains("power = -0.5"), "{text}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // Unknown graph: validation error.
    let out = on3(dir.path(), &["analyze", "no-such-graph"]);
    assert_eq!(out.status.code(), Some(2));
    // Census above the node budget: budget error.
    let out = on3(dir.path(), &["census", "--n1", "7", "--node-budget", "24"]);
    assert_eq!(out.status.code(), Some(3));
    // Oversized fit: budget error.
    let out = on3(dir.path(), &["fit", "--nmax", "100000"]);
    assert_eq!(out.status.code(), Some(3));
}
