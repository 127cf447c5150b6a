use std::process::{Command, Output};

use qexchange::sweep::CSV_HEADER;

fn qexchange(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qexchange"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn rows(out: &Output) -> Vec<Vec<f64>> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn three_point_sweep_tracks_concurrence() {
    let out = qexchange(&[
        "sweep",
        "--theta",
        "1.5707963267948966",
        "--lt-max",
        "3.141592653589793",
        "--steps",
        "3",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().next(), Some(CSV_HEADER));
    let concurrence: Vec<f64> = rows(&out).iter().map(|r| r[3]).collect();
    assert_eq!(concurrence.len(), 3);
    for (got, want) in concurrence.iter().zip([1.0, 0.0, 1.0]) {
        assert!((got - want).abs() < 1e-11, "{concurrence:?}");
    }
}

#[test]
fn product_state_sweep_has_no_exchange() {
    let out = qexchange(&["sweep", "--theta", "0", "--steps", "9", "--skip-mef"]);
    assert!(out.status.success());
    for row in rows(&out) {
        assert_eq!(&row[3..6], &[0.0, 0.0, 0.0]);
        assert!(row[6].is_nan());
    }
}

#[test]
fn rows_respect_physical_bounds() {
    let out = qexchange(&["sweep", "--theta", "2.2", "--phi", "-0.4", "--steps", "41"]);
    assert!(out.status.success());
    for row in rows(&out) {
        assert!(row.len() == 9);
        assert!((0.0..=1.0).contains(&row[3]));
        assert!(row[4] >= -1e-12);
        assert!(row[8] >= -1e-9);
    }
}

#[test]
fn identical_flags_give_identical_bytes() {
    let args = ["sweep", "--theta", "0.7", "--steps", "25"];
    let (a, b) = (qexchange(&args), qexchange(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.contains(&b'\r'));
}

#[test]
fn out_flag_writes_the_same_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let args = ["sweep", "--theta", "1.1", "--steps", "5", "--skip-mef"];
    let stdout = qexchange(&args).stdout;
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let out = qexchange(&with_out);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}

#[test]
fn exit_statuses() {
    assert_eq!(
        qexchange(&["sweep", "--theta", "1", "--steps", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(qexchange(&["sweep", "--theta", "4"]).status.code(), Some(1));
    assert_eq!(qexchange(&["sweep"]).status.code(), Some(1));
    assert_eq!(qexchange(&["bogus"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("no/such/dir/out.csv");
    let out = qexchange(&[
        "sweep",
        "--theta",
        "1",
        "--steps",
        "3",
        "--skip-mef",
        "--out",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let bad_figure = qexchange(&["figure", "9z"]);
    assert!(!bad_figure.status.success());
    assert_eq!(qexchange(&["--help"]).status.code(), Some(0));
}

#[test]
fn figure_writes_named_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = qexchange(&[
        "figure",
        "2a",
        "--skip-mef",
        "--dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("fig2a.csv")).unwrap();
    assert_eq!(text.lines().count(), 202);
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("0,0.785398163397,0,"));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let a = qexchange(&["verify", "--seed", "11"]);
    let b = qexchange(&["verify", "--seed", "11"]);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stdout)
    );
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout)
        .lines()
        .any(|l| l.starts_with("PASS  entropy-routes")));
}

#[test]
fn panel_2c_coherent_information_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let out = qexchange(&[
        "figure",
        "2c",
        "--skip-mef",
        "--dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("fig2c.csv")).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    let at = |lt: f64| rows.iter().find(|r| (r[0] - lt).abs() < 1e-11).unwrap()[5];
    assert!((at(0.0) - 1.0).abs() < 1e-11);
    assert!(at(std::f64::consts::FRAC_PI_2).abs() < 1e-11);
}
