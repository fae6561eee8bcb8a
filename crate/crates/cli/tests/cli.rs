use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_fastlight");

fn run(dir: &Path, config: Option<&str>, args: &[&str]) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.current_dir(dir).env_remove("FASTLIGHT_SEED_DIR");
    if let Some(text) = config {
        fs::write(dir.join("scenario.cfg"), text).unwrap();
        cmd.args(["--config", "scenario.cfg"]);
    }
    cmd.args(args).output().unwrap()
}

fn ok(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}\nstdout: {}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Columns of a CSV file by header name; `inf`/`nan`/empty become non-finite.
fn columns(path: &Path) -> Vec<(String, Vec<f64>)> {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let headers: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    let mut cols: Vec<(String, Vec<f64>)> = headers.into_iter().map(|h| (h, Vec::new())).collect();
    for record in rdr.records() {
        for (col, field) in cols.iter_mut().zip(record.unwrap().iter()) {
            col.1.push(field.parse().unwrap_or(f64::NAN));
        }
    }
    cols
}

fn column(path: &Path, name: &str) -> Vec<f64> {
    columns(path).into_iter().find(|c| c.0 == name).unwrap_or_else(|| panic!("no column {name}")).1
}

fn porcelain_field(line: &str, key: &str) -> f64 {
    line.split_whitespace()
        .find_map(|kv| kv.strip_prefix(&format!("{key}=")))
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn sweep_mirror_for_opposite_weak_values() {
    let tmp = TempDir::new().unwrap();
    ok(&run(tmp.path(), Some("target_weak_value = 60\nsweep_points = 501\n"), &["--out", "plus", "sweep"]));
    ok(&run(tmp.path(), Some("target_weak_value = -60\nsweep_points = 501\n"), &["--out", "minus", "sweep"]));
    let plus = tmp.path().join("plus/sweep.csv");
    let minus = tmp.path().join("minus/sweep.csv");
    let header = fs::read_to_string(&plus).unwrap();
    assert!(header.starts_with("detuning_hz,kappa_per_m,n,n_g,re_w,im_w,transmission,full_extinction\n"));
    let (kp, km) = (column(&plus, "kappa_per_m"), column(&minus, "kappa_per_m"));
    let (np, nm) = (column(&plus, "n"), column(&minus, "n"));
    assert_eq!(kp.len(), 501);
    for k in 0..kp.len() {
        assert!((kp[k] - km[k]).abs() < 1e-12);
        assert!(((np[k] - 1.5) + (nm[k] - 1.5)).abs() < 1e-12);
    }
    assert!(tmp.path().join("plus/plot_sweep.py").exists());
}

#[test]
fn sweep_of_eigenmode_is_lossless_and_uniformly_slow() {
    let tmp = TempDir::new().unwrap();
    ok(&run(tmp.path(), Some("pre_state = H\npost_state = H\nsweep_points = 101\n"), &["--out", "o", "sweep"]));
    let path = tmp.path().join("o/sweep.csv");
    let expected = 1.5 + 299_792_458.0 * 2.66e-12 / 3.0;
    assert!(column(&path, "kappa_per_m").iter().all(|k| k.abs() < 1e-15));
    assert!(column(&path, "n_g").iter().all(|n| (n - expected).abs() < 1e-12));
}

#[test]
fn sweep_marks_full_extinction() {
    let tmp = TempDir::new().unwrap();
    // a carrier-aligned anti-diagonal analyzer blocks the carrier itself
    ok(&run(
        tmp.path(),
        Some("post_angle = 135deg\ndetuning_min = -1GHz\ndetuning_max = 1GHz\nsweep_points = 3\n"),
        &["--out", "o", "sweep"],
    ));
    let text = fs::read_to_string(tmp.path().join("o/sweep.csv")).unwrap();
    let middle = text.lines().nth(2).unwrap();
    assert!(middle.contains(",inf,") && middle.ends_with(",inf"), "{middle}");
}

#[test]
fn zero_point_sweep_is_a_config_error() {
    let tmp = TempDir::new().unwrap();
    let out = run(tmp.path(), Some("# sweep\nsweep_points = 0\n"), &["sweep"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2") && err.contains("sweep_points"), "{err}");
}

#[test]
fn config_syntax_errors_exit_two() {
    let tmp = TempDir::new().unwrap();
    for text in ["lenght = 1m\n", "length = 1m\nlength = 2m\n", "length\n", "dgd = 3 apples\n"] {
        let out = run(tmp.path(), Some(text), &["sweep"]);
        assert_eq!(out.status.code(), Some(2), "{text}");
    }
    let out = run(tmp.path(), None, &["reproduce-fig", "--fig", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

const SEQUENCE: &str = "\
pulse = square
width = 2ns
dt = 1.33ps
rise = 26.6ps
samples = 8192
target_weak_values = -1.5, -5, -20, -50
";

#[test]
fn fast_light_sequence_keeps_its_front() {
    let tmp = TempDir::new().unwrap();
    ok(&run(tmp.path(), Some(SEQUENCE), &["--out", "o", "propagate"]));
    let summary = tmp.path().join("o/summary.csv");
    let db = column(&summary, "transmission_db");
    let com = column(&summary, "com_shift_s");
    let front = column(&summary, "front_arrival_s");
    assert_eq!(db.len(), 4);
    for k in 1..4 {
        assert!(db[k] < db[k - 1]);
        assert!(com[k] < com[k - 1], "{com:?}");
    }
    let spread = front.iter().copied().fold(f64::MIN, f64::max) - front.iter().copied().fold(f64::MAX, f64::min);
    assert!(spread < 1.33e-12, "{front:?}");
    for name in ["input.csv", "reference.csv", "output_0.csv", "output_3.csv", "plot_propagate.py"] {
        assert!(tmp.path().join("o").join(name).exists(), "{name}");
    }
}

#[test]
fn superluminal_peak_beats_light_in_vacuum() {
    let tmp = TempDir::new().unwrap();
    ok(&run(tmp.path(), Some("width = 50ns\nsamples = 8192\ntarget_weak_value = -3500\n"), &["--out", "o", "propagate"]));
    let advance = -column(&tmp.path().join("o/summary.csv"), "peak_shift_s")[0];
    let vacuum_lead = 0.5 * 1.5 / 299_792_458.0;
    assert!(advance > vacuum_lead, "{advance:e}");
}

#[test]
fn identity_geometry_is_a_plain_delay() {
    let tmp = TempDir::new().unwrap();
    let base = "pre_state = H\npost_state = H\nwidth = 1ns\ndt = 2.66ps\nsamples = 8192\n";
    for (retain, expected) in [("false", 1.5 * 1.5 / 299_792_458.0 + 1.33e-12), ("true", 1.33e-12)] {
        let dir = format!("o_{retain}");
        let text = format!("{base}remove_free_delay = {}\n", if retain == "false" { "false" } else { "true" });
        ok(&run(tmp.path(), Some(&text), &["--out", &dir, "propagate"]));
        let input = tmp.path().join(&dir).join("input.csv");
        let output = tmp.path().join(&dir).join("output_0.csv");
        let centroid = |p: &PathBuf| {
            let t = column(p, "time_s");
            let i = column(p, "intensity");
            t.iter().zip(&i).map(|(t, i)| t * i).sum::<f64>() / i.iter().sum::<f64>()
        };
        let shift = centroid(&output) - centroid(&input);
        assert!((shift - expected).abs() < 1e-15, "{shift:e} vs {expected:e}");
        let energy = |p: &PathBuf| column(p, "intensity").iter().sum::<f64>();
        assert!((energy(&output) / energy(&input) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn fit_recovers_propagated_weak_value() {
    let tmp = TempDir::new().unwrap();
    let config = "width = 20ns\nsamples = 8192\ntarget_weak_value = 200\nremove_free_delay = false\n";
    ok(&run(tmp.path(), Some(config), &["--out", "o", "propagate"]));
    let line = ok(&run(tmp.path(), Some(config), &["--porcelain", "fit", "o/reference.csv", "o/output_0.csv"]));
    assert_eq!(line.lines().count(), 1);
    let w = porcelain_field(&line, "w_estimate");
    assert!((w / 200.0 - 1.0).abs() < 0.02, "{line}");
    let n_g = porcelain_field(&line, "n_g");
    assert!((n_g - (1.5 + 299_792_458.0 * 2.66e-12 / 3.0 * w)).abs() < 1e-9);

    let readable = ok(&run(tmp.path(), Some(config), &["fit", "o/reference.csv", "o/output_0.csv"]));
    assert!(readable.contains("w_estimate") && readable.contains("v_g/c"));
}

#[test]
fn fit_of_unchanged_pulse_implies_no_shift() {
    let tmp = TempDir::new().unwrap();
    let config = "width = 20ns\nsamples = 8192\n";
    ok(&run(tmp.path(), Some(config), &["--out", "o", "propagate"]));
    let line = ok(&run(tmp.path(), Some(config), &["--porcelain", "fit", "o/input.csv", "o/input.csv"]));
    let dt = {
        let t = column(&tmp.path().join("o/input.csv"), "time_s");
        t[1] - t[0]
    };
    assert!(porcelain_field(&line, "mean_shift_s").abs() < dt, "{line}");
}

#[test]
fn fit_failures_have_their_own_exit_codes() {
    let tmp = TempDir::new().unwrap();
    ok(&run(tmp.path(), Some("width = 20ns\nsamples = 8192\n"), &["--out", "a", "propagate"]));
    ok(&run(tmp.path(), Some("width = 20ns\nsamples = 4096\n"), &["--out", "b", "propagate"]));
    let out = run(tmp.path(), None, &["fit", "a/input.csv", "b/output_0.csv"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid mismatch"));

    let out = run(tmp.path(), None, &["fit", "a/input.csv", "missing.csv"]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(tmp.path(), Some("w_min = 0\nw_max = 1e-9\n"), &["fit", "a/input.csv", "a/input.csv"]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn undersized_window_asks_for_a_larger_one() {
    let tmp = TempDir::new().unwrap();
    let out = run(
        tmp.path(),
        Some("width = 1ns\ndt = 1ps\nsamples = 8192\nremove_free_delay = false\npre_state = H\npost_state = H\n"),
        &["propagate"],
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("window") && err.contains("samples"), "{err}");
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let tmp = TempDir::new().unwrap();
    ok(&run(tmp.path(), Some(SEQUENCE), &["--out", "one", "propagate"]));
    ok(&run(tmp.path(), Some(SEQUENCE), &["--out", "two", "propagate"]));
    for name in ["input.csv", "reference.csv", "output_0.csv", "output_3.csv", "summary.csv"] {
        let a = fs::read(tmp.path().join("one").join(name)).unwrap();
        let b = fs::read(tmp.path().join("two").join(name)).unwrap();
        assert!(a == b, "{name} differs");
    }
    let line = fs::read_to_string(tmp.path().join("one/output_0.csv")).unwrap();
    let first = line.lines().nth(1).unwrap();
    assert!(first.split(',').all(|f| f.contains('e') && !f.contains(' ')), "{first}");
}

#[test]
fn output_root_comes_from_environment_when_unset() {
    let tmp = TempDir::new().unwrap();
    let status = Command::new(BIN)
        .current_dir(tmp.path())
        .env("FASTLIGHT_SEED_DIR", "seeded")
        .args(["sweep"])
        .output()
        .unwrap();
    ok(&status);
    assert!(tmp.path().join("seeded/sweep.csv").exists());
    fs::write(tmp.path().join("c.cfg"), "output_dir = configured\n").unwrap();
    let status = Command::new(BIN)
        .current_dir(tmp.path())
        .env("FASTLIGHT_SEED_DIR", "seeded")
        .args(["--config", "c.cfg", "sweep"])
        .output()
        .unwrap();
    ok(&status);
    assert!(tmp.path().join("configured/sweep.csv").exists());
}

#[test]
fn reproduce_figure_two() {
    let tmp = TempDir::new().unwrap();
    let line = ok(&run(tmp.path(), None, &["--out", "o", "--porcelain", "reproduce-fig", "--fig", "2"]));
    assert_eq!(line.trim(), "dir=o/fig2");
    for name in ["sweep_0.csv", "sweep_1.csv", "plot_fig2.py", "scenario.cfg"] {
        assert!(tmp.path().join("o/fig2").join(name).exists());
    }
}
