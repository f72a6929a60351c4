use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_attoclock")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Value of `quantity` in `unit` from a quantity,value,unit report.
fn value(out: &Output, quantity: &str, unit: &str) -> f64 {
    let text = stdout(out);
    let line = text
        .lines()
        .find(|l| {
            let parts: Vec<_> = l.split(',').collect();
            parts.len() == 3 && parts[0] == quantity && parts[2] == unit
        })
        .unwrap_or_else(|| panic!("no {quantity} [{unit}] in\n{text}"));
    line.split(',').nth(1).unwrap().parse().unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn geometry_reports_exit_point() {
    let out = run(&["geometry", "--atom", "He:clementi", "--field", "0.06"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(rel(value(&out, "x_exit", "au"), 12.8750) <= 1e-5);
    assert!(rel(value(&out, "barrier_width", "au"), 10.6906) <= 1e-5);
}

#[test]
fn geometry_at_atomic_field_has_zero_width() {
    let fa = attoclock::atom::lookup("He:clementi").unwrap().atomic_field_strength();
    let out = run(&["geometry", "--field", &format!("{fa:.17e}"), "--precision", "17"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(value(&out, "barrier_width", "au"), 0.0);
    assert!(stdout(&out).contains("regime,atomic,"));
}

#[test]
fn geometry_rejects_negative_field() {
    let out = run(&["geometry", "--field", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn geometry_above_atomic_field_prints_then_exits_3() {
    let out = run(&["geometry", "--field", "0.15"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(value(&out, "x_peak", "au") > 0.0);
    assert!(rel(value(&out, "delta_z_imag", "au"), 0.442788) <= 1e-5);
}

#[test]
fn times_reports_delay() {
    let out = run(&["times", "--atom", "He:clementi", "--field", "0.06"]);
    assert_eq!(out.status.code(), Some(0));
    assert!((value(&out, "tau_d", "as") - 46.14).abs() <= 0.005);
    assert!((value(&out, "tau_i", "as") - 7.83).abs() <= 0.005);
    assert!((value(&out, "tau_sym", "as") - 53.97).abs() <= 0.005);
}

#[test]
fn times_from_intensity() {
    let out = run(&["times", "--field-from-intensity", "2.0e14"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(rel(value(&out, "f", "au"), 0.07549) <= 1e-4);
}

#[test]
fn times_from_elliptical_amplitude() {
    let out = run(&["times", "--f0", "0.1", "--ellipticity", "0.87"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(rel(value(&out, "f", "au"), 0.0754443) <= 1e-6);
}

#[test]
fn times_above_atomic_field_gives_complex_parts_and_exit_3() {
    let out = run(&["times", "--field", "0.15"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(rel(value(&out, "tau_d_re", "au"), 0.446207) <= 1e-5);
    assert!(rel(value(&out, "tau_d_im", "au"), 0.218661) <= 1e-5);
    assert!(rel(value(&out, "tau_i_im", "au"), -0.218661) <= 1e-5);
}

#[test]
fn exactly_one_field_mode() {
    assert_eq!(run(&["times"]).status.code(), Some(2));
    assert_eq!(run(&["times", "--field", "0.06", "--f0", "0.1"]).status.code(), Some(2));
    assert_eq!(run(&["times", "--field", "0.06", "--ellipticity", "0.5"]).status.code(), Some(2));
}

#[test]
fn fig3_sweep_has_nine_rows() {
    let out = run(&["sweep", "--grid", "0.03:0.11:0.01", "--figure", "fig3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let data: Vec<_> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data[0], "f_au,tau_d_as,tau_sym_as");
    assert_eq!(data.len(), 10);
    assert_eq!(data[4], "0.06,46.1381,53.9662");
}

#[test]
fn fig4_sweep_above_atomic_field_exits_3() {
    assert_eq!(run(&["sweep", "--grid", "0.15", "--figure", "fig4"]).status.code(), Some(3));
}

#[test]
fn bad_grids_exit_2() {
    for grid in ["0.1:0.05:0.01", "0:0.1:0.05", "x", "0.01:0.05:0"] {
        assert_eq!(run(&["sweep", "--grid", grid]).status.code(), Some(2), "{grid}");
    }
}

#[test]
fn reruns_are_byte_identical() {
    for fig in ["fig2", "fig3", "fig4"] {
        let args = ["sweep", "--grid", "0.04:0.11:0.005", "--figure", fig];
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
    let args = ["sweep", "--grid", "0.02:0.2:0.01", "--wavelength", "735", "--format", "json"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, run(&args).stdout);
}

#[test]
fn json_mirrors_csv_columns() {
    let out = run(&["sweep", "--grid", "0.05,0.06", "--figure", "fig3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["columns"], serde_json::json!(["f_au", "tau_d_as", "tau_sym_as"]));
    assert_eq!(v["rows"][1]["tau_d_as"].as_f64().unwrap(), 46.1381);
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.csv");
    let out = run(&["sweep", "--grid", "0.05,0.06", "--figure", "fig2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().contains("f_au,tau_unsy_as,tau_sym_as"));
}

fn fixture(offset: f64) -> tempfile::NamedTempFile {
    let he = attoclock::atom::lookup("He:clementi").unwrap();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "field_au,time_as,err_as").unwrap();
    for f in [0.04, 0.05, 0.06, 0.07, 0.08] {
        let t = attoclock::harness::Estimator::TauD.evaluate_as(&he, f).unwrap().unwrap();
        writeln!(file, "{f},{:.17e},2", t + offset).unwrap();
    }
    file.flush().unwrap();
    file
}

#[test]
fn compare_self_fixture_has_zero_rms() {
    let file = fixture(0.0);
    let out = run(&["compare", "--data", file.path().to_str().unwrap(), "--residuals"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(value(&out, "rms", "as"), 0.0);
    assert_eq!(value(&out, "n_points", "1"), 5.0);
    assert!(stdout(&out).contains("f_au,model_as,measured_as,residual_as,bar_as,within_bars,source"));
}

#[test]
fn compare_offset_fixture_has_unit_rms() {
    let file = fixture(1.0);
    let out = run(&["compare", "--data", file.path().to_str().unwrap(), "--precision", "17"]);
    assert_eq!(out.status.code(), Some(0));
    assert!((value(&out, "rms", "as") - 1.0).abs() <= 1e-9);
    assert_eq!(value(&out, "fraction_within_bars", "1"), 1.0);
}

#[test]
fn compare_errors_exit_2() {
    assert_eq!(run(&["compare", "--data", "/nonexistent/data.csv"]).status.code(), Some(2));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "field_au,time_as,err_as\n0.05,57.2,1\n0.06,oops,1").unwrap();
    let out = run(&["compare", "--data", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains('3'), "line number expected");
}

#[test]
fn catalog_lists_helium_models() {
    let out = run(&["catalog"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("He:clementi") && text.contains("He:kullie"));
}

#[test]
fn help_and_unknown_flags() {
    for sub in ["geometry", "times", "sweep", "compare", "catalog"] {
        let out = run(&[sub, "--help"]);
        assert_eq!(out.status.code(), Some(0), "{sub}");
        assert!(stdout(&out).contains("Usage"));
        assert_eq!(run(&[sub, "--no-such-flag"]).status.code(), Some(2), "{sub}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
