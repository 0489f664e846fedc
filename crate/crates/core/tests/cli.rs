use std::path::Path;

use varlogic::cli::run;

fn run_to(dir: &Path, name: &str, args: &[&str]) -> (i32, Option<String>) {
    let out = dir.join(name);
    let mut argv = vec!["varlogic"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--out", out.to_str().unwrap()]);
    let code = run(argv);
    (code, std::fs::read_to_string(&out).ok())
}

fn value(text: &str, quantity: &str) -> f64 {
    let line = text.lines().find(|l| l.starts_with(&format!("{quantity},"))).unwrap();
    line.split(',').nth(1).unwrap().parse().unwrap()
}

#[test]
fn limits_reports_the_bound_and_the_witness() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(dir.path(), "limits.csv", &["limits"]);
    assert_eq!(code, 0);
    let text = text.unwrap();
    assert!((value(&text, "fom_mbl_limit_kt_per_bit") - 4.35517).abs() < 1e-5);
    assert!((value(&text, "witness_fom_nominal_kt_per_bit") - 0.4424).abs() < 1e-3);
    assert!(text.starts_with("# varlogic "));
}

#[test]
fn physical_units_scale_by_kt() {
    let dir = tempfile::tempdir().unwrap();
    let (_, text) = run_to(
        dir.path(),
        "p.csv",
        &["limits", "--units", "physical", "--temperature", "77"],
    );
    let text = text.unwrap();
    let kt = 1.380_649e-23 * 77.0;
    assert!((value(&text, "kt_joules") - kt).abs() < 1e-12 * kt);
    assert!((value(&text, "fom_mbl_limit_j_per_bit") / kt - 4.355_172_180_607_204).abs() < 1e-12);
}

#[test]
fn unknown_flag_is_a_config_error_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(dir.path(), "x.csv", &["limits", "--no-such-flag", "3"]);
    assert_eq!(code, 2);
    assert!(text.is_none());
}

#[test]
fn invalid_values_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // Configuration: dt too coarse for tau_mu.
    assert_eq!(run_to(dir.path(), "a", &["hybrid-sim", "--dt", "1e-3"]), (2, None));
    // No crossing on the range.
    assert_eq!(
        run_to(dir.path(), "b", &["transition-point", "--sigma1-max", "2.5"]),
        (3, None)
    );
    // Kurtosis making the sample-variance variance non-positive.
    assert_eq!(
        run_to(dir.path(), "c", &["snr-map", "--n", "4", "--kurtosis", "-3"]),
        (3, None)
    );
    assert_eq!(run_to(dir.path(), "d", &["limits", "--workers", "0"]), (2, None));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# startup study\nmu_target = 3\ndt = 2e-5\nstride = 50\n").unwrap();
    let (code, text) = run_to(
        dir.path(),
        "h.csv",
        &["hybrid-sim", "--config", cfg.to_str().unwrap(), "--dt", "1e-5"],
    );
    assert_eq!(code, 0);
    let text = text.unwrap();
    assert!(text.contains("# mu-target = 3\n"));
    assert!(text.contains("# dt = 1e-5\n"));
    assert!(text.contains("# stride = 50\n"));

    std::fs::write(&cfg, "mu_target = 3\nbogus = 1\n").unwrap();
    assert_eq!(
        run_to(dir.path(), "h2.csv", &["hybrid-sim", "--config", cfg.to_str().unwrap()]).0,
        2
    );
    std::fs::write(&cfg, "command = limits\n").unwrap();
    assert_eq!(
        run_to(dir.path(), "h3.csv", &["hybrid-sim", "--config", cfg.to_str().unwrap()]).0,
        2
    );
}

#[test]
fn json_output_has_meta_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(
        dir.path(),
        "s.json",
        &["snr-map", "--resolution", "5", "--format", "json"],
    );
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&text.unwrap()).unwrap();
    assert_eq!(doc["meta"]["command"], "snr-map");
    assert_eq!(doc["meta"]["config"]["resolution"], "5");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 25);
    assert_eq!(rows[0]["choice"], "vbl");
    assert_eq!(rows[4]["choice"], "mbl");
}

#[test]
fn capacity_curve_is_sorted_by_average_error() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(
        dir.path(),
        "c.csv",
        &[
            "capacity-curve",
            "--mu-count",
            "20",
            "--sigma1-count",
            "6",
            "--vth-count",
            "5",
        ],
    );
    assert_eq!(code, 0);
    let text = text.unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "p_avg").unwrap();
    let p: Vec<f64> = lines.map(|l| l.split(',').nth(col).unwrap().parse().unwrap()).collect();
    assert_eq!(p.len(), 20 + 6 * 5);
    assert!(p.windows(2).all(|w| w[0] <= w[1]));
}
