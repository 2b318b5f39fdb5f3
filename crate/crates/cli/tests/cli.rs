use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn qoe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qoe"))
        .args(args)
        .env_remove("QOE_OUTPUT_DIR")
        .output()
        .unwrap()
}

fn run_into(config: &str, dir: &Path, extra: &[&str]) -> Output {
    let cfg = fixture(config);
    let mut args = vec!["run", cfg.to_str().unwrap(), "--output-dir", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    qoe(&args)
}

fn error_record(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(text.trim()).unwrap_or_else(|_| panic!("not JSON: {text}"))
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn web_run_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_into("web.toml", dir.path(), &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("qoe_distribution.csv")).unwrap();
    assert!(csv.starts_with("# tool: qoe "));
    assert!(csv.contains("# config_sha256: "));
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4][2], "1");

    let metrics: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("metrics.json")).unwrap()).unwrap();
    let mean = metrics["metrics"]["discrete"]["mean"].as_f64().unwrap();
    let ef = metrics["expected_qoe_via_mos"].as_f64().unwrap();
    assert!((mean - ef).abs() <= 1e-6);
    assert!(metrics["metrics"].get("continuous").is_none());
    assert!(!dir.path().join("continuous_cdf.csv").exists());
}

#[test]
fn mode_flag_adds_continuous_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_into("web.toml", dir.path(), &["--mode", "both"]);
    assert!(out.status.success());
    let cdf = fs::read_to_string(dir.path().join("continuous_cdf.csv")).unwrap();
    let rows = data_rows(&cdf);
    assert_eq!(rows.len(), 81);
    assert_eq!(rows[0][0], "1");
    assert_eq!(rows[80], vec!["5", "1"]);
}

#[test]
fn identical_runs_are_byte_identical() {
    for config in ["web_beta.toml", "video.toml", "table.toml"] {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        assert!(run_into(config, a.path(), &[]).status.success());
        assert!(run_into(config, b.path(), &[]).status.success());
        let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        names.sort();
        assert!(!names.is_empty());
        for n in names {
            assert_eq!(
                fs::read(a.path().join(&n)).unwrap(),
                fs::read(b.path().join(&n)).unwrap(),
                "{config}: {n:?}"
            );
        }
    }
}

#[test]
fn missing_theta_is_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_into("missing_theta.toml", dir.path(), &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = error_record(&out);
    assert_eq!(err["error"]["kind"], "schema");
    assert_eq!(err["error"]["pointer"], "rating_model.beta_approx.theta");
}

#[test]
fn exit_codes_by_failure_class() {
    let dir = tempfile::tempdir().unwrap();
    for (config, code) in [
        ("bad_theta.toml", 2),
        ("point_mismatch.toml", 2),
        ("video_short_mass.toml", 3),
        ("video_missing_file.toml", 3),
        ("numerical.toml", 4),
    ] {
        let out = run_into(config, dir.path(), &[]);
        assert_eq!(out.status.code(), Some(code), "{config}");
        assert_eq!(error_record(&out)["error"]["exit_code"], code);
    }
    let out = qoe(&["run", fixture("nope.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn normalize_flag_rescales_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_into("video_short_mass.toml", dir.path(), &["--normalize"]);
    assert!(out.status.success());
    let metrics: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("metrics.json")).unwrap()).unwrap();
    let deficit = metrics["provenance"]["resolved"]["qos"]["deficit"].as_f64().unwrap();
    assert!((deficit - 0.02).abs() < 1e-12);
}

#[test]
fn tolerance_flag_is_recorded() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run_into("web.toml", dir.path(), &["--tolerance", "1e-8"]).status.success());
    let metrics: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("metrics.json")).unwrap()).unwrap();
    assert_eq!(metrics["provenance"]["resolved"]["quadrature"]["absolute_tolerance"], 1e-8);
}

#[test]
fn output_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qoe"))
        .args(["run", fixture("web.toml").to_str().unwrap()])
        .env("QOE_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("metrics.json").exists());
}

#[test]
fn validate_reports_resolved_parameters() {
    let out = qoe(&["validate", fixture("web.toml").to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "valid");
    assert_eq!(v["resolved"]["qos"]["sigma"], 0.832554611158);
    let out = qoe(&["validate", fixture("missing_theta.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn other_inputs_run() {
    for config in ["video_samples.toml", "empirical.toml", "table.toml"] {
        let dir = tempfile::tempdir().unwrap();
        let out = run_into(config, dir.path(), &[]);
        assert!(out.status.success(), "{config}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn empirical_model_mixes_frequencies() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run_into("empirical.toml", dir.path(), &[]).status.success());
    let rows = data_rows(&fs::read_to_string(dir.path().join("qoe_distribution.csv")).unwrap());
    let pmf: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    // 0.5 * [0,0,0,.5,.5] + 0.25 * [0,.25,.5,.25,0] + 0.25 * [.5,.5,0,0,0]
    let expected = [0.125, 0.1875, 0.125, 0.3125, 0.25];
    for (a, b) in pmf.iter().zip(expected) {
        assert!((a - b).abs() < 1e-12);
    }
}

fn sweep(config: &str, param: &str, values: &str, dir: &Path) -> Vec<Vec<f64>> {
    let cfg = fixture(config);
    let out = qoe(&[
        "sweep",
        cfg.to_str().unwrap(),
        "--param",
        param,
        "--values",
        values,
        "--output-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.join("sweep.csv")).unwrap();
    assert!(csv.contains(&format!("# sweep: {param}")));
    data_rows(&csv)
        .iter()
        .map(|r| r.iter().map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn std_sweep_gob_nondecreasing() {
    let dir = tempfile::tempdir().unwrap();
    let rows = sweep("web.toml", "qos.lognormal.std", "2,4,8", dir.path());
    assert_eq!(rows.len(), 3);
    // value, cdf_1..cdf_5, mean, std, gob, pow
    assert!(rows.windows(2).all(|w| w[1][8] >= w[0][8]));
    assert_eq!(rows[2][0], 8.0);
}

#[test]
fn singleton_sweep_matches_run() {
    let dir = tempfile::tempdir().unwrap();
    let rows = sweep("web.toml", "qos.lognormal.std", "4", dir.path());
    let run_dir = tempfile::tempdir().unwrap();
    assert!(run_into("web.toml", run_dir.path(), &[]).status.success());
    let metrics: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(run_dir.path().join("metrics.json")).unwrap()).unwrap();
    let d = &metrics["metrics"]["discrete"];
    assert_eq!(rows[0][6], d["mean"].as_f64().unwrap());
    assert_eq!(rows[0][8], d["gob"].as_f64().unwrap());
    assert_eq!(rows[0][9], d["pow"].as_f64().unwrap());
    let pmf = data_rows(&fs::read_to_string(run_dir.path().join("qoe_distribution.csv")).unwrap());
    for i in 0..5 {
        assert_eq!(rows[0][1 + i], pmf[i][2].parse::<f64>().unwrap());
    }
}

#[test]
fn theta_sweep_on_video_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let rows = sweep("video.toml", "rating_model.beta_approx.theta", "0.1,0.3", dir.path());
    assert_eq!(rows.len(), 2);
    // Continuous-convention columns follow because the scenario asks for both modes.
    assert_eq!(rows[0].len(), 13);
    for r in &rows {
        assert!((0.0..=1.0).contains(&r[8]) && (0.0..=1.0).contains(&r[9]));
    }
}

#[test]
fn bad_sweep_path_is_schema_error() {
    let cfg = fixture("web.toml");
    let dir = tempfile::tempdir().unwrap();
    for (param, values) in [("qos.lognormal.median", "1,2"), ("qos.lognormal", "1"), ("qos.lognormal.std", "x")] {
        let out = qoe(&[
            "sweep",
            cfg.to_str().unwrap(),
            "--param",
            param,
            "--values",
            values,
            "--output-dir",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(2), "{param}");
    }
}
