//! The `run`, `sweep` and `validate` commands.

use std::fs;
use std::path::{Path, PathBuf};

use qoe_core::{
    metrics_from_distribution, mix, Execution, MetricsMode, MetricsOptions, MixOutput, QoeMetrics,
};
use qoe_core::system::expected_qoe_via_mos;
use serde_json::{json, Value};

use crate::config::{from_tree, parse_tree, ScenarioConfig};
use crate::error::{CliError, CliResult};
use crate::input::hex_digest;
use crate::output::{csv_preamble, fmt_num, round_json};
use crate::scenario::{build, Overrides, Scenario};

/// A scenario file as read from disk.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub path: PathBuf,
    pub base_dir: PathBuf,
    pub sha256: String,
    pub tree: toml::Value,
}

impl LoadedConfig {
    pub fn read(path: &Path) -> CliResult<Self> {
        let bytes = fs::read(path).map_err(|e| CliError::data(path, e))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| CliError::schema("", "scenario file is not UTF-8"))?;
        Ok(Self {
            path: path.to_path_buf(),
            base_dir: path.parent().map(Path::to_path_buf).unwrap_or_default(),
            sha256: hex_digest(&bytes),
            tree: parse_tree(&text)?,
        })
    }

    pub fn config(&self) -> CliResult<ScenarioConfig> {
        from_tree(self.tree.clone())
    }
}

/// Results of one scenario evaluation.
#[derive(Debug, Clone)]
pub struct Computed {
    pub mix: MixOutput,
    pub discrete: QoeMetrics,
    pub continuous: Option<QoeMetrics>,
    pub expected_via_mos: Option<f64>,
}

pub fn compute(scenario: &Scenario) -> CliResult<Computed> {
    let req = &scenario.request;
    let numerical = |e: qoe_core::QoeError| CliError::from_core(e, "qos");
    let out = mix(req).map_err(numerical)?;
    let options = MetricsOptions {
        quantile_levels: scenario.quantiles.clone(),
        quadrature: req.quadrature,
    };
    let discrete = metrics_from_distribution(&out.distribution, MetricsMode::Discrete, &options)
        .map_err(numerical)?;
    let continuous = if req.output_mode.wants_continuous() {
        Some(
            metrics_from_distribution(&out.distribution, MetricsMode::Continuous, &options)
                .map_err(numerical)?,
        )
    } else {
        None
    };
    let expected_via_mos = match &scenario.mapping {
        Some(m) => Some(expected_qoe_via_mos(m.as_ref(), &req.qos, &req.quadrature).map_err(numerical)?),
        None => None,
    };
    Ok(Computed {
        mix: out,
        discrete,
        continuous,
        expected_via_mos,
    })
}

fn metrics_json(m: &QoeMetrics) -> Value {
    json!({
        "mean": m.mean,
        "std": m.std,
        "gob": m.gob,
        "pow": m.pow,
        "quantiles": m.quantiles.iter().map(|(p, q)| json!({ "p": p, "value": q })).collect::<Vec<_>>(),
    })
}

/// Rendered output files, name and contents.
pub fn render(scenario: &Scenario, computed: &Computed, config_sha256: &str) -> CliResult<Vec<(String, String)>> {
    let dist = &computed.mix.distribution;
    let scale = dist.scale();
    let mut files = Vec::new();

    let mut csv = csv_preamble(config_sha256, &[]);
    csv.push_str("level,pmf,cdf\n");
    for ((level, p), c) in scale.level_values().zip(dist.pmf()).zip(dist.cumulative()) {
        csv.push_str(&format!("{level},{},{}\n", fmt_num(*p), fmt_num(c)));
    }
    files.push(("qoe_distribution.csv".to_string(), csv));

    if let Some(cdf) = dist.continuous_cdf() {
        let mut csv = csv_preamble(config_sha256, &[]);
        csv.push_str("y,cdf\n");
        let n = (scale.span() / scenario.cdf_step + 1e-9).floor() as usize;
        for k in 0..=n {
            let y = (scale.low() + k as f64 * scenario.cdf_step).min(scale.high());
            let v = cdf.cdf(y).map_err(|e| CliError::from_core(e, "qos"))?;
            csv.push_str(&format!("{},{}\n", fmt_num(y), fmt_num(v)));
        }
        files.push(("continuous_cdf.csv".to_string(), csv));
    }

    let diag = &computed.mix.diagnostics;
    let mut metrics = json!({ "discrete": metrics_json(&computed.discrete) });
    if let Some(c) = &computed.continuous {
        metrics["continuous"] = metrics_json(c);
    }
    let mut doc = json!({
        "tool": { "name": crate::TOOL_NAME, "version": crate::TOOL_VERSION },
        "config_sha256": config_sha256,
        "pmf": dist.pmf(),
        "metrics": metrics,
        "provenance": {
            "inputs": scenario.inputs.iter().map(|(p, h)| json!({ "file": p.display().to_string(), "sha256": h })).collect::<Vec<_>>(),
            "resolved": scenario.resolved,
            "rating_model": scenario.request.rating_model.name(),
            "diagnostics": {
                "mixing_deficit": diag.deficit,
                "level_error_estimates": diag.level_error_estimates,
                "integrand_evaluations": diag.integrand_evaluations,
                "truncated_mass": diag.truncated_mass,
            },
        },
    });
    if let Some(e) = computed.expected_via_mos {
        doc["expected_qoe_via_mos"] = json!(e);
        doc["mean_gap"] = json!((computed.discrete.mean - e).abs());
    }
    let mut text = serde_json::to_string_pretty(&round_json(doc)).unwrap_or_default();
    text.push('\n');
    files.push(("metrics.json".to_string(), text));
    Ok(files)
}

/// Where outputs go: the flag, then the scenario's `output.dir`, then the
/// `QOE_OUTPUT_DIR` environment variable, then `qoe-output`.
pub fn output_dir(flag: Option<&Path>, cfg: &ScenarioConfig, base_dir: &Path) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(d) = &cfg.output.dir {
        return base_dir.join(d);
    }
    match std::env::var_os("QOE_OUTPUT_DIR") {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => PathBuf::from("qoe-output"),
    }
}

pub fn write_files(dir: &Path, files: &[(String, String)]) -> CliResult<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| CliError::Output {
        path: dir.to_path_buf(),
        message: e.to_string(),
    })?;
    files
        .iter()
        .map(|(name, body)| {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| CliError::Output {
                path: path.clone(),
                message: e.to_string(),
            })?;
            Ok(path)
        })
        .collect()
}

pub fn run_scenario(config: &LoadedConfig, overrides: &Overrides, out_flag: Option<&Path>) -> CliResult<Vec<PathBuf>> {
    let cfg = config.config()?;
    let scenario = build(&cfg, &config.base_dir, overrides)?;
    let computed = compute(&scenario)?;
    let files = render(&scenario, &computed, &config.sha256)?;
    write_files(&output_dir(out_flag, &cfg, &config.base_dir), &files)
}

pub fn validate(config: &LoadedConfig, overrides: &Overrides) -> CliResult<Value> {
    let cfg = config.config()?;
    let scenario = build(&cfg, &config.base_dir, overrides)?;
    Ok(round_json(json!({
        "status": "valid",
        "config_sha256": config.sha256,
        "resolved": scenario.resolved,
    })))
}

/// Parses `--values`: a comma list `2,4,8` or an inclusive range
/// `start:stop[:step]` (step 1 by default).
pub fn parse_values(spec: &str) -> CliResult<Vec<f64>> {
    let bad = |m: &str| CliError::schema("--values", format!("{m}: `{spec}`"));
    let num = |s: &str| s.trim().parse::<f64>().ok().filter(|v| v.is_finite());
    let values: Vec<f64> = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if !(2..=3).contains(&parts.len()) {
            return Err(bad("expected start:stop[:step]"));
        }
        let start = num(parts[0]).ok_or_else(|| bad("bad range start"))?;
        let stop = num(parts[1]).ok_or_else(|| bad("bad range stop"))?;
        let step = match parts.get(2) {
            Some(s) => num(s).ok_or_else(|| bad("bad range step"))?,
            None => 1.0,
        };
        if !(step > 0.0) || stop < start {
            return Err(bad("range needs step > 0 and stop >= start"));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        if n > 100_000 {
            return Err(bad("range has too many points"));
        }
        (0..=n).map(|k| start + k as f64 * step).collect()
    } else {
        spec.split(',')
            .map(|s| num(s).ok_or_else(|| bad("not a number list")))
            .collect::<CliResult<_>>()?
    };
    if values.is_empty() {
        return Err(bad("no values"));
    }
    Ok(values)
}

/// Replaces the number at a dotted path. Integer fields stay integers when
/// the new value is integral.
pub fn set_path(tree: &mut toml::Value, path: &str, value: f64) -> CliResult<()> {
    let bad = |m: &str| CliError::schema(path, m);
    let mut node = tree;
    for key in path.split('.') {
        node = node
            .as_table_mut()
            .and_then(|t| t.get_mut(key))
            .ok_or_else(|| bad("sweep path does not name an existing field"))?;
    }
    let replacement = match &*node {
        toml::Value::Float(_) => toml::Value::Float(value),
        toml::Value::Integer(_) if value.fract() == 0.0 && value.abs() < 9.0e15 => {
            toml::Value::Integer(value as i64)
        }
        toml::Value::Integer(_) => toml::Value::Float(value),
        _ => return Err(bad("sweep path must name a numeric field")),
    };
    *node = replacement;
    Ok(())
}

/// One row of a sweep.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub value: f64,
    pub computed: Computed,
}

pub fn sweep_rows(
    config: &LoadedConfig,
    param: &str,
    values: &[f64],
    overrides: &Overrides,
) -> CliResult<Vec<SweepRow>> {
    let configs = values
        .iter()
        .map(|&v| {
            let mut tree = config.tree.clone();
            set_path(&mut tree, param, v)?;
            Ok((v, from_tree(tree)?))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Execution::Parallel
        .try_map(&configs, |(v, cfg)| {
            let scenario = build(cfg, &config.base_dir, overrides)?;
            Ok(SweepRow {
                value: *v,
                computed: compute(&scenario)?,
            })
        })
}

pub fn render_sweep(config: &LoadedConfig, param: &str, rows: &[SweepRow]) -> String {
    let mut csv = csv_preamble(&config.sha256, &[("sweep", param.to_string())]);
    let Some(first) = rows.first() else {
        return csv;
    };
    let scale = *first.computed.mix.distribution.scale();
    let continuous = first.computed.continuous.is_some();
    let mut header = vec![param.to_string()];
    header.extend(scale.level_values().map(|l| format!("cdf_{l}")));
    header.extend(["mean", "std", "gob", "pow"].map(String::from));
    if continuous {
        header.extend(["mean_continuous", "gob_continuous", "pow_continuous"].map(String::from));
    }
    csv.push_str(&header.join(","));
    csv.push('\n');
    for row in rows {
        let c = &row.computed;
        let m = &c.discrete;
        let mut cells = vec![fmt_num(row.value)];
        cells.extend(c.mix.distribution.cumulative().into_iter().map(fmt_num));
        cells.extend([m.mean, m.std, m.gob, m.pow].map(fmt_num));
        if let Some(cm) = &c.continuous {
            cells.extend([cm.mean, cm.gob, cm.pow].map(fmt_num));
        }
        csv.push_str(&cells.join(","));
        csv.push('\n');
    }
    csv
}

pub fn run_sweep(
    config: &LoadedConfig,
    param: &str,
    values: &[f64],
    overrides: &Overrides,
    out_flag: Option<&Path>,
) -> CliResult<Vec<PathBuf>> {
    let cfg = config.config()?;
    let rows = sweep_rows(config, param, values, overrides)?;
    let csv = render_sweep(config, param, &rows);
    write_files(
        &output_dir(out_flag, &cfg, &config.base_dir),
        &[("sweep.csv".to_string(), csv)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_lists_and_ranges() {
        assert_eq!(parse_values("2,4,8").unwrap(), vec![2.0, 4.0, 8.0]);
        assert_eq!(parse_values("1:10").unwrap().len(), 10);
        assert_eq!(parse_values("0.1:0.3:0.1").unwrap().len(), 3);
        assert_eq!(parse_values("5").unwrap(), vec![5.0]);
        assert!(parse_values("a,b").is_err());
        assert!(parse_values("3:1").is_err());
        assert!(parse_values("1:2:0").is_err());
        assert!(parse_values("1:2:3:4").is_err());
    }

    #[test]
    fn set_path_edits_numbers_only() {
        let mut tree = parse_tree("[qos.lognormal]\nmean = 4.0\nstd = 4\n[scale]\nlow = 1\n").unwrap();
        set_path(&mut tree, "qos.lognormal.std", 2.5).unwrap();
        set_path(&mut tree, "scale.low", 0.0).unwrap();
        assert_eq!(tree["qos"]["lognormal"]["std"].as_float(), Some(2.5));
        assert_eq!(tree["scale"]["low"].as_integer(), Some(0));
        assert!(set_path(&mut tree, "qos.lognormal.median", 1.0).is_err());
        assert!(set_path(&mut tree, "qos.lognormal", 1.0).is_err());
    }
}
