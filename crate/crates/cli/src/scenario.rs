//! Resolves a [`ScenarioConfig`] into a ready-to-run mixing request.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use qoe_core::mapping::{IqxMapping, MosMapping, TableMapping, VideoStallMapping};
use qoe_core::qos::{
    load_joint_pmf, lognormal_from_moments, pmf_from_samples, LoadOptions, LognormalQos,
    QosDistribution, TabulatedQos,
};
use qoe_core::rating::{
    BetaApproxModel, BinomialRatingModel, ConditionalRatingModel, EmpiricalConditionalPmf,
    SosParameter,
};
use qoe_core::system::OutputMode;
use qoe_core::{ConditionGrid, QosCondition, QuadratureSpec, RatingScale, SystemQoeRequest};
use serde_json::{json, Value};

use crate::config::{MappingConfig, ModeConfig, QosConfig, RatingModelConfig, ScenarioConfig};
use crate::error::{CliError, CliResult};
use crate::input::InputFile;

/// Command-line overrides applied on top of the scenario file.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub normalize: bool,
    pub mode: Option<ModeConfig>,
    pub tolerance: Option<f64>,
}

/// A validated scenario with all inputs loaded.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub request: SystemQoeRequest,
    pub mapping: Option<Arc<dyn MosMapping>>,
    pub quantiles: Vec<f64>,
    pub cdf_step: f64,
    pub inputs: Vec<(PathBuf, String)>,
    /// Parameters as actually used, for the provenance block.
    pub resolved: Value,
}

pub fn build(cfg: &ScenarioConfig, base_dir: &Path, overrides: &Overrides) -> CliResult<Scenario> {
    let mut inputs = Vec::new();
    let mut load = |file: &str| -> CliResult<InputFile> {
        let input = InputFile::read(&base_dir.join(file))?;
        inputs.push((PathBuf::from(file), input.sha256.clone()));
        Ok(input)
    };

    let s = cfg.scale;
    let scale = RatingScale::new(s.low, s.high, s.gob, s.pow).map_err(|e| CliError::schema("scale", e))?;

    let (mapping, mapping_json): (Option<Arc<dyn MosMapping>>, Value) = match &cfg.mapping {
        None => (None, Value::Null),
        Some(MappingConfig::Iqx { n, beta }) => {
            let n = n.unwrap_or(scale.steps() as f64);
            let m = IqxMapping::new(n, *beta, scale.low()).map_err(|e| CliError::schema("mapping.iqx", e))?;
            (Some(Arc::new(m)), json!({ "kind": "iqx", "n": n, "beta": beta, "floor": scale.low() }))
        }
        Some(MappingConfig::VideoStall { d }) => {
            let m = VideoStallMapping::new(*d).map_err(|e| CliError::schema("mapping.video_stall.d", e))?;
            (
                Some(Arc::new(m)),
                json!({
                    "kind": "video_stall",
                    "d": d,
                    "amplitude": m.amplitude,
                    "duration_coeff": m.duration_coeff,
                    "count_coeff": m.count_coeff,
                    "offset": m.offset,
                    "coordinates": ["stall_count", "stall_seconds"],
                }),
            )
        }
        Some(MappingConfig::Table { file }) => {
            let input = load(file)?;
            let points = input.pairs("qos", "mos")?;
            let m = TableMapping::new(points, &scale).map_err(|e| CliError::data(&input.path, e))?;
            let n = m.breakpoints().len();
            (Some(Arc::new(m)), json!({ "kind": "table", "file": file, "breakpoints": n }))
        }
    };

    let (model, model_json): (Arc<dyn ConditionalRatingModel>, Value) = match &cfg.rating_model {
        RatingModelConfig::BetaApprox { theta } => {
            let t = SosParameter::new(*theta)
                .map_err(|e| CliError::schema("rating_model.beta_approx.theta", e))?;
            let mapping = mapping
                .clone()
                .ok_or_else(|| CliError::schema("mapping", "a mapping is required for beta_approx"))?;
            (
                Arc::new(BetaApproxModel::new(scale, t, mapping)),
                json!({ "kind": "beta_approx", "theta": theta }),
            )
        }
        RatingModelConfig::Binomial { beta } => {
            let beta = match (beta, &cfg.mapping) {
                (Some(b), _) => *b,
                (None, Some(MappingConfig::Iqx { beta, .. })) => *beta,
                (None, _) => {
                    return Err(CliError::schema(
                        "rating_model.binomial.beta",
                        "missing field `beta` (only implied by an iqx mapping)",
                    ))
                }
            };
            let m = BinomialRatingModel::new(scale, beta)
                .map_err(|e| CliError::schema("rating_model.binomial.beta", e))?;
            (
                Arc::new(m),
                json!({ "kind": "binomial", "beta": beta, "n": scale.steps() }),
            )
        }
        RatingModelConfig::Empirical { file, grid } => {
            let grid = match grid {
                Some(r) => ConditionGrid::new(*r).map_err(|e| CliError::schema("rating_model.empirical.grid", e))?,
                None => ConditionGrid::default(),
            };
            let input = load(file)?;
            let rows = input.ratings()?;
            let m = EmpiricalConditionalPmf::from_ratings(
                scale,
                grid,
                rows.iter().map(|(c, r)| (c.as_slice(), *r)),
            )
            .map_err(|e| CliError::data(&input.path, e))?;
            let conditions = m.len();
            (
                Arc::new(m),
                json!({
                    "kind": "empirical",
                    "file": file,
                    "grid": grid.resolution(),
                    "conditions": conditions,
                }),
            )
        }
    };

    let normalize = overrides.normalize || cfg.output.normalize;
    let (qos, qos_json) = match &cfg.qos {
        QosConfig::Lognormal { mean, std, mu, sigma } => {
            let q = match (mean, std, mu, sigma) {
                (Some(m), Some(s), None, None) => lognormal_from_moments(*m, *s)
                    .map_err(|e| CliError::schema("qos.lognormal", e))?,
                (None, None, Some(mu), Some(sigma)) => LognormalQos::new(*mu, *sigma)
                    .map_err(|e| CliError::schema("qos.lognormal", e))?,
                _ => {
                    return Err(CliError::schema(
                        "qos.lognormal",
                        "give either `mean` and `std` or `mu` and `sigma`",
                    ))
                }
            };
            let dist = QosDistribution::lognormal(q).map_err(|e| CliError::schema("qos.lognormal", e))?;
            (
                dist,
                json!({
                    "kind": "lognormal",
                    "mu": q.mu,
                    "sigma": q.sigma,
                    "mean": q.mean(),
                    "std": q.std(),
                    "degenerate": q.is_degenerate(),
                }),
            )
        }
        QosConfig::Histogram { file, merge_duplicates } => {
            let input = load(file)?;
            let (names, rows) = input.histogram()?;
            let options = LoadOptions {
                normalize,
                merge_duplicates: *merge_duplicates,
                ..LoadOptions::default()
            };
            let pmf = load_joint_pmf(rows, &options).map_err(|e| CliError::data(&input.path, e))?;
            let j = json!({
                "kind": "histogram",
                "file": file,
                "columns": names,
                "atoms": pmf.len(),
                "normalized": normalize,
                "deficit": pmf.deficit(),
            });
            (QosDistribution::Discrete(pmf), j)
        }
        QosConfig::Samples { file, bin_widths } => {
            let input = load(file)?;
            let (names, rows) = input.samples()?;
            let samples = rows
                .into_iter()
                .map(QosCondition::new)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::data(&input.path, e))?;
            let pmf = pmf_from_samples(&samples, bin_widths).map_err(|e| match e {
                qoe_core::QoeError::Domain { .. } => CliError::schema("qos.samples.bin_widths", e),
                other => CliError::data(&input.path, other),
            })?;
            let j = json!({
                "kind": "samples",
                "file": file,
                "columns": names,
                "bin_widths": bin_widths,
                "samples": samples.len(),
                "atoms": pmf.len(),
            });
            (QosDistribution::Discrete(pmf), j)
        }
        QosConfig::Point { coordinates } => {
            let c = QosCondition::new(coordinates.clone()).map_err(|e| CliError::schema("qos.point.coordinates", e))?;
            let dist = QosDistribution::point(c).map_err(|e| CliError::schema("qos.point", e))?;
            (dist, json!({ "kind": "point", "coordinates": coordinates }))
        }
        QosConfig::PdfTable { file } => {
            let input = load(file)?;
            let points = input.pairs("x", "density")?;
            let q = TabulatedQos::new(&points).map_err(|e| CliError::data(&input.path, e))?;
            (
                QosDistribution::continuous(q),
                json!({ "kind": "pdf_table", "file": file, "points": points.len() }),
            )
        }
    };

    let mut quadrature = QuadratureSpec::default();
    let qc = cfg.quadrature;
    if let Some(v) = qc.absolute_tolerance {
        quadrature.absolute_tolerance = v;
    }
    if let Some(v) = qc.relative_tolerance {
        quadrature.relative_tolerance = v;
    }
    if let Some(v) = qc.max_subdivisions {
        quadrature.max_subdivisions = v;
    }
    if let Some(v) = qc.truncation_mass {
        quadrature.truncation_mass = v;
    }
    if let Some(v) = overrides.tolerance {
        quadrature.absolute_tolerance = v;
    }
    quadrature.validate().map_err(|e| CliError::schema("quadrature", e))?;

    let mode = overrides.mode.unwrap_or(cfg.output.mode);
    let output_mode = match mode {
        ModeConfig::Discrete => OutputMode::Discrete,
        ModeConfig::Continuous => OutputMode::Continuous,
        ModeConfig::Both => OutputMode::Both,
    };

    if let Some(p) = cfg.output.quantiles.iter().find(|p| !(**p > 0.0 && **p <= 1.0)) {
        return Err(CliError::schema("output.quantiles", format!("level {p} outside (0, 1]")));
    }
    let step = cfg.output.cdf_step;
    if !(step.is_finite() && step > 0.0 && step <= scale.span()) {
        return Err(CliError::schema("output.cdf_step", format!("{step} must be in (0, H - L]")));
    }

    let request = SystemQoeRequest::new(model, qos)
        .with_quadrature(quadrature)
        .with_output_mode(output_mode);
    request.validate().map_err(|e| CliError::schema("qos", e))?;
    if let Some(m) = &mapping {
        if m.dimension() != request.qos.dimension() {
            return Err(CliError::schema(
                "mapping",
                format!(
                    "mapping takes {}-dimensional conditions, QoS has dimension {}",
                    m.dimension(),
                    request.qos.dimension()
                ),
            ));
        }
    }

    let resolved = json!({
        "scale": { "low": s.low, "high": s.high, "gob": s.gob, "pow": s.pow },
        "rating_model": model_json,
        "mapping": mapping_json,
        "qos": qos_json,
        "quadrature": {
            "absolute_tolerance": quadrature.absolute_tolerance,
            "relative_tolerance": quadrature.relative_tolerance,
            "max_subdivisions": quadrature.max_subdivisions,
            "truncation_mass": quadrature.truncation_mass,
        },
        "mode": mode,
    });

    Ok(Scenario {
        request,
        mapping,
        quantiles: cfg.output.quantiles.clone(),
        cdf_step: step,
        inputs,
        resolved,
    })
}
