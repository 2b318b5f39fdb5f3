//! Scenario file schema.

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub scale: ScaleConfig,
    pub rating_model: RatingModelConfig,
    #[serde(default)]
    pub mapping: Option<MappingConfig>,
    pub qos: QosConfig,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleConfig {
    pub low: i32,
    pub high: i32,
    pub gob: i32,
    pub pow: i32,
}

impl Default for ScaleConfig {
    fn default() -> Self {
        Self {
            low: 1,
            high: 5,
            gob: 4,
            pow: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RatingModelConfig {
    BetaApprox {
        theta: f64,
    },
    /// `beta` defaults to the IQX mapping's `beta` when omitted.
    Binomial {
        #[serde(default)]
        beta: Option<f64>,
    },
    /// Per-user ratings, one row per rating, coordinates then `rating`.
    Empirical {
        file: String,
        #[serde(default)]
        grid: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MappingConfig {
    /// `n` defaults to the number of scale steps.
    Iqx {
        #[serde(default)]
        n: Option<f64>,
        beta: f64,
    },
    VideoStall {
        d: f64,
    },
    /// Breakpoints with columns `qos,mos`.
    Table {
        file: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum QosConfig {
    /// Either `mean` and `std` or `mu` and `sigma`.
    Lognormal {
        #[serde(default)]
        mean: Option<f64>,
        #[serde(default)]
        std: Option<f64>,
        #[serde(default)]
        mu: Option<f64>,
        #[serde(default)]
        sigma: Option<f64>,
    },
    Histogram {
        file: String,
        #[serde(default)]
        merge_duplicates: bool,
    },
    Samples {
        file: String,
        bin_widths: Vec<f64>,
    },
    Point {
        coordinates: Vec<f64>,
    },
    /// Density table with columns `x,density`.
    PdfTable {
        file: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    #[serde(default)]
    pub absolute_tolerance: Option<f64>,
    #[serde(default)]
    pub relative_tolerance: Option<f64>,
    #[serde(default)]
    pub max_subdivisions: Option<usize>,
    #[serde(default)]
    pub truncation_mass: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeConfig {
    #[default]
    Discrete,
    Continuous,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub mode: ModeConfig,
    #[serde(default = "default_quantiles")]
    pub quantiles: Vec<f64>,
    /// Rescale histogram inputs whose mass is not 1.
    #[serde(default)]
    pub normalize: bool,
    /// Spacing of the emitted continuous CDF grid.
    #[serde(default = "default_cdf_step")]
    pub cdf_step: f64,
    #[serde(default)]
    pub dir: Option<String>,
}

fn default_quantiles() -> Vec<f64> {
    vec![0.05, 0.25, 0.5, 0.75, 0.95]
}

fn default_cdf_step() -> f64 {
    0.05
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            mode: ModeConfig::default(),
            quantiles: default_quantiles(),
            normalize: false,
            cdf_step: default_cdf_step(),
            dir: None,
        }
    }
}

/// Parses TOML text into a value tree.
pub fn parse_tree(text: &str) -> CliResult<toml::Value> {
    let table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::schema("", e.message()))?;
    Ok(toml::Value::Table(table))
}

/// Deserializes a value tree, reporting the path of the offending field.
pub fn from_tree(tree: toml::Value) -> CliResult<ScenarioConfig> {
    serde_path_to_error::deserialize(tree).map_err(|err| {
        let mut pointer = err.path().to_string();
        let message = err.inner().to_string();
        let message = message.lines().next().unwrap_or_default().to_string();
        if let Some(field) = missing_field(&message) {
            if pointer == "." || pointer.is_empty() {
                pointer = field.to_string();
            } else {
                pointer = format!("{pointer}.{field}");
            }
        }
        CliError::schema(pointer, message)
    })
}

fn missing_field(message: &str) -> Option<&str> {
    let rest = message.strip_prefix("missing field `")?;
    rest.split('`').next()
}

pub fn parse_config(text: &str) -> CliResult<ScenarioConfig> {
    from_tree(parse_tree(text)?)
}
