//! The system-level mixer: conditional rating model x QoS distribution.

mod expected;
mod mix;
mod mixed_cdf;

use std::sync::Arc;

pub use expected::{expected_qoe_via_mos, gob_mapping, pow_mapping};
pub use mix::{mix, mix_continuous, mix_discrete, MixDiagnostics, MixOutput};
pub use mixed_cdf::{ContinuousMixtureCdf, DiscreteMixtureCdf};

use crate::error::{QoeError, Result};
use crate::exec::Execution;
use crate::qos::{ContinuousQos, QosDistribution};
use crate::rating::ConditionalRatingModel;
use crate::scale::RatingScale;
use crate::special::QuadratureSpec;

/// Which parts of the system distribution to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputMode {
    #[default]
    Discrete,
    Continuous,
    Both,
}

impl OutputMode {
    pub fn wants_continuous(self) -> bool {
        matches!(self, OutputMode::Continuous | OutputMode::Both)
    }
}

/// Everything needed to compute a system QoE distribution.
#[derive(Debug, Clone)]
pub struct SystemQoeRequest {
    pub rating_model: Arc<dyn ConditionalRatingModel>,
    pub qos: QosDistribution,
    pub scale: RatingScale,
    pub quadrature: QuadratureSpec,
    pub output_mode: OutputMode,
    pub execution: Execution,
}

impl SystemQoeRequest {
    /// A request on the model's own scale with default numerics.
    pub fn new(rating_model: Arc<dyn ConditionalRatingModel>, qos: QosDistribution) -> Self {
        Self {
            scale: *rating_model.scale(),
            rating_model,
            qos,
            quadrature: QuadratureSpec::default(),
            output_mode: OutputMode::default(),
            execution: Execution::default(),
        }
    }

    pub fn with_quadrature(mut self, quadrature: QuadratureSpec) -> Self {
        self.quadrature = quadrature;
        self
    }

    pub fn with_output_mode(mut self, output_mode: OutputMode) -> Self {
        self.output_mode = output_mode;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.scale != *self.rating_model.scale() {
            return Err(QoeError::InvalidScale(
                "request scale differs from the rating model scale".into(),
            ));
        }
        if let Some(d) = self.rating_model.dimension() {
            if d != self.qos.dimension() {
                return Err(QoeError::DimensionMismatch {
                    expected: d,
                    found: self.qos.dimension(),
                });
            }
        }
        self.quadrature.validate()
    }
}

/// Interior probability levels at which the integration range is split, so
/// that no single panel has to find the bulk of a skewed density.
const SPLIT_LEVELS: [f64; 11] = [
    1e-6, 1e-3, 0.02, 0.1, 0.25, 0.5, 0.75, 0.9, 0.98, 0.999, 1.0 - 1e-6,
];

/// Integration pieces covering all but `truncation_mass` of a continuous
/// QoS distribution, split at fixed quantiles and at density kinks.
pub(crate) fn integration_pieces(
    qos: &dyn ContinuousQos,
    truncation_mass: f64,
) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = qos.support();
    let a = qos.quantile(0.5 * truncation_mass)?.max(lo);
    let b = qos.quantile(1.0 - 0.5 * truncation_mass)?.min(hi);
    let mut inner = qos.breakpoints();
    for p in SPLIT_LEVELS {
        if p > 0.5 * truncation_mass && p < 1.0 - 0.5 * truncation_mass {
            inner.push(qos.quantile(p)?);
        }
    }
    inner.retain(|x| *x > a && *x < b);
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    let cuts: Vec<f64> = std::iter::once(a)
        .chain(inner)
        .chain(std::iter::once(b))
        .collect();
    Ok(cuts.windows(2).map(|w| (w[0], w[1])).collect())
}
