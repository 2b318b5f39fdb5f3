use std::sync::Arc;

use super::discretize::discretize;
use super::sos::{beta_params, BetaParams, SosParameter};
use super::{check_dimension, ConditionalRatingModel};
use crate::distribution::RatingCdf;
use crate::error::{QoeError, Result};
use crate::mapping::MosMapping;
use crate::scale::RatingScale;
use crate::special::reg_inc_beta;

/// Beta approximation of a rating distribution from its MOS and θ:
/// `Q = (H - L) Z + L` with `Z ~ Beta(a_θ(m), b_θ(m))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaRatingModel {
    pub scale: RatingScale,
    pub theta: SosParameter,
}

impl BetaRatingModel {
    pub fn new(scale: RatingScale, theta: SosParameter) -> Self {
        Self { scale, theta }
    }

    /// Continuous rating CDF at MOS `m`.
    pub fn cdf_at_mos(&self, m: f64) -> Result<BetaRatingCdf> {
        Ok(BetaRatingCdf {
            scale: self.scale,
            params: beta_params(m, self.theta, &self.scale)?,
        })
    }

    /// Rounded and bounded rating PMF at MOS `m`.
    pub fn pmf_at_mos(&self, m: f64) -> Result<Vec<f64>> {
        discretize(&self.cdf_at_mos(m)?, &self.scale)
    }
}

/// CDF of the scaled Beta rating variable for one MOS value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaRatingCdf {
    scale: RatingScale,
    params: BetaParams,
}

impl BetaRatingCdf {
    pub fn params(&self) -> BetaParams {
        self.params
    }
}

impl RatingCdf for BetaRatingCdf {
    fn cdf(&self, y: f64) -> Result<f64> {
        if y.is_nan() {
            return Err(QoeError::NonFinite("rating value"));
        }
        match self.params {
            BetaParams::Degenerate { at } => Ok(if y >= at as f64 { 1.0 } else { 0.0 }),
            BetaParams::Shape { a, b } => {
                let z = ((y - self.scale.low()) / self.scale.span()).clamp(0.0, 1.0);
                reg_inc_beta(z, a, b)
            }
        }
    }

    fn cdf_before(&self, y: f64) -> Result<f64> {
        match self.params {
            BetaParams::Degenerate { at } if y <= at as f64 => Ok(0.0),
            _ => self.cdf(y),
        }
    }
}

/// `P(Q|x <= y)` for a MOS value `x_mos`, with `L <= y <= H`.
pub fn beta_rating_cdf(y: f64, x_mos: f64, model: &BetaRatingModel) -> Result<f64> {
    if !model.scale.contains(y) {
        return Err(QoeError::domain("rating value y", y, "within [L; H]"));
    }
    model.cdf_at_mos(x_mos)?.cdf(y)
}

/// Conditional rating model that maps a QoS condition to a MOS value and
/// applies the Beta approximation. MOS values outside the scale are
/// rejected rather than clamped.
#[derive(Debug, Clone)]
pub struct BetaApproxModel {
    beta: BetaRatingModel,
    mapping: Arc<dyn MosMapping>,
}

impl BetaApproxModel {
    pub fn new(scale: RatingScale, theta: SosParameter, mapping: Arc<dyn MosMapping>) -> Self {
        Self {
            beta: BetaRatingModel::new(scale, theta),
            mapping,
        }
    }

    pub fn theta(&self) -> SosParameter {
        self.beta.theta
    }

    pub fn mapping(&self) -> &Arc<dyn MosMapping> {
        &self.mapping
    }

    pub fn beta_model(&self) -> &BetaRatingModel {
        &self.beta
    }

    fn cdf_for(&self, condition: &[f64]) -> Result<BetaRatingCdf> {
        check_dimension(self.dimension(), condition)?;
        let m = self.mapping.mos(condition)?;
        self.beta.cdf_at_mos(m)
    }
}

impl ConditionalRatingModel for BetaApproxModel {
    fn scale(&self) -> &RatingScale {
        &self.beta.scale
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.mapping.dimension())
    }

    fn conditional_pmf(&self, condition: &[f64]) -> Result<Vec<f64>> {
        discretize(&self.cdf_for(condition)?, &self.beta.scale)
    }

    fn conditional_cdf(&self, y: f64, condition: &[f64]) -> Result<f64> {
        self.cdf_for(condition)?.cdf(y)
    }

    fn conditional_cdf_before(&self, y: f64, condition: &[f64]) -> Result<f64> {
        self.cdf_for(condition)?.cdf_before(y)
    }

    fn conditional_mean(&self, condition: &[f64]) -> Result<f64> {
        check_dimension(self.dimension(), condition)?;
        self.mapping.mos(condition)
    }

    fn name(&self) -> &'static str {
        "beta_approx"
    }
}
