//! Conditional rating distributions `Q|x`.

mod beta;
mod binomial;
mod discretize;
mod empirical;
mod sos;

use std::fmt::Debug;

pub use beta::{beta_rating_cdf, BetaApproxModel, BetaRatingCdf, BetaRatingModel};
pub use binomial::{binomial_rating_pmf, BinomialRatingModel};
pub use discretize::discretize;
pub use empirical::{empirical_conditional_pmf, EmpiricalConditionalPmf};
pub use sos::{beta_params, sos_std, theta_for_binomial, BetaParams, SosParameter};

use crate::error::Result;
use crate::scale::RatingScale;
use crate::sum::compensated_sum;

/// A rule producing the rating distribution for a fixed QoS condition.
pub trait ConditionalRatingModel: Send + Sync + Debug {
    fn scale(&self) -> &RatingScale;

    /// Dimension of the conditions the model accepts; `None` accepts any.
    fn dimension(&self) -> Option<usize>;

    /// PMF over the scale levels of the (rounded and bounded) rating.
    fn conditional_pmf(&self, condition: &[f64]) -> Result<Vec<f64>>;

    /// `P(Q|x <= y)` of the rating variable itself. Discrete models return
    /// their step CDF.
    fn conditional_cdf(&self, y: f64, condition: &[f64]) -> Result<f64>;

    /// `P(Q|x < y)`.
    fn conditional_cdf_before(&self, y: f64, condition: &[f64]) -> Result<f64> {
        self.conditional_cdf(y, condition)
    }

    /// Mean of the rating variable (not of its discretization).
    fn conditional_mean(&self, condition: &[f64]) -> Result<f64> {
        let pmf = self.conditional_pmf(condition)?;
        Ok(compensated_sum(
            self.scale()
                .level_values()
                .zip(pmf)
                .map(|(level, p)| level as f64 * p),
        ))
    }

    /// True when the rating variable only takes the scale levels, so its
    /// CDF is the step function of `conditional_pmf`.
    fn discrete_ratings(&self) -> bool {
        false
    }

    fn name(&self) -> &'static str;
}

pub(crate) fn check_dimension(expected: Option<usize>, condition: &[f64]) -> Result<()> {
    match expected {
        Some(d) if d != condition.len() => Err(crate::QoeError::DimensionMismatch {
            expected: d,
            found: condition.len(),
        }),
        _ => Ok(()),
    }
}
