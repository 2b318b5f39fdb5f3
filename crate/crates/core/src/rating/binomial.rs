use super::{check_dimension, ConditionalRatingModel};
use crate::distribution::{RatingCdf, StepCdf};
use crate::error::{QoeError, Result};
use crate::scale::RatingScale;
use crate::special::binomial_coefficient;

/// Web-QoE rating model `Q|x ~ Binom(n, p) + L` with `n = H - L` and
/// success probability `p = exp(-beta * x)` for a waiting time `x`.
///
/// Its mean `n p + L` coincides with the IQX mapping `n exp(-beta x) + L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialRatingModel {
    scale: RatingScale,
    beta: f64,
}

impl BinomialRatingModel {
    pub fn new(scale: RatingScale, beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(QoeError::domain("binomial decay rate beta", beta, "> 0"));
        }
        if scale.steps() > crate::special::BINOMIAL_MAX_N {
            return Err(QoeError::InvalidScale(
                "binomial model supports at most 60 steps".into(),
            ));
        }
        Ok(Self { scale, beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Success probability `exp(-beta x)`.
    pub fn success_probability(&self, x: f64) -> f64 {
        (-self.beta * x).exp()
    }
}

/// `P(Q|x = L + j) = C(n, j) p^j (1 - p)^(n - j)` with `p = exp(-beta x)`.
pub fn binomial_rating_pmf(x: f64, model: &BinomialRatingModel) -> Result<Vec<f64>> {
    if x.is_nan() || x < 0.0 {
        return Err(QoeError::domain("waiting time x", x, "x >= 0"));
    }
    let n = model.scale.steps();
    let p = model.success_probability(x);
    let q = -(-model.beta * x).exp_m1();
    (0..=n)
        .map(|j| {
            let c = binomial_coefficient(n, j)? as f64;
            Ok(c * p.powi(j as i32) * q.powi((n - j) as i32))
        })
        .collect()
}

impl ConditionalRatingModel for BinomialRatingModel {
    fn scale(&self) -> &RatingScale {
        &self.scale
    }

    fn dimension(&self) -> Option<usize> {
        Some(1)
    }

    fn conditional_pmf(&self, condition: &[f64]) -> Result<Vec<f64>> {
        check_dimension(self.dimension(), condition)?;
        binomial_rating_pmf(condition[0], self)
    }

    fn conditional_cdf(&self, y: f64, condition: &[f64]) -> Result<f64> {
        StepCdf::new(self.scale, self.conditional_pmf(condition)?).cdf(y)
    }

    fn conditional_cdf_before(&self, y: f64, condition: &[f64]) -> Result<f64> {
        StepCdf::new(self.scale, self.conditional_pmf(condition)?).cdf_before(y)
    }

    fn conditional_mean(&self, condition: &[f64]) -> Result<f64> {
        check_dimension(self.dimension(), condition)?;
        let x = condition[0];
        if x.is_nan() || x < 0.0 {
            return Err(QoeError::domain("waiting time x", x, "x >= 0"));
        }
        Ok(self.scale.span() * self.success_probability(x) + self.scale.low())
    }

    fn discrete_ratings(&self) -> bool {
        true
    }

    fn name(&self) -> &'static str {
        "binomial"
    }
}
