//! Rating distributions on a [`RatingScale`] and PMF validation.

use std::fmt;
use std::sync::Arc;

use crate::error::{QoeError, Result};
use crate::scale::RatingScale;
use crate::sum::compensated_sum;

/// Tolerance on the total mass of a [`QoeDistribution`] PMF.
pub const PMF_SUM_TOLERANCE: f64 = 1e-9;

/// A cumulative distribution function of a rating variable on `[L; H]`.
///
/// `cdf` is right-continuous, `P(Q <= y)`. `cdf_before` is the left limit
/// `P(Q < y)`; it only differs from `cdf` where the distribution has an atom.
pub trait RatingCdf: Send + Sync {
    fn cdf(&self, y: f64) -> Result<f64>;

    fn cdf_before(&self, y: f64) -> Result<f64> {
        self.cdf(y)
    }
}

/// Shared handle to a continuous (or mixed) rating CDF.
#[derive(Clone)]
pub struct ContinuousCdf(Arc<dyn RatingCdf>);

impl ContinuousCdf {
    pub fn new<C: RatingCdf + 'static>(cdf: C) -> Self {
        Self(Arc::new(cdf))
    }

    pub fn from_arc(cdf: Arc<dyn RatingCdf>) -> Self {
        Self(cdf)
    }

    pub fn cdf(&self, y: f64) -> Result<f64> {
        self.0.cdf(y)
    }

    pub fn cdf_before(&self, y: f64) -> Result<f64> {
        self.0.cdf_before(y)
    }
}

impl RatingCdf for ContinuousCdf {
    fn cdf(&self, y: f64) -> Result<f64> {
        self.0.cdf(y)
    }

    fn cdf_before(&self, y: f64) -> Result<f64> {
        self.0.cdf_before(y)
    }
}

impl fmt::Debug for ContinuousCdf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ContinuousCdf(..)")
    }
}

/// Step CDF of a PMF over the levels of a scale.
#[derive(Debug, Clone)]
pub struct StepCdf {
    scale: RatingScale,
    pmf: Vec<f64>,
}

impl StepCdf {
    pub fn new(scale: RatingScale, pmf: Vec<f64>) -> Self {
        debug_assert_eq!(pmf.len(), scale.levels());
        Self { scale, pmf }
    }

    fn mass_where(&self, pred: impl Fn(f64) -> bool) -> f64 {
        let total: f64 = self
            .scale
            .level_values()
            .zip(&self.pmf)
            .filter(|(level, _)| pred(*level as f64))
            .map(|(_, p)| *p)
            .sum();
        total.clamp(0.0, 1.0)
    }
}

impl RatingCdf for StepCdf {
    fn cdf(&self, y: f64) -> Result<f64> {
        Ok(self.mass_where(|level| level <= y))
    }

    fn cdf_before(&self, y: f64) -> Result<f64> {
        Ok(self.mass_where(|level| level < y))
    }
}

/// Output of [`validate_pmf`].
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedPmf {
    pub probabilities: Vec<f64>,
    /// `1 - sum(weights)` before scaling.
    pub deficit: f64,
}

/// Scales nonnegative finite weights to unit mass.
pub fn validate_pmf(weights: &[f64]) -> Result<NormalizedPmf> {
    if weights.is_empty() {
        return Err(QoeError::EmptyInput("PMF weights"));
    }
    if let Some(w) = weights.iter().find(|w| !w.is_finite()) {
        return Err(QoeError::InvalidPmf(format!("non-finite weight {w}")));
    }
    if let Some(w) = weights.iter().find(|w| **w < 0.0) {
        return Err(QoeError::InvalidPmf(format!("negative weight {w}")));
    }
    let total = compensated_sum(weights.iter().copied());
    if total <= 0.0 {
        return Err(QoeError::InvalidPmf("all weights are zero".into()));
    }
    Ok(NormalizedPmf {
        probabilities: weights.iter().map(|w| w / total).collect(),
        deficit: 1.0 - total,
    })
}

/// The system-level rating distribution: a PMF over the scale levels and,
/// optionally, the CDF of the underlying continuous rating variable.
#[derive(Debug, Clone)]
pub struct QoeDistribution {
    scale: RatingScale,
    pmf: Vec<f64>,
    continuous_cdf: Option<ContinuousCdf>,
}

impl QoeDistribution {
    pub fn new(scale: RatingScale, pmf: Vec<f64>) -> Result<Self> {
        if pmf.len() != scale.levels() {
            return Err(QoeError::InvalidDistribution(format!(
                "PMF has {} entries, scale has {} levels",
                pmf.len(),
                scale.levels()
            )));
        }
        if let Some(p) = pmf.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(QoeError::InvalidDistribution(format!(
                "probability {p} outside [0, 1]"
            )));
        }
        let total = compensated_sum(pmf.iter().copied());
        if (total - 1.0).abs() > PMF_SUM_TOLERANCE {
            return Err(QoeError::InvalidDistribution(format!(
                "PMF sums to {total}"
            )));
        }
        Ok(Self {
            scale,
            pmf,
            continuous_cdf: None,
        })
    }

    pub fn point_mass(scale: RatingScale, level: i32) -> Result<Self> {
        let idx = scale
            .index_of(level)
            .ok_or_else(|| QoeError::domain("rating level", level as f64, "a level of the scale"))?;
        let mut pmf = vec![0.0; scale.levels()];
        pmf[idx] = 1.0;
        Self::new(scale, pmf)
    }

    pub fn with_continuous_cdf(mut self, cdf: ContinuousCdf) -> Self {
        self.continuous_cdf = Some(cdf);
        self
    }

    pub fn scale(&self) -> &RatingScale {
        &self.scale
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    pub fn continuous_cdf(&self) -> Option<&ContinuousCdf> {
        self.continuous_cdf.as_ref()
    }

    /// `P(Q <= level)` for each level, in scale order.
    pub fn cumulative(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.pmf
            .iter()
            .map(|p| {
                acc += p;
                acc.min(1.0)
            })
            .collect()
    }

    /// Probability of a single level, zero for levels outside the scale.
    pub fn probability(&self, level: i32) -> f64 {
        self.scale.index_of(level).map_or(0.0, |i| self.pmf[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_pmf_examples() {
        assert_eq!(validate_pmf(&[2.0, 2.0]).unwrap().probabilities, vec![0.5, 0.5]);
        let n = validate_pmf(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(n.probabilities, vec![1.0, 0.0, 0.0]);
        assert_eq!(n.deficit, 0.0);

        let n = validate_pmf(&[0.3, 0.3, 0.3]).unwrap();
        for p in &n.probabilities {
            assert!((p - 1.0 / 3.0).abs() < 1e-15);
        }
        assert!((n.deficit - 0.1).abs() < 1e-15);
    }

    #[test]
    fn validate_pmf_errors() {
        assert!(matches!(validate_pmf(&[0.5, -0.1]), Err(QoeError::InvalidPmf(_))));
        assert!(matches!(validate_pmf(&[0.0, 0.0]), Err(QoeError::InvalidPmf(_))));
        assert!(matches!(validate_pmf(&[f64::INFINITY]), Err(QoeError::InvalidPmf(_))));
        assert!(validate_pmf(&[]).is_err());
    }

    #[test]
    fn distribution_rejects_bad_mass() {
        let s = RatingScale::five_point();
        assert!(QoeDistribution::new(s, vec![0.2; 4]).is_err());
        assert!(QoeDistribution::new(s, vec![0.3; 5]).is_err());
        assert!(QoeDistribution::new(s, vec![1.2, -0.2, 0.0, 0.0, 0.0]).is_err());
        assert!(QoeDistribution::new(s, vec![0.2; 5]).is_ok());
    }

    #[test]
    fn step_cdf_left_and_right_limits() {
        let s = RatingScale::five_point();
        let c = StepCdf::new(s, vec![0.1, 0.2, 0.3, 0.2, 0.2]);
        assert!((c.cdf(3.0).unwrap() - 0.6).abs() < 1e-15);
        assert!((c.cdf_before(3.0).unwrap() - 0.3).abs() < 1e-15);
        assert!((c.cdf(3.5).unwrap() - 0.6).abs() < 1e-15);
        assert_eq!(c.cdf(0.5).unwrap(), 0.0);
        assert_eq!(c.cdf(5.0).unwrap(), 1.0);
    }
}
