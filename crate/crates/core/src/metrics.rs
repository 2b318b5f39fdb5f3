//! QoE metrics: expected rating, spread, GoB/PoW ratios and quantiles.

use crate::distribution::{ContinuousCdf, QoeDistribution};
use crate::error::{QoeError, Result};
use crate::special::{try_integrate, QuadratureSpec};
use crate::sum::compensated_sum;

/// Which representation of the rating variable metrics are computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MetricsMode {
    /// The rounded and bounded rating on the scale levels.
    #[default]
    Discrete,
    /// The underlying continuous rating variable.
    Continuous,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QoeMetrics {
    pub mean: f64,
    pub std: f64,
    /// `P(Q >= k)`
    pub gob: f64,
    /// `P(Q <= j)`
    pub pow: f64,
    /// `(probability level, rating value)`, in the order requested.
    pub quantiles: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsOptions {
    pub quantile_levels: Vec<f64>,
    /// Used for the mean and spread in continuous mode.
    pub quadrature: QuadratureSpec,
}

impl Default for MetricsOptions {
    fn default() -> Self {
        Self {
            quantile_levels: vec![0.05, 0.25, 0.5, 0.75, 0.95],
            quadrature: QuadratureSpec {
                absolute_tolerance: 1e-9,
                relative_tolerance: 1e-9,
                ..QuadratureSpec::default()
            },
        }
    }
}

/// Slack on cumulative sums when inverting a discrete CDF.
const CUMULATIVE_SLACK: f64 = 1e-12;
/// Bisection width for continuous quantiles.
const QUANTILE_TOLERANCE: f64 = 1e-8;

pub fn metrics_from_distribution(
    dist: &QoeDistribution,
    mode: MetricsMode,
    options: &MetricsOptions,
) -> Result<QoeMetrics> {
    for &p in &options.quantile_levels {
        if !(p > 0.0 && p <= 1.0) {
            return Err(QoeError::domain("quantile level", p, "0 < p <= 1"));
        }
    }
    match mode {
        MetricsMode::Discrete => Ok(discrete_metrics(dist, &options.quantile_levels)),
        MetricsMode::Continuous => {
            let cdf = dist
                .continuous_cdf()
                .ok_or(QoeError::MissingContinuousCdf)?;
            continuous_metrics(dist, cdf, options)
        }
    }
}

fn discrete_metrics(dist: &QoeDistribution, levels: &[f64]) -> QoeMetrics {
    let scale = dist.scale();
    let pmf = dist.pmf();
    let weighted = |g: &dyn Fn(f64) -> f64| {
        compensated_sum(
            scale
                .level_values()
                .zip(pmf)
                .map(|(level, p)| g(level as f64) * p),
        )
    };
    let mean = weighted(&|y| y).clamp(scale.low(), scale.high());
    let var = weighted(&|y| (y - mean) * (y - mean)).max(0.0);
    let gob = compensated_sum(
        scale
            .level_values()
            .zip(pmf)
            .filter(|(level, _)| *level >= scale.gob_threshold())
            .map(|(_, p)| *p),
    );
    let pow = compensated_sum(
        scale
            .level_values()
            .zip(pmf)
            .filter(|(level, _)| *level <= scale.pow_threshold())
            .map(|(_, p)| *p),
    );

    let cumulative = dist.cumulative();
    let quantiles = levels
        .iter()
        .map(|&p| {
            let idx = cumulative
                .iter()
                .position(|&c| c >= p - CUMULATIVE_SLACK)
                .unwrap_or(cumulative.len() - 1);
            (p, scale.level_at(idx) as f64)
        })
        .collect();

    QoeMetrics {
        mean,
        std: var.sqrt(),
        gob: gob.clamp(0.0, 1.0),
        pow: pow.clamp(0.0, 1.0),
        quantiles,
    }
}

/// Continuous convention: `GoB = 1 - F(k-)` (mass at `k` counts as good),
/// `PoW = F(j)`. Mean and second moment come from `∫ (1 - F)` tail integrals.
fn continuous_metrics(
    dist: &QoeDistribution,
    cdf: &ContinuousCdf,
    options: &MetricsOptions,
) -> Result<QoeMetrics> {
    let scale = dist.scale();
    let (low, high) = (scale.low(), scale.high());

    let gob = (1.0 - cdf.cdf_before(scale.gob_threshold() as f64)?).clamp(0.0, 1.0);
    let pow = cdf.cdf(scale.pow_threshold() as f64)?.clamp(0.0, 1.0);

    let tail = try_integrate(|y| Ok(1.0 - cdf.cdf(y)?), low, high, &options.quadrature)?;
    let second = try_integrate(
        |y| Ok(2.0 * y * (1.0 - cdf.cdf(y)?)),
        low,
        high,
        &options.quadrature,
    )?;
    let mean = (low + tail.value).clamp(low, high);
    let var = (low * low + second.value - mean * mean).max(0.0);

    let quantiles = options
        .quantile_levels
        .iter()
        .map(|&p| Ok((p, continuous_quantile(cdf, low, high, p)?)))
        .collect::<Result<Vec<_>>>()?;

    Ok(QoeMetrics {
        mean,
        std: var.sqrt(),
        gob,
        pow,
        quantiles,
    })
}

/// Smallest `y` in `[low, high]` with `F(y) >= p`, by bisection.
pub fn continuous_quantile(cdf: &ContinuousCdf, low: f64, high: f64, p: f64) -> Result<f64> {
    if cdf.cdf(low)? >= p {
        return Ok(low);
    }
    let (mut lo, mut hi) = (low, high);
    while hi - lo > QUANTILE_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if cdf.cdf(mid)? >= p {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::{RatingCdf, StepCdf};
    use crate::scale::RatingScale;
    use proptest::prelude::*;

    fn discrete(pmf: Vec<f64>) -> QoeMetrics {
        let d = QoeDistribution::new(RatingScale::five_point(), pmf).unwrap();
        metrics_from_distribution(&d, MetricsMode::Discrete, &MetricsOptions::default()).unwrap()
    }

    #[test]
    fn point_mass_at_five() {
        let m = discrete(vec![0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!((m.mean, m.gob, m.pow, m.std), (5.0, 1.0, 0.0, 0.0));
        assert!(m.quantiles.iter().all(|&(_, q)| q == 5.0));
    }

    #[test]
    fn binomial_half() {
        let m = discrete([1.0, 4.0, 6.0, 4.0, 1.0].map(|w| w / 16.0).to_vec());
        assert!((m.mean - 3.0).abs() < 1e-15);
        assert!((m.gob - 0.3125).abs() < 1e-15);
        assert!((m.pow - 0.3125).abs() < 1e-15);
        assert!((m.std - 1.0).abs() < 1e-15);
        let median = m.quantiles.iter().find(|q| q.0 == 0.5).unwrap().1;
        assert_eq!(median, 3.0);
    }

    #[test]
    fn discretized_beta_spot_check() {
        let m = discrete(vec![0.0722, 0.2703, 0.3149, 0.2703, 0.0722].iter().map(|p| p / 0.9999).collect());
        assert!((m.gob - 0.3425).abs() < 1e-3);
    }

    #[test]
    fn continuous_mode_requires_cdf() {
        let d = QoeDistribution::point_mass(RatingScale::five_point(), 3).unwrap();
        let err = metrics_from_distribution(&d, MetricsMode::Continuous, &MetricsOptions::default());
        assert_eq!(err.unwrap_err(), QoeError::MissingContinuousCdf);
    }

    struct Uniform;
    impl RatingCdf for Uniform {
        fn cdf(&self, y: f64) -> Result<f64> {
            Ok(((y - 1.0) / 4.0).clamp(0.0, 1.0))
        }
    }

    #[test]
    fn continuous_uniform() {
        let s = RatingScale::five_point();
        let d = QoeDistribution::new(s, vec![0.125, 0.25, 0.25, 0.25, 0.125])
            .unwrap()
            .with_continuous_cdf(ContinuousCdf::new(Uniform));
        let m = metrics_from_distribution(&d, MetricsMode::Continuous, &MetricsOptions::default())
            .unwrap();
        assert!((m.mean - 3.0).abs() < 1e-9);
        assert!((m.std - 4.0 / 12f64.sqrt()).abs() < 1e-8);
        assert!((m.gob - 0.25).abs() < 1e-15);
        assert!((m.pow - 0.25).abs() < 1e-15);
        let q = m.quantiles.iter().find(|q| q.0 == 0.25).unwrap().1;
        assert!((q - 2.0).abs() < 1e-8);
    }

    #[test]
    fn continuous_step_cdf_agrees_with_discrete() {
        let s = RatingScale::five_point();
        let pmf = vec![0.1, 0.2, 0.3, 0.25, 0.15];
        let d = QoeDistribution::new(s, pmf.clone())
            .unwrap()
            .with_continuous_cdf(ContinuousCdf::new(StepCdf::new(s, pmf)));
        let opts = MetricsOptions::default();
        let c = metrics_from_distribution(&d, MetricsMode::Continuous, &opts).unwrap();
        let m = metrics_from_distribution(&d, MetricsMode::Discrete, &opts).unwrap();
        assert!((c.gob - m.gob).abs() < 1e-15);
        assert!((c.pow - m.pow).abs() < 1e-15);
        assert!((c.mean - m.mean).abs() < 1e-8);
    }

    #[test]
    fn rejects_bad_quantile_levels() {
        let d = QoeDistribution::point_mass(RatingScale::five_point(), 3).unwrap();
        let opts = MetricsOptions {
            quantile_levels: vec![0.0],
            ..Default::default()
        };
        assert!(metrics_from_distribution(&d, MetricsMode::Discrete, &opts).is_err());
    }

    fn pmf_strategy() -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(0.0f64..1.0, 5)
            .prop_filter("positive mass", |w| w.iter().sum::<f64>() > 1e-3)
            .prop_map(|w| {
                let s: f64 = w.iter().sum();
                w.into_iter().map(|x| x / s).collect()
            })
    }

    proptest! {
        #[test]
        fn metrics_bounds(pmf in pmf_strategy()) {
            let m = discrete(pmf);
            prop_assert!((1.0..=5.0).contains(&m.mean));
            prop_assert!((0.0..=1.0).contains(&m.gob) && (0.0..=1.0).contains(&m.pow));
            prop_assert!(m.gob + m.pow <= 1.0 + 1e-12);
            prop_assert!(m.quantiles.windows(2).all(|w| w[0].1 <= w[1].1));
        }

        #[test]
        fn point_mass_quantiles(level in 1i32..=5, p in 0.001f64..=1.0) {
            let d = QoeDistribution::point_mass(RatingScale::five_point(), level).unwrap();
            let opts = MetricsOptions { quantile_levels: vec![p], ..Default::default() };
            let m = metrics_from_distribution(&d, MetricsMode::Discrete, &opts).unwrap();
            prop_assert_eq!(m.quantiles[0].1, level as f64);
        }

        #[test]
        fn insensitive_to_renormalization_noise(pmf in pmf_strategy(), noise in -1e-10f64..1e-10) {
            let a = discrete(pmf.clone());
            let noisy: Vec<f64> = pmf.iter().map(|p| (p * (1.0 + noise)).min(1.0)).collect();
            let b = discrete(noisy);
            prop_assert!((a.mean - b.mean).abs() < 1e-8);
            prop_assert!((a.gob - b.gob).abs() < 1e-8);
            prop_assert!((a.pow - b.pow).abs() < 1e-8);
        }
    }
}
