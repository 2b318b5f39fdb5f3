use std::sync::Arc;

use super::mixed_cdf::{ContinuousMixtureCdf, DiscreteMixtureCdf};
use super::{integration_pieces, SystemQoeRequest};
use crate::distribution::{ContinuousCdf, QoeDistribution, StepCdf};
use crate::error::{QoeError, Result};
use crate::qos::{ContinuousQos, EmpiricalJointPmf, QosDistribution};
use crate::special::try_integrate;
use crate::sum::{compensated_sum, KahanSum};

/// Numerical bookkeeping of a mixing run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MixDiagnostics {
    /// `1 - sum` of the raw mixed PMF before it was rescaled to unit mass.
    pub deficit: f64,
    /// Quadrature error estimate per level; zeros for discrete QoS.
    pub level_error_estimates: Vec<f64>,
    pub integrand_evaluations: usize,
    /// QoS mass left outside the integration range.
    pub truncated_mass: f64,
}

#[derive(Debug, Clone)]
pub struct MixOutput {
    pub distribution: QoeDistribution,
    pub diagnostics: MixDiagnostics,
}

/// Mixes according to the kind of QoS distribution in the request.
pub fn mix(req: &SystemQoeRequest) -> Result<MixOutput> {
    match &req.qos {
        QosDistribution::Continuous(q) => mix_continuous_inner(req, q),
        QosDistribution::Discrete(pmf) => mix_discrete_inner(req, pmf),
    }
}

/// `q(i) = ∫ P(Q|x = i) h(x) dx`, one adaptive quadrature per level.
pub fn mix_continuous(req: &SystemQoeRequest) -> Result<MixOutput> {
    match &req.qos {
        QosDistribution::Continuous(q) => mix_continuous_inner(req, q),
        QosDistribution::Discrete(_) => Err(QoeError::Unsupported(
            "mix_continuous needs a continuous QoS distribution".into(),
        )),
    }
}

/// `q(i) = Σ_x P(Q|x = i) h(x)` over the atoms of a joint PMF.
pub fn mix_discrete(req: &SystemQoeRequest) -> Result<MixOutput> {
    match &req.qos {
        QosDistribution::Discrete(pmf) => mix_discrete_inner(req, pmf),
        QosDistribution::Continuous(_) => Err(QoeError::Unsupported(
            "mix_discrete needs a discrete QoS distribution".into(),
        )),
    }
}

fn mix_continuous_inner(req: &SystemQoeRequest, qos: &Arc<dyn ContinuousQos>) -> Result<MixOutput> {
    req.validate()?;
    let model = &req.rating_model;
    let spec = &req.quadrature;
    let levels = req.scale.levels();
    let pieces = integration_pieces(qos.as_ref(), spec.truncation_mass)?;

    let tasks: Vec<(usize, (f64, f64))> = (0..levels)
        .flat_map(|i| pieces.iter().map(move |p| (i, *p)))
        .collect();
    let results = req.execution.try_map(&tasks, |&(i, (a, b))| {
        try_integrate(
            |x| {
                let h = qos.pdf(x)?;
                if h == 0.0 {
                    return Ok(0.0);
                }
                Ok(model.conditional_pmf(&[x])?[i] * h)
            },
            a,
            b,
            spec,
        )
    })?;

    let mut raw = vec![KahanSum::default(); levels];
    let mut errors = vec![0.0; levels];
    let mut evaluations = 0;
    for ((i, _), r) in tasks.iter().zip(&results) {
        raw[*i].add(r.value);
        errors[*i] += r.error_estimate;
        evaluations += r.evaluations;
    }
    let raw: Vec<f64> = raw.iter().map(|k| k.value().max(0.0)).collect();
    let (pmf, deficit) = renormalize(&raw)?;

    let mut distribution = QoeDistribution::new(req.scale, pmf)?;
    if req.output_mode.wants_continuous() {
        let cdf = if model.discrete_ratings() {
            ContinuousCdf::new(StepCdf::new(req.scale, distribution.pmf().to_vec()))
        } else {
            ContinuousCdf::new(ContinuousMixtureCdf::new(
                model.clone(),
                qos.clone(),
                req.scale,
                *spec,
            )?)
        };
        distribution = distribution.with_continuous_cdf(cdf);
    }
    Ok(MixOutput {
        distribution,
        diagnostics: MixDiagnostics {
            deficit,
            level_error_estimates: errors,
            integrand_evaluations: evaluations,
            truncated_mass: spec.truncation_mass,
        },
    })
}

fn mix_discrete_inner(req: &SystemQoeRequest, qos: &EmpiricalJointPmf) -> Result<MixOutput> {
    req.validate()?;
    if qos.is_empty() {
        return Err(QoeError::EmptyInput("QoS PMF"));
    }
    let model = &req.rating_model;
    let levels = req.scale.levels();
    let conditionals = req
        .execution
        .try_map(qos.entries(), |(x, _)| model.conditional_pmf(x.coordinates()))?;

    let mut raw = vec![KahanSum::default(); levels];
    for ((_, w), pmf) in qos.entries().iter().zip(&conditionals) {
        for (acc, p) in raw.iter_mut().zip(pmf) {
            acc.add(p * w);
        }
    }
    let raw: Vec<f64> = raw.iter().map(|k| k.value().max(0.0)).collect();
    let (pmf, deficit) = renormalize(&raw)?;

    let mut distribution = QoeDistribution::new(req.scale, pmf)?;
    if req.output_mode.wants_continuous() {
        let cdf = if model.discrete_ratings() {
            ContinuousCdf::new(StepCdf::new(req.scale, distribution.pmf().to_vec()))
        } else {
            ContinuousCdf::new(DiscreteMixtureCdf::new(model.clone(), qos.clone()))
        };
        distribution = distribution.with_continuous_cdf(cdf);
    }
    Ok(MixOutput {
        distribution,
        diagnostics: MixDiagnostics {
            deficit,
            level_error_estimates: vec![0.0; levels],
            integrand_evaluations: qos.len(),
            truncated_mass: 0.0,
        },
    })
}

fn renormalize(raw: &[f64]) -> Result<(Vec<f64>, f64)> {
    let total = compensated_sum(raw.iter().copied());
    if !(total.is_finite() && total > 0.0) {
        return Err(QoeError::InvalidDistribution(format!(
            "mixed PMF has total mass {total}"
        )));
    }
    Ok((raw.iter().map(|p| (p / total).min(1.0)).collect(), 1.0 - total))
}
