use super::integration_pieces;
use crate::condition::QosCondition;
use crate::error::{QoeError, Result};
use crate::mapping::MosMapping;
use crate::qos::QosDistribution;
use crate::rating::ConditionalRatingModel;
use crate::special::{try_integrate, QuadratureSpec};
use crate::sum::{compensated_sum, KahanSum};

/// `E[f(X)]`, the expected QoE predicted by the MOS mapping alone. The QoS
/// distribution is renormalized over the range actually integrated, as in
/// the mixer.
pub fn expected_qoe_via_mos(
    mapping: &dyn MosMapping,
    qos: &QosDistribution,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if mapping.dimension() != qos.dimension() {
        return Err(QoeError::DimensionMismatch {
            expected: mapping.dimension(),
            found: qos.dimension(),
        });
    }
    match qos {
        QosDistribution::Discrete(pmf) => {
            let mut acc = KahanSum::default();
            for (x, w) in pmf.entries() {
                acc.add(mapping.mos(x.coordinates())? * w);
            }
            Ok(acc.value() / compensated_sum(pmf.entries().iter().map(|e| e.1)))
        }
        QosDistribution::Continuous(q) => {
            spec.validate()?;
            let mut num = KahanSum::default();
            let mut mass = KahanSum::default();
            for (a, b) in integration_pieces(q.as_ref(), spec.truncation_mass)? {
                num.add(
                    try_integrate(
                        |x| {
                            let h = q.pdf(x)?;
                            if h == 0.0 {
                                return Ok(0.0);
                            }
                            Ok(mapping.mos(&[x])? * h)
                        },
                        a,
                        b,
                        spec,
                    )?
                    .value,
                );
                mass.add(try_integrate(|x| q.pdf(x), a, b, spec)?.value);
            }
            Ok(num.value() / mass.value())
        }
    }
}

/// QoS-to-GoB mapping `g(x) = P(Q|x >= k)` on the discretized ratings.
pub fn gob_mapping(x: &QosCondition, model: &dyn ConditionalRatingModel) -> Result<f64> {
    let scale = model.scale();
    let pmf = model.conditional_pmf(x.coordinates())?;
    Ok(compensated_sum(
        scale
            .level_values()
            .zip(pmf)
            .filter(|(level, _)| *level >= scale.gob_threshold())
            .map(|(_, p)| p),
    )
    .clamp(0.0, 1.0))
}

/// QoS-to-PoW mapping `P(Q|x <= j)` on the discretized ratings.
pub fn pow_mapping(x: &QosCondition, model: &dyn ConditionalRatingModel) -> Result<f64> {
    let scale = model.scale();
    let pmf = model.conditional_pmf(x.coordinates())?;
    Ok(compensated_sum(
        scale
            .level_values()
            .zip(pmf)
            .filter(|(level, _)| *level <= scale.pow_threshold())
            .map(|(_, p)| p),
    )
    .clamp(0.0, 1.0))
}
