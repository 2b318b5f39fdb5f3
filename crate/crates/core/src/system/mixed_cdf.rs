use std::fmt;
use std::sync::Arc;

use super::integration_pieces;
use crate::distribution::RatingCdf;
use crate::error::Result;
use crate::qos::{ContinuousQos, EmpiricalJointPmf};
use crate::rating::ConditionalRatingModel;
use crate::scale::RatingScale;
use crate::special::{try_integrate, QuadratureSpec};
use crate::sum::{compensated_sum, KahanSum};

/// `P(Q <= y) = ∫ P(Q|x <= y) h(x) dx`, one quadrature per evaluation.
pub struct ContinuousMixtureCdf {
    model: Arc<dyn ConditionalRatingModel>,
    qos: Arc<dyn ContinuousQos>,
    scale: RatingScale,
    spec: QuadratureSpec,
    pieces: Vec<(f64, f64)>,
    mass: f64,
}

impl ContinuousMixtureCdf {
    pub fn new(
        model: Arc<dyn ConditionalRatingModel>,
        qos: Arc<dyn ContinuousQos>,
        scale: RatingScale,
        spec: QuadratureSpec,
    ) -> Result<Self> {
        spec.validate()?;
        let pieces = integration_pieces(qos.as_ref(), spec.truncation_mass)?;
        let mut mass = KahanSum::default();
        for &(a, b) in &pieces {
            mass.add(try_integrate(|x| qos.pdf(x), a, b, &spec)?.value);
        }
        Ok(Self {
            model,
            qos,
            scale,
            spec,
            pieces,
            mass: mass.value(),
        })
    }

    fn mixed(&self, y: f64, before: bool) -> Result<f64> {
        if y < self.scale.low() || (before && y <= self.scale.low()) {
            return Ok(0.0);
        }
        if y > self.scale.high() {
            return Ok(1.0);
        }
        let mut total = KahanSum::default();
        for &(a, b) in &self.pieces {
            let r = try_integrate(
                |x| {
                    let h = self.qos.pdf(x)?;
                    if h == 0.0 {
                        return Ok(0.0);
                    }
                    let f = if before {
                        self.model.conditional_cdf_before(y, &[x])?
                    } else {
                        self.model.conditional_cdf(y, &[x])?
                    };
                    Ok(f * h)
                },
                a,
                b,
                &self.spec,
            )?;
            total.add(r.value);
        }
        Ok((total.value() / self.mass).clamp(0.0, 1.0))
    }
}

impl RatingCdf for ContinuousMixtureCdf {
    fn cdf(&self, y: f64) -> Result<f64> {
        self.mixed(y, false)
    }

    fn cdf_before(&self, y: f64) -> Result<f64> {
        self.mixed(y, true)
    }
}

impl fmt::Debug for ContinuousMixtureCdf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ContinuousMixtureCdf")
            .field("model", &self.model.name())
            .field("pieces", &self.pieces)
            .finish()
    }
}

/// `P(Q <= y) = Σ_x P(Q|x <= y) h(x)` with compensated summation in atom order.
pub struct DiscreteMixtureCdf {
    model: Arc<dyn ConditionalRatingModel>,
    qos: EmpiricalJointPmf,
    total: f64,
}

impl DiscreteMixtureCdf {
    pub fn new(model: Arc<dyn ConditionalRatingModel>, qos: EmpiricalJointPmf) -> Self {
        let total = compensated_sum(qos.entries().iter().map(|e| e.1));
        Self { model, qos, total }
    }

    fn mixed(&self, y: f64, before: bool) -> Result<f64> {
        let mut acc = KahanSum::default();
        for (x, w) in self.qos.entries() {
            let f = if before {
                self.model.conditional_cdf_before(y, x.coordinates())?
            } else {
                self.model.conditional_cdf(y, x.coordinates())?
            };
            acc.add(f * w);
        }
        Ok((acc.value() / self.total).clamp(0.0, 1.0))
    }
}

impl RatingCdf for DiscreteMixtureCdf {
    fn cdf(&self, y: f64) -> Result<f64> {
        self.mixed(y, false)
    }

    fn cdf_before(&self, y: f64) -> Result<f64> {
        self.mixed(y, true)
    }
}

impl fmt::Debug for DiscreteMixtureCdf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiscreteMixtureCdf")
            .field("model", &self.model.name())
            .field("atoms", &self.qos.len())
            .finish()
    }
}
