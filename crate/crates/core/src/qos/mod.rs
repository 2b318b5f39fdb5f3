//! QoS distributions: continuous densities and discrete joint PMFs.

mod empirical;
mod lognormal;
mod normal;
mod tabulated;

use std::fmt::Debug;
use std::sync::Arc;

pub use empirical::{load_joint_pmf, pmf_from_samples, EmpiricalJointPmf, LoadOptions};
pub use lognormal::{
    lognormal_from_moments, lognormal_pdf, lognormal_quantile, LognormalQos, DEGENERATE_SIGMA,
};
pub use normal::{standard_normal_cdf, standard_normal_quantile};
pub use tabulated::TabulatedQos;

use crate::condition::QosCondition;
use crate::error::Result;

/// A one-dimensional continuous QoS distribution. Anything that supplies a
/// density, a quantile function and its support can be mixed.
pub trait ContinuousQos: Send + Sync + Debug {
    /// Density `h(x)`; zero outside the support.
    fn pdf(&self, x: f64) -> Result<f64>;

    /// Inverse CDF for `p` in `(0, 1)`.
    fn quantile(&self, p: f64) -> Result<f64>;

    /// Closed support `[lower, upper]`; `upper` may be infinite.
    fn support(&self) -> (f64, f64);

    /// Points inside the support where the density is not smooth.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// The QoS distribution of a system.
#[derive(Debug, Clone)]
pub enum QosDistribution {
    Continuous(Arc<dyn ContinuousQos>),
    Discrete(EmpiricalJointPmf),
}

impl QosDistribution {
    /// Wraps a lognormal, replacing it by a point mass at its mean when it
    /// is degenerate.
    pub fn lognormal(q: LognormalQos) -> Result<Self> {
        if q.is_degenerate() {
            Self::point(QosCondition::scalar(q.mean())?)
        } else {
            Ok(Self::Continuous(Arc::new(q)))
        }
    }

    pub fn point(x: QosCondition) -> Result<Self> {
        Ok(Self::Discrete(EmpiricalJointPmf::point_mass(x)))
    }

    pub fn continuous<Q: ContinuousQos + 'static>(q: Q) -> Self {
        Self::Continuous(Arc::new(q))
    }

    pub fn dimension(&self) -> usize {
        match self {
            Self::Continuous(_) => 1,
            Self::Discrete(pmf) => pmf.dimension(),
        }
    }

    pub fn is_continuous(&self) -> bool {
        matches!(self, Self::Continuous(_))
    }
}
