//! System-level QoE rating distributions.
//!
//! A QoS distribution over the user population is combined with a
//! conditional rating model (the rating distribution for one QoS condition)
//! to obtain the distribution of ratings across all users, from which
//! expected QoE, Good-or-Better / Poor-or-Worse ratios and quantiles follow.
//!
//! The pipeline:
//!
//! 1. a [`mapping::MosMapping`] turns a QoS condition into a MOS value;
//! 2. a [`rating::ConditionalRatingModel`] turns the condition into a rating
//!    distribution (Beta approximation from MOS and the SOS parameter θ,
//!    binomial, or empirical);
//! 3. [`system::mix`] integrates (or sums) the conditional distributions
//!    over a [`qos::QosDistribution`];
//! 4. [`metrics::metrics_from_distribution`] extracts the metrics.

pub mod condition;
pub mod distribution;
pub mod error;
pub mod exec;
pub mod mapping;
pub mod metrics;
pub mod qos;
pub mod rating;
pub mod scale;
pub mod special;
mod sum;
pub mod system;

pub use condition::{ConditionGrid, ConditionKey, QosCondition};
pub use distribution::{validate_pmf, ContinuousCdf, NormalizedPmf, QoeDistribution, RatingCdf};
pub use error::{QoeError, Result};
pub use exec::Execution;
pub use metrics::{metrics_from_distribution, MetricsMode, MetricsOptions, QoeMetrics};
pub use scale::RatingScale;
pub use special::QuadratureSpec;
pub use system::{mix, MixOutput, OutputMode, SystemQoeRequest};
pub use sum::{compensated_sum, KahanSum};
