#![allow(dead_code)]

use std::sync::Arc;

use qoe_core::mapping::{IqxMapping, VideoStallMapping};
use qoe_core::qos::{lognormal_from_moments, load_joint_pmf, LoadOptions, QosDistribution};
use qoe_core::rating::{BetaApproxModel, BinomialRatingModel, SosParameter};
use qoe_core::{RatingScale, SystemQoeRequest};

pub fn web_binomial() -> Arc<BinomialRatingModel> {
    Arc::new(BinomialRatingModel::new(RatingScale::five_point(), 0.25).unwrap())
}

pub fn web_beta(theta: f64) -> Arc<BetaApproxModel> {
    Arc::new(BetaApproxModel::new(
        RatingScale::five_point(),
        SosParameter::new(theta).unwrap(),
        Arc::new(IqxMapping::web()),
    ))
}

pub fn video_beta(theta: f64) -> Arc<BetaApproxModel> {
    Arc::new(BetaApproxModel::new(
        RatingScale::five_point(),
        SosParameter::new(theta).unwrap(),
        Arc::new(VideoStallMapping::new(60.0).unwrap()),
    ))
}

pub fn lognormal(mean: f64, std: f64) -> QosDistribution {
    QosDistribution::lognormal(lognormal_from_moments(mean, std).unwrap()).unwrap()
}

pub fn joint(rows: &[(&[f64], f64)]) -> QosDistribution {
    let rows = rows.iter().map(|(c, p)| (c.to_vec(), *p));
    QosDistribution::Discrete(load_joint_pmf(rows, &LoadOptions::default()).unwrap())
}

pub fn cdf_of(pmf: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    pmf.iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect()
}

pub fn web_request(
    model: Arc<dyn qoe_core::rating::ConditionalRatingModel>,
    std: f64,
) -> SystemQoeRequest {
    SystemQoeRequest::new(model, lognormal(4.0, std))
}
