use std::f64::consts::PI;

use super::normal::standard_normal_quantile;
use super::ContinuousQos;
use crate::error::{QoeError, Result};

/// Below this shape the lognormal is treated as a point mass.
pub const DEGENERATE_SIGMA: f64 = 1e-8;

/// Lognormal QoS distribution, `ln X ~ N(mu, sigma^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LognormalQos {
    pub mu: f64,
    pub sigma: f64,
}

impl LognormalQos {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(QoeError::NonFinite("lognormal mu"));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(QoeError::domain("lognormal sigma", sigma, "sigma > 0"));
        }
        Ok(Self { mu, sigma })
    }

    pub fn mean(&self) -> f64 {
        (self.mu + 0.5 * self.sigma * self.sigma).exp()
    }

    pub fn std(&self) -> f64 {
        self.mean() * (self.sigma * self.sigma).exp_m1().sqrt()
    }

    pub fn is_degenerate(&self) -> bool {
        self.sigma < DEGENERATE_SIGMA
    }
}

/// Parameters matching a given mean and standard deviation. A tiny `std`
/// can give a shape below [`DEGENERATE_SIGMA`], even zero.
pub fn lognormal_from_moments(mean: f64, std: f64) -> Result<LognormalQos> {
    if !(mean.is_finite() && mean > 0.0) {
        return Err(QoeError::domain("mean", mean, "mean > 0"));
    }
    if !(std.is_finite() && std > 0.0) {
        return Err(QoeError::domain("std", std, "std > 0"));
    }
    let cv = std / mean;
    let var = (cv * cv).ln_1p();
    Ok(LognormalQos {
        mu: mean.ln() - 0.5 * var,
        sigma: var.sqrt(),
    })
}

pub fn lognormal_pdf(x: f64, q: &LognormalQos) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(QoeError::domain("x", x, "x > 0"));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if q.sigma <= 0.0 {
        return Err(QoeError::Unsupported(
            "density of a degenerate lognormal".into(),
        ));
    }
    let z = (x.ln() - q.mu) / q.sigma;
    Ok((-0.5 * z * z).exp() / (x * q.sigma * (2.0 * PI).sqrt()))
}

pub fn lognormal_quantile(p: f64, q: &LognormalQos) -> Result<f64> {
    Ok((q.mu + q.sigma * standard_normal_quantile(p)?).exp())
}

impl ContinuousQos for LognormalQos {
    fn pdf(&self, x: f64) -> Result<f64> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        lognormal_pdf(x, self)
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        lognormal_quantile(p, self)
    }

    fn support(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }
}
