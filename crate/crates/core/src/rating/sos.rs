use crate::error::{QoeError, Result};
use crate::scale::RatingScale;

/// SOS parameter θ of `s² = θ (H - m)(m - L)`, strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SosParameter(f64);

impl SosParameter {
    pub fn new(theta: f64) -> Result<Self> {
        if theta > 0.0 && theta < 1.0 {
            Ok(Self(theta))
        } else {
            Err(QoeError::InvalidTheta(theta))
        }
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

fn check_mos(m: f64, scale: &RatingScale) -> Result<()> {
    if !m.is_finite() {
        return Err(QoeError::NonFinite("MOS"));
    }
    if !scale.contains(m) {
        return Err(QoeError::domain("MOS", m, "within [L; H] of the rating scale"));
    }
    Ok(())
}

/// Standard deviation of opinion scores at MOS `m` under the SOS hypothesis.
pub fn sos_std(m: f64, theta: SosParameter, scale: &RatingScale) -> Result<f64> {
    check_mos(m, scale)?;
    let var = theta.value() * (scale.high() - m) * (m - scale.low());
    Ok(var.max(0.0).sqrt())
}

/// Parameters of the Beta distribution on `[0, 1]` whose affine image on
/// `[L; H]` has mean `m` and variance `θ (H - m)(m - L)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaParams {
    Shape { a: f64, b: f64 },
    /// `m` sits on a scale boundary; the variance is zero and the rating is
    /// a point mass there.
    Degenerate { at: i32 },
}

pub fn beta_params(m: f64, theta: SosParameter, scale: &RatingScale) -> Result<BetaParams> {
    check_mos(m, scale)?;
    if m == scale.low() {
        return Ok(BetaParams::Degenerate {
            at: scale.low_level(),
        });
    }
    if m == scale.high() {
        return Ok(BetaParams::Degenerate {
            at: scale.high_level(),
        });
    }
    let t = theta.value();
    let k = (1.0 - t) / (t * scale.span());
    Ok(BetaParams::Shape {
        a: k * (m - scale.low()),
        b: k * (scale.high() - m),
    })
}

/// θ for which the Beta approximation matches the variance of the binomial
/// rating model `Binom(n, p) + L`: θ = 1/n.
pub fn theta_for_binomial(scale: &RatingScale) -> Result<SosParameter> {
    SosParameter::new(1.0 / scale.steps() as f64)
}
