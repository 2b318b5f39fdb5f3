use super::gamma::{ln_gamma_positive, log_gamma};
use crate::error::{QoeError, Result};

const MAX_ITERATIONS: usize = 300;
const RELATIVE_STEP: f64 = 1e-15;
const TINY: f64 = 1e-300;

/// ln B(a, b) for a, b > 0.
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    Ok(log_gamma(a)? + log_gamma(b)? - log_gamma(a + b)?)
}

/// Regularized incomplete beta function `I_x(a, b) = B(x; a, b) / B(a, b)`.
///
/// Evaluated with the modified Lentz continued fraction, switching to
/// `1 - I_{1-x}(b, a)` when `x > (a + 1) / (a + b + 2)`.
pub fn reg_inc_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(x.is_finite() && a.is_finite() && b.is_finite()) {
        return Err(QoeError::NonFinite("reg_inc_beta arguments"));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(QoeError::domain("reg_inc_beta x", x, "0 <= x <= 1"));
    }
    if a <= 0.0 {
        return Err(QoeError::domain("reg_inc_beta a", a, "a > 0"));
    }
    if b <= 0.0 {
        return Err(QoeError::domain("reg_inc_beta b", b, "b > 0"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let value = if x > (a + 1.0) / (a + b + 2.0) {
        1.0 - continued_fraction(1.0 - x, b, a)?
    } else {
        continued_fraction(x, a, b)?
    };
    Ok(value.clamp(0.0, 1.0))
}

fn continued_fraction(x: f64, a: f64, b: f64) -> Result<f64> {
    let ln_beta = ln_gamma_positive(a) + ln_gamma_positive(b) - ln_gamma_positive(a + b);
    let prefix = (a * x.ln() + b * (-x).ln_1p() - ln_beta).exp() / a;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;

    let clamp_tiny = |v: f64| if v.abs() < TINY { TINY } else { v };

    let mut c = 1.0;
    let mut d = 1.0 / clamp_tiny(1.0 - qab * x / qap);
    let mut f = d;

    for m in 1..=MAX_ITERATIONS {
        let m = m as f64;
        let m2 = 2.0 * m;

        let even = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 / clamp_tiny(1.0 + even * d);
        c = clamp_tiny(1.0 + even / c);
        f *= d * c;

        let odd = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 / clamp_tiny(1.0 + odd * d);
        c = clamp_tiny(1.0 + odd / c);
        let delta = d * c;
        f *= delta;

        if (delta - 1.0).abs() < RELATIVE_STEP {
            return Ok(prefix * f);
        }
    }
    Err(QoeError::NoConvergence("incomplete beta continued fraction"))
}
