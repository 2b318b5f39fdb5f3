use crate::error::{QoeError, Result};

/// Largest `n` for which every coefficient is computed exactly.
pub const MAX_EXACT_N: u32 = 60;

/// Exact `C(n, k)` for `n <= 60`.
pub fn binomial_coefficient(n: u32, k: u32) -> Result<u64> {
    if k > n {
        return Err(QoeError::domain("binomial k", k as f64, "k <= n"));
    }
    if n > MAX_EXACT_N {
        return Err(QoeError::domain("binomial n", n as f64, "n <= 60"));
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    // c * (n - i) is always divisible by (i + 1) since c = C(n, i).
    let c = (0..k).fold(1u128, |c, i| c * (n - i) / (i + 1));
    Ok(c as u64)
}
