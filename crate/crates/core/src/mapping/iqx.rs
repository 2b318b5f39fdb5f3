use super::MosMapping;
use crate::error::{QoeError, Result};
use crate::rating::check_dimension;

/// Exponential IQX mapping `f(x) = n exp(-beta x) + floor`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IqxMapping {
    levels_above_floor: f64,
    beta: f64,
    floor: f64,
}

impl IqxMapping {
    pub fn new(levels_above_floor: f64, beta: f64, floor: f64) -> Result<Self> {
        if !(levels_above_floor.is_finite() && levels_above_floor > 0.0) {
            return Err(QoeError::domain("IQX n", levels_above_floor, "> 0"));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(QoeError::domain("IQX beta", beta, "> 0"));
        }
        if !floor.is_finite() {
            return Err(QoeError::NonFinite("IQX floor"));
        }
        Ok(Self {
            levels_above_floor,
            beta,
            floor,
        })
    }

    /// The web-QoE mapping on the 5-point scale, `4 exp(-0.25 x) + 1`.
    pub fn web() -> Self {
        Self {
            levels_above_floor: 4.0,
            beta: 0.25,
            floor: 1.0,
        }
    }

    pub fn levels_above_floor(&self) -> f64 {
        self.levels_above_floor
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }
}

/// MOS for a waiting time `x` in seconds.
pub fn iqx_mos(x: f64, map: &IqxMapping) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(QoeError::domain("waiting time x", x, "x >= 0"));
    }
    Ok(map.levels_above_floor * (-map.beta * x).exp() + map.floor)
}

impl MosMapping for IqxMapping {
    fn dimension(&self) -> usize {
        1
    }

    fn mos(&self, condition: &[f64]) -> Result<f64> {
        check_dimension(Some(1), condition)?;
        iqx_mos(condition[0], self)
    }

    fn name(&self) -> &'static str {
        "iqx"
    }
}
