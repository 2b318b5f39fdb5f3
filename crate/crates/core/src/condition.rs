use crate::error::{QoeError, Result};

/// A point in QoS space, one coordinate per QoS dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct QosCondition(Vec<f64>);

impl QosCondition {
    pub fn new(coordinates: Vec<f64>) -> Result<Self> {
        if coordinates.is_empty() {
            return Err(QoeError::EmptyInput("QoS condition coordinates"));
        }
        if coordinates.iter().any(|c| !c.is_finite()) {
            return Err(QoeError::NonFinite("QoS condition coordinates"));
        }
        Ok(Self(coordinates))
    }

    pub fn scalar(x: f64) -> Result<Self> {
        Self::new(vec![x])
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn coordinates(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for QosCondition {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Quantizes conditions onto a uniform grid so that measured conditions can
/// be matched and merged without exact float comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionGrid {
    resolution: f64,
}

/// Integer grid coordinates of a quantized condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConditionKey(Vec<i64>);

impl ConditionGrid {
    pub const DEFAULT_RESOLUTION: f64 = 1e-9;

    pub fn new(resolution: f64) -> Result<Self> {
        if !(resolution.is_finite() && resolution > 0.0) {
            return Err(QoeError::domain(
                "grid resolution",
                resolution,
                "finite and > 0",
            ));
        }
        Ok(Self { resolution })
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn key(&self, coordinates: &[f64]) -> ConditionKey {
        ConditionKey(
            coordinates
                .iter()
                .map(|c| (c / self.resolution).round() as i64)
                .collect(),
        )
    }
}

impl Default for ConditionGrid {
    fn default() -> Self {
        Self {
            resolution: Self::DEFAULT_RESOLUTION,
        }
    }
}
