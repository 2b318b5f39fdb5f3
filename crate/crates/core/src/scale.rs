use crate::error::{QoeError, Result};

/// A bounded, integer-spaced opinion scale `[low; high]` with its
/// "good" and "poor" thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RatingScale {
    low: i32,
    high: i32,
    gob_threshold: i32,
    pow_threshold: i32,
}

impl RatingScale {
    pub fn new(low: i32, high: i32, gob_threshold: i32, pow_threshold: i32) -> Result<Self> {
        if high <= low {
            return Err(QoeError::InvalidScale(format!(
                "high ({high}) must exceed low ({low})"
            )));
        }
        if !(low <= pow_threshold && pow_threshold < gob_threshold && gob_threshold <= high) {
            return Err(QoeError::InvalidScale(format!(
                "thresholds must satisfy low <= poor < good <= high, got poor = {pow_threshold}, \
                 good = {gob_threshold} on [{low}; {high}]"
            )));
        }
        Ok(Self {
            low,
            high,
            gob_threshold,
            pow_threshold,
        })
    }

    /// The 5-point ACR scale with GoB = P(Q >= 4) and PoW = P(Q <= 2).
    pub fn five_point() -> Self {
        Self {
            low: 1,
            high: 5,
            gob_threshold: 4,
            pow_threshold: 2,
        }
    }

    pub fn low(&self) -> f64 {
        self.low as f64
    }

    pub fn high(&self) -> f64 {
        self.high as f64
    }

    pub fn low_level(&self) -> i32 {
        self.low
    }

    pub fn high_level(&self) -> i32 {
        self.high
    }

    pub fn gob_threshold(&self) -> i32 {
        self.gob_threshold
    }

    pub fn pow_threshold(&self) -> i32 {
        self.pow_threshold
    }

    /// `H - L`, also the number of trials of the binomial rating model.
    pub fn steps(&self) -> u32 {
        (self.high - self.low) as u32
    }

    pub fn span(&self) -> f64 {
        (self.high - self.low) as f64
    }

    pub fn levels(&self) -> usize {
        (self.high - self.low + 1) as usize
    }

    /// Level values `L, L+1, ..., H`.
    pub fn level_values(&self) -> impl Iterator<Item = i32> + '_ {
        self.low..=self.high
    }

    pub fn index_of(&self, level: i32) -> Option<usize> {
        (self.low..=self.high)
            .contains(&level)
            .then(|| (level - self.low) as usize)
    }

    pub fn level_at(&self, index: usize) -> i32 {
        self.low + index as i32
    }

    pub fn contains(&self, y: f64) -> bool {
        y >= self.low() && y <= self.high()
    }
}

impl Default for RatingScale {
    fn default() -> Self {
        Self::five_point()
    }
}
