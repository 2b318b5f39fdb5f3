use super::MosMapping;
use crate::error::{QoeError, Result};
use crate::rating::check_dimension;

/// Stalling model for non-adaptive HTTP video:
/// `f(n, t) = amplitude * exp(-duration_coeff * t / d - count_coeff * n / d) + offset`
/// for `n` stalls of total duration `t` seconds in a video of `d` seconds.
///
/// As a [`MosMapping`] it takes the condition `[stall_count, stall_seconds]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VideoStallMapping {
    pub amplitude: f64,
    pub duration_coeff: f64,
    pub count_coeff: f64,
    pub offset: f64,
    pub video_duration: f64,
}

impl VideoStallMapping {
    pub const AMPLITUDE: f64 = 3.5;
    pub const DURATION_COEFF: f64 = 4.5;
    pub const COUNT_COEFF: f64 = 5.7;
    pub const OFFSET: f64 = 1.5;

    /// The published coefficients for a video of `video_duration` seconds.
    pub fn new(video_duration: f64) -> Result<Self> {
        Self::with_coefficients(
            Self::AMPLITUDE,
            Self::DURATION_COEFF,
            Self::COUNT_COEFF,
            Self::OFFSET,
            video_duration,
        )
    }

    pub fn with_coefficients(
        amplitude: f64,
        duration_coeff: f64,
        count_coeff: f64,
        offset: f64,
        video_duration: f64,
    ) -> Result<Self> {
        if !(video_duration.is_finite() && video_duration > 0.0) {
            return Err(QoeError::domain("video duration d", video_duration, "> 0"));
        }
        for (what, v) in [
            ("amplitude", amplitude),
            ("duration coefficient", duration_coeff),
            ("count coefficient", count_coeff),
            ("offset", offset),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(QoeError::domain(what, v, "> 0"));
            }
        }
        Ok(Self {
            amplitude,
            duration_coeff,
            count_coeff,
            offset,
            video_duration,
        })
    }

    fn eval(&self, stalls: f64, stall_seconds: f64) -> Result<f64> {
        if stalls.is_nan() || stalls < 0.0 {
            return Err(QoeError::domain("stall count", stalls, ">= 0"));
        }
        if stall_seconds.is_nan() || stall_seconds < 0.0 {
            return Err(QoeError::domain("stall seconds", stall_seconds, ">= 0"));
        }
        let d = self.video_duration;
        let exponent = -self.duration_coeff * stall_seconds / d - self.count_coeff * stalls / d;
        Ok(self.amplitude * exponent.exp() + self.offset)
    }
}

/// MOS for `stalls` stalls totalling `total_stall_seconds`.
pub fn video_mos(stalls: u32, total_stall_seconds: f64, map: &VideoStallMapping) -> Result<f64> {
    map.eval(stalls as f64, total_stall_seconds)
}

impl MosMapping for VideoStallMapping {
    fn dimension(&self) -> usize {
        2
    }

    fn mos(&self, condition: &[f64]) -> Result<f64> {
        check_dimension(Some(2), condition)?;
        self.eval(condition[0], condition[1])
    }

    fn name(&self) -> &'static str {
        "video_stall"
    }
}
