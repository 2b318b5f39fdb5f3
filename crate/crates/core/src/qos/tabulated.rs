use super::ContinuousQos;
use crate::error::{QoeError, Result};
use crate::sum::KahanSum;

/// Continuous QoS distribution given by a density table, linearly
/// interpolated between nodes and rescaled to unit mass.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedQos {
    x: Vec<f64>,
    density: Vec<f64>,
    cumulative: Vec<f64>,
}

impl TabulatedQos {
    pub fn new(points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(QoeError::InvalidDistribution(
                "a density table needs at least two points".into(),
            ));
        }
        if points.iter().any(|(x, d)| !x.is_finite() || !d.is_finite()) {
            return Err(QoeError::NonFinite("density table"));
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(QoeError::InvalidDistribution(
                "density table abscissae must be strictly increasing".into(),
            ));
        }
        if let Some((_, d)) = points.iter().find(|(_, d)| *d < 0.0) {
            return Err(QoeError::InvalidDistribution(format!("negative density {d}")));
        }
        let x: Vec<f64> = points.iter().map(|p| p.0).collect();
        let raw: Vec<f64> = points.iter().map(|p| p.1).collect();
        let mut acc = KahanSum::default();
        let mut cumulative = Vec::with_capacity(x.len());
        cumulative.push(0.0);
        for i in 1..x.len() {
            acc.add(0.5 * (raw[i - 1] + raw[i]) * (x[i] - x[i - 1]));
            cumulative.push(acc.value());
        }
        let total = acc.value();
        if total <= 0.0 {
            return Err(QoeError::InvalidDistribution("density table has zero mass".into()));
        }
        Ok(Self {
            x,
            density: raw.iter().map(|d| d / total).collect(),
            cumulative: cumulative.iter().map(|c| c / total).collect(),
        })
    }

    pub fn cdf(&self, t: f64) -> f64 {
        if t <= self.x[0] {
            return 0.0;
        }
        let last = self.x.len() - 1;
        if t >= self.x[last] {
            return 1.0;
        }
        let i = self.x.partition_point(|v| *v <= t) - 1;
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let (d0, d1) = (self.density[i], self.density[i + 1]);
        let u = t - x0;
        (self.cumulative[i] + d0 * u + 0.5 * (d1 - d0) / (x1 - x0) * u * u).min(1.0)
    }
}

impl ContinuousQos for TabulatedQos {
    fn pdf(&self, t: f64) -> Result<f64> {
        let last = self.x.len() - 1;
        if !(t >= self.x[0] && t <= self.x[last]) {
            return Ok(0.0);
        }
        let i = (self.x.partition_point(|v| *v <= t) - 1).min(last - 1);
        let w = (t - self.x[i]) / (self.x[i + 1] - self.x[i]);
        Ok(self.density[i] + w * (self.density[i + 1] - self.density[i]))
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(QoeError::domain("probability p", p, "0 < p < 1"));
        }
        // First segment whose upper cumulative reaches p.
        let i = self.cumulative.partition_point(|c| *c < p).clamp(1, self.x.len() - 1) - 1;
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let (d0, d1) = (self.density[i], self.density[i + 1]);
        let r = p - self.cumulative[i];
        let slope = (d1 - d0) / (x1 - x0);
        let disc = (d0 * d0 + 2.0 * slope * r).max(0.0);
        let denom = d0 + disc.sqrt();
        let u = if denom > 0.0 { 2.0 * r / denom } else { 0.0 };
        Ok((x0 + u).clamp(x0, x1))
    }

    fn support(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.x[1..self.x.len() - 1].to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_table() {
        let t = TabulatedQos::new(&[(0.0, 2.0), (4.0, 2.0)]).unwrap();
        assert!((t.pdf(1.0).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(t.pdf(5.0).unwrap(), 0.0);
        assert!((t.quantile(0.5).unwrap() - 2.0).abs() < 1e-14);
        assert!((t.cdf(1.0) - 0.25).abs() < 1e-15);
        assert_eq!(t.support(), (0.0, 4.0));
    }

    #[test]
    fn triangle_quantile_inverts_cdf() {
        let t = TabulatedQos::new(&[(0.0, 0.0), (1.0, 1.0), (3.0, 0.0)]).unwrap();
        assert!((t.cdf(1.0) - 1.0 / 3.0).abs() < 1e-15);
        for k in 1..200 {
            let p = k as f64 / 200.0;
            let x = t.quantile(p).unwrap();
            assert!((t.cdf(x) - p).abs() < 1e-13, "p={p}");
        }
        assert_eq!(t.breakpoints(), vec![1.0]);
    }

    #[test]
    fn construction_errors() {
        assert!(TabulatedQos::new(&[(0.0, 1.0)]).is_err());
        assert!(TabulatedQos::new(&[(0.0, 1.0), (0.0, 1.0)]).is_err());
        assert!(TabulatedQos::new(&[(0.0, 1.0), (1.0, -1.0)]).is_err());
        assert!(TabulatedQos::new(&[(0.0, 0.0), (1.0, 0.0)]).is_err());
    }
}
