use super::MosMapping;
use crate::error::{QoeError, Result};
use crate::rating::check_dimension;
use crate::scale::RatingScale;

/// Piecewise-linear 1-D mapping through tabulated `(QoS, MOS)` breakpoints.
/// No extrapolation beyond the first and last breakpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct TableMapping {
    breakpoints: Vec<(f64, f64)>,
}

impl TableMapping {
    pub fn new(breakpoints: Vec<(f64, f64)>, scale: &RatingScale) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(QoeError::InvalidDistribution(
                "a table mapping needs at least two breakpoints".into(),
            ));
        }
        if breakpoints
            .iter()
            .any(|(x, m)| !x.is_finite() || !m.is_finite())
        {
            return Err(QoeError::NonFinite("table mapping breakpoints"));
        }
        if breakpoints.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(QoeError::InvalidDistribution(
                "table mapping QoS values must be strictly increasing".into(),
            ));
        }
        if let Some((_, m)) = breakpoints.iter().find(|(_, m)| !scale.contains(*m)) {
            return Err(QoeError::domain("table mapping MOS", *m, "within [L; H]"));
        }
        Ok(Self { breakpoints })
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }
}

pub fn table_mos(x: f64, map: &TableMapping) -> Result<f64> {
    let bp = &map.breakpoints;
    let (first, last) = (bp[0].0, bp[bp.len() - 1].0);
    if !(x >= first && x <= last) {
        return Err(QoeError::domain("QoS value", x, "within the breakpoint range"));
    }
    // First breakpoint with QoS >= x.
    let i = bp.partition_point(|(q, _)| *q < x);
    if bp[i].0 == x {
        return Ok(bp[i].1);
    }
    let (x0, m0) = bp[i - 1];
    let (x1, m1) = bp[i];
    Ok(m0 + (x - x0) / (x1 - x0) * (m1 - m0))
}

impl MosMapping for TableMapping {
    fn dimension(&self) -> usize {
        1
    }

    fn mos(&self, condition: &[f64]) -> Result<f64> {
        check_dimension(Some(1), condition)?;
        table_mos(condition[0], self)
    }

    fn name(&self) -> &'static str {
        "table"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(bp: &[(f64, f64)]) -> TableMapping {
        TableMapping::new(bp.to_vec(), &RatingScale::five_point()).unwrap()
    }

    #[test]
    fn examples() {
        let t = table(&[(0.0, 5.0), (10.0, 1.0)]);
        assert_eq!(table_mos(0.0, &t).unwrap(), 5.0);
        assert_eq!(table_mos(5.0, &t).unwrap(), 3.0);
        assert_eq!(table_mos(10.0, &t).unwrap(), 1.0);
        let t = table(&[(0.0, 5.0), (2.0, 4.0), (10.0, 1.0)]);
        assert!((table_mos(6.0, &t).unwrap() - 2.5).abs() < 1e-15);
        assert_eq!(table_mos(2.0, &t).unwrap(), 4.0);
    }

    #[test]
    fn no_extrapolation() {
        let t = table(&[(0.0, 5.0), (10.0, 1.0)]);
        assert!(table_mos(-0.1, &t).is_err());
        assert!(table_mos(10.1, &t).is_err());
        assert!(table_mos(f64::NAN, &t).is_err());
    }

    #[test]
    fn construction_checks() {
        let s = RatingScale::five_point();
        assert!(TableMapping::new(vec![(0.0, 5.0)], &s).is_err());
        assert!(TableMapping::new(vec![(0.0, 5.0), (0.0, 4.0)], &s).is_err());
        assert!(TableMapping::new(vec![(1.0, 5.0), (0.0, 4.0)], &s).is_err());
        assert!(TableMapping::new(vec![(0.0, 5.5), (1.0, 4.0)], &s).is_err());
    }
}
