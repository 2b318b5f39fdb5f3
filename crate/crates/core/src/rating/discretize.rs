use crate::distribution::RatingCdf;
use crate::error::{QoeError, Result};
use crate::scale::RatingScale;

/// Largest decrease between edge values accepted as rounding noise.
const MONOTONE_SLACK: f64 = 1e-12;

/// Rounds and bounds a continuous rating variable to the scale levels.
///
/// Interior bins are `[i - 0.5, i + 0.5)`; the lowest and highest bins
/// absorb the tails. Mass sitting exactly on an interior bin edge goes to
/// the upper bin.
pub fn discretize(cdf: &dyn RatingCdf, scale: &RatingScale) -> Result<Vec<f64>> {
    let levels = scale.levels();
    // Left limits at the interior edges L + 0.5, ..., H - 0.5.
    let edges = (0..levels - 1)
        .map(|i| {
            let edge = scale.level_at(i) as f64 + 0.5;
            let v = cdf.cdf_before(edge)?;
            if !(0.0..=1.0).contains(&v) {
                return Err(QoeError::InvalidDistribution(format!(
                    "CDF value {v} at {edge} outside [0, 1]"
                )));
            }
            Ok(v)
        })
        .collect::<Result<Vec<f64>>>()?;

    if edges.windows(2).any(|w| w[1] < w[0] - MONOTONE_SLACK) {
        return Err(QoeError::InvalidDistribution(
            "CDF is not nondecreasing".into(),
        ));
    }

    let mut pmf = Vec::with_capacity(levels);
    let mut below: f64 = 0.0;
    for &edge in &edges {
        // Rounding noise can make an edge dip a few ulps below the previous one.
        let edge = edge.max(below);
        pmf.push(edge - below);
        below = edge;
    }
    pmf.push(1.0 - below);
    Ok(pmf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::StepCdf;
    use crate::rating::{BetaRatingModel, SosParameter};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    struct Uniform;
    impl RatingCdf for Uniform {
        fn cdf(&self, y: f64) -> Result<f64> {
            Ok(((y - 1.0) / 4.0).clamp(0.0, 1.0))
        }
    }

    /// Uniform on [1, 5] shifted right by `shift`, truncated at 5.
    struct Shifted(f64);
    impl RatingCdf for Shifted {
        fn cdf(&self, y: f64) -> Result<f64> {
            if y >= 5.0 {
                return Ok(1.0);
            }
            Ok(((y - 1.0 - self.0) / 4.0).clamp(0.0, 1.0))
        }
    }

    struct Decreasing;
    impl RatingCdf for Decreasing {
        fn cdf(&self, y: f64) -> Result<f64> {
            Ok((5.0 - y) / 4.0)
        }
    }

    fn i_three_halves(x: f64) -> f64 {
        let u = 2.0 * x - 1.0;
        (u * (1.0 - u * u).sqrt() + u.asin() + PI / 2.0) / PI
    }

    #[test]
    fn step_cdf_point_mass() {
        let s = RatingScale::five_point();
        let step = StepCdf::new(s, vec![0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(discretize(&step, &s).unwrap(), vec![0.0, 0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn uniform_bins() {
        let s = RatingScale::five_point();
        let pmf = discretize(&Uniform, &s).unwrap();
        for (p, e) in pmf.iter().zip([0.125, 0.25, 0.25, 0.25, 0.125]) {
            assert!((p - e).abs() < 1e-15);
        }
    }

    #[test]
    fn beta_three_halves_against_closed_form() {
        let s = RatingScale::five_point();
        let m = BetaRatingModel::new(s, SosParameter::new(0.25).unwrap());
        let pmf = m.pmf_at_mos(3.0).unwrap();
        let f: Vec<f64> = [0.125, 0.375, 0.625, 0.875].iter().map(|&x| i_three_halves(x)).collect();
        let oracle = [f[0], f[1] - f[0], f[2] - f[1], f[3] - f[2], 1.0 - f[3]];
        for (p, o) in pmf.iter().zip(oracle) {
            assert!((p - o).abs() < 1e-12);
        }
        for (p, e) in pmf.iter().zip([0.0722, 0.2703, 0.3149, 0.2703, 0.0722]) {
            assert!((p - e).abs() < 1e-3);
        }
        assert!((pmf.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn edge_mass_goes_to_upper_bin() {
        // Atom exactly at 2.5: P(Q < 2.5) = 0, so it lands in level 3.
        struct Atom;
        impl RatingCdf for Atom {
            fn cdf(&self, y: f64) -> Result<f64> {
                Ok(if y >= 2.5 { 1.0 } else { 0.0 })
            }
            fn cdf_before(&self, y: f64) -> Result<f64> {
                Ok(if y > 2.5 { 1.0 } else { 0.0 })
            }
        }
        let s = RatingScale::five_point();
        assert_eq!(discretize(&Atom, &s).unwrap(), vec![0.0, 0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn rejects_invalid_cdf() {
        assert!(discretize(&Decreasing, &RatingScale::five_point()).is_err());
    }

    proptest! {
        #[test]
        fn rightward_shift_never_lowers_gob(s1 in 0.0f64..3.0, ds in 0.0f64..1.0) {
            let s = RatingScale::five_point();
            let a = discretize(&Shifted(s1), &s).unwrap();
            let b = discretize(&Shifted(s1 + ds), &s).unwrap();
            prop_assert!((a.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            prop_assert!((b.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            prop_assert!(b[3] + b[4] >= a[3] + a[4] - 1e-15);
        }
    }
}
