mod common;

use std::sync::Arc;

use common::{joint, video_beta};
use qoe_core::mapping::{MosMapping, VideoStallMapping};
use qoe_core::qos::{load_joint_pmf, pmf_from_samples, LoadOptions, QosDistribution};
use qoe_core::rating::{
    beta_params, BetaParams, BetaRatingModel, ConditionalRatingModel, SosParameter,
};
use qoe_core::special::{integrate, reg_inc_beta, QuadratureSpec};
use qoe_core::system::mix_discrete;
use qoe_core::{
    metrics_from_distribution, Execution, MetricsMode, MetricsOptions, QosCondition, RatingCdf,
    RatingScale, SystemQoeRequest,
};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_video_pmf(rng: &mut ChaCha8Rng) -> Vec<(Vec<f64>, f64)> {
    let atoms = rng.random_range(1..=500usize);
    let mut seen = std::collections::BTreeSet::new();
    let mut rows = Vec::new();
    while rows.len() < atoms {
        let n = rng.random_range(0..25u32);
        let t = rng.random_range(0..80u32);
        if seen.insert((n, t)) {
            rows.push((vec![n as f64, t as f64], rng.random_range(0.0..1.0f64)));
        }
    }
    let total: f64 = rows.iter().map(|r| r.1).sum();
    for r in &mut rows {
        r.1 /= total;
    }
    rows
}

#[test]
fn mix_discrete_equals_naive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let video = VideoStallMapping::new(60.0).unwrap();
    for instance in 0..100 {
        let theta = rng.random_range(0.02..0.98f64);
        let rows = random_video_pmf(&mut rng);
        let model = video_beta(theta);
        let qos = QosDistribution::Discrete(
            load_joint_pmf(rows.clone(), &LoadOptions { normalize: true, ..Default::default() })
                .unwrap(),
        );
        let out = mix_discrete(&SystemQoeRequest::new(model.clone(), qos)).unwrap();

        let beta = BetaRatingModel::new(RatingScale::five_point(), SosParameter::new(theta).unwrap());
        let mut naive = vec![0.0; 5];
        for (c, w) in &rows {
            let pmf = beta.pmf_at_mos(video.mos(c).unwrap()).unwrap();
            for i in 0..5 {
                naive[i] += w * pmf[i];
            }
        }
        for (a, b) in out.distribution.pmf().iter().zip(&naive) {
            assert!((a - b).abs() <= 1e-12, "instance {instance}: {a} vs {b}");
        }
    }
}

#[test]
fn discrete_mixing_is_order_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rows = random_video_pmf(&mut rng);
    let refs: Vec<(&[f64], f64)> = rows.iter().map(|(c, p)| (c.as_slice(), *p)).collect();
    let req = SystemQoeRequest::new(video_beta(0.2), joint(&refs));
    let a = mix_discrete(&req.clone().with_execution(Execution::Sequential)).unwrap();
    let b = mix_discrete(&req.with_execution(Execution::Parallel)).unwrap();
    assert_eq!(a.distribution.pmf(), b.distribution.pmf());
}

#[test]
fn scaled_beta_moments_match_sos() {
    let scale = RatingScale::five_point();
    let spec = QuadratureSpec::default()
        .with_absolute_tolerance(1e-12)
        .with_relative_tolerance(1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let m = rng.random_range(1.0..5.0f64);
        if m <= 1.0 {
            continue;
        }
        let theta = rng.random_range(0.02..0.98f64);
        let model = BetaRatingModel::new(scale, SosParameter::new(theta).unwrap());
        let cdf = model.cdf_at_mos(m).unwrap();
        assert!(matches!(cdf.params(), BetaParams::Shape { .. }));
        let tail = |g: fn(f64) -> f64| {
            integrate(|y| g(y) * (1.0 - cdf.cdf(y).unwrap()), 1.0, 5.0, &spec)
                .unwrap()
                .value
        };
        let mean = 1.0 + tail(|_| 1.0);
        let second = 1.0 + tail(|y| 2.0 * y);
        let var = second - mean * mean;
        assert!((mean - m).abs() <= 1e-8, "m={m} theta={theta}: mean {mean}");
        let sos = theta * (5.0 - m) * (m - 1.0);
        assert!((var - sos).abs() <= 1e-8, "m={m} theta={theta}: var {var} vs {sos}");
    }
}

#[test]
fn boundary_mos_is_degenerate() {
    let scale = RatingScale::five_point();
    for theta in [0.05, 0.3, 0.9] {
        let t = SosParameter::new(theta).unwrap();
        assert_eq!(beta_params(5.0, t, &scale).unwrap(), BetaParams::Degenerate { at: 5 });
        assert_eq!(beta_params(1.0, t, &scale).unwrap(), BetaParams::Degenerate { at: 1 });
        let model = BetaRatingModel::new(scale, t);
        assert_eq!(model.pmf_at_mos(1.0).unwrap(), vec![1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(model.pmf_at_mos(5.0).unwrap(), vec![0.0, 0.0, 0.0, 0.0, 1.0]);
    }
}

#[test]
fn incomplete_beta_symmetry_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let x = rng.random_range(0.0..1.0f64);
        let a = rng.random_range(0.1..20.0f64);
        let b = rng.random_range(0.1..20.0f64);
        let s = reg_inc_beta(x, a, b).unwrap() + reg_inc_beta(1.0 - x, b, a).unwrap();
        assert!((s - 1.0).abs() <= 1e-10, "x={x} a={a} b={b}");
    }
}

#[test]
fn sample_histogram_metrics_equal_sample_statistics() {
    // Integer samples already sit on the 1 s grid, so binning is lossless.
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let samples: Vec<QosCondition> = (0..400)
        .map(|_| {
            let n = rng.random_range(0..4u32) as f64;
            let t = rng.random_range(0..12u32) as f64;
            QosCondition::new(vec![n, t]).unwrap()
        })
        .collect();
    let pmf = pmf_from_samples(&samples, &[1.0, 1.0]).unwrap();
    let model: Arc<dyn ConditionalRatingModel> = video_beta(0.3);
    let out = mix_discrete(&SystemQoeRequest::new(model.clone(), QosDistribution::Discrete(pmf)))
        .unwrap();
    let m = metrics_from_distribution(&out.distribution, MetricsMode::Discrete, &MetricsOptions::default())
        .unwrap();

    let mut direct = [0.0; 5];
    for s in &samples {
        let p = model.conditional_pmf(s.coordinates()).unwrap();
        for i in 0..5 {
            direct[i] += p[i] / samples.len() as f64;
        }
    }
    let mean: f64 = direct.iter().enumerate().map(|(i, p)| (i + 1) as f64 * p).sum();
    assert!((m.mean - mean).abs() < 1e-12);
    assert!((m.gob - direct[3] - direct[4]).abs() < 1e-12);
}
