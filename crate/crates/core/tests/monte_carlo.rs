mod common;

use common::lognormal;
use qoe_core::mapping::{iqx_mos, IqxMapping};
use qoe_core::qos::lognormal_from_moments;
use qoe_core::special::QuadratureSpec;
use qoe_core::system::expected_qoe_via_mos;
use qoe_core::KahanSum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal};

#[test]
fn expected_iqx_matches_monte_carlo() {
    let map = IqxMapping::web();
    for (seed, std) in [(11u64, 2.0), (12, 4.0), (13, 8.0)] {
        let q = lognormal_from_moments(4.0, std).unwrap();
        let dist = LogNormal::new(q.mu, q.sigma).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 10_000_000;
        let mut sum = KahanSum::default();
        let mut sq = KahanSum::default();
        for _ in 0..n {
            let v = iqx_mos(dist.sample(&mut rng), &map).unwrap();
            sum.add(v);
            sq.add(v * v);
        }
        let mean = sum.value() / n as f64;
        let var = sq.value() / n as f64 - mean * mean;
        let se = (var / n as f64).sqrt();
        let exact = expected_qoe_via_mos(&map, &lognormal(4.0, std), &QuadratureSpec::default()).unwrap();
        assert!((exact - mean).abs() <= 3.0 * se, "std {std}: {exact} vs {mean} ± {se}");
    }
}
