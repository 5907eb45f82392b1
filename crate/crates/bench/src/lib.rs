//! Shared fixtures for the benchmarks.

use sonc_core::corpus::{generate, CorpusConfig};
use sonc_core::GroundSet;

pub fn motzkin() -> GroundSet {
    GroundSet::from_coords(2, [[0u32, 0], [4, 2], [2, 4], [2, 2]]).unwrap()
}

pub fn univariate() -> GroundSet {
    GroundSet::from_coords(1, [[0u32], [2], [4], [6]]).unwrap()
}

/// Named ground sets of increasing size, drawn from the fuzz generator.
pub fn sized_fixtures() -> Vec<(String, GroundSet)> {
    let mut out = vec![("motzkin".to_string(), motzkin()), ("univariate".to_string(), univariate())];
    for (n, len) in [(2, 6), (2, 8), (3, 8)] {
        let cfg = CorpusConfig {
            count: 400,
            max_dim: n,
            max_points: len,
            seed: 11,
            ..CorpusConfig::default()
        };
        let a = generate(&cfg)
            .into_iter()
            .filter(|a| a.dim() == n && a.len() == len)
            .max_by_key(|a| sonc_core::circuits::enumerate_circuits(a).len())
            .expect("fixture");
        out.push((format!("n{n}_len{len}"), a));
    }
    out
}
