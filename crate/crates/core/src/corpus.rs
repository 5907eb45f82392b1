//! Seeded random ground sets for property checks and benchmarks.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::{GroundSet, LatticePoint};

#[derive(Clone, Copy, Debug)]
pub struct CorpusConfig {
    pub count: usize,
    pub max_dim: usize,
    pub max_points: usize,
    pub max_coord: u32,
    /// Probability that a drawn coordinate is rounded to an even value.
    pub even_bias: f64,
    pub seed: u64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            count: 200,
            max_dim: 3,
            max_points: 8,
            max_coord: 8,
            even_bias: 0.7,
            seed: 0x5eed,
        }
    }
}

fn draw_point(rng: &mut ChaCha8Rng, n: usize, cfg: &CorpusConfig) -> LatticePoint {
    let even = rng.gen_bool(cfg.even_bias);
    let coords = (0..n)
        .map(|_| {
            let c = rng.gen_range(0..=cfg.max_coord);
            if even {
                c & !1
            } else {
                c
            }
        })
        .collect();
    LatticePoint::new(coords)
}

/// Draws `count` distinct ground sets. Each has at least two even points.
pub fn generate(cfg: &CorpusConfig) -> Vec<GroundSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(cfg.count);
    let mut attempts = 0usize;
    while out.len() < cfg.count && attempts < cfg.count * 100 {
        attempts += 1;
        let n = rng.gen_range(1..=cfg.max_dim);
        let distinct = (cfg.max_coord as usize + 1).pow(n as u32);
        let size = rng.gen_range(2..=cfg.max_points.min(distinct));
        let mut pts = BTreeSet::new();
        while pts.len() < size {
            pts.insert(draw_point(&mut rng, n, cfg));
        }
        if pts.iter().filter(|p| p.is_even()).count() < 2 {
            continue;
        }
        let a = GroundSet::new(n, pts.into_iter().collect()).expect("valid by construction");
        if seen.insert(a.points().to_vec()) {
            out.push(a);
        }
    }
    out
}

/// The default corpus: 200 sets, `n ≤ 3`, `|A| ≤ 8`, coordinates `≤ 8`.
pub fn default_corpus() -> Vec<GroundSet> {
    generate(&CorpusConfig::default())
}
