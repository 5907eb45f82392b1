//! Floating-point cross-check of family verdicts by random sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{family_positivity, Certificate};
use crate::cone::SoncCone;
use crate::lattice::GroundSet;
use crate::rational;
use crate::rays::{relative_sum, ExtremeRay};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilySpot {
    pub family: String,
    /// Smallest sampled `l(g)`, relative to `Σ|terms|` of that sample.
    pub min_relative: f64,
    pub exact_pass: bool,
    pub disagreement: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SpotcheckReport {
    pub samples_per_family: usize,
    pub families: Vec<FamilySpot>,
}

impl SpotcheckReport {
    pub fn disagreements(&self) -> impl Iterator<Item = &FamilySpot> {
        self.families.iter().filter(|f| f.disagreement)
    }
}

const NEGATIVE_TOLERANCE: f64 = 1e-9;
const POSITIVE_TOLERANCE: f64 = 1e-6;

pub fn numeric_spotcheck(cert: &Certificate, a: &GroundSet, n_samples: usize, seed: u64) -> SpotcheckReport {
    spotcheck_in(&SoncCone::new(a.clone()), cert, n_samples, seed)
}

/// Samples coefficients log-uniformly in `[1e-3, 1e3]` for every circuit family.
pub(crate) fn spotcheck_in(cone: &SoncCone, cert: &Certificate, n_samples: usize, seed: u64) -> SpotcheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = &cert.functional;
    let ln_range = 1e3f64.ln();
    let mut families = Vec::new();
    for ray in cone.rays() {
        let ExtremeRay::CircuitRay { circuit, sign } = ray else {
            continue;
        };
        let exact = family_positivity(l, circuit, *sign, *ray == cert.ray);
        let weights: Vec<(f64, f64)> = circuit
            .lambda()
            .entries()
            .iter()
            .map(|(_, w)| (rational::to_f64(w), rational::ln(w)))
            .collect();
        let outer_values: Vec<_> = circuit
            .support()
            .map(|p| l.get(p).map(|v| (v.signum(), v.ln_abs())))
            .collect();
        let beta = l.get(circuit.beta()).map(|v| (v.signum(), v.ln_abs()));
        let mut min_relative = f64::INFINITY;
        for _ in 0..n_samples {
            let ln_c: Vec<f64> = (0..weights.len())
                .map(|_| rng.gen_range(-ln_range..=ln_range))
                .collect();
            let ln_theta: f64 = ln_c
                .iter()
                .zip(&weights)
                .map(|(c, (w, ln_w))| w * (c - ln_w))
                .sum();
            let mut terms = Vec::with_capacity(weights.len() + 1);
            for (c, v) in ln_c.iter().zip(&outer_values) {
                if let Some((s, ln_v)) = v {
                    if !s.is_eq() {
                        terms.push((sign_f64(*s), c + ln_v));
                    }
                }
            }
            if let Some((s, ln_v)) = beta {
                if !s.is_eq() {
                    terms.push((sign.as_i64() as f64 * sign_f64(s), ln_theta + ln_v));
                }
            }
            min_relative = min_relative.min(relative_sum(terms.into_iter()));
        }
        let disagreement = (exact.pass && min_relative < -NEGATIVE_TOLERANCE)
            || (!exact.pass && min_relative > POSITIVE_TOLERANCE);
        families.push(FamilySpot {
            family: ray.to_string(),
            min_relative,
            exact_pass: exact.pass,
            disagreement,
        });
    }
    SpotcheckReport {
        samples_per_family: n_samples,
        families,
    }
}

fn sign_f64(o: std::cmp::Ordering) -> f64 {
    match o {
        std::cmp::Ordering::Less => -1.0,
        std::cmp::Ordering::Equal => 0.0,
        std::cmp::Ordering::Greater => 1.0,
    }
}
