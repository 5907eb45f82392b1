//! Per-ground-set context shared by decisions, certificates and verification.

use crate::circuits::{enumerate_circuits, global_lambda_of, is_reduced, Circuit};
use crate::error::Result;
use crate::exposing::{self, ExposednessDecision};
use crate::lattice::{even_subset, GroundSet, LatticePoint};
use crate::rays::{catalog_from, ExtremeRay};
use crate::verify::{self, Certificate, SpotcheckReport, Verdict};

/// The SONC cone on a ground set, with its circuits, Λ and ray catalog computed once.
#[derive(Clone, Debug)]
pub struct SoncCone {
    ground_set: GroundSet,
    even: Vec<LatticePoint>,
    circuits: Vec<Circuit>,
    reduced: Vec<bool>,
    lambda: u64,
    rays: Vec<ExtremeRay>,
}

impl SoncCone {
    pub fn new(ground_set: GroundSet) -> Self {
        let circuits = enumerate_circuits(&ground_set);
        let reduced = circuits.iter().map(|c| is_reduced(c, &ground_set)).collect();
        let lambda = global_lambda_of(&circuits);
        let rays = catalog_from(&ground_set, &circuits);
        SoncCone {
            even: even_subset(&ground_set),
            ground_set,
            circuits,
            reduced,
            lambda,
            rays,
        }
    }

    pub fn ground_set(&self) -> &GroundSet {
        &self.ground_set
    }

    pub fn even_points(&self) -> &[LatticePoint] {
        &self.even
    }

    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    /// Reduced flags aligned with [`SoncCone::circuits`].
    pub fn reduced_flags(&self) -> &[bool] {
        &self.reduced
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn rays(&self) -> &[ExtremeRay] {
        &self.rays
    }

    pub fn decide(&self, r: &ExtremeRay) -> Result<ExposednessDecision> {
        exposing::decide_in(self, r)
    }

    pub fn decisions(&self) -> Vec<ExposednessDecision> {
        self.rays
            .iter()
            .map(|r| self.decide(r).expect("catalog rays are decidable"))
            .collect()
    }

    /// Builds the exposing certificate for an exposed ray.
    pub fn certify(&self, r: &ExtremeRay) -> Result<Certificate> {
        exposing::certify_in(self, r)
    }

    pub fn verify(&self, cert: &Certificate) -> Verdict {
        verify::verify_in(self, cert)
    }

    pub fn spotcheck(&self, cert: &Certificate, n_samples: usize, seed: u64) -> SpotcheckReport {
        verify::spotcheck_in(self, cert, n_samples, seed)
    }
}
