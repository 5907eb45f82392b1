//! Graded partitions by iterated vertex stripping.
//!
//! Starting from `E₀`, each round removes the vertices of `conv(Eᵢ)` that are
//! not protected by the keep-set. The round that removes points first
//! produces the highest layer; the keep-set itself is layer 0.

use std::collections::{BTreeMap, BTreeSet};

use crate::circuits::{enumerate_circuits, Circuit};
use crate::error::{Error, Result};
use crate::geometry::vertices;
use crate::lattice::{GroundSet, LatticePoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPartition {
    layers: Vec<Vec<LatticePoint>>,
    layer_of: BTreeMap<LatticePoint, usize>,
}

impl GradedPartition {
    /// `L₀, …, L_K`, each sorted.
    pub fn layers(&self) -> &[Vec<LatticePoint>] {
        &self.layers
    }

    pub fn keep(&self) -> &[LatticePoint] {
        &self.layers[0]
    }

    /// The top layer index `K`.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer_of(&self, p: &LatticePoint) -> Option<usize> {
        self.layer_of.get(p).copied()
    }

    /// Union of all layers, i.e. `E₀`.
    pub fn points(&self) -> impl Iterator<Item = &LatticePoint> {
        self.layer_of.keys()
    }
}

pub fn graded_partition(e0: &[LatticePoint], keep: &[LatticePoint]) -> Result<GradedPartition> {
    let mut current: BTreeSet<LatticePoint> = e0.iter().cloned().collect();
    let keep: BTreeSet<LatticePoint> = keep.iter().cloned().collect();
    if !keep.is_subset(&current) {
        return Err(Error::KeepSetOutsideInitial);
    }
    let mut rounds: Vec<Vec<LatticePoint>> = Vec::new();
    while current != keep {
        let pts: Vec<LatticePoint> = current.iter().cloned().collect();
        let stripped: Vec<LatticePoint> = vertices(&pts)?
            .into_iter()
            .filter(|v| !keep.contains(v))
            .collect();
        if stripped.is_empty() {
            return Err(Error::KeepSetNotReachable {
                remaining: current.len(),
            });
        }
        for v in &stripped {
            current.remove(v);
        }
        rounds.push(stripped);
    }
    let mut layers = vec![keep.into_iter().collect::<Vec<_>>()];
    layers.extend(rounds.into_iter().rev());
    let layer_of = layers
        .iter()
        .enumerate()
        .flat_map(|(i, l)| l.iter().map(move |p| (p.clone(), i)))
        .collect();
    Ok(GradedPartition { layers, layer_of })
}

/// Checks the strictly-higher-layer property against every circuit on `a`.
pub fn check_layer_property(p: &GradedPartition, a: &GroundSet) -> bool {
    check_layer_property_with(p, &enumerate_circuits(a))
}

/// As [`check_layer_property`] with a precomputed circuit list.
///
/// Every circuit `(S', γ')` with `γ' ∈ E₀`, other than the one whose
/// `S' ∪ {γ'}` is the keep-set, needs some `α' ∈ S'` in a strictly higher
/// layer than `γ'`.
pub fn check_layer_property_with(p: &GradedPartition, circuits: &[Circuit]) -> bool {
    let keep: BTreeSet<&LatticePoint> = p.keep().iter().collect();
    circuits.iter().all(|c| {
        let Some(gamma_layer) = p.layer_of(c.beta()) else {
            return true;
        };
        let closure: BTreeSet<&LatticePoint> = c.support().chain(std::iter::once(c.beta())).collect();
        if closure == keep {
            return true;
        }
        c.support()
            .any(|alpha| p.layer_of(alpha).is_some_and(|l| l > gamma_layer))
    })
}

/// Disjointness and cover: the layers partition exactly `e0`.
pub fn is_partition_of(p: &GradedPartition, e0: &[LatticePoint]) -> bool {
    let total: usize = p.layers.iter().map(Vec::len).sum();
    let target: BTreeSet<&LatticePoint> = e0.iter().collect();
    total == p.layer_of.len() && p.layer_of.keys().collect::<BTreeSet<_>>() == target
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::even_subset;

    fn lps(rows: &[&[u32]]) -> Vec<LatticePoint> {
        rows.iter().map(|r| LatticePoint::new(r.to_vec())).collect()
    }

    #[test]
    fn univariate_circuit_keep() {
        let e0 = lps(&[&[0], &[2], &[4], &[6]]);
        let p = graded_partition(&e0, &lps(&[&[0], &[2], &[4]])).unwrap();
        assert_eq!(p.layers(), &[lps(&[&[0], &[2], &[4]]), lps(&[&[6]])]);
        assert_eq!(p.depth(), 1);
        assert!(is_partition_of(&p, &e0));
        let a = GroundSet::from_coords(1, [[0u32], [2], [4], [6]]).unwrap();
        assert!(check_layer_property(&p, &a));
    }

    #[test]
    fn monomial_keep() {
        let a = GroundSet::from_coords(1, [[0u32], [1], [2]]).unwrap();
        let p = graded_partition(&even_subset(&a), &lps(&[&[0]])).unwrap();
        assert_eq!(p.layers(), &[lps(&[&[0]]), lps(&[&[2]])]);
        // the only circuit has odd β, which is outside E₀
        assert!(check_layer_property(&p, &a));
    }

    #[test]
    fn motzkin_single_layer() {
        let e0 = lps(&[&[0, 0], &[2, 2], &[2, 4], &[4, 2]]);
        let p = graded_partition(&e0, &e0).unwrap();
        assert_eq!(p.depth(), 0);
        let a = GroundSet::new(2, e0.clone()).unwrap();
        assert!(check_layer_property(&p, &a));
    }

    #[test]
    fn stripping_goes_inward() {
        // square corners, then a midpoint layer, protecting the centre
        let e0 = lps(&[&[0, 0], &[0, 8], &[8, 0], &[8, 8], &[4, 2], &[2, 4], &[4, 4]]);
        let p = graded_partition(&e0, &lps(&[&[4, 4]])).unwrap();
        assert_eq!(p.depth(), 2);
        assert_eq!(p.layers()[2], lps(&[&[0, 0], &[0, 8], &[8, 0], &[8, 8]]));
        assert_eq!(p.layers()[1], lps(&[&[2, 4], &[4, 2]]));
    }

    #[test]
    fn stalls_are_errors() {
        // keep {0, 4} cannot strip the interior point 2
        let e0 = lps(&[&[0], &[2], &[4]]);
        assert_eq!(
            graded_partition(&e0, &lps(&[&[0], &[4]])),
            Err(Error::KeepSetNotReachable { remaining: 3 })
        );
        assert_eq!(
            graded_partition(&e0, &lps(&[&[6]])),
            Err(Error::KeepSetOutsideInitial)
        );
    }

    #[test]
    fn non_reduced_circuit_violates_the_property() {
        // keep for the circuit ({0,6},2) is not reachable: 4 is trapped inside
        let e0 = lps(&[&[0], &[2], &[4], &[6]]);
        assert!(graded_partition(&e0, &lps(&[&[0], &[2], &[6]])).is_err());
    }
}
