//! Simplicial circuits on a ground set, reducedness, the global constant Λ,
//! and exact circuit numbers.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{affinely_independent, barycentric_coordinates, in_convex_hull, BarycentricCoords};
use crate::lattice::{even_subset, GroundSet, LatticePoint};
use crate::power::{power_product_compare, PowerProduct};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A simplicial circuit `(S, β)`: `S` affinely independent even points with
/// `|S| ≥ 2`, and `β` in the relative interior of `conv(S)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    lambda: BarycentricCoords,
    beta: LatticePoint,
    parity: Parity,
}

impl Circuit {
    /// Builds the circuit `(support, beta)`, or `None` if the pair is not one.
    ///
    /// `support` may be given in any order; it is stored sorted.
    pub fn from_parts(mut support: Vec<LatticePoint>, beta: LatticePoint) -> Result<Option<Circuit>> {
        support.sort();
        support.dedup();
        if support.len() < 2 || !support.iter().all(LatticePoint::is_even) {
            return Ok(None);
        }
        if !affinely_independent(&support)? {
            return Ok(None);
        }
        Ok(barycentric_coordinates(&support, &beta)?.map(|lambda| Circuit {
            parity: if beta.is_even() { Parity::Even } else { Parity::Odd },
            lambda,
            beta,
        }))
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticePoint> + '_ {
        self.lambda.points()
    }

    pub fn support_vec(&self) -> Vec<LatticePoint> {
        self.support().cloned().collect()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.lambda.get(p).is_some()
    }

    pub fn beta(&self) -> &LatticePoint {
        &self.beta
    }

    pub fn lambda(&self) -> &BarycentricCoords {
        &self.lambda
    }

    pub fn weight(&self, p: &LatticePoint) -> Option<&Rational> {
        self.lambda.get(p)
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn size(&self) -> usize {
        self.lambda.len()
    }

    /// The canonical coefficient map `c_α = λ_α`.
    pub fn canonical_coefficients(&self) -> BTreeMap<LatticePoint, Rational> {
        self.lambda
            .entries()
            .iter()
            .map(|(p, w)| (p.clone(), w.clone()))
            .collect()
    }
}

impl PartialOrd for Circuit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Circuit {
    fn cmp(&self, other: &Self) -> Ordering {
        self.support()
            .cmp(other.support())
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({{")?;
        for (i, p) in self.support().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}},{})", self.beta)
    }
}

/// Index combinations of size `k` from `0..len`, in lexicographic order.
pub(crate) fn combinations(len: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > len {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + len - k) else {
            return out;
        };
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All circuits on `a`, ordered by `(S, β)`.
pub fn enumerate_circuits(a: &GroundSet) -> Vec<Circuit> {
    let even = even_subset(a);
    let max = (a.dim() + 1).min(even.len());
    let mut out = Vec::new();
    for k in 2..=max {
        for combo in combinations(even.len(), k) {
            let support: Vec<LatticePoint> = combo.iter().map(|&i| even[i].clone()).collect();
            if !affinely_independent(&support).expect("ground set has uniform dimension") {
                continue;
            }
            for beta in a.points() {
                if let Some(lambda) =
                    barycentric_coordinates(&support, beta).expect("support is independent")
                {
                    out.push(Circuit {
                        parity: if beta.is_even() { Parity::Even } else { Parity::Odd },
                        lambda,
                        beta: beta.clone(),
                    });
                }
            }
        }
    }
    out.sort();
    out
}

/// True iff the only even points of `a` inside `conv(S)` are those of `S ∪ {β}`.
pub fn is_reduced(c: &Circuit, a: &GroundSet) -> bool {
    let support = c.support_vec();
    a.points()
        .iter()
        .filter(|p| p.is_even() && !c.contains(p) && **p != c.beta)
        .all(|p| !in_convex_hull(&support, p).expect("ground set has uniform dimension"))
}

/// Λ = ⌈1/λ_min⌉ + 1 over the given circuits; 2 when there are none.
pub fn global_lambda_of(circuits: &[Circuit]) -> u64 {
    let Some(min) = circuits.iter().map(|c| c.lambda.min_weight()).min() else {
        return 2;
    };
    let inv = min.recip();
    let ceil = inv.numer().div_ceil(inv.denom());
    (ceil + 1u32).to_u64().expect("lambda fits in u64")
}

/// Λ for the ground set: `Λ·λ_α > 1` for every barycentric coordinate of every circuit.
pub fn global_lambda(a: &GroundSet) -> u64 {
    global_lambda_of(&enumerate_circuits(a))
}

fn check_coefficients(c: &Circuit, coeffs: &BTreeMap<LatticePoint, Rational>) -> Result<()> {
    if coeffs.len() != c.size() || !c.support().all(|p| coeffs.contains_key(p)) {
        return Err(Error::CoefficientKeys);
    }
    if let Some((p, _)) = coeffs.iter().find(|(_, v)| !v.is_positive()) {
        return Err(Error::NonPositiveCoefficient(p.to_string()));
    }
    Ok(())
}

/// Θ = Π (c_α/λ_α)^{λ_α} as an exact power product.
pub fn circuit_number(c: &Circuit, coeffs: &BTreeMap<LatticePoint, Rational>) -> Result<PowerProduct> {
    check_coefficients(c, coeffs)?;
    Ok(PowerProduct::from_factors(
        c.lambda
            .entries()
            .iter()
            .map(|(p, w)| (&coeffs[p] / w, w.clone())),
    ))
}

/// True iff `Σ c_α x^α + d x^β` is nonnegative, i.e. `|d| ≤ Θ`.
pub fn circuit_nonneg(c: &Circuit, coeffs: &BTreeMap<LatticePoint, Rational>, d: &Rational) -> Result<bool> {
    let theta = circuit_number(c, coeffs)?;
    if d.is_zero() {
        return Ok(true);
    }
    Ok(power_product_compare(&theta, &d.abs())? != Ordering::Less)
}

/// `true` iff `coeffs` is exactly the canonical choice `c = λ`.
pub fn is_canonical(c: &Circuit, coeffs: &BTreeMap<LatticePoint, Rational>) -> bool {
    coeffs.len() == c.size() && c.lambda.entries().iter().all(|(p, w)| coeffs.get(p) == Some(w))
}
