//! Extreme rays of the SONC cone and their generators.
//!
//! The catalog has one monomial ray per even point, one negative-inner-term
//! family per reduced circuit, and one positive-inner-term family per odd
//! reduced circuit. Families are identified by `(circuit, sign)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::circuits::{circuit_number, enumerate_circuits, is_reduced, Circuit, Parity};
use crate::error::{Error, Result};
use crate::lattice::{GroundSet, LatticePoint};
use crate::power::PowerProduct;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtremeRay {
    Monomial(LatticePoint),
    CircuitRay { circuit: Circuit, sign: Sign },
}

impl ExtremeRay {
    pub fn is_monomial(&self) -> bool {
        matches!(self, ExtremeRay::Monomial(_))
    }
}

impl fmt::Display for ExtremeRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtremeRay::Monomial(p) => write!(f, "x^{p}"),
            ExtremeRay::CircuitRay { circuit, sign } => {
                let s = if *sign == Sign::Plus { '+' } else { '-' };
                write!(f, "{circuit}{s}")
            }
        }
    }
}

/// A polynomial with exact rational coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<LatticePoint, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(p: LatticePoint, c: Rational) -> Self {
        let mut poly = Self::zero();
        poly.add_term(p, c);
        poly
    }

    pub fn add_term(&mut self, p: LatticePoint, c: Rational) {
        let entry = self.terms.entry(p).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coefficient(&self, p: &LatticePoint) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> &BTreeMap<LatticePoint, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates at `x = exp(y)`, returning `value / Σ|term|` (0 for the zero polynomial).
    pub fn eval_relative_log(&self, y: &[f64]) -> f64 {
        relative_sum(
            self.terms
                .iter()
                .map(|(p, c)| (rational::to_f64(c).signum(), rational::ln(&c.abs()) + dot(p, y))),
        )
    }
}

pub(crate) fn dot(p: &LatticePoint, y: &[f64]) -> f64 {
    p.coords().iter().zip(y).map(|(&a, &b)| f64::from(a) * b).sum()
}

/// `Σ sᵢ e^{Lᵢ} / Σ e^{Lᵢ}` computed without overflow.
pub(crate) fn relative_sum(terms: impl Iterator<Item = (f64, f64)>) -> f64 {
    let terms: Vec<(f64, f64)> = terms.collect();
    let Some(max) = terms.iter().map(|t| t.1).reduce(f64::max) else {
        return 0.0;
    };
    let (mut value, mut scale) = (0.0, 0.0);
    for (s, l) in terms {
        let w = (l - max).exp();
        value += s * w;
        scale += w;
    }
    value / scale
}

/// Builds the catalog from a precomputed circuit list (ordered as enumerated).
pub fn catalog_from(a: &GroundSet, circuits: &[Circuit]) -> Vec<ExtremeRay> {
    let mut rays: Vec<ExtremeRay> = a
        .points()
        .iter()
        .filter(|p| p.is_even())
        .cloned()
        .map(ExtremeRay::Monomial)
        .collect();
    for c in circuits.iter().filter(|c| is_reduced(c, a)) {
        rays.push(ExtremeRay::CircuitRay {
            circuit: c.clone(),
            sign: Sign::Minus,
        });
        if c.parity() == Parity::Odd {
            rays.push(ExtremeRay::CircuitRay {
                circuit: c.clone(),
                sign: Sign::Plus,
            });
        }
    }
    rays
}

/// Monomials first in ground-set order, then reduced-circuit families (minus before plus).
pub fn catalog_extreme_rays(a: &GroundSet) -> Vec<ExtremeRay> {
    catalog_from(a, &enumerate_circuits(a))
}

/// `x^γ`, or `Σ λ_α x^α ± x^β` (canonical coefficients make Θ = 1).
pub fn canonical_generator(r: &ExtremeRay) -> Polynomial {
    match r {
        ExtremeRay::Monomial(p) => Polynomial::monomial(p.clone(), Rational::one()),
        ExtremeRay::CircuitRay { circuit, sign } => {
            let mut poly = Polynomial::zero();
            for (p, w) in circuit.lambda().entries() {
                poly.add_term(p.clone(), w.clone());
            }
            poly.add_term(circuit.beta().clone(), rational::int(sign.as_i64()));
            poly
        }
    }
}

/// A member `Σ c_α x^α ± Θ(c) x^β` of a circuit-ray family.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub outer: Polynomial,
    pub beta: LatticePoint,
    pub sign: Sign,
    pub theta: PowerProduct,
}

impl FamilyMember {
    /// Approximate signed inner coefficient `±Θ`.
    pub fn inner_coefficient_f64(&self) -> f64 {
        self.sign.as_i64() as f64 * self.theta.to_f64()
    }

    /// The member as an exact polynomial, available when Θ is rational.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        let theta = self.theta.to_rational()?;
        let mut poly = self.outer.clone();
        poly.add_term(self.beta.clone(), theta * rational::int(self.sign.as_i64()));
        Some(poly)
    }

    /// Relative value at `x = exp(y)` with the inner magnitude scaled by `inflate`.
    pub fn eval_relative_log(&self, y: &[f64], inflate: f64) -> f64 {
        let outer = self
            .outer
            .terms()
            .iter()
            .map(|(p, c)| (1.0, rational::ln(c) + dot(p, y)));
        let inner = (
            self.sign.as_i64() as f64,
            self.theta.ln() + inflate.ln() + dot(&self.beta, y),
        );
        relative_sum(outer.chain(std::iter::once(inner)))
    }
}

pub fn sample_family_member(
    r: &ExtremeRay,
    coeffs: &BTreeMap<LatticePoint, Rational>,
) -> Result<FamilyMember> {
    let ExtremeRay::CircuitRay { circuit, sign } = r else {
        return Err(Error::CoefficientKeys);
    };
    let theta = circuit_number(circuit, coeffs)?;
    let mut outer = Polynomial::zero();
    for (p, c) in coeffs {
        outer.add_term(p.clone(), c.clone());
    }
    Ok(FamilyMember {
        outer,
        beta: circuit.beta().clone(),
        sign: *sign,
        theta,
    })
}
