//! Exposedness decisions and explicit exposing functionals.
//!
//! A monomial ray `x^γ` fails to be exposed exactly when some circuit on the
//! ground set has `γ` in its support and an even inner point. Every other ray
//! gets a functional built from a graded partition: values grow as a tower
//! `base^(Λ^i)` on layer `i`, which lets each circuit's AM-GM bound be
//! dominated by one support point in a higher layer.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::circuits::{circuit_number, is_canonical, Circuit};
use crate::cone::SoncCone;
use crate::error::{Error, Result};
use crate::grading::{graded_partition, GradedPartition};
use crate::lattice::{GroundSet, LatticePoint};
use crate::power::{power_product_compare, PowerProduct};
use crate::rational::{self, Rational};
use crate::rays::ExtremeRay;
use crate::verify::Certificate;

/// An exact functional value: a rational, or `±base^exponent` with an integer exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactScalar {
    Rational(Rational),
    Power {
        negative: bool,
        base: Rational,
        exponent: BigUint,
    },
}

/// Largest exponent expanded eagerly into a rational.
pub const EXPAND_EXPONENT_LIMIT: u64 = 64;

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::Rational(Rational::zero())
    }

    pub fn signum(&self) -> Ordering {
        match self {
            ExactScalar::Rational(r) => r.cmp(&Rational::zero()),
            ExactScalar::Power { negative: true, .. } => Ordering::Less,
            ExactScalar::Power { .. } => Ordering::Greater,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    /// `|self|` as a power product; `None` for zero.
    pub fn magnitude(&self) -> Option<PowerProduct> {
        match self {
            ExactScalar::Rational(r) if r.is_zero() => None,
            ExactScalar::Rational(r) => Some(PowerProduct::from_factors([(r.abs(), Rational::one())])),
            ExactScalar::Power { base, exponent, .. } => Some(PowerProduct::from_factors([(
                base.clone(),
                Rational::from_integer(exponent.clone().into()),
            )])),
        }
    }

    /// `ln|self|`; `-∞` for zero.
    pub fn ln_abs(&self) -> f64 {
        self.magnitude().map_or(f64::NEG_INFINITY, |m| m.ln())
    }

    /// The value as a rational when the exponent is at most `max_exponent`.
    pub fn expand(&self, max_exponent: u64) -> Option<Rational> {
        match self {
            ExactScalar::Rational(r) => Some(r.clone()),
            ExactScalar::Power {
                negative,
                base,
                exponent,
            } => {
                let e = exponent.to_u64().filter(|&e| e <= max_exponent)?;
                let v: Rational = Pow::pow(base, e);
                Some(if *negative { -v } else { v })
            }
        }
    }

    /// Approximate bit size of the expanded value.
    pub fn expanded_bits(&self) -> u64 {
        match self {
            ExactScalar::Rational(r) => r.numer().bits() + r.denom().bits(),
            ExactScalar::Power { base, exponent, .. } => {
                let per = base.numer().bits().max(base.denom().bits());
                exponent.to_u64().map_or(u64::MAX, |e| e.saturating_mul(per))
            }
        }
    }

    /// `self + delta`, when the value is small enough to expand.
    pub fn offset(&self, delta: &Rational) -> Option<ExactScalar> {
        self.expand(EXPAND_EXPONENT_LIMIT)
            .map(|v| ExactScalar::Rational(v + delta))
    }

    /// JSON form: `"num/den"`, or `{"base": "num/den", "exp": "m"}` with `"sign": "-"` when negative.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            ExactScalar::Rational(r) => serde_json::Value::String(rational::to_string(r)),
            ExactScalar::Power {
                negative,
                base,
                exponent,
            } => {
                let mut obj = serde_json::Map::new();
                if *negative {
                    obj.insert("sign".into(), "-".into());
                }
                obj.insert("base".into(), rational::to_string(base).into());
                obj.insert("exp".into(), exponent.to_string().into());
                serde_json::Value::Object(obj)
            }
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Malformed(format!("not an exact scalar: {v}"));
        match v {
            serde_json::Value::String(s) => Ok(ExactScalar::Rational(rational::parse(s)?)),
            serde_json::Value::Object(obj) => {
                let base = rational::parse(obj.get("base").and_then(|b| b.as_str()).ok_or_else(bad)?)?;
                let exponent: BigUint = obj
                    .get("exp")
                    .and_then(|e| e.as_str())
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?;
                let negative = match obj.get("sign").and_then(|s| s.as_str()) {
                    None | Some("+") => false,
                    Some("-") => true,
                    Some(_) => return Err(bad()),
                };
                if !base.is_positive() {
                    return Err(bad());
                }
                Ok(ExactScalar::Power {
                    negative,
                    base,
                    exponent,
                })
            }
            _ => Err(bad()),
        }
    }
}

/// Values of a linear functional on the monomials of the ground set.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExposingFunctional {
    values: BTreeMap<LatticePoint, ExactScalar>,
}

impl ExposingFunctional {
    pub fn new(values: BTreeMap<LatticePoint, ExactScalar>) -> Self {
        ExposingFunctional { values }
    }

    pub fn get(&self, p: &LatticePoint) -> Option<&ExactScalar> {
        self.values.get(p)
    }

    pub fn set(&mut self, p: LatticePoint, v: ExactScalar) {
        self.values.insert(p, v);
    }

    pub fn values(&self) -> &BTreeMap<LatticePoint, ExactScalar> {
        &self.values
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExposednessDecision {
    pub ray: ExtremeRay,
    pub exposed: bool,
    /// Present iff the ray is not exposed.
    pub witness: Option<Circuit>,
}

/// Strict bounds `σ < min{λ/c, Θ⁻¹}` and `δ > max{λ/c, Θ⁻¹}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaDelta {
    pub sigma: Rational,
    pub delta: Rational,
}

impl SigmaDelta {
    pub fn is_admissible(&self, c: &Circuit, coeffs: &BTreeMap<LatticePoint, Rational>) -> Result<bool> {
        let theta = circuit_number(c, coeffs)?;
        let ratios: Vec<Rational> = c
            .lambda()
            .entries()
            .iter()
            .map(|(p, w)| w / &coeffs[p])
            .collect();
        let sigma_ok = self.sigma.is_positive()
            && self.sigma < Rational::one()
            && ratios.iter().all(|r| self.sigma < *r)
            && power_product_compare(&theta, &self.sigma.recip())? == Ordering::Less;
        let delta_ok = self.delta > Rational::one()
            && ratios.iter().all(|r| self.delta > *r)
            && power_product_compare(&theta, &self.delta.recip())? == Ordering::Greater;
        Ok(sigma_ok && delta_ok)
    }
}

/// Halves σ from 1/2 and doubles δ from 2 until both bounds hold strictly.
pub fn choose_sigma_delta(r: &ExtremeRay, coeffs: &BTreeMap<LatticePoint, Rational>) -> Result<SigmaDelta> {
    let ExtremeRay::CircuitRay { circuit, .. } = r else {
        return Err(Error::CoefficientKeys);
    };
    let theta = circuit_number(circuit, coeffs)?;
    let ratios: Vec<Rational> = circuit
        .lambda()
        .entries()
        .iter()
        .map(|(p, w)| w / &coeffs[p])
        .collect();
    let two = rational::int(2);
    let mut sigma = rational::ratio(1, 2);
    while !(ratios.iter().all(|r| sigma < *r)
        && power_product_compare(&theta, &sigma.recip())? == Ordering::Less)
    {
        sigma /= &two;
    }
    let mut delta = two.clone();
    while !(ratios.iter().all(|r| delta > *r)
        && power_product_compare(&theta, &delta.recip())? == Ordering::Greater)
    {
        delta *= &two;
    }
    Ok(SigmaDelta { sigma, delta })
}

pub(crate) fn decide_in(cone: &SoncCone, r: &ExtremeRay) -> Result<ExposednessDecision> {
    if !cone.rays().contains(r) {
        return Err(Error::RayNotInCatalog);
    }
    let witness = match r {
        ExtremeRay::Monomial(gamma) => cone
            .circuits()
            .iter()
            .find(|c| c.contains(gamma) && c.beta().is_even() && c.beta() != gamma)
            .cloned(),
        ExtremeRay::CircuitRay { .. } => None,
    };
    Ok(ExposednessDecision {
        ray: r.clone(),
        exposed: witness.is_none(),
        witness,
    })
}

pub fn decide_exposed(r: &ExtremeRay, a: &GroundSet) -> Result<ExposednessDecision> {
    SoncCone::new(a.clone()).decide(r)
}

fn tower(base: &Rational, lambda: u64, layer: usize) -> ExactScalar {
    ExactScalar::Power {
        negative: false,
        base: base.clone(),
        exponent: Pow::pow(BigUint::from(lambda), layer),
    }
}

pub(crate) fn expose_monomial_in(
    cone: &SoncCone,
    gamma: &LatticePoint,
) -> Result<(ExposingFunctional, GradedPartition)> {
    let ray = ExtremeRay::Monomial(gamma.clone());
    if !decide_in(cone, &ray)?.exposed {
        return Err(Error::RayNotExposed);
    }
    let partition = graded_partition(cone.even_points(), std::slice::from_ref(gamma))?;
    let two = rational::int(2);
    let values = cone
        .ground_set()
        .points()
        .iter()
        .map(|p| {
            let v = match partition.layer_of(p) {
                Some(i) if i >= 1 => tower(&two, cone.lambda(), i),
                _ => ExactScalar::zero(),
            };
            (p.clone(), v)
        })
        .collect();
    Ok((ExposingFunctional::new(values), partition))
}

/// `0` at `γ` and at odd points, `2^(Λ^i)` on layer `i ≥ 1`.
pub fn expose_monomial(gamma: &LatticePoint, a: &GroundSet) -> Result<ExposingFunctional> {
    Ok(expose_monomial_in(&SoncCone::new(a.clone()), gamma)?.0)
}

pub(crate) fn expose_circuit_ray_in(
    cone: &SoncCone,
    r: &ExtremeRay,
    coeffs: Option<&BTreeMap<LatticePoint, Rational>>,
) -> Result<(ExposingFunctional, GradedPartition)> {
    let ExtremeRay::CircuitRay { circuit, sign } = r else {
        return Err(Error::RayNotInCatalog);
    };
    if !cone.rays().contains(r) {
        return Err(Error::RayNotInCatalog);
    }
    let canonical = circuit.canonical_coefficients();
    let coeffs = coeffs.unwrap_or(&canonical);
    if !is_canonical(circuit, coeffs) {
        return Err(Error::NonCanonicalCoefficients);
    }
    let sd = choose_sigma_delta(r, coeffs)?;
    // Θ = 1 for canonical coefficients.
    let theta = circuit_number(circuit, coeffs)?
        .to_rational()
        .expect("canonical circuit number is rational");
    let sigma_inv = sd.sigma.recip();
    let tower_base = &sigma_inv * &sd.delta;

    let mut e0 = cone.even_points().to_vec();
    if !circuit.beta().is_even() {
        e0.push(circuit.beta().clone());
    }
    let mut keep = circuit.support_vec();
    keep.push(circuit.beta().clone());
    let partition = graded_partition(&e0, &keep)?;

    let beta_value = -rational::int(sign.as_i64()) * &sigma_inv / &theta;
    let values = cone
        .ground_set()
        .points()
        .iter()
        .map(|p| {
            let v = if let Some(w) = circuit.weight(p) {
                ExactScalar::Rational(&sigma_inv * w / &coeffs[p])
            } else if p == circuit.beta() {
                ExactScalar::Rational(beta_value.clone())
            } else {
                match partition.layer_of(p) {
                    Some(i) if i >= 1 => tower(&tower_base, cone.lambda(), i),
                    _ => ExactScalar::zero(),
                }
            };
            (p.clone(), v)
        })
        .collect();
    Ok((ExposingFunctional::new(values), partition))
}

/// `σ⁻¹` on `S`, `∓σ⁻¹` on `β` (opposite to the generator's inner sign),
/// `(σ⁻¹δ)^(Λ^i)` on layer `i ≥ 1`, `0` elsewhere.
pub fn expose_circuit_ray(r: &ExtremeRay, a: &GroundSet) -> Result<ExposingFunctional> {
    Ok(expose_circuit_ray_in(&SoncCone::new(a.clone()), r, None)?.0)
}

/// As [`expose_circuit_ray`] for an explicit family member; only `c = λ` is supported.
pub fn expose_circuit_member(
    r: &ExtremeRay,
    coeffs: &BTreeMap<LatticePoint, Rational>,
    a: &GroundSet,
) -> Result<ExposingFunctional> {
    Ok(expose_circuit_ray_in(&SoncCone::new(a.clone()), r, Some(coeffs))?.0)
}

pub(crate) fn certify_in(cone: &SoncCone, r: &ExtremeRay) -> Result<Certificate> {
    let (functional, partition) = match r {
        ExtremeRay::Monomial(gamma) => expose_monomial_in(cone, gamma)?,
        ExtremeRay::CircuitRay { .. } => expose_circuit_ray_in(cone, r, None)?,
    };
    Ok(Certificate {
        ray: r.clone(),
        functional,
        lambda_used: cone.lambda(),
        partition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::rays::catalog_extreme_rays;

    fn lp(c: &[u32]) -> LatticePoint {
        LatticePoint::new(c.to_vec())
    }

    fn univariate() -> GroundSet {
        GroundSet::from_coords(1, [[0u32], [2], [4], [6]]).unwrap()
    }

    fn three() -> GroundSet {
        GroundSet::from_coords(1, [[0u32], [1], [2]]).unwrap()
    }

    fn motzkin() -> GroundSet {
        GroundSet::from_coords(2, [[0u32, 0], [4, 2], [2, 4], [2, 2]]).unwrap()
    }

    fn pow(base: i64, exp: u32) -> ExactScalar {
        ExactScalar::Power {
            negative: false,
            base: int(base),
            exponent: BigUint::from(exp),
        }
    }

    fn r(v: i64) -> ExactScalar {
        ExactScalar::Rational(int(v))
    }

    #[test]
    fn decisions() {
        let d = decide_exposed(&ExtremeRay::Monomial(lp(&[4])), &univariate()).unwrap();
        assert!(!d.exposed);
        assert_eq!(d.witness.unwrap().to_string(), "({(0),(4)},(2))");
        assert!(decide_exposed(&ExtremeRay::Monomial(lp(&[2])), &three()).unwrap().exposed);
        let d = decide_exposed(&ExtremeRay::Monomial(lp(&[2, 2])), &motzkin()).unwrap();
        assert!(d.exposed && d.witness.is_none());
        assert_eq!(
            decide_exposed(&ExtremeRay::Monomial(lp(&[1])), &three()),
            Err(Error::RayNotInCatalog)
        );
    }

    #[test]
    fn monomial_functionals() {
        let l = expose_monomial(&lp(&[0]), &three()).unwrap();
        assert_eq!(l.get(&lp(&[0])), Some(&ExactScalar::zero()));
        assert_eq!(l.get(&lp(&[1])), Some(&ExactScalar::zero()));
        assert_eq!(l.get(&lp(&[2])), Some(&pow(2, 3)));
        assert_eq!(l.get(&lp(&[2])).unwrap().expand(64), Some(int(8)));

        let l = expose_monomial(&lp(&[2]), &three()).unwrap();
        assert_eq!(l.get(&lp(&[0])), Some(&pow(2, 3)));
        assert_eq!(l.get(&lp(&[2])), Some(&ExactScalar::zero()));

        let a = GroundSet::from_coords(2, [[0u32, 0], [2, 2]]).unwrap();
        let l = expose_monomial(&lp(&[0, 0]), &a).unwrap();
        assert_eq!(l.get(&lp(&[2, 2])), Some(&pow(2, 2)));

        assert_eq!(expose_monomial(&lp(&[4]), &univariate()), Err(Error::RayNotExposed));
    }

    #[test]
    fn sigma_delta_choices() {
        let a = motzkin();
        let ray = catalog_extreme_rays(&a).pop().unwrap();
        let ExtremeRay::CircuitRay { circuit, .. } = &ray else { unreachable!() };
        let sd = choose_sigma_delta(&ray, &circuit.canonical_coefficients()).unwrap();
        assert_eq!(sd, SigmaDelta { sigma: ratio(1, 2), delta: int(2) });

        let ones: BTreeMap<_, _> = circuit.support().map(|p| (p.clone(), int(1))).collect();
        let sd = choose_sigma_delta(&ray, &ones).unwrap();
        assert!(sd.is_admissible(circuit, &ones).unwrap());
        assert_eq!(sd, SigmaDelta { sigma: ratio(1, 4), delta: int(2) });
        let sixth = SigmaDelta { sigma: ratio(1, 6), delta: int(2) };
        assert!(sixth.is_admissible(circuit, &ones).unwrap());
        let third = SigmaDelta { sigma: ratio(1, 3), delta: int(2) };
        assert!(!third.is_admissible(circuit, &ones).unwrap());

        let u = univariate();
        let ray = catalog_extreme_rays(&u)[4].clone();
        let twos = [(lp(&[0]), int(2)), (lp(&[4]), int(2))].into_iter().collect();
        let sd = choose_sigma_delta(&ray, &twos).unwrap();
        assert_eq!(sd, SigmaDelta { sigma: ratio(1, 8), delta: int(2) });
    }

    #[test]
    fn circuit_functionals() {
        let a = motzkin();
        let ray = catalog_extreme_rays(&a).pop().unwrap();
        let l = expose_circuit_ray(&ray, &a).unwrap();
        for p in [lp(&[0, 0]), lp(&[4, 2]), lp(&[2, 4]), lp(&[2, 2])] {
            assert_eq!(l.get(&p), Some(&r(2)));
        }

        let a = three();
        let plus = catalog_extreme_rays(&a)[3].clone();
        let l = expose_circuit_ray(&plus, &a).unwrap();
        assert_eq!(l.get(&lp(&[0])), Some(&r(2)));
        assert_eq!(l.get(&lp(&[2])), Some(&r(2)));
        assert_eq!(l.get(&lp(&[1])), Some(&r(-2)));

        let a = univariate();
        let ray = catalog_extreme_rays(&a)[4].clone();
        let l = expose_circuit_ray(&ray, &a).unwrap();
        assert_eq!(l.get(&lp(&[0])), Some(&r(2)));
        assert_eq!(l.get(&lp(&[4])), Some(&r(2)));
        assert_eq!(l.get(&lp(&[2])), Some(&r(2)));
        assert_eq!(l.get(&lp(&[6])), Some(&pow(4, 4)));
        assert_eq!(l.get(&lp(&[6])).unwrap().expand(64), Some(int(256)));

        let ExtremeRay::CircuitRay { circuit, .. } = &ray else { unreachable!() };
        let twos = circuit.support().map(|p| (p.clone(), int(2))).collect();
        assert_eq!(
            expose_circuit_member(&ray, &twos, &a),
            Err(Error::NonCanonicalCoefficients)
        );
    }

    #[test]
    fn scalar_json() {
        let v = ExactScalar::Power {
            negative: true,
            base: ratio(4, 1),
            exponent: BigUint::from(16u32),
        };
        assert_eq!(v.to_json().to_string(), r#"{"base":"4/1","exp":"16","sign":"-"}"#);
        assert_eq!(ExactScalar::from_json(&v.to_json()).unwrap(), v);
        assert_eq!(ExactScalar::Rational(ratio(-2, 4)).to_json(), "-1/2");
        assert!(ExactScalar::from_json(&serde_json::json!(3)).is_err());
    }

    #[test]
    fn huge_exponents_stay_symbolic() {
        let v = ExactScalar::Power {
            negative: false,
            base: int(2),
            exponent: BigUint::from(10u32).pow(20u32),
        };
        assert_eq!(v.expand(EXPAND_EXPONENT_LIMIT), None);
        assert!(v.ln_abs() > 6e19);
    }
}
