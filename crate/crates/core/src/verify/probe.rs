//! LP probe corroborating that a monomial ray is not exposed.
//!
//! For a witness circuit `(S, β)` with `γ ∈ S` and `β` even, the polynomials
//! `f_t = λ_γ x^γ + Σ_{α≠γ} λ_α t^{1/(1−λ_γ)} x^α − t x^β` lie in the cone
//! for every `t > 0`. We maximise the margin `ε` of a bounded functional with
//! `l(x^γ) = 0` that stays `≥ ε` on every other generator and on the pooled
//! `f_t`. An exposing functional would keep `ε > 0` however small `t` gets;
//! the margins instead collapse as the grid approaches zero.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::circuits::Circuit;
use crate::cone::SoncCone;
use crate::error::{Error, Result};
use crate::geometry::{LinearProgram, LpOutcome, Relation};
use crate::lattice::{GroundSet, LatticePoint};
use crate::power::PowerProduct;
use crate::rational::{self, Rational};
use crate::rays::{canonical_generator, ExtremeRay, Polynomial};

/// Relative precision of irrational `f_t` coefficients.
const PRECISION_BITS: u64 = 48;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbePoint {
    #[serde(serialize_with = "ser_rational")]
    pub t: Rational,
    /// Optimal margin with all grid values up to and including `t` pooled.
    #[serde(serialize_with = "ser_rational")]
    pub margin: Rational,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational::to_string(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeCurve {
    pub ray: String,
    pub witness: String,
    pub points: Vec<ProbePoint>,
}

impl ProbeCurve {
    pub fn final_margin(&self) -> f64 {
        self.points.last().map_or(f64::INFINITY, |p| rational::to_f64(&p.margin))
    }

    pub fn is_monotone(&self) -> bool {
        self.points.windows(2).all(|w| w[1].margin <= w[0].margin)
    }
}

fn validate(gamma: &LatticePoint, witness: &Circuit, a: &GroundSet) -> Result<()> {
    let invalid = |m: &str| Err(Error::InvalidWitness(format!("{witness}: {m}")));
    if !a.contains(gamma) || !gamma.is_even() {
        return invalid("the ray point must be an even point of the ground set");
    }
    if !a.contains(witness.beta()) || !witness.support().all(|p| a.contains(p)) {
        return invalid("not a circuit on the ground set");
    }
    if Circuit::from_parts(witness.support_vec(), witness.beta().clone())?.as_ref() != Some(witness) {
        return invalid("not a simplicial circuit");
    }
    if !witness.contains(gamma) {
        return invalid("ray point is not in the support");
    }
    if !witness.beta().is_even() {
        return invalid("inner point is odd");
    }
    if witness.beta() == gamma {
        return invalid("inner point equals the ray point");
    }
    Ok(())
}

/// `t^p` to [`PRECISION_BITS`] relative bits, exact when the power is rational.
fn approx_pow(t: &Rational, p: &Rational) -> Rational {
    let exact = PowerProduct::from_factors([(t.clone(), p.clone())]);
    if let Some(v) = exact.to_rational() {
        return v;
    }
    let u = p.numer().to_u32().expect("small exponent numerator");
    let v = p.denom().to_u32().expect("small exponent denominator");
    let x: Rational = num_traits::Pow::pow(t, u);
    let log2_x = x.numer().bits() as i64 - x.denom().bits() as i64;
    let s = PRECISION_BITS as i64 + (-log2_x).max(0) / i64::from(v) + 2;
    let scaled = (x.numer() << (s as u64 * u64::from(v))) / x.denom();
    let root = scaled.magnitude().nth_root(v);
    Rational::new(BigInt::from(root), BigInt::one() << s as u64)
}

/// The pooled `f_t` for a witness circuit.
pub fn f_t_polynomial(gamma: &LatticePoint, witness: &Circuit, t: &Rational) -> Polynomial {
    let lambda_gamma = witness.weight(gamma).expect("γ in support");
    let p = (Rational::one() - lambda_gamma).recip();
    let scale = approx_pow(t, &p);
    let mut f = Polynomial::zero();
    for (q, w) in witness.lambda().entries() {
        if q == gamma {
            f.add_term(q.clone(), w.clone());
        } else {
            f.add_term(q.clone(), w * &scale);
        }
    }
    f.add_term(witness.beta().clone(), -t.clone());
    f
}

fn max_margin(a: &GroundSet, gamma: &LatticePoint, pool: &[Polynomial]) -> Rational {
    // l_a = p_a - q_a with 0 <= p_a, q_a <= 1 and l_γ = 0 dropped; the last variable is ε.
    let free: Vec<&LatticePoint> = a.points().iter().filter(|p| *p != gamma).collect();
    let m = free.len();
    let width = 2 * m + 1;
    let mut objective = vec![Rational::zero(); width];
    objective[2 * m] = Rational::one();
    let mut lp = LinearProgram::new(width).maximize(objective);
    for i in 0..2 * m {
        let mut row = vec![Rational::zero(); width];
        row[i] = Rational::one();
        lp.constrain(row, Relation::Le, Rational::one());
    }
    for g in pool {
        let mut row = vec![Rational::zero(); width];
        for (p, c) in g.terms() {
            if let Some(i) = free.iter().position(|q| *q == p) {
                row[i] = -c.clone();
                row[m + i] = c.clone();
            }
        }
        row[2 * m] = Rational::one();
        lp.constrain(row, Relation::Le, Rational::zero());
    }
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => value,
        other => unreachable!("l = 0 is always feasible and ε <= 1: {other:?}"),
    }
}

pub fn unexposedness_probe(
    gamma: &LatticePoint,
    witness: &Circuit,
    a: &GroundSet,
    t_grid: &[Rational],
) -> Result<ProbeCurve> {
    probe_in(&SoncCone::new(a.clone()), gamma, witness, t_grid)
}

pub(crate) fn probe_in(
    cone: &SoncCone,
    gamma: &LatticePoint,
    witness: &Circuit,
    t_grid: &[Rational],
) -> Result<ProbeCurve> {
    let a = cone.ground_set();
    validate(gamma, witness, a)?;
    if let Some(t) = t_grid.iter().find(|t| !t.is_positive()) {
        return Err(Error::InvalidWitness(format!("grid value {} is not positive", rational::to_string(t))));
    }
    let ray = ExtremeRay::Monomial(gamma.clone());
    let mut pool: Vec<Polynomial> = cone
        .rays()
        .iter()
        .filter(|r| **r != ray)
        .map(canonical_generator)
        .collect();
    let mut points = Vec::with_capacity(t_grid.len());
    for t in t_grid {
        pool.push(f_t_polynomial(gamma, witness, t));
        points.push(ProbePoint {
            t: t.clone(),
            margin: max_margin(a, gamma, &pool),
        });
    }
    Ok(ProbeCurve {
        ray: ray.to_string(),
        witness: witness.to_string(),
        points,
    })
}

/// `{2^{-k} : k = 0..=max_k}`.
pub fn dyadic_grid(max_k: u32) -> Vec<Rational> {
    (0..=max_k)
        .map(|k| Rational::new(BigInt::one(), BigInt::one() << k))
        .collect()
}

impl SoncCone {
    /// Probes a monomial ray with its decision witness; `None` for exposed rays.
    pub fn probe(&self, r: &ExtremeRay, t_grid: &[Rational]) -> Result<Option<ProbeCurve>> {
        let ExtremeRay::Monomial(gamma) = r else {
            return Ok(None);
        };
        let decision = self.decide(r)?;
        match decision.witness {
            Some(w) => probe_in(self, gamma, &w, t_grid).map(Some),
            None => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::enumerate_circuits;
    use crate::rational::{int, ratio};

    fn lp(c: &[u32]) -> LatticePoint {
        LatticePoint::new(c.to_vec())
    }

    #[test]
    fn rational_powers() {
        assert_eq!(approx_pow(&ratio(1, 4), &ratio(3, 2)), ratio(1, 8));
        let v = approx_pow(&ratio(1, 2), &ratio(3, 2));
        let err = (rational::to_f64(&v) - 0.5f64.powf(1.5)).abs();
        assert!(err < 1e-15);
        // relative precision holds for tiny values too
        let v = approx_pow(&ratio(1, 1 << 20), &ratio(5, 3));
        let truth = 2f64.powf(-20.0 * 5.0 / 3.0);
        assert!(((rational::to_f64(&v) - truth) / truth).abs() < 1e-14);
    }

    #[test]
    fn f_t_circuit_number_is_t() {
        let a = GroundSet::from_coords(1, [[0u32], [2], [4], [6]]).unwrap();
        let w = enumerate_circuits(&a)[0].clone();
        // λ = 1/2 each: f_t = 1/2 + 1/2 t^2 x^4 - t x^2
        let f = f_t_polynomial(&lp(&[0]), &w, &ratio(1, 4));
        assert_eq!(f.coefficient(&lp(&[4])), ratio(1, 32));
        assert_eq!(f.coefficient(&lp(&[2])), ratio(-1, 4));
        assert_eq!(f.coefficient(&lp(&[0])), ratio(1, 2));
    }

    #[test]
    fn univariate_margin_collapses() {
        let a = GroundSet::from_coords(1, [[0u32], [2], [4], [6]]).unwrap();
        let w = enumerate_circuits(&a)[0].clone();
        let curve = unexposedness_probe(&lp(&[4]), &w, &a, &dyadic_grid(20)).unwrap();
        assert_eq!(curve.points.len(), 21);
        assert!(curve.is_monotone());
        assert!(curve.final_margin() <= 1e-6, "{}", curve.final_margin());
        assert!(curve.points[0].margin > int(0));
    }

    #[test]
    fn coarse_grid_leaves_slack() {
        let a = GroundSet::from_coords(1, [[0u32], [2], [4], [6]]).unwrap();
        let w = enumerate_circuits(&a)[0].clone();
        let curve = unexposedness_probe(&lp(&[4]), &w, &a, &[int(1)]).unwrap();
        assert!(curve.final_margin() > 0.0);
    }

    #[test]
    fn invalid_witnesses() {
        let a = GroundSet::from_coords(1, [[0u32], [1], [2]]).unwrap();
        let w = enumerate_circuits(&a)[0].clone();
        assert!(matches!(
            unexposedness_probe(&lp(&[2]), &w, &a, &dyadic_grid(3)),
            Err(Error::InvalidWitness(_))
        ));
        let u = GroundSet::from_coords(1, [[0u32], [2], [4], [6]]).unwrap();
        let w = enumerate_circuits(&u)[0].clone();
        assert!(unexposedness_probe(&lp(&[6]), &w, &u, &dyadic_grid(3)).is_err());
        assert!(unexposedness_probe(&lp(&[0]), &w, &u, &[int(0)]).is_err());
    }
}
