//! Exact verification of exposing certificates.
//!
//! A functional exposes a ray once it vanishes on the ray's generator and is
//! positive on every other extreme ray. Circuit-ray families are infinite,
//! but each one collapses to a single exact comparison: by weighted AM-GM,
//! `inf_c l(g_c)/Θ(c) = Π l_α^{λ_α} ± l_β` whenever all `l_α > 0`, and the
//! infimum is attained. Families with some `l_α = 0` are settled by letting
//! that coefficient grow without bound.

mod probe;
mod spotcheck;

pub use probe::{dyadic_grid, f_t_polynomial, unexposedness_probe, ProbeCurve, ProbePoint};
pub use spotcheck::{numeric_spotcheck, FamilySpot, SpotcheckReport};
pub(crate) use spotcheck::spotcheck_in;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::circuits::Circuit;
use crate::cone::SoncCone;
use crate::error::{Error, Result};
use crate::exposing::{ExactScalar, ExposingFunctional, EXPAND_EXPONENT_LIMIT};
use crate::grading::GradedPartition;
use crate::lattice::GroundSet;
use crate::power::PowerProduct;
use crate::rational::{self, Rational};
use crate::rays::{canonical_generator, ExtremeRay, Polynomial, Sign};

/// A ray together with the functional claimed to expose it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub ray: ExtremeRay,
    pub functional: ExposingFunctional,
    pub lambda_used: u64,
    pub partition: GradedPartition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    KeyedByGroundSet,
    GeneratorVanishes,
    MonomialPositive,
    FamilyPositive,
    FamilyEquality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub subject: String,
    pub kind: CheckKind,
    pub outcome: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub checks: Vec<Check>,
    pub failures: Vec<Check>,
}

impl Verdict {
    fn from_checks(checks: Vec<Check>) -> Self {
        let failures: Vec<Check> = checks.iter().filter(|c| !c.passed).cloned().collect();
        Verdict {
            pass: failures.is_empty(),
            checks,
            failures,
        }
    }
}

/// Sign of `l(g)`, plus its exact value when that is small enough to expand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub sign: Ordering,
    pub exact: Option<Rational>,
}

/// Bit budget for expanding tower values when the sign cannot be read off otherwise.
const EXPANSION_BIT_BUDGET: u64 = 1 << 22;

pub fn evaluate_on_generator(l: &ExposingFunctional, g: &Polynomial) -> Result<Evaluation> {
    let mut terms: Vec<(&Rational, &ExactScalar)> = Vec::with_capacity(g.terms().len());
    for (p, c) in g.terms() {
        let v = l
            .get(p)
            .ok_or_else(|| Error::SupportOutsideGroundSet(p.to_string()))?;
        terms.push((c, v));
    }
    if let Some(sum) = exact_sum(&terms, EXPAND_EXPONENT_LIMIT) {
        return Ok(Evaluation {
            sign: sum.cmp(&Rational::zero()),
            exact: Some(sum),
        });
    }
    if let Some(sign) = dominance_sign(&terms) {
        return Ok(Evaluation { sign, exact: None });
    }
    let bits: u64 = terms.iter().map(|(_, v)| v.expanded_bits()).sum();
    if bits > EXPANSION_BIT_BUDGET {
        return Err(Error::EvaluationTooLarge { bits });
    }
    let sum = exact_sum(&terms, u64::MAX).expect("unbounded expansion");
    Ok(Evaluation {
        sign: sum.cmp(&Rational::zero()),
        exact: Some(sum),
    })
}

fn exact_sum(terms: &[(&Rational, &ExactScalar)], limit: u64) -> Option<Rational> {
    let mut sum = Rational::zero();
    for (c, v) in terms {
        sum += *c * v.expand(limit)?;
    }
    Some(sum)
}

/// Decides the sign when one side's largest term outweighs everything on the other side.
fn dominance_sign(terms: &[(&Rational, &ExactScalar)]) -> Option<Ordering> {
    let mut pos: Vec<PowerProduct> = Vec::new();
    let mut neg: Vec<PowerProduct> = Vec::new();
    for (c, v) in terms {
        let Some(mag) = v.magnitude() else { continue };
        if c.is_zero() {
            continue;
        }
        let mag = mag.mul(&PowerProduct::from_factors([(c.abs(), Rational::from_integer(1.into()))]));
        let negative = c.is_negative() != (v.signum() == Ordering::Less);
        if negative {
            neg.push(mag);
        } else {
            pos.push(mag);
        }
    }
    match (pos.is_empty(), neg.is_empty()) {
        (true, true) => return Some(Ordering::Equal),
        (false, true) => return Some(Ordering::Greater),
        (true, false) => return Some(Ordering::Less),
        _ => {}
    }
    let largest = |v: &[PowerProduct]| {
        v.iter()
            .cloned()
            .reduce(|a, b| if a.cmp_product(&b) == Ordering::Less { b } else { a })
            .expect("nonempty")
    };
    let (pmax, nmax) = (largest(&pos), largest(&neg));
    if pos.len() == 1 && neg.len() == 1 {
        return Some(pmax.cmp_product(&nmax));
    }
    let times = |p: &PowerProduct, k: usize| {
        p.clone()
            .mul(&PowerProduct::from_factors([(rational::int(k as i64), rational::int(1))]))
    };
    if pmax.cmp_product(&times(&nmax, neg.len())) == Ordering::Greater {
        return Some(Ordering::Greater);
    }
    if nmax.cmp_product(&times(&pmax, pos.len())) == Ordering::Greater {
        return Some(Ordering::Less);
    }
    None
}

/// Which branch of the family analysis decided the outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyCase {
    /// All outer values positive; AM-GM infimum compared exactly.
    AmGm,
    /// Some outer value is zero; decided by the unbounded-coefficient limit.
    VanishingOuter,
    /// Some outer value is negative or missing; the family is unbounded below.
    NegativeOuter,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyOutcome {
    pub case: FamilyCase,
    /// Sign of the decisive quantity (`Π l_α^{λ_α} + s·l_β` in the AM-GM case).
    pub infimum_sign: Ordering,
    pub pass: bool,
}

impl fmt::Display for FamilyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.infimum_sign {
            Ordering::Less => "< 0",
            Ordering::Equal => "= 0",
            Ordering::Greater => "> 0",
        };
        write!(f, "{:?}: infimum {s}", self.case)
    }
}

/// Decides whether `l` is positive on the whole family
/// `{Σ c_α x^α + s·Θ(c)·x^β : c > 0}`, or for the certified family, whether
/// its infimum is exactly zero.
pub fn family_positivity(
    l: &ExposingFunctional,
    c: &Circuit,
    sign: Sign,
    is_base_family: bool,
) -> FamilyOutcome {
    let fail = |case, infimum_sign| FamilyOutcome {
        case,
        infimum_sign,
        pass: false,
    };
    let mut outer = Vec::with_capacity(c.size());
    for (p, w) in c.lambda().entries() {
        match l.get(p) {
            Some(v) if v.signum() != Ordering::Less => outer.push((v, w)),
            _ => return fail(FamilyCase::NegativeOuter, Ordering::Less),
        }
    }
    let Some(beta_value) = l.get(c.beta()) else {
        return fail(FamilyCase::NegativeOuter, Ordering::Less);
    };
    // sign of s·l_β
    let inner_sign = match sign {
        Sign::Plus => beta_value.signum(),
        Sign::Minus => beta_value.signum().reverse(),
    };

    if outer.iter().any(|(v, _)| v.is_zero()) {
        let any_positive = outer.iter().any(|(v, _)| !v.is_zero());
        let infimum_sign = match inner_sign {
            Ordering::Equal if any_positive => Ordering::Greater,
            other => other,
        };
        return FamilyOutcome {
            case: FamilyCase::VanishingOuter,
            infimum_sign,
            pass: !is_base_family && infimum_sign == Ordering::Greater,
        };
    }

    let infimum_sign = if inner_sign != Ordering::Less {
        Ordering::Greater
    } else {
        let mut product = PowerProduct::one();
        for (v, w) in &outer {
            for (b, e) in v.magnitude().expect("positive").factors() {
                product.push(b.clone(), e * *w);
            }
        }
        let beta_mag = beta_value.magnitude().expect("nonzero");
        product.cmp_product(&beta_mag)
    };
    let pass = if is_base_family {
        infimum_sign == Ordering::Equal
    } else {
        infimum_sign == Ordering::Greater
    };
    FamilyOutcome {
        case: FamilyCase::AmGm,
        infimum_sign,
        pass,
    }
}

pub fn verify_certificate(cert: &Certificate, a: &GroundSet) -> Verdict {
    verify_in(&SoncCone::new(a.clone()), cert)
}

pub(crate) fn verify_in(cone: &SoncCone, cert: &Certificate) -> Verdict {
    let l = &cert.functional;
    let mut checks = Vec::new();

    let keyed = l.values().len() == cone.ground_set().len()
        && cone.ground_set().points().iter().all(|p| l.get(p).is_some());
    checks.push(Check {
        subject: "functional".into(),
        kind: CheckKind::KeyedByGroundSet,
        outcome: format!("{} values for {} points", l.values().len(), cone.ground_set().len()),
        passed: keyed,
    });
    if !keyed {
        return Verdict::from_checks(checks);
    }

    let generator = canonical_generator(&cert.ray);
    let (passed, outcome) = match evaluate_on_generator(l, &generator) {
        Ok(Evaluation { sign, exact }) => (
            sign == Ordering::Equal,
            match exact {
                Some(v) => format!("l(f) = {}", rational::to_string(&v)),
                None => format!("l(f) {sign:?} 0"),
            },
        ),
        Err(e) => (false, e.to_string()),
    };
    checks.push(Check {
        subject: cert.ray.to_string(),
        kind: CheckKind::GeneratorVanishes,
        outcome,
        passed,
    });

    for p in cone.even_points() {
        let ray = ExtremeRay::Monomial(p.clone());
        if ray == cert.ray {
            continue;
        }
        let v = l.get(p).expect("keyed");
        checks.push(Check {
            subject: ray.to_string(),
            kind: CheckKind::MonomialPositive,
            outcome: format!("l = {}", v.to_json()),
            passed: v.signum() == Ordering::Greater,
        });
    }

    for ray in cone.rays() {
        let ExtremeRay::CircuitRay { circuit, sign } = ray else {
            continue;
        };
        let is_base = *ray == cert.ray;
        let outcome = family_positivity(l, circuit, *sign, is_base);
        checks.push(Check {
            subject: ray.to_string(),
            kind: if is_base {
                CheckKind::FamilyEquality
            } else {
                CheckKind::FamilyPositive
            },
            outcome: outcome.to_string(),
            passed: outcome.pass,
        });
    }
    Verdict::from_checks(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePoint;
    use crate::rational::int;
    use crate::rays::catalog_extreme_rays;

    fn lp(c: &[u32]) -> LatticePoint {
        LatticePoint::new(c.to_vec())
    }

    fn motzkin() -> GroundSet {
        GroundSet::from_coords(2, [[0u32, 0], [4, 2], [2, 4], [2, 2]]).unwrap()
    }

    fn all_certificates(a: &GroundSet) -> Vec<Certificate> {
        let cone = SoncCone::new(a.clone());
        cone.decisions()
            .into_iter()
            .filter(|d| d.exposed)
            .map(|d| cone.certify(&d.ray).unwrap())
            .collect()
    }

    #[test]
    fn evaluations() {
        let a = motzkin();
        let cone = SoncCone::new(a.clone());
        let ray = cone.rays().last().unwrap().clone();
        let cert = cone.certify(&ray).unwrap();
        let e = evaluate_on_generator(&cert.functional, &canonical_generator(&ray)).unwrap();
        assert_eq!(e, Evaluation { sign: Ordering::Equal, exact: Some(int(0)) });
        let e = evaluate_on_generator(&cert.functional, &Polynomial::zero()).unwrap();
        assert_eq!(e.exact, Some(int(0)));

        let three = GroundSet::from_coords(1, [[0u32], [1], [2]]).unwrap();
        let cone = SoncCone::new(three);
        let cert = cone.certify(&ExtremeRay::Monomial(lp(&[0]))).unwrap();
        let e = evaluate_on_generator(&cert.functional, &Polynomial::monomial(lp(&[2]), int(1))).unwrap();
        assert_eq!(e.exact, Some(int(8)));
        assert!(evaluate_on_generator(&cert.functional, &Polynomial::monomial(lp(&[7]), int(1))).is_err());
    }

    #[test]
    fn towers_are_signed_without_expansion() {
        let mut l = ExposingFunctional::default();
        let big = |e: u64| ExactScalar::Power {
            negative: false,
            base: int(4),
            exponent: e.into(),
        };
        l.set(lp(&[0]), big(1 << 40));
        l.set(lp(&[2]), big(1 << 39));
        l.set(lp(&[4]), ExactScalar::Rational(int(2)));
        let mut g = Polynomial::zero();
        g.add_term(lp(&[0]), rational::ratio(1, 2));
        g.add_term(lp(&[2]), int(-1));
        g.add_term(lp(&[4]), int(-1));
        let e = evaluate_on_generator(&l, &g).unwrap();
        assert_eq!(e, Evaluation { sign: Ordering::Greater, exact: None });
    }

    #[test]
    fn family_cases() {
        // γ = 0 on {0,1,2}: outer values (0, 8), l_β = 0
        let three = GroundSet::from_coords(1, [[0u32], [1], [2]]).unwrap();
        let cone = SoncCone::new(three);
        let cert = cone.certify(&ExtremeRay::Monomial(lp(&[0]))).unwrap();
        let ExtremeRay::CircuitRay { circuit, .. } = &cone.rays()[3] else { unreachable!() };
        let out = family_positivity(&cert.functional, circuit, Sign::Plus, false);
        assert_eq!(out.case, FamilyCase::VanishingOuter);
        assert!(out.pass);

        // Motzkin certificate on its own family: 2^(1/3)^3 - 2 = 0
        let cone = SoncCone::new(motzkin());
        let ray = cone.rays().last().unwrap().clone();
        let cert = cone.certify(&ray).unwrap();
        let ExtremeRay::CircuitRay { circuit, .. } = &ray else { unreachable!() };
        let out = family_positivity(&cert.functional, circuit, Sign::Minus, true);
        assert_eq!((out.case, out.infimum_sign, out.pass), (FamilyCase::AmGm, Ordering::Equal, true));
        // the same equality is a failure for a non-certified family
        assert!(!family_positivity(&cert.functional, circuit, Sign::Minus, false).pass);

        // ({0,4},2) certificate against ({2,6},4): sqrt(2 * 256) - 2 > 0
        let u = GroundSet::from_coords(1, [[0u32], [2], [4], [6]]).unwrap();
        let cone = SoncCone::new(u);
        let cert = cone.certify(&cone.rays()[4]).unwrap();
        let ExtremeRay::CircuitRay { circuit, .. } = &cone.rays()[5] else { unreachable!() };
        let out = family_positivity(&cert.functional, circuit, Sign::Minus, false);
        assert_eq!((out.infimum_sign, out.pass), (Ordering::Greater, true));
    }

    #[test]
    fn golden_certificates_verify() {
        for a in [
            GroundSet::from_coords(1, [[0u32], [1], [2]]).unwrap(),
            motzkin(),
            GroundSet::from_coords(1, [[0u32], [2], [4], [6]]).unwrap(),
        ] {
            for cert in all_certificates(&a) {
                let v = verify_certificate(&cert, &a);
                assert!(v.pass, "{}: {:?}", cert.ray, v.failures);
            }
        }
    }

    #[test]
    fn tampering_is_caught() {
        let a = motzkin();
        let cone = SoncCone::new(a.clone());
        let ray = cone.rays().last().unwrap().clone();
        let mut cert = cone.certify(&ray).unwrap();
        cert.functional.set(lp(&[2, 2]), ExactScalar::Rational(int(3)));
        let v = verify_certificate(&cert, &a);
        assert!(!v.pass);
        assert!(v.failures.iter().any(|f| f.kind == CheckKind::FamilyEquality));

        let three = GroundSet::from_coords(1, [[0u32], [1], [2]]).unwrap();
        let cone = SoncCone::new(three.clone());
        let mut cert = cone.certify(&ExtremeRay::Monomial(lp(&[0]))).unwrap();
        cert.functional.set(lp(&[2]), ExactScalar::zero());
        let v = verify_certificate(&cert, &three);
        assert!(v.failures.iter().any(|f| f.kind == CheckKind::MonomialPositive));

        let mut cert = cone.certify(&ExtremeRay::Monomial(lp(&[0]))).unwrap();
        cert.functional = ExposingFunctional::default();
        let v = verify_certificate(&cert, &three);
        assert_eq!(v.failures[0].kind, CheckKind::KeyedByGroundSet);
    }

    #[test]
    fn unexposed_rays_have_no_certificate() {
        let cone = SoncCone::new(catalog_ground());
        for r in catalog_extreme_rays(cone.ground_set()) {
            let d = cone.decide(&r).unwrap();
            assert_eq!(d.exposed, cone.certify(&r).is_ok());
        }
    }

    fn catalog_ground() -> GroundSet {
        GroundSet::from_coords(1, [[0u32], [2], [4], [6]]).unwrap()
    }
}
