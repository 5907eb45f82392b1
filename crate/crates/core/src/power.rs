//! Exact products of rational powers and their comparison against rationals.
//!
//! A [`PowerProduct`] represents `Π baseᵢ^expᵢ` with positive rational bases
//! and rational exponents. Such values are irrational in general, so they are
//! never rounded inside a decision. Comparison first rewrites every base over
//! a pairwise coprime integer basis; distinct basis elements are
//! multiplicatively independent, so the value equals one iff every collected
//! exponent vanishes, and a product with same-signed exponents is decided
//! without any arithmetic. Only mixed products fall through to a float
//! prefilter and, when that is inconclusive, to big-integer powers after
//! clearing exponent denominators.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerProduct {
    factors: Vec<(Rational, Rational)>,
}

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct {
            factors: Vec::new(),
        }
    }

    /// Panics if `base` is not strictly positive.
    pub fn from_factors(factors: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        let factors: Vec<_> = factors.into_iter().collect();
        assert!(
            factors.iter().all(|(b, _)| b.is_positive()),
            "power product bases must be positive"
        );
        PowerProduct { factors }
    }

    pub fn factors(&self) -> &[(Rational, Rational)] {
        &self.factors
    }

    pub fn push(&mut self, base: Rational, exponent: Rational) {
        assert!(base.is_positive(), "power product bases must be positive");
        self.factors.push((base, exponent));
    }

    pub fn mul(mut self, other: &PowerProduct) -> Self {
        self.factors.extend(other.factors.iter().cloned());
        self
    }

    pub fn recip(&self) -> Self {
        PowerProduct {
            factors: self.factors.iter().map(|(b, e)| (b.clone(), -e)).collect(),
        }
    }

    /// Natural logarithm of the value, finite even when the value overflows `f64`.
    pub fn ln(&self) -> f64 {
        self.factors
            .iter()
            .map(|(b, e)| rational::to_f64(e) * rational::ln(b))
            .sum()
    }

    pub fn to_f64(&self) -> f64 {
        self.ln().exp()
    }

    /// The exact value when it is rational, otherwise `None`.
    pub fn to_rational(&self) -> Option<Rational> {
        let reduced = Reduced::new(&self.factors);
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (atom, e) in &reduced.atoms {
            let q = e.denom().to_u32()?;
            let root = atom.nth_root(q);
            if root.pow(q) != *atom {
                return None;
            }
            let k = e.numer();
            let k_abs = k.abs().to_u32()?;
            let p = BigInt::from(root).pow(k_abs);
            if k.is_positive() {
                num *= p;
            } else {
                den *= p;
            }
        }
        Some(Rational::new(num, den))
    }

    /// Exact ordering of the value against `1`.
    pub fn cmp_one(&self) -> Ordering {
        Reduced::new(&self.factors).sign_of_log()
    }

    /// Exact ordering of two power products.
    pub fn cmp_product(&self, other: &PowerProduct) -> Ordering {
        self.clone().mul(&other.recip()).cmp_one()
    }
}

/// Exact ordering of `v` against a nonnegative rational `r`.
pub fn power_product_compare(v: &PowerProduct, r: &Rational) -> Result<Ordering> {
    if r.is_negative() {
        return Err(Error::NegativeComparand(rational::to_string(r)));
    }
    if r.is_zero() {
        return Ok(Ordering::Greater);
    }
    let mut w = v.clone();
    w.push(r.clone(), -Rational::one());
    Ok(w.cmp_one())
}

/// A product rewritten over pairwise coprime integer atoms `> 1`.
struct Reduced {
    atoms: Vec<(BigUint, Rational)>,
}

impl Reduced {
    fn new(factors: &[(Rational, Rational)]) -> Self {
        let mut ints: Vec<BigUint> = Vec::new();
        for (b, _) in factors {
            for part in [b.numer(), b.denom()] {
                let u = part.magnitude();
                if !u.is_one() {
                    ints.push(u.clone());
                }
            }
        }
        let basis = coprime_basis(ints);
        let mut atoms: Vec<(BigUint, Rational)> =
            basis.into_iter().map(|a| (a, Rational::zero())).collect();
        for (b, e) in factors {
            if e.is_zero() {
                continue;
            }
            for (part, sign) in [(b.numer(), 1i64), (b.denom(), -1i64)] {
                let mut u = part.magnitude().clone();
                for (atom, total) in atoms.iter_mut() {
                    let mut k = 0i64;
                    loop {
                        let (q, rem) = u.div_rem(atom);
                        if !rem.is_zero() {
                            break;
                        }
                        u = q;
                        k += 1;
                    }
                    if k != 0 {
                        *total += e * Rational::from_integer(BigInt::from(sign * k));
                    }
                }
                debug_assert!(u.is_one());
            }
        }
        atoms.retain(|(_, e)| !e.is_zero());
        Reduced { atoms }
    }

    fn sign_of_log(&self) -> Ordering {
        let pos = self.atoms.iter().any(|(_, e)| e.is_positive());
        let neg = self.atoms.iter().any(|(_, e)| e.is_negative());
        match (pos, neg) {
            (false, false) => return Ordering::Equal,
            (true, false) => return Ordering::Greater,
            (false, true) => return Ordering::Less,
            (true, true) => {}
        }
        if let Some(o) = self.float_prefilter() {
            return o;
        }
        self.exact_compare()
    }

    fn float_prefilter(&self) -> Option<Ordering> {
        let mut sum = 0.0f64;
        let mut mag = 0.0f64;
        for (atom, e) in &self.atoms {
            let t = rational::to_f64(e) * rational::ln_int(&BigInt::from(atom.clone()));
            if !t.is_finite() {
                return None;
            }
            sum += t;
            mag += t.abs();
        }
        let err = mag * 1e-12;
        if sum > err {
            Some(Ordering::Greater)
        } else if sum < -err {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    fn exact_compare(&self) -> Ordering {
        let q = self
            .atoms
            .iter()
            .fold(BigInt::one(), |acc, (_, e)| acc.lcm(e.denom()));
        let mut lhs = BigUint::one();
        let mut rhs = BigUint::one();
        for (atom, e) in &self.atoms {
            let p = (e * Rational::from_integer(q.clone())).to_integer();
            let k = p
                .abs()
                .to_u32()
                .expect("exponent too large for exact power comparison");
            if p.is_positive() {
                lhs *= atom.pow(k);
            } else {
                rhs *= atom.pow(k);
            }
        }
        lhs.cmp(&rhs)
    }
}

/// Refines a multiset of integers `> 1` into a pairwise coprime basis such
/// that every input is a product of basis powers.
fn coprime_basis(mut list: Vec<BigUint>) -> Vec<BigUint> {
    list.sort();
    list.dedup();
    'outer: loop {
        for i in 0..list.len() {
            for j in (i + 1)..list.len() {
                let g = list[i].gcd(&list[j]);
                if g.is_one() {
                    continue;
                }
                let a = &list[i] / &g;
                let b = &list[j] / &g;
                let mut next: Vec<BigUint> = list
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .map(|(_, v)| v.clone())
                    .collect();
                next.extend([g, a, b].into_iter().filter(|v| !v.is_one()));
                next.sort();
                next.dedup();
                list = next;
                continue 'outer;
            }
        }
        return list;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn pp(f: &[(i64, i64, i64, i64)]) -> PowerProduct {
        PowerProduct::from_factors(f.iter().map(|&(bn, bd, en, ed)| (ratio(bn, bd), ratio(en, ed))))
    }

    #[test]
    fn documented_examples() {
        // 2^(1/2) * 8^(1/3) vs 3: sixth powers 2^9 = 512 < 3^6 = 729
        let v = pp(&[(2, 1, 1, 2), (8, 1, 1, 3)]);
        assert_eq!(power_product_compare(&v, &int(3)).unwrap(), Ordering::Less);
        let v = pp(&[(1, 1, 2, 7)]);
        assert_eq!(power_product_compare(&v, &int(1)).unwrap(), Ordering::Equal);
        // Motzkin circuit number with unit coefficients: 3^(1/3) three times
        let v = pp(&[(3, 1, 1, 3), (3, 1, 1, 3), (3, 1, 1, 3)]);
        assert_eq!(power_product_compare(&v, &int(3)).unwrap(), Ordering::Equal);
        assert_eq!(power_product_compare(&v, &int(0)).unwrap(), Ordering::Greater);
        assert!(power_product_compare(&v, &int(-1)).is_err());
    }

    #[test]
    fn near_ties_fall_back_to_exact_arithmetic() {
        // (10^12 + 1)^(1/2) vs 10^6: just above
        let big = 1_000_000_000_000i64;
        let v = pp(&[(big + 1, 1, 1, 2)]);
        assert_eq!(power_product_compare(&v, &int(1_000_000)).unwrap(), Ordering::Greater);
        let v = pp(&[(big - 1, 1, 1, 2)]);
        assert_eq!(power_product_compare(&v, &int(1_000_000)).unwrap(), Ordering::Less);
        // 6^(1/2) vs 2^(1/2) * 3^(1/2)
        let v = pp(&[(6, 1, 1, 2), (2, 1, -1, 2), (3, 1, -1, 2)]);
        assert_eq!(v.cmp_one(), Ordering::Equal);
    }

    #[test]
    fn towers_never_expand() {
        // 2^(10^30 * 1/3) vs 2^(10^29): decided from exponents alone
        let e = Rational::from_integer(BigInt::from(10u32).pow(30)) * ratio(1, 3);
        let lhs = PowerProduct::from_factors([(int(2), e)]);
        let rhs = PowerProduct::from_factors([(int(4), Rational::from_integer(BigInt::from(10u32).pow(29)))]);
        assert_eq!(lhs.cmp_product(&rhs), Ordering::Greater);
    }

    #[test]
    fn rational_detection() {
        assert_eq!(pp(&[(4, 9, 1, 2)]).to_rational(), Some(ratio(2, 3)));
        assert_eq!(pp(&[(2, 1, 1, 2)]).to_rational(), None);
        assert_eq!(PowerProduct::one().to_rational(), Some(int(1)));
    }

    #[test]
    fn basis_is_pairwise_coprime() {
        let b = coprime_basis(vec![12u32.into(), 18u32.into(), 35u32.into()]);
        for i in 0..b.len() {
            for j in (i + 1)..b.len() {
                assert!(b[i].gcd(&b[j]).is_one());
            }
        }
    }
}
