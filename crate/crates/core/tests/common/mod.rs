#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use sonc_core::{GroundSet, LatticePoint, Rational};

pub type Q = Ratio<i64>;

/// `(S, β, λ)` with `S` sorted.
pub type OracleCircuit = (Vec<LatticePoint>, LatticePoint, BTreeMap<LatticePoint, Q>);

pub fn lp(c: &[u32]) -> LatticePoint {
    LatticePoint::new(c.to_vec())
}

pub fn to_q(r: &Rational) -> Q {
    use num_traits::ToPrimitive;
    Q::new(r.numer().to_i64().unwrap(), r.denom().to_i64().unwrap())
}

/// Basis of the kernel of the homogenised matrix with columns `(1, p)`.
pub fn affine_kernel(points: &[&LatticePoint]) -> Vec<Vec<Q>> {
    let k = points.len();
    let n = points[0].dim();
    let mut m: Vec<Vec<Q>> = Vec::with_capacity(n + 1);
    m.push(vec![Q::one(); k]);
    for d in 0..n {
        m.push(points.iter().map(|p| Q::from(i64::from(p.coords()[d]))).collect());
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(r) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, r);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= inv;
        }
        for r2 in 0..m.len() {
            if r2 != row && !m[r2][col].is_zero() {
                let f = m[r2][col];
                for c in 0..k {
                    let delta = f * m[row][c];
                    m[r2][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..k)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); k];
            v[free] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free];
            }
            v
        })
        .collect()
}

fn subsets(len: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1u32 << len))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..len).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Circuits as minimal affine dependencies with exactly one negative coefficient.
pub fn oracle_circuits(a: &GroundSet) -> Vec<OracleCircuit> {
    let pts = a.points();
    let n = a.dim();
    let mut out = Vec::new();
    for k in 3..=(n + 2).min(pts.len()) {
        for idx in subsets(pts.len(), k) {
            let t: Vec<&LatticePoint> = idx.iter().map(|&i| &pts[i]).collect();
            let ker = affine_kernel(&t);
            if ker.len() != 1 || ker[0].iter().any(Zero::is_zero) {
                continue;
            }
            let mut v = ker[0].clone();
            let negatives = v.iter().filter(|x| x.is_negative()).count();
            if negatives == k - 1 {
                v.iter_mut().for_each(|x| *x = -*x);
            } else if negatives != 1 {
                continue;
            }
            let bi = v.iter().position(|x| x.is_negative()).unwrap();
            let scale = -v[bi];
            let beta = t[bi].clone();
            let support: Vec<LatticePoint> = (0..k).filter(|&i| i != bi).map(|i| t[i].clone()).collect();
            if !support.iter().all(|p| p.coords().iter().all(|c| c % 2 == 0)) {
                continue;
            }
            let lambda = (0..k)
                .filter(|&i| i != bi)
                .map(|i| (t[i].clone(), v[i] / scale))
                .collect();
            out.push((support, beta, lambda));
        }
    }
    out.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
    out
}

/// `p ∈ conv(S)` for affinely independent `S`, via the dependency of `S ∪ {p}`.
pub fn oracle_in_simplex(support: &[LatticePoint], p: &LatticePoint) -> bool {
    if support.contains(p) {
        return true;
    }
    let mut t: Vec<&LatticePoint> = support.iter().collect();
    t.push(p);
    let ker = affine_kernel(&t);
    if ker.len() != 1 {
        return false;
    }
    let v = &ker[0];
    let last = v[v.len() - 1];
    if last.is_zero() {
        return false;
    }
    v[..v.len() - 1].iter().all(|x| (*x / -last) >= Q::zero())
}

pub fn oracle_is_reduced(c: &OracleCircuit, a: &GroundSet) -> bool {
    a.points().iter().all(|p| {
        !p.coords().iter().all(|x| x % 2 == 0)
            || c.0.contains(p)
            || *p == c.1
            || !oracle_in_simplex(&c.0, p)
    })
}

pub fn oracle_lambda(circuits: &[OracleCircuit]) -> u64 {
    circuits
        .iter()
        .flat_map(|c| c.2.values())
        .min()
        .map_or(2, |m| (m.recip().ceil().to_integer() + 1) as u64)
}

/// Oracle exposedness: `x^γ` is unexposed iff a circuit has `γ ∈ S` and even `β ≠ γ`.
pub fn oracle_unexposed(gamma: &LatticePoint, circuits: &[OracleCircuit]) -> bool {
    circuits
        .iter()
        .any(|(s, b, _)| s.contains(gamma) && b != gamma && b.coords().iter().all(|x| x % 2 == 0))
}

/// Phase-one infeasibility of `{μ ≥ 0 : Σμ = 1, Σμ_i p_i = x}` by a dense f64
/// simplex with Bland's rule; zero iff `x ∈ conv(hull)` up to round-off.
pub fn float_hull_residual(hull: &[LatticePoint], x: &LatticePoint) -> f64 {
    const EPS: f64 = 1e-12;
    let k = hull.len();
    let rows = x.dim() + 1;
    let width = k + rows;
    let mut t: Vec<Vec<f64>> = (0..rows)
        .map(|r| {
            let mut row = vec![0.0; width + 1];
            for (j, p) in hull.iter().enumerate() {
                row[j] = if r == 0 { 1.0 } else { f64::from(p.coords()[r - 1]) };
            }
            row[width] = if r == 0 { 1.0 } else { f64::from(x.coords()[r - 1]) };
            row[k + r] = 1.0;
            row
        })
        .collect();
    let mut basis: Vec<usize> = (k..width).collect();
    let mut obj: Vec<f64> = (0..=width)
        .map(|j| if (k..width).contains(&j) { 0.0 } else { t.iter().map(|r| r[j]).sum() })
        .collect();
    loop {
        let Some(enter) = (0..width).find(|&j| obj[j] > EPS) else {
            break;
        };
        let leave = (0..rows)
            .filter(|&i| t[i][enter] > EPS)
            .min_by(|&a, &b| {
                let (ra, rb) = (t[a][width] / t[a][enter], t[b][width] / t[b][enter]);
                ra.partial_cmp(&rb).unwrap().then(basis[a].cmp(&basis[b]))
            });
        let Some(r) = leave else {
            break;
        };
        let p = t[r][enter];
        t[r].iter_mut().for_each(|v| *v /= p);
        let pivot = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r {
                let f = row[enter];
                row.iter_mut().zip(&pivot).for_each(|(v, pv)| *v -= f * pv);
            }
        }
        let f = obj[enter];
        obj.iter_mut().zip(&pivot).for_each(|(v, pv)| *v -= f * pv);
        basis[r] = enter;
    }
    obj[width].abs()
}
