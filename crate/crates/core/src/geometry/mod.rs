//! Exact rational polytope predicates over lattice points.
//!
//! Every decision here is made in exact arithmetic: affine independence by
//! rank, barycentric coordinates by elimination, hull membership and vertex
//! tests by phase-1 simplex feasibility.

pub mod simplex;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::rational::Rational;

pub use simplex::{LinearProgram, LpOutcome, Relation};

/// Barycentric coordinates of a point with respect to an affinely independent set.
///
/// Entries follow the order of the set they were computed against. Every
/// weight is strictly positive and the weights sum to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BarycentricCoords {
    entries: Vec<(LatticePoint, Rational)>,
}

impl BarycentricCoords {
    pub fn entries(&self) -> &[(LatticePoint, Rational)] {
        &self.entries
    }

    pub fn get(&self, p: &LatticePoint) -> Option<&Rational> {
        self.entries.iter().find(|(q, _)| q == p).map(|(_, w)| w)
    }

    pub fn points(&self) -> impl Iterator<Item = &LatticePoint> {
        self.entries.iter().map(|(p, _)| p)
    }

    pub fn weights(&self) -> impl Iterator<Item = &Rational> {
        self.entries.iter().map(|(_, w)| w)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min_weight(&self) -> &Rational {
        self.weights().min().expect("nonempty coordinates")
    }
}

fn check_dims<'a>(points: impl IntoIterator<Item = &'a LatticePoint>) -> Result<usize> {
    let mut it = points.into_iter();
    let Some(first) = it.next() else {
        return Err(Error::EmptyPointList);
    };
    let n = first.dim();
    for p in it {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
    }
    Ok(n)
}

fn rat(v: u32) -> Rational {
    Rational::from_integer(v.into())
}

/// Homogenized column matrix: row `k < n` holds coordinate `k`, the last row is all ones.
fn homogenized_columns(points: &[LatticePoint]) -> Vec<Vec<Rational>> {
    let n = points[0].dim();
    let mut m = Vec::with_capacity(n + 1);
    for k in 0..n {
        m.push(points.iter().map(|p| rat(p.coords()[k])).collect());
    }
    m.push(vec![Rational::one(); points.len()]);
    m
}

/// Gauss-Jordan on `rows`; returns the pivot columns.
fn row_reduce(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pv = rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v /= &pv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// True iff no point is an affine combination of the others.
pub fn affinely_independent(points: &[LatticePoint]) -> Result<bool> {
    check_dims(points)?;
    let mut m = homogenized_columns(points);
    Ok(row_reduce(&mut m, points.len()).len() == points.len())
}

/// Exact barycentric coordinates of `target` over `support`.
///
/// Returns `Ok(None)` when `target` is not in the relative interior of the
/// simplex (outside the affine hull, or some weight is not strictly positive).
pub fn barycentric_coordinates(
    support: &[LatticePoint],
    target: &LatticePoint,
) -> Result<Option<BarycentricCoords>> {
    let n = check_dims(support.iter().chain(std::iter::once(target)))?;
    let k = support.len();
    let mut m = homogenized_columns(support);
    for (row, rhs) in m
        .iter_mut()
        .zip(target.coords().iter().map(|&c| rat(c)).chain(std::iter::once(Rational::one())))
    {
        row.push(rhs);
    }
    let pivots = row_reduce(&mut m, k + 1);
    if pivots.iter().filter(|&&c| c < k).count() < k {
        return Err(Error::AffinelyDependent);
    }
    if pivots.contains(&k) {
        return Ok(None);
    }
    debug_assert_eq!(m.len(), n + 1);
    let weights: Vec<Rational> = (0..k).map(|i| m[i][k].clone()).collect();
    if weights.iter().any(|w| !w.is_positive()) {
        return Ok(None);
    }
    Ok(Some(BarycentricCoords {
        entries: support.iter().cloned().zip(weights).collect(),
    }))
}

/// True iff `p` is a convex combination of the points of `hull`.
pub fn in_convex_hull(hull: &[LatticePoint], p: &LatticePoint) -> Result<bool> {
    let n = check_dims(hull.iter().chain(std::iter::once(p)))?;
    if hull.contains(p) {
        return Ok(true);
    }
    let mut lp = LinearProgram::new(hull.len());
    for k in 0..n {
        lp.constrain(
            hull.iter().map(|e| rat(e.coords()[k])).collect(),
            Relation::Eq,
            rat(p.coords()[k]),
        );
    }
    lp.constrain(vec![Rational::one(); hull.len()], Relation::Eq, Rational::one());
    Ok(lp.is_feasible())
}

/// The vertices of conv(points), in input order.
///
/// Each point is tested independently: it is a vertex iff it is not in the
/// hull of the remaining points.
pub fn vertices(points: &[LatticePoint]) -> Result<Vec<LatticePoint>> {
    check_dims(points)?;
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let rest: Vec<LatticePoint> = points
            .iter()
            .enumerate()
            .filter(|&(j, q)| j != i && q != p)
            .map(|(_, q)| q.clone())
            .collect();
        if rest.is_empty() || !in_convex_hull(&rest, p)? {
            out.push(p.clone());
        }
    }
    Ok(out)
}
