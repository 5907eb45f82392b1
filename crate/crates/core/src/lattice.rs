//! Lattice points, ground sets and the ground-set document format.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exponent vector in ℕⁿ.
///
/// Ordering is lexicographic on the coordinates, which is the canonical order
/// used by every enumeration in this crate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<u32>);

impl LatticePoint {
    pub fn new(coords: Vec<u32>) -> Self {
        LatticePoint(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// True iff every coordinate is divisible by two.
    pub fn is_even(&self) -> bool {
        self.0.iter().all(|c| c % 2 == 0)
    }
}

impl From<Vec<u32>> for LatticePoint {
    fn from(v: Vec<u32>) -> Self {
        LatticePoint(v)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn is_even(p: &LatticePoint) -> bool {
    p.is_even()
}

/// A finite support set A ⊆ ℕⁿ, sorted lexicographically and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
    points: Vec<LatticePoint>,
}

impl GroundSet {
    pub fn new(n: usize, mut points: Vec<LatticePoint>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("dimension n must be positive".into()));
        }
        if points.is_empty() {
            return Err(Error::EmptyPointList);
        }
        if let Some(p) = points.iter().find(|p| p.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].to_string()));
        }
        Ok(GroundSet { n, points })
    }

    /// Convenience constructor from raw coordinate rows.
    pub fn from_coords<I, P>(n: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<Vec<u32>>,
    {
        GroundSet::new(n, rows.into_iter().map(|r| LatticePoint(r.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// Serializes to the canonical ground-set document.
    pub fn to_document(&self) -> String {
        serde_json::to_string(&GroundSetDocument {
            n: self.n as i64,
            points: self
                .points
                .iter()
                .map(|p| p.0.iter().map(|&c| i64::from(c)).collect())
                .collect(),
        })
        .expect("ground set serializes")
    }
}

/// The even points A ∩ 2ℕⁿ, in ground-set order.
pub fn even_subset(a: &GroundSet) -> Vec<LatticePoint> {
    a.points.iter().filter(|p| p.is_even()).cloned().collect()
}

#[derive(Serialize, Deserialize)]
struct GroundSetDocument {
    n: i64,
    points: Vec<Vec<i64>>,
}

/// Parses a document `{"n": <int>, "points": [[int,...],...]}`.
///
/// For `n = 1` bare integers are accepted in place of one-element arrays.
pub fn parse_ground_set(text: &str) -> Result<GroundSet> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Malformed("expected a JSON object".into()))?;
    let n = obj
        .get("n")
        .and_then(|v| v.as_i64())
        .ok_or_else(|| Error::Malformed("missing integer field \"n\"".into()))?;
    if n <= 0 {
        return Err(Error::Malformed(format!("dimension must be positive, got {n}")));
    }
    let n = n as usize;
    let rows = obj
        .get("points")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Malformed("missing array field \"points\"".into()))?;
    if rows.is_empty() {
        return Err(Error::EmptyPointList);
    }
    let mut points = Vec::with_capacity(rows.len());
    for (index, row) in rows.iter().enumerate() {
        let raw: Vec<i64> = match row {
            serde_json::Value::Array(items) => items
                .iter()
                .map(|v| {
                    v.as_i64()
                        .ok_or_else(|| Error::Malformed(format!("point {index}: non-integer entry")))
                })
                .collect::<Result<_>>()?,
            serde_json::Value::Number(_) if n == 1 => vec![row
                .as_i64()
                .ok_or_else(|| Error::Malformed(format!("point {index}: non-integer entry")))?],
            _ => return Err(Error::Malformed(format!("point {index}: expected an array"))),
        };
        if raw.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: raw.len(),
            });
        }
        let mut coords = Vec::with_capacity(n);
        for &value in &raw {
            if value < 0 {
                return Err(Error::NegativeCoordinate { index, value });
            }
            let c = u32::try_from(value)
                .map_err(|_| Error::Malformed(format!("point {index}: coordinate too large")))?;
            coords.push(c);
        }
        points.push(LatticePoint(coords));
    }
    GroundSet::new(n, points)
}
