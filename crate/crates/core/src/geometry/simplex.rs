//! Dense two-phase simplex over exact rationals with Bland's anti-cycling rule.
//!
//! Sizes here are desk scale (tens of rows), so a dense tableau is fine.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective·x` subject to the constraints and `x ≥ 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        solution: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn maximize(mut self, objective: Vec<Rational>) -> Self {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
        self
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// Phase 1 only.
    pub fn is_feasible(&self) -> bool {
        Tableau::build(self).phase_one()
    }

    pub fn solve(&self) -> LpOutcome {
        let mut t = Tableau::build(self);
        if !t.phase_one() {
            return LpOutcome::Infeasible;
        }
        t.phase_two(&self.objective)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    num_vars: usize,
    /// Columns at or beyond this index are artificial.
    first_artificial: usize,
    width: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.num_vars;
        let num_slack = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        // Normalise to rhs >= 0 first, so we know which rows need an artificial.
        let normalised: Vec<(Vec<Rational>, Relation, Rational)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let flipped = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|v| -v).collect(), flipped, -&c.rhs)
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let num_art = normalised
            .iter()
            .filter(|(_, rel, _)| *rel != Relation::Le)
            .count();
        let first_artificial = n + num_slack;
        let width = first_artificial + num_art;
        let mut rows = Vec::with_capacity(normalised.len());
        let mut basis = Vec::with_capacity(normalised.len());
        let mut slack = n;
        let mut art = first_artificial;
        for (coeffs, rel, rhs) in normalised {
            let mut row = vec![Rational::zero(); width + 1];
            for (j, v) in coeffs.into_iter().enumerate() {
                row[j] = v;
            }
            row[width] = rhs;
            match rel {
                Relation::Le => {
                    row[slack] = Rational::from_integer(1.into());
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = Rational::from_integer((-1).into());
                    slack += 1;
                    row[art] = Rational::from_integer(1.into());
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = Rational::from_integer(1.into());
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        Tableau {
            rows,
            basis,
            num_vars: n,
            first_artificial,
            width,
        }
    }

    fn reduced_costs(&self, cost: &dyn Fn(usize) -> Rational) -> Vec<Rational> {
        let mut obj: Vec<Rational> = (0..self.width).map(cost).collect();
        obj.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = cost(b);
            if cb.is_zero() {
                continue;
            }
            for (o, v) in obj.iter_mut().zip(row) {
                if !v.is_zero() {
                    *o -= &cb * v;
                }
            }
        }
        obj
    }

    fn pivot(&mut self, obj: &mut [Rational], r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v /= &p;
            }
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut [Rational]| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(obj);
        self.basis[r] = c;
    }

    /// Largest-coefficient pivoting, switching to Bland's rule for good after
    /// a run of degenerate pivots. Returns false when unbounded.
    fn optimise(&mut self, obj: &mut Vec<Rational>, allowed: usize) -> bool {
        const DEGENERATE_RUN: usize = 32;
        let w = self.width;
        let mut degenerate = 0usize;
        loop {
            let enter = if degenerate < DEGENERATE_RUN {
                (0..allowed)
                    .filter(|&j| obj[j].is_positive())
                    .fold(None, |best: Option<usize>, j| match best {
                        Some(b) if obj[b] >= obj[j] => Some(b),
                        _ => Some(j),
                    })
            } else {
                (0..allowed).find(|&j| obj[j].is_positive())
            };
            let Some(enter) = enter else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[w] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else {
                return false;
            };
            if ratio.is_zero() {
                degenerate += 1;
            } else if degenerate < DEGENERATE_RUN {
                degenerate = 0;
            }
            self.pivot(obj, r, enter);
        }
    }

    fn phase_one(&mut self) -> bool {
        if self.first_artificial == self.width {
            return true;
        }
        let fa = self.first_artificial;
        let minus_one = Rational::from_integer((-1).into());
        let mut obj = self.reduced_costs(&|j| {
            if j >= fa {
                minus_one.clone()
            } else {
                Rational::zero()
            }
        });
        self.optimise(&mut obj, self.width);
        if !obj[self.width].is_zero() {
            return false;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= fa {
                match (0..fa).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => {
                        self.pivot(&mut obj, i, j);
                        i += 1;
                    }
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        true
    }

    fn phase_two(&mut self, objective: &[Rational]) -> LpOutcome {
        let n = self.num_vars;
        let mut obj = self.reduced_costs(&|j| {
            if j < n {
                objective[j].clone()
            } else {
                Rational::zero()
            }
        });
        if !self.optimise(&mut obj, self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut solution = vec![Rational::zero(); n];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < n {
                solution[b] = row[self.width].clone();
            }
        }
        LpOutcome::Optimal {
            value: -obj[self.width].clone(),
            solution,
        }
    }
}
