//! Exact rational linear programming.
//!
//! Dense two-phase tableau simplex over `BigRational` with Bland's
//! smallest-index rule for both the entering and the leaving variable, so it
//! never cycles. Problems are given in standard form:
//!
//! ```text
//! maximize  c·x   subject to  A x = b,  x ≥ 0
//! ```
//!
//! Optimal points are basic feasible solutions, hence rational with
//! denominators dividing a basis determinant. Which optimal vertex is
//! returned is deterministic but not canonical.

use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub constraints: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub objective: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

impl LinearProgram {
    pub fn new(constraints: Vec<Vec<Rational>>, rhs: Vec<Rational>, objective: Vec<Rational>) -> Self {
        assert_eq!(constraints.len(), rhs.len(), "one right-hand side per row");
        for row in &constraints {
            assert_eq!(row.len(), objective.len(), "rows must match the variable count");
        }
        LinearProgram {
            constraints,
            rhs,
            objective,
        }
    }

    /// A pure feasibility problem (zero objective).
    pub fn feasibility(constraints: Vec<Vec<Rational>>, rhs: Vec<Rational>, vars: usize) -> Self {
        Self::new(constraints, rhs, vec![Rational::zero(); vars])
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn solve(&self) -> LpOutcome {
        let mut tableau = match Tableau::phase_one(self) {
            Some(t) => t,
            None => return LpOutcome::Infeasible,
        };
        tableau.set_objective(&self.objective);
        if !tableau.optimize(self.num_vars()) {
            return LpOutcome::Unbounded;
        }
        let x = tableau.solution(self.num_vars());
        let value = x
            .iter()
            .zip(&self.objective)
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |s, t| s + t);
        LpOutcome::Optimal { x, value }
    }
}

/// Simplex tableau. Row `i` reads `Σ_j rows[i][j] x_j = rhs[i]` with
/// `basis[i]` the basic variable of the row. `reduced[j]` holds the reduced
/// cost of column j for maximization; `value` is the current objective.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    reduced: Vec<Rational>,
    value: Rational,
}

impl Tableau {
    /// Runs phase one with one artificial per row. Returns a tableau whose
    /// basis contains no artificial columns, or `None` when infeasible.
    fn phase_one(lp: &LinearProgram) -> Option<Tableau> {
        let n = lp.num_vars();
        let m = lp.constraints.len();
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for (i, (row, b)) in lp.constraints.iter().zip(&lp.rhs).enumerate() {
            let flip = b.is_negative();
            let mut r: Vec<Rational> = row.iter().map(|a| if flip { -a } else { a.clone() }).collect();
            r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            rows.push(r);
            rhs.push(if flip { -b } else { b.clone() });
        }
        // maximize −Σ artificials; reduced costs are column sums over rows
        let total = n + m;
        let mut reduced = vec![Rational::zero(); total];
        for r in &rows {
            for j in 0..n {
                reduced[j] += &r[j];
            }
        }
        let value = -rhs.iter().fold(Rational::zero(), |s, b| s + b);
        let mut t = Tableau {
            rows,
            rhs,
            basis: (n..total).collect(),
            reduced,
            value,
        };
        let bounded = t.optimize(n);
        debug_assert!(bounded, "phase one is always bounded");
        if t.value.is_negative() {
            return None;
        }
        t.expel_artificials(n);
        for r in &mut t.rows {
            r.truncate(n);
        }
        t.reduced.truncate(n);
        Some(t)
    }

    /// Pivots artificial variables out of the basis; rows where that is
    /// impossible are redundant and dropped.
    fn expel_artificials(&mut self, n: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < n {
                i += 1;
                continue;
            }
            match (0..n).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.rhs.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }

    fn set_objective(&mut self, objective: &[Rational]) {
        let n = objective.len();
        let mut reduced = objective.to_vec();
        let mut value = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &objective[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..n {
                reduced[j] -= cb * &self.rows[i][j];
            }
            value += cb * &self.rhs[i];
        }
        self.reduced = reduced;
        self.value = value;
    }

    /// Maximizes over columns `0..allowed`. Returns false when unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let entering = match (0..allowed).find(|&j| self.reduced[j].is_positive()) {
                Some(j) => j,
                None => return true,
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][entering];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leaving {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            match leaving {
                Some((i, _)) => self.pivot(i, entering),
                None => return false,
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        if !p.is_one() {
            for a in self.rows[row].iter_mut() {
                *a /= &p;
            }
            self.rhs[row] /= &p;
        }
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let factor = self.rows[i][col].clone();
            if factor.is_zero() {
                continue;
            }
            for (a, b) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !b.is_zero() {
                    *a -= &factor * b;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        let factor = self.reduced[col].clone();
        if !factor.is_zero() {
            for (a, b) in self.reduced.iter_mut().zip(&pivot_row) {
                if !b.is_zero() {
                    *a -= &factor * b;
                }
            }
            self.value += &factor * &pivot_rhs;
        }
        self.basis[row] = col;
    }

    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs[i].clone();
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn solves_a_small_maximization() {
        // max 3a + 2b s.t. a + b + s1 = 4, a + 3b + s2 = 6
        let lp = LinearProgram::new(
            vec![vec![r(1), r(1), r(1), r(0)], vec![r(1), r(3), r(0), r(1)]],
            vec![r(4), r(6)],
            vec![r(3), r(2), r(0), r(0)],
        );
        match lp.solve() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, r(12));
                assert_eq!(x[0], r(4));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn detects_infeasibility() {
        // a + b = 1, a + b = 2
        let lp = LinearProgram::feasibility(
            vec![vec![r(1), r(1)], vec![r(1), r(1)]],
            vec![r(1), r(2)],
            2,
        );
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unboundedness() {
        // max a s.t. a − b = 1
        let lp = LinearProgram::new(vec![vec![r(1), r(-1)]], vec![r(1)], vec![r(1), r(0)]);
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn handles_redundant_rows_and_negative_rhs() {
        // −a − b = −1 twice, max b − a
        let lp = LinearProgram::new(
            vec![vec![r(-1), r(-1)], vec![r(-1), r(-1)]],
            vec![r(-1), r(-1)],
            vec![r(-1), r(1)],
        );
        match lp.solve() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![r(0), r(1)]);
                assert_eq!(value, r(1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rational_optimum() {
        // max d s.t. c1 + c2 = 1, −2c1 + c2 + d + s1 = 0, c1 − 2c2 + d + s2 = 0
        // (free d split as d⁺ − d⁻)
        let lp = LinearProgram::new(
            vec![
                vec![r(1), r(1), r(0), r(0), r(0), r(0)],
                vec![r(-2), r(1), r(1), r(-1), r(1), r(0)],
                vec![r(1), r(-2), r(1), r(-1), r(0), r(1)],
            ],
            vec![r(1), r(0), r(0)],
            vec![r(0), r(0), r(1), r(-1), r(0), r(0)],
        );
        match lp.solve() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, q(1, 2));
                assert_eq!(&x[..2], &[q(1, 2), q(1, 2)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degenerate_problem_terminates() {
        // a classic cycling example (Beale) converted to equalities
        let lp = LinearProgram::new(
            vec![
                vec![q(1, 4), r(-60), q(-1, 25), r(9), r(1), r(0), r(0)],
                vec![q(1, 2), r(-90), q(-1, 50), r(3), r(0), r(1), r(0)],
                vec![r(0), r(0), r(1), r(0), r(0), r(0), r(1)],
            ],
            vec![r(0), r(0), r(1)],
            vec![q(3, 4), r(-150), q(1, 50), r(-6), r(0), r(0), r(0)],
        );
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1, 20)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
