//! Rational polytopes in V-representation.
//!
//! A polytope is the convex hull of a finite, nonempty list of rational
//! generators. The list may contain non-vertices; nothing here ever computes
//! a hull or an H-representation. Every query (membership, meeting the
//! nonnegative orthant, separation) is an exact linear program over the
//! convex coefficients of the generators.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lp::{LinearProgram, LpOutcome};
use crate::poly::{LaurentPoly, PolyError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("a polytope needs at least one generator")]
    Empty,
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("the Newton polytope of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("certificate does not separate the polytope from the nonnegative orthant: {0}")]
    InvalidCertificate(String),
}

impl From<PolyError> for PolytopeError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::ArityMismatch { left, right } => PolytopeError::ArityMismatch { left, right },
            _ => PolytopeError::ZeroPolynomial,
        }
    }
}

/// A point of ℚⁿ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn zeros(arity: usize) -> Self {
        Point(vec![Rational::zero(); arity])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Point(v.iter().map(|&a| Rational::from_integer(a.into())).collect())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dot(&self, other: &Point) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |s, t| s + t)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rational) -> Point {
        Point(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|a| !a.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        self.0
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, a| acc.lcm(a.denom()))
    }
}

impl From<Vec<Rational>> for Point {
    fn from(v: Vec<Rational>) -> Self {
        Point(v)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolytope {
    arity: usize,
    generators: Vec<Point>,
}

/// A normalized nonnegative functional c with c·u ≤ −δ < 0 on every
/// generator u. It exists exactly when the polytope misses ℝ≥0ⁿ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub c: Point,
    pub delta: Rational,
}

impl SeparationCertificate {
    /// Checks c ≥ 0, Σc = 1, δ > 0 and c·u ≤ −δ for every generator.
    pub fn check(&self, polytope: &RationalPolytope) -> Result<(), PolytopeError> {
        let invalid = |why: String| Err(PolytopeError::InvalidCertificate(why));
        if self.c.arity() != polytope.arity {
            return invalid(format!("functional has arity {}", self.c.arity()));
        }
        if !self.c.is_nonnegative() {
            return invalid(format!("functional {} has a negative entry", self.c));
        }
        let sum = self.c.0.iter().fold(Rational::zero(), |s, a| s + a);
        if !sum.is_one() {
            return invalid(format!("functional entries sum to {sum}"));
        }
        if !self.delta.is_positive() {
            return invalid(format!("margin {} is not positive", self.delta));
        }
        for u in &polytope.generators {
            let v = self.c.dot(u);
            if v > -&self.delta {
                return invalid(format!("generator {u} has c·u = {v}"));
            }
        }
        Ok(())
    }

    pub fn is_valid_for(&self, polytope: &RationalPolytope) -> bool {
        self.check(polytope).is_ok()
    }
}

/// Outcome of intersecting a polytope with ℝ≥0ⁿ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrthantMeet {
    /// A rational point of Σ ∩ ℝ≥0ⁿ with convex coefficients over the
    /// generators that produce it.
    Witness { point: Point, coefficients: Vec<Rational> },
    Certificate(SeparationCertificate),
}

impl OrthantMeet {
    pub fn certificate(&self) -> Option<&SeparationCertificate> {
        match self {
            OrthantMeet::Certificate(c) => Some(c),
            OrthantMeet::Witness { .. } => None,
        }
    }

    pub fn is_disjoint(&self) -> bool {
        matches!(self, OrthantMeet::Certificate(_))
    }
}

impl RationalPolytope {
    pub fn new(generators: Vec<Point>) -> Result<Self, PolytopeError> {
        let arity = generators.first().ok_or(PolytopeError::Empty)?.arity();
        if let Some(g) = generators.iter().find(|g| g.arity() != arity) {
            return Err(PolytopeError::ArityMismatch {
                left: arity,
                right: g.arity(),
            });
        }
        Ok(RationalPolytope { arity, generators })
    }

    pub fn from_int_points(points: &[&[i64]]) -> Result<Self, PolytopeError> {
        Self::new(points.iter().map(|p| Point::from_ints(p)).collect())
    }

    /// Poly(P): the hull of Supp(P). Generators follow the polynomial's
    /// canonical term order.
    pub fn newton(p: &LaurentPoly) -> Result<Self, PolytopeError> {
        if p.is_zero() {
            return Err(PolytopeError::ZeroPolynomial);
        }
        Self::new(p.support().iter().map(|e| Point(e.to_rational())).collect())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    /// Σ − Γ, generated by all pairwise differences. The generator for
    /// (Σ[i], Γ[j]) sits at index `i * Γ.len() + j`.
    pub fn minkowski_diff(&self, other: &RationalPolytope) -> Result<Self, PolytopeError> {
        self.check_arity(other.arity)?;
        let generators = self
            .generators
            .iter()
            .flat_map(|u| other.generators.iter().map(move |v| u.sub(v)))
            .collect();
        Ok(RationalPolytope {
            arity: self.arity,
            generators,
        })
    }

    /// β + mΣ.
    pub fn scale_translate(&self, m: &Rational, beta: &Point) -> Result<Self, PolytopeError> {
        self.check_arity(beta.arity())?;
        Ok(RationalPolytope {
            arity: self.arity,
            generators: self.generators.iter().map(|u| beta.add(&u.scale(m))).collect(),
        })
    }

    fn check_arity(&self, other: usize) -> Result<(), PolytopeError> {
        if self.arity != other {
            return Err(PolytopeError::ArityMismatch {
                left: self.arity,
                right: other,
            });
        }
        Ok(())
    }

    /// Convex coefficients expressing `w` over the generators, if w ∈ Σ.
    pub fn contains_point(&self, w: &Point) -> Result<Option<Vec<Rational>>, PolytopeError> {
        self.check_arity(w.arity())?;
        let k = self.generators.len();
        let mut rows = Vec::with_capacity(self.arity + 1);
        let mut rhs = Vec::with_capacity(self.arity + 1);
        for i in 0..self.arity {
            rows.push(self.generators.iter().map(|u| u.0[i].clone()).collect());
            rhs.push(w.0[i].clone());
        }
        rows.push(vec![Rational::one(); k]);
        rhs.push(Rational::one());
        Ok(match LinearProgram::feasibility(rows, rhs, k).solve() {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        })
    }

    /// True when both generator lists span the same hull.
    pub fn same_set(&self, other: &RationalPolytope) -> Result<bool, PolytopeError> {
        self.check_arity(other.arity)?;
        for u in &other.generators {
            if self.contains_point(u)?.is_none() {
                return Ok(false);
            }
        }
        for u in &self.generators {
            if other.contains_point(u)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Decides Σ ∩ ℝ≥0ⁿ, returning either a rational witness or a
    /// separation certificate with the largest possible margin δ.
    ///
    /// Among maximal-margin functionals the most balanced one (smallest
    /// largest entry) is chosen; the choice is deterministic.
    pub fn orthant_meet(&self) -> OrthantMeet {
        if let Some((point, coefficients)) = self.orthant_witness() {
            return OrthantMeet::Witness { point, coefficients };
        }
        let delta = self.max_margin();
        assert!(
            delta.is_positive(),
            "separation margin {delta} must be positive when no witness exists"
        );
        let c = self.balanced_functional(&delta);
        OrthantMeet::Certificate(SeparationCertificate { c, delta })
    }

    /// Variables: convex coefficients λ (k) then slacks s (n) with
    /// Σ λ_j u_j − s = 0 and Σ λ = 1.
    fn orthant_witness(&self) -> Option<(Point, Vec<Rational>)> {
        let k = self.generators.len();
        let n = self.arity;
        let mut rows = Vec::with_capacity(n + 1);
        let mut rhs = Vec::with_capacity(n + 1);
        for i in 0..n {
            let mut row: Vec<Rational> = self.generators.iter().map(|u| u.0[i].clone()).collect();
            row.extend((0..n).map(|j| if j == i { -Rational::one() } else { Rational::zero() }));
            rows.push(row);
            rhs.push(Rational::zero());
        }
        let mut sum_row = vec![Rational::one(); k];
        sum_row.extend(vec![Rational::zero(); n]);
        rows.push(sum_row);
        rhs.push(Rational::one());
        match LinearProgram::feasibility(rows, rhs, k + n).solve() {
            LpOutcome::Optimal { x, .. } => {
                let coefficients = x[..k].to_vec();
                Some((self.combine(&coefficients), coefficients))
            }
            _ => None,
        }
    }

    /// Σ λ_j u_j.
    pub fn combine(&self, coefficients: &[Rational]) -> Point {
        let mut p = Point::zeros(self.arity);
        for (u, l) in self.generators.iter().zip(coefficients) {
            if !l.is_zero() {
                p = p.add(&u.scale(l));
            }
        }
        p
    }

    /// max δ s.t. c ≥ 0, Σc = 1, c·u_j + δ ≤ 0.
    /// Variables: c (n), δ⁺, δ⁻, slack t (k).
    fn max_margin(&self) -> Rational {
        let n = self.arity;
        let k = self.generators.len();
        let width = n + 2 + k;
        let mut rows = Vec::with_capacity(k + 1);
        let mut rhs = Vec::with_capacity(k + 1);
        for (j, u) in self.generators.iter().enumerate() {
            let mut row = u.0.clone();
            row.push(Rational::one());
            row.push(-Rational::one());
            row.extend((0..k).map(|i| if i == j { Rational::one() } else { Rational::zero() }));
            rows.push(row);
            rhs.push(Rational::zero());
        }
        let mut sum_row = vec![Rational::one(); n];
        sum_row.extend(vec![Rational::zero(); width - n]);
        rows.push(sum_row);
        rhs.push(Rational::one());
        let mut objective = vec![Rational::zero(); width];
        objective[n] = Rational::one();
        objective[n + 1] = -Rational::one();
        match LinearProgram::new(rows, rhs, objective).solve() {
            LpOutcome::Optimal { value, .. } => value,
            other => unreachable!("margin LP is feasible and bounded, got {other:?}"),
        }
    }

    /// min t s.t. c ≥ 0, Σc = 1, c·u_j ≤ −δ, c_i ≤ t.
    /// Variables: c (n), t, slacks for generators (k), slacks for c_i ≤ t (n).
    fn balanced_functional(&self, delta: &Rational) -> Point {
        let n = self.arity;
        let k = self.generators.len();
        let width = n + 1 + k + n;
        let mut rows = Vec::with_capacity(k + n + 1);
        let mut rhs = Vec::with_capacity(k + n + 1);
        for (j, u) in self.generators.iter().enumerate() {
            let mut row = u.0.clone();
            row.push(Rational::zero());
            row.extend((0..k).map(|i| if i == j { Rational::one() } else { Rational::zero() }));
            row.extend(vec![Rational::zero(); n]);
            rows.push(row);
            rhs.push(-delta.clone());
        }
        for i in 0..n {
            let mut row = vec![Rational::zero(); width];
            row[i] = Rational::one();
            row[n] = -Rational::one();
            row[n + 1 + k + i] = Rational::one();
            rows.push(row);
            rhs.push(Rational::zero());
        }
        let mut sum_row = vec![Rational::one(); n];
        sum_row.extend(vec![Rational::zero(); width - n]);
        rows.push(sum_row);
        rhs.push(Rational::one());
        let mut objective = vec![Rational::zero(); width];
        objective[n] = -Rational::one();
        match LinearProgram::new(rows, rhs, objective).solve() {
            LpOutcome::Optimal { x, .. } => Point(x[..n].to_vec()),
            other => unreachable!("optimal face is nonempty, got {other:?}"),
        }
    }

    /// The smallest N ≥ 1 such that the certificate alone proves
    /// (β + mΣ) ∩ ℝ≥0ⁿ = ∅ for every m ≥ N: N = max(1, ⌊c·β/δ⌋ + 1).
    ///
    /// Soundness: a point x of (β + mΣ) ∩ ℝ≥0ⁿ would satisfy
    /// 0 ≤ c·x ≤ c·β − mδ, forcing m ≤ c·β/δ.
    pub fn moveaway_bound(&self, beta: &Point, cert: &SeparationCertificate) -> Result<u64, PolytopeError> {
        self.check_arity(beta.arity())?;
        cert.check(self)?;
        let ratio = cert.c.dot(beta) / &cert.delta;
        let n = ratio.floor().to_integer() + 1;
        Ok(u64::try_from(n).unwrap_or(0).max(1))
    }
}

impl fmt::Display for RationalPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}
