//! Checkers for the proved cases of the vanishing conjecture, and exact
//! reproductions of the two power-series counterexamples.
//!
//! Each checker computes the explicit bound B of its case, then verifies
//! Λ^m(P^m g) = 0 symbolically for every B < m ≤ M. Verdicts only ever speak
//! about the horizon M.

mod binomial;
mod counterexample;
mod expoly;
mod gaussian;
mod monomial;
mod one_var;
mod phi;
mod two_monomial;

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::density::DensityError;
use crate::diff::{DiffError, DiffMode, DiffOp};
use crate::poly::{LaurentPoly, PolyError};
use crate::polytope::PolytopeError;
use crate::series::SeriesError;
use crate::Rational;

pub use binomial::{binomial_gap, binomial_gap_check, BinomialGap};
pub use counterexample::{counterexample_ddv, counterexample_dk, CounterexampleReport, CounterexampleRow};
pub use expoly::{expoly_apply, ExpPoly};
pub use gaussian::GaussianRational;
pub use monomial::{monomial_case_check, monomial_operator_check};
pub use one_var::one_var_check;
pub use phi::{phi_case_check, phi_flow, phi_operator};
pub use two_monomial::{homogeneous_two_monomial_p_check, two_monomial_check, TwoTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Diff(#[from] DiffError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error("expected {expected} variable(s), got {got}")]
    Arity { expected: usize, got: usize },
    #[error("horizon must be at least 1")]
    EmptyHorizon,
    #[error("{0}")]
    Precondition(String),
    #[error("internal identity failed: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseStatus {
    Confirmed,
    HypothesisFails,
    CheckFailed,
    Inconclusive,
}

impl CaseStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseStatus::Confirmed => "confirmed",
            CaseStatus::HypothesisFails => "hypothesis-fails",
            CaseStatus::CheckFailed => "check-failed",
            CaseStatus::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for CaseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub m: u32,
    pub label: String,
    pub value: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseVerdict {
    pub case_name: String,
    pub horizon: u32,
    pub hypothesis_checks: Vec<(String, bool)>,
    /// Vanishing is claimed for m > bound.
    pub bound: Option<Rational>,
    /// m values in (bound, horizon] verified to vanish.
    pub verified: Vec<u32>,
    pub residuals: Vec<Residual>,
    pub anomalies: Vec<String>,
    pub notes: Vec<String>,
    pub status: CaseStatus,
}

impl CaseVerdict {
    pub(crate) fn new(case_name: &str, horizon: u32) -> Self {
        CaseVerdict {
            case_name: case_name.to_string(),
            horizon,
            hypothesis_checks: Vec::new(),
            bound: None,
            verified: Vec::new(),
            residuals: Vec::new(),
            anomalies: Vec::new(),
            notes: Vec::new(),
            status: CaseStatus::Inconclusive,
        }
    }

    pub(crate) fn check(&mut self, name: impl Into<String>, holds: bool) {
        self.hypothesis_checks.push((name.into(), holds));
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypothesis_checks.iter().all(|(_, ok)| *ok)
    }

    /// The verified range as (first, last), `None` when empty.
    pub fn verified_range(&self) -> Option<(u32, u32)> {
        Some((*self.verified.first()?, *self.verified.last()?))
    }

    pub(crate) fn finish(mut self) -> Self {
        self.status = if !self.hypotheses_hold() {
            CaseStatus::HypothesisFails
        } else if !self.anomalies.is_empty() || self.residuals.iter().any(|r| self.in_range(r.m)) {
            CaseStatus::CheckFailed
        } else if self.verified.is_empty() {
            CaseStatus::Inconclusive
        } else {
            CaseStatus::Confirmed
        };
        self
    }

    fn in_range(&self, m: u32) -> bool {
        match &self.bound {
            Some(b) => Rational::from_integer(m.into()) > *b,
            None => false,
        }
    }
}

/// Smallest positive integer m with m > b.
pub fn first_beyond(b: &Rational) -> u32 {
    if b.is_negative() {
        return 1;
    }
    let floor = b.numer().div_floor(b.denom());
    (floor + 1u32).to_u32().unwrap_or(u32::MAX).max(1)
}

pub(crate) fn require_horizon(horizon: u32) -> Result<(), CaseError> {
    if horizon == 0 {
        Err(CaseError::EmptyHorizon)
    } else {
        Ok(())
    }
}

pub(crate) fn require_arity(expected: usize, got: usize) -> Result<(), CaseError> {
    if expected != got {
        Err(CaseError::Arity { expected, got })
    } else {
        Ok(())
    }
}

/// Λ^m(P^m) and Λ^m(P^m g) for m = 1..=horizon; P may be zero.
pub(crate) fn sweep(
    op: &DiffOp,
    p: &LaurentPoly,
    g: &LaurentPoly,
    horizon: u32,
) -> Result<Vec<(LaurentPoly, LaurentPoly)>, CaseError> {
    let mut out = Vec::with_capacity(horizon as usize);
    let mut op_power = DiffOp::new(LaurentPoly::one(op.arity()))?;
    let mut p_power = LaurentPoly::one(p.arity());
    for _ in 0..horizon {
        op_power = op_power.compose(op)?;
        p_power = &p_power * p;
        let plain = op_power.apply(&p_power, DiffMode::Polynomial)?;
        let with_g = op_power.apply(&(&p_power * g), DiffMode::Polynomial)?;
        out.push((plain, with_g));
    }
    Ok(out)
}

/// Records the hypothesis Λ^m(P^m) = 0 for m ≤ M and verifies Λ^m(P^m g) = 0
/// for m ≥ `from`. Nonzero values become residuals.
pub(crate) fn record_sweep(
    verdict: &mut CaseVerdict,
    rows: &[(LaurentPoly, LaurentPoly)],
    from: Option<u32>,
) -> bool {
    let mut hypothesis = true;
    for (i, (plain, with_g)) in rows.iter().enumerate() {
        let m = i as u32 + 1;
        if !plain.is_zero() {
            if hypothesis {
                verdict.residuals.push(Residual {
                    m,
                    label: "plain".into(),
                    value: plain.clone(),
                });
            }
            hypothesis = false;
        }
        if let Some(from) = from {
            if m >= from {
                if with_g.is_zero() {
                    verdict.verified.push(m);
                } else {
                    verdict.residuals.push(Residual {
                        m,
                        label: "with-g".into(),
                        value: with_g.clone(),
                    });
                }
            }
        }
    }
    verdict.check(format!("plain vanishes for m <= {}", rows.len()), hypothesis);
    hypothesis
}
