//! Constant-coefficient differential operators Λ(∂).
//!
//! An operator is stored as its symbol Λ(ξ), a polynomial with exponents in
//! ℕⁿ; the term c·ξ^μ acts as c·∂^μ. Application is available on Laurent
//! polynomials and on truncated series, in one of two explicit modes:
//!
//! * [`DiffMode::Polynomial`]: only exponents in ℕⁿ are accepted, and
//!   ∂^μ z^β = β!/(β−μ)! z^{β−μ} when β ≥ μ, zero otherwise.
//! * [`DiffMode::Laurent`]: the falling-factorial rule, valid for any β ∈ ℤⁿ.
//!   Note that ∂^μ z^β ≠ 0 can hold with β ≱ μ once β has a negative entry.

use num_traits::Zero;
use thiserror::Error;

use crate::poly::{falling_factorial, ExponentVector, LaurentPoly, PolyError};
use crate::series::{SeriesError, TruncSeries};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("operator symbol has exponent {exponent} outside ℕⁿ")]
    NotAnOperator { exponent: ExponentVector },
    #[error("polynomial mode cannot differentiate z^{exponent}; use Laurent mode")]
    LaurentTermInPolynomialMode { exponent: ExponentVector },
    #[error("horizon must be at least 1")]
    EmptyHorizon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiffMode {
    Polynomial,
    Laurent,
}

/// ∂^μ z^β as a coefficient and exponent, `None` when it vanishes.
pub fn apply_monomial_term(
    mu: &ExponentVector,
    beta: &ExponentVector,
    mode: DiffMode,
) -> Result<Option<(Rational, ExponentVector)>, DiffError> {
    if !mu.is_nonnegative() {
        return Err(DiffError::NotAnOperator { exponent: mu.clone() });
    }
    if mode == DiffMode::Polynomial && !beta.is_nonnegative() {
        return Err(DiffError::LaurentTermInPolynomialMode {
            exponent: beta.clone(),
        });
    }
    let mut coeff = num_bigint::BigInt::from(1);
    for (&b, &m) in beta.entries().iter().zip(mu.entries()) {
        coeff *= falling_factorial(b, m as u64);
        if coeff.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some((Rational::from_integer(coeff), beta.sub(mu))))
}

/// ∂^μ z^β as a (possibly zero) Laurent polynomial.
pub fn apply_monomial(
    mu: &ExponentVector,
    beta: &ExponentVector,
    mode: DiffMode,
) -> Result<LaurentPoly, DiffError> {
    check_arity(mu.arity(), beta.arity())?;
    Ok(match apply_monomial_term(mu, beta, mode)? {
        Some((c, e)) => LaurentPoly::monomial(e, c),
        None => LaurentPoly::zero(beta.arity()),
    })
}

fn check_arity(left: usize, right: usize) -> Result<(), DiffError> {
    if left != right {
        return Err(PolyError::ArityMismatch { left, right }.into());
    }
    Ok(())
}

/// A differential operator with constant coefficients, Λ = Λ(∂).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOp {
    symbol: LaurentPoly,
}

impl DiffOp {
    pub fn new(symbol: LaurentPoly) -> Result<Self, DiffError> {
        if let Some(e) = symbol.support().into_iter().find(|e| !e.is_nonnegative()) {
            return Err(DiffError::NotAnOperator { exponent: e });
        }
        Ok(DiffOp { symbol })
    }

    /// ∂^μ.
    pub fn monomial(mu: ExponentVector) -> Result<Self, DiffError> {
        Self::new(LaurentPoly::monomial(mu, Rational::from_integer(1.into())))
    }

    /// ∂_index.
    pub fn partial(arity: usize, index: usize) -> Self {
        DiffOp {
            symbol: LaurentPoly::var(arity, index),
        }
    }

    pub fn symbol(&self) -> &LaurentPoly {
        &self.symbol
    }

    pub fn arity(&self) -> usize {
        self.symbol.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.symbol.is_zero()
    }

    /// Λ^m as an operator, i.e. the symbol raised to the m-th power.
    pub fn pow(&self, m: u32) -> DiffOp {
        DiffOp {
            symbol: self.symbol.pow(m),
        }
    }

    /// Composition Λ₁Λ₂ (symbols multiply).
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp, DiffError> {
        Ok(DiffOp {
            symbol: self.symbol.checked_mul(&other.symbol)?,
        })
    }

    /// Largest order in each variable over the terms of the symbol.
    pub fn max_orders(&self) -> Vec<i64> {
        (0..self.arity())
            .map(|i| self.symbol.degree_in(i).unwrap_or(0))
            .collect()
    }

    pub fn apply<T: Operand>(&self, target: &T, mode: DiffMode) -> Result<T, DiffError> {
        target.apply_op(self, mode)
    }

    /// Λ^m applied to the target, computed through the symbol power.
    pub fn apply_power<T: Operand>(&self, m: u32, target: &T, mode: DiffMode) -> Result<T, DiffError> {
        self.pow(m).apply(target, mode)
    }

    /// Λ applied m times in succession.
    pub fn apply_iterated<T: Operand + Clone>(
        &self,
        m: u32,
        target: &T,
        mode: DiffMode,
    ) -> Result<T, DiffError> {
        let mut out = target.clone();
        for _ in 0..m {
            out = self.apply(&out, mode)?;
        }
        Ok(out)
    }
}

/// Something a [`DiffOp`] can act on.
pub trait Operand: Sized {
    fn apply_op(&self, op: &DiffOp, mode: DiffMode) -> Result<Self, DiffError>;
}

impl Operand for LaurentPoly {
    fn apply_op(&self, op: &DiffOp, mode: DiffMode) -> Result<Self, DiffError> {
        check_arity(op.arity(), self.arity())?;
        let mut out = LaurentPoly::zero(self.arity());
        for (mu, a) in op.symbol.iter() {
            for (beta, c) in self.iter() {
                if let Some((k, e)) = apply_monomial_term(mu, beta, mode)? {
                    out.add_term(e, a * c * k);
                }
            }
        }
        Ok(out)
    }
}

impl Operand for TruncSeries {
    fn apply_op(&self, op: &DiffOp, mode: DiffMode) -> Result<Self, DiffError> {
        let body = self.body().apply_op(op, mode)?;
        let orders = op.max_orders();
        let mut precision = self.precision().to_vec();
        for (p, k) in precision.iter_mut().zip(orders) {
            if let Some(d) = p.as_mut() {
                *d -= k;
            }
        }
        Ok(TruncSeries::new(body, precision)?)
    }
}

/// One row of a vanishing profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileRow {
    pub m: u32,
    /// Λ^m(P^m)
    pub plain: LaurentPoly,
    /// Λ^m(P^m g)
    pub with_g: LaurentPoly,
}

/// Λ^m(P^m) and Λ^m(P^m g) for m = 1..=horizon. A profile only ever
/// establishes facts up to its horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingProfile {
    pub horizon: u32,
    pub rows: Vec<ProfileRow>,
}

impl VanishingProfile {
    /// The first m where Λ^m(P^m) ≠ 0, with the residual.
    pub fn first_plain_failure(&self) -> Option<&ProfileRow> {
        self.rows.iter().find(|r| !r.plain.is_zero())
    }

    /// The first m where Λ^m(P^m g) ≠ 0, with the residual.
    pub fn first_with_g_failure(&self) -> Option<&ProfileRow> {
        self.rows.iter().find(|r| !r.with_g.is_zero())
    }

    /// Smallest k such that Λ^m(P^m g) = 0 for every k ≤ m ≤ horizon;
    /// `None` when the last row does not vanish.
    pub fn with_g_vanishes_from(&self) -> Option<u32> {
        let mut from = None;
        for row in self.rows.iter().rev() {
            if row.with_g.is_zero() {
                from = Some(row.m);
            } else {
                break;
            }
        }
        from
    }

    pub fn hypothesis_holds(&self) -> bool {
        self.first_plain_failure().is_none()
    }
}

/// Tabulates Λ^m(P^m) and Λ^m(P^m g) for m = 1..=horizon.
pub fn vanishing_profile(
    op: &DiffOp,
    p: &LaurentPoly,
    g: &LaurentPoly,
    horizon: u32,
    mode: DiffMode,
) -> Result<VanishingProfile, DiffError> {
    if horizon == 0 {
        return Err(DiffError::EmptyHorizon);
    }
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    check_arity(op.arity(), p.arity())?;
    check_arity(op.arity(), g.arity())?;
    let mut rows = Vec::with_capacity(horizon as usize);
    let mut op_power = DiffOp::new(LaurentPoly::one(op.arity()))?;
    let mut p_power = LaurentPoly::one(p.arity());
    for m in 1..=horizon {
        op_power = op_power.compose(op)?;
        p_power = &p_power * p;
        let plain = op_power.apply(&p_power, mode)?;
        let with_g = op_power.apply(&(&p_power * g), mode)?;
        rows.push(ProfileRow { m, plain, with_g });
    }
    Ok(VanishingProfile { horizon, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_op, parse_poly, parse_vars};

    fn e(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn monomial_rule_examples() {
        let got = apply_monomial(&e(&[1, 1]), &e(&[1, 1]), DiffMode::Polynomial).unwrap();
        assert_eq!(got, LaurentPoly::one(2));
        let got = apply_monomial(&e(&[2, 0]), &e(&[1, 3]), DiffMode::Polynomial).unwrap();
        assert!(got.is_zero());
        let got = apply_monomial(&e(&[1]), &e(&[-1]), DiffMode::Laurent).unwrap();
        assert_eq!(got, LaurentPoly::monomial(e(&[-2]), int(-1)));
    }

    #[test]
    fn polynomial_mode_rejects_laurent_terms() {
        assert!(matches!(
            apply_monomial(&e(&[1]), &e(&[-1]), DiffMode::Polynomial),
            Err(DiffError::LaurentTermInPolynomialMode { .. })
        ));
        assert!(matches!(
            apply_monomial(&e(&[-1]), &e(&[3]), DiffMode::Laurent),
            Err(DiffError::NotAnOperator { .. })
        ));
    }

    #[test]
    fn laurent_mode_does_not_obey_the_dominance_rule() {
        // z^{-1} is not ≥ 1, yet its derivative is nonzero
        let got = apply_monomial(&e(&[2]), &e(&[-1]), DiffMode::Laurent).unwrap();
        assert_eq!(got, LaurentPoly::monomial(e(&[-3]), int(2)));
    }

    #[test]
    fn apply_examples() {
        let v = parse_vars("x,y").unwrap();
        let op = parse_op("dx*dy", &v).unwrap();
        let p = parse_poly("x^2 + y^2", &v).unwrap();
        assert!(op.apply(&p, DiffMode::Polynomial).unwrap().is_zero());

        let z = parse_vars("z").unwrap();
        let op = parse_op("dz^2", &z).unwrap();
        let p = parse_poly("z^3", &z).unwrap();
        assert_eq!(op.apply(&p, DiffMode::Polynomial).unwrap(), parse_poly("6*z", &z).unwrap());

        let dx = parse_op("dx", &v).unwrap();
        assert_eq!(
            dx.apply(&parse_poly("x", &v).unwrap(), DiffMode::Polynomial).unwrap(),
            LaurentPoly::one(2)
        );
    }

    #[test]
    fn apply_power_examples() {
        let v = parse_vars("x,y").unwrap();
        let op = parse_op("dx*dy", &v).unwrap();
        let p = parse_poly("x^2 + y^2", &v).unwrap().pow(2);
        assert_eq!(op.apply_power(2, &p, DiffMode::Polynomial).unwrap(), LaurentPoly::constant(2, int(8)));

        let q = parse_poly("x^3 - 2*x*y", &v).unwrap();
        assert_eq!(
            op.apply_power(1, &q, DiffMode::Polynomial).unwrap(),
            op.apply(&q, DiffMode::Polynomial).unwrap()
        );

        let z = parse_vars("z").unwrap();
        let d = parse_op("dz", &z).unwrap();
        assert!(d
            .apply_power(3, &parse_poly("z^2", &z).unwrap(), DiffMode::Polynomial)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let op = DiffOp::partial(2, 0);
        assert!(op.apply(&LaurentPoly::one(1), DiffMode::Laurent).is_err());
    }

    #[test]
    fn series_precision_drops_by_the_operator_order() {
        let ey = TruncSeries::variable(2, 1, 8).exp().unwrap();
        let op = DiffOp::new(LaurentPoly::from_int_terms(2, &[(&[0, 3], 1), (&[1, 1], 1)])).unwrap();
        let out = op.apply(&ey, DiffMode::Polynomial).unwrap();
        assert_eq!(out.precision_in(1), Some(5));
        assert_eq!(out.precision_in(0), None);
    }

    #[test]
    fn profile_of_cross_derivative_on_sum_of_squares() {
        let v = parse_vars("x,y").unwrap();
        let op = parse_op("dx*dy", &v).unwrap();
        let p = parse_poly("x^2 + y^2", &v).unwrap();
        let prof = vanishing_profile(&op, &p, &LaurentPoly::one(2), 3, DiffMode::Polynomial).unwrap();
        let fail = prof.first_plain_failure().unwrap();
        assert_eq!(fail.m, 2);
        assert_eq!(fail.plain, LaurentPoly::constant(2, int(8)));
    }

    #[test]
    fn profile_with_g_vanishes_eventually() {
        let v = parse_vars("x,y").unwrap();
        let op = parse_op("dy", &v).unwrap();
        let p = parse_poly("x", &v).unwrap();
        let g = parse_poly("y^2", &v).unwrap();
        let prof = vanishing_profile(&op, &p, &g, 5, DiffMode::Polynomial).unwrap();
        assert!(prof.hypothesis_holds());
        assert_eq!(prof.with_g_vanishes_from(), Some(3));
        assert_eq!(prof.first_with_g_failure().unwrap().m, 1);
    }

    #[test]
    fn profile_of_first_derivative_on_its_monomial() {
        let z = parse_vars("z").unwrap();
        let op = parse_op("dz", &z).unwrap();
        let p = parse_poly("z", &z).unwrap();
        let prof = vanishing_profile(&op, &p, &LaurentPoly::one(1), 4, DiffMode::Polynomial).unwrap();
        let fail = prof.first_plain_failure().unwrap();
        assert_eq!(fail.m, 1);
        assert_eq!(fail.plain, LaurentPoly::one(1));
        // Λ^m(z^m) = m!
        assert_eq!(prof.rows[3].plain, LaurentPoly::constant(1, int(24)));
    }

    #[test]
    fn profile_rejects_zero_p_and_zero_horizon() {
        let op = DiffOp::partial(1, 0);
        let one = LaurentPoly::one(1);
        assert!(vanishing_profile(&op, &LaurentPoly::zero(1), &one, 3, DiffMode::Laurent).is_err());
        assert_eq!(
            vanishing_profile(&op, &one, &one, 0, DiffMode::Laurent),
            Err(DiffError::EmptyHorizon)
        );
    }
}
