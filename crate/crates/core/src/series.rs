//! Truncated Laurent series with per-variable precision tracking.
//!
//! A series variable `i` with precision `D` means every term whose exponent
//! in `i` exceeds `D` is unknown. Variables without a precision are exact:
//! the body is the whole story in that direction. Every operation stores the
//! largest precision it can prove, and coefficient queries beyond it fail.

use num_traits::One;
use thiserror::Error;

use crate::poly::{ExponentVector, LaurentPoly, PolyError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("precision vector has {got} entries, expected {expected}")]
    PrecisionArity { expected: usize, got: usize },
    #[error("coefficient at {exponent} lies beyond the tracked precision")]
    BeyondPrecision { exponent: ExponentVector },
    #[error("exp requires a series without constant term; offending term at {exponent}")]
    NonzeroConstantTerm { exponent: ExponentVector },
    #[error("exp requires nonnegative exponents in series variables; offending term at {exponent}")]
    NegativeSeriesExponent { exponent: ExponentVector },
    #[error("exp requires at least one series variable")]
    NoSeriesVariable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    body: LaurentPoly,
    precision: Vec<Option<i64>>,
}

impl TruncSeries {
    /// Builds a series, discarding body terms beyond the declared precision.
    pub fn new(body: LaurentPoly, precision: Vec<Option<i64>>) -> Result<Self, SeriesError> {
        if precision.len() != body.arity() {
            return Err(SeriesError::PrecisionArity {
                expected: body.arity(),
                got: precision.len(),
            });
        }
        Ok(Self::truncated(body, precision))
    }

    fn truncated(body: LaurentPoly, precision: Vec<Option<i64>>) -> Self {
        let within = |e: &ExponentVector| {
            precision
                .iter()
                .enumerate()
                .all(|(i, p)| p.is_none_or(|d| e.get(i) <= d))
        };
        let body = if body.iter().all(|(e, _)| within(e)) {
            body
        } else {
            LaurentPoly::from_terms(
                body.arity(),
                body.iter()
                    .filter(|(e, _)| within(e))
                    .map(|(e, c)| (e.clone(), c.clone())),
            )
            .expect("arity preserved")
        };
        TruncSeries { body, precision }
    }

    /// A series with no tracked variables; equivalent to the polynomial.
    pub fn exact(body: LaurentPoly) -> Self {
        let n = body.arity();
        TruncSeries {
            body,
            precision: vec![None; n],
        }
    }

    /// The variable z_index, tracked to precision `degree` in that variable.
    pub fn variable(arity: usize, index: usize, degree: i64) -> Self {
        let mut precision = vec![None; arity];
        precision[index] = Some(degree);
        Self::truncated(LaurentPoly::var(arity, index), precision)
    }

    pub fn arity(&self) -> usize {
        self.body.arity()
    }

    pub fn body(&self) -> &LaurentPoly {
        &self.body
    }

    pub fn into_body(self) -> LaurentPoly {
        self.body
    }

    pub fn precision(&self) -> &[Option<i64>] {
        &self.precision
    }

    pub fn precision_in(&self, index: usize) -> Option<i64> {
        self.precision[index]
    }

    /// True when the known part is zero. Says nothing about the tail.
    pub fn is_zero_to_precision(&self) -> bool {
        self.body.is_zero()
    }

    pub fn within_precision(&self, exponent: &ExponentVector) -> bool {
        self.precision
            .iter()
            .enumerate()
            .all(|(i, p)| p.is_none_or(|d| exponent.get(i) <= d))
    }

    /// The coefficient at `exponent`, refused if it lies in the unknown tail.
    pub fn coeff_at(&self, exponent: &ExponentVector) -> Result<Rational, SeriesError> {
        if !self.within_precision(exponent) {
            return Err(SeriesError::BeyondPrecision {
                exponent: exponent.clone(),
            });
        }
        Ok(self.body.coeff_at(exponent))
    }

    fn check_arity(&self, other: &TruncSeries) -> Result<(), SeriesError> {
        if self.arity() != other.arity() {
            return Err(PolyError::ArityMismatch {
                left: self.arity(),
                right: other.arity(),
            }
            .into());
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TruncSeries) -> Result<TruncSeries, SeriesError> {
        self.check_arity(other)?;
        let precision = self
            .precision
            .iter()
            .zip(&other.precision)
            .map(|(a, b)| min_precision(*a, *b))
            .collect();
        Ok(Self::truncated(self.body.checked_add(&other.body)?, precision))
    }

    pub fn checked_sub(&self, other: &TruncSeries) -> Result<TruncSeries, SeriesError> {
        self.checked_add(&other.scale(&-Rational::one()))
    }

    /// Product with the provable precision in every variable.
    ///
    /// The unknown tail of `a` starts above `D_a`, so its contribution to the
    /// product starts above `D_a + min(lo_b, D_b + 1)` where `lo_b` is the
    /// lowest exponent of `b` in that variable; symmetrically for `b`.
    pub fn checked_mul(&self, other: &TruncSeries) -> Result<TruncSeries, SeriesError> {
        self.check_arity(other)?;
        let precision = (0..self.arity())
            .map(|i| {
                let from_a = tail_bound(self.precision[i], other.lowest_in(i));
                let from_b = tail_bound(other.precision[i], self.lowest_in(i));
                min_precision(from_a, from_b)
            })
            .collect();
        Ok(Self::truncated(self.body.checked_mul(&other.body)?, precision))
    }

    /// Lowest exponent in variable `i` over body and tail. `None` means the
    /// series is exactly zero (no terms anywhere).
    fn lowest_in(&self, i: usize) -> Option<i64> {
        let body_low = self.body.min_degree_in(i);
        let tail_low = self.precision[i].map(|d| d + 1);
        match (body_low, tail_low) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Result<TruncSeries, SeriesError> {
        self.checked_mul(&TruncSeries::exact(p.clone()))
    }

    pub fn scale(&self, c: &Rational) -> TruncSeries {
        TruncSeries {
            body: self.body.scale(c),
            precision: self.precision.clone(),
        }
    }

    pub fn pow(&self, m: u32) -> Result<TruncSeries, SeriesError> {
        let mut result = TruncSeries::exact(LaurentPoly::one(self.arity()));
        for _ in 0..m {
            result = result.checked_mul(self)?;
        }
        Ok(result)
    }

    /// Lowers the precision of variable `index` by `by` (used after
    /// differentiation). Exact variables stay exact.
    pub fn reduce_precision(&self, index: usize, by: i64) -> TruncSeries {
        let mut precision = self.precision.clone();
        if let Some(d) = precision[index].as_mut() {
            *d -= by;
        }
        Self::truncated(self.body.clone(), precision)
    }

    /// exp(s) = Σ s^k/k!, truncated to the declared precision.
    ///
    /// Every term of `s` must carry a positive exponent in some tracked
    /// variable and no negative exponent in any tracked variable, which
    /// makes the sum finite after truncation.
    pub fn exp(&self) -> Result<TruncSeries, SeriesError> {
        let tracked: Vec<usize> = (0..self.arity())
            .filter(|&i| self.precision[i].is_some())
            .collect();
        if tracked.is_empty() {
            if self.body.is_zero() {
                return Ok(TruncSeries::exact(LaurentPoly::one(self.arity())));
            }
            return Err(SeriesError::NoSeriesVariable);
        }
        for (e, _) in self.body.iter() {
            if tracked.iter().any(|&i| e.get(i) < 0) {
                return Err(SeriesError::NegativeSeriesExponent { exponent: e.clone() });
            }
            if tracked.iter().all(|&i| e.get(i) == 0) {
                return Err(SeriesError::NonzeroConstantTerm { exponent: e.clone() });
            }
        }
        let mut sum = TruncSeries {
            body: LaurentPoly::one(self.arity()),
            precision: self.precision.clone(),
        };
        let mut term = sum.clone();
        let mut k = 0u64;
        loop {
            k += 1;
            let next = term
                .checked_mul(self)?
                .scale(&Rational::new(One::one(), k.into()));
            // powers of a positive-valuation series gain precision; clamp to the
            // declared window so the terms eventually leave it
            term = Self::truncated(next.body, self.precision.clone());
            if term.body.is_zero() {
                break;
            }
            sum = sum.checked_add(&term)?;
        }
        // every factor has nonnegative tracked exponents, so the declared
        // precision is provable
        Ok(Self::truncated(sum.body, self.precision.clone()))
    }
}

fn min_precision(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

fn tail_bound(precision: Option<i64>, other_lowest: Option<i64>) -> Option<i64> {
    match (precision, other_lowest) {
        (Some(d), Some(lo)) => Some(d + lo),
        // either no tail, or the other factor is exactly zero
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::factorial;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn e(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn exp_of_variable_has_taylor_coefficients() {
        let y = TruncSeries::variable(1, 0, 3);
        let ey = y.exp().unwrap();
        for j in 0..=3 {
            let expected = Rational::new(1.into(), factorial(j as u64));
            assert_eq!(ey.coeff_at(&e(&[j])).unwrap(), expected);
        }
        assert_eq!(ey.precision_in(0), Some(3));
        assert!(matches!(
            ey.coeff_at(&e(&[4])),
            Err(SeriesError::BeyondPrecision { .. })
        ));
    }

    #[test]
    fn exp_of_zero_is_one() {
        let zero = TruncSeries::new(LaurentPoly::zero(1), vec![Some(5)]).unwrap();
        let one = zero.exp().unwrap();
        assert_eq!(one.body(), &LaurentPoly::one(1));
        assert_eq!(one.precision_in(0), Some(5));
    }

    #[test]
    fn exp_of_scaled_variable_matches_term_by_term() {
        // term-by-term: (2y)^j / j! = 2^j/j! y^j
        let two_y = TruncSeries::variable(1, 0, 2).scale(&q(2, 1));
        let ex = two_y.exp().unwrap();
        assert_eq!(ex.body(), &LaurentPoly::from_int_terms(1, &[(&[0], 1), (&[1], 2), (&[2], 2)]));
    }

    #[test]
    fn exp_rejects_constant_term() {
        let s = TruncSeries::new(
            &LaurentPoly::one(1) + &LaurentPoly::var(1, 0),
            vec![Some(4)],
        )
        .unwrap();
        assert!(matches!(s.exp(), Err(SeriesError::NonzeroConstantTerm { .. })));
    }

    #[test]
    fn multiplication_keeps_precision_for_nonnegative_exponents() {
        let ey = TruncSeries::variable(1, 0, 4).exp().unwrap();
        let sq = ey.checked_mul(&ey).unwrap();
        assert_eq!(sq.precision_in(0), Some(4));
        // e^{2y}: 2^j / j!
        for j in 0..=4u32 {
            let expected = Rational::new(num_bigint::BigInt::from(2).pow(j), factorial(j as u64));
            assert_eq!(sq.coeff_at(&e(&[j as i64])).unwrap(), expected);
        }
    }

    #[test]
    fn negative_exponents_lower_the_precision() {
        let ey = TruncSeries::variable(1, 0, 6).exp().unwrap();
        let y_inv = LaurentPoly::monomial(e(&[-1]), q(1, 1));
        let f = ey.mul_poly(&y_inv).unwrap();
        assert_eq!(f.precision_in(0), Some(5));
        let f2 = f.checked_mul(&f).unwrap();
        assert_eq!(f2.precision_in(0), Some(4));
    }

    #[test]
    fn addition_takes_the_smaller_precision() {
        let a = TruncSeries::variable(1, 0, 3);
        let b = TruncSeries::variable(1, 0, 5);
        assert_eq!(a.checked_add(&b).unwrap().precision_in(0), Some(3));
        let exact = TruncSeries::exact(LaurentPoly::var(1, 0).pow(7));
        let s = a.checked_add(&exact).unwrap();
        assert_eq!(s.precision_in(0), Some(3));
        assert!(s.body().len() == 1);
    }

    #[test]
    fn product_with_exact_zero_is_exact() {
        let a = TruncSeries::variable(1, 0, 3);
        let z = TruncSeries::exact(LaurentPoly::zero(1));
        assert_eq!(a.checked_mul(&z).unwrap().precision_in(0), None);
    }
}
