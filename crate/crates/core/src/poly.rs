//! Sparse multivariate Laurent polynomials over ℚ.
//!
//! A [`LaurentPoly`] is a finite map from [`ExponentVector`]s to nonzero
//! rationals. The map is kept canonical at all times: zero coefficients are
//! never stored, so the key set is exactly the support of the polynomial and
//! structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("exponent {exponent} has a negative entry where a polynomial was required")]
    NegativeExponent { exponent: ExponentVector },
    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("arity must be at least 1")]
    EmptyArity,
}

/// A point of ℤⁿ indexing the Laurent monomial z^α.
///
/// Ordering is graded lexicographic: total degree first, ties broken by
/// plain lexicographic comparison of the entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(arity: usize) -> Self {
        ExponentVector(vec![0; arity])
    }

    /// The i-th standard basis vector.
    pub fn unit(arity: usize, index: usize) -> Self {
        let mut v = vec![0; arity];
        v[index] = 1;
        ExponentVector(v)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, index: usize) -> i64 {
        self.0[index]
    }

    /// |α|, the coordinate sum (the generalized degree of z^α).
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// True when every entry is ≥ 0, i.e. α ∈ ℕⁿ.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Componentwise partial order: `self ≥ other` iff `self − other ∈ ℕⁿ`.
    pub fn dominates(&self, other: &ExponentVector) -> bool {
        debug_assert_eq!(self.arity(), other.arity());
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.arity(), other.arity());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.arity(), other.arity());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| a * k).collect())
    }

    /// The exponent as a point of ℚⁿ.
    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|&e| Rational::from_integer(e.into())).collect()
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Default variable names used by `Display`: `z` for one variable, `x,y`
/// for two, `x,y,z` for three and `z1..zn` beyond that.
pub fn default_var_names(arity: usize) -> Vec<String> {
    match arity {
        1 => vec!["z".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        n => (1..=n).map(|i| format!("z{i}")).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    arity: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl LaurentPoly {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "arity must be at least 1");
        LaurentPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        Self::monomial(ExponentVector::zeros(arity), c)
    }

    pub fn monomial(exponent: ExponentVector, c: Rational) -> Self {
        let mut p = Self::zero(exponent.arity());
        if !c.is_zero() {
            p.terms.insert(exponent, c);
        }
        p
    }

    /// The coordinate function z_i.
    pub fn var(arity: usize, index: usize) -> Self {
        Self::monomial(ExponentVector::unit(arity, index), Rational::one())
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, summing
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        if arity == 0 {
            return Err(PolyError::EmptyArity);
        }
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            if e.arity() != arity {
                return Err(PolyError::ArityMismatch {
                    left: arity,
                    right: e.arity(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Convenience constructor for tests and examples: integer exponents
    /// and integer coefficients.
    pub fn from_int_terms(arity: usize, terms: &[(&[i64], i64)]) -> Self {
        Self::from_terms(
            arity,
            terms
                .iter()
                .map(|(e, c)| (ExponentVector::new(e.to_vec()), Rational::from_integer((*c).into()))),
        )
        .expect("exponent arity matches")
    }

    pub(crate) fn add_term(&mut self, exponent: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lexicographic order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter().rev()
    }

    /// Supp(P), in descending graded-lexicographic order.
    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().rev().cloned().collect()
    }

    pub fn contains_exponent(&self, exponent: &ExponentVector) -> bool {
        self.terms.contains_key(exponent)
    }

    /// [z^α]P, zero when α ∉ Supp(P).
    pub fn coeff_at(&self, exponent: &ExponentVector) -> Rational {
        self.terms.get(exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff_at(&ExponentVector::zeros(self.arity))
    }

    /// The sub-sum of terms whose exponents lie in ℕⁿ.
    pub fn holomorphic_part(&self) -> LaurentPoly {
        LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.is_nonnegative())
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when every exponent is in ℕⁿ.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_nonnegative)
    }

    pub fn require_polynomial(&self) -> Result<(), PolyError> {
        match self.terms.keys().find(|e| !e.is_nonnegative()) {
            Some(e) => Err(PolyError::NegativeExponent { exponent: e.clone() }),
            None => Ok(()),
        }
    }

    /// Largest generalized degree |α| over the support; `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    /// Largest exponent of variable `index`; `None` for zero.
    pub fn degree_in(&self, index: usize) -> Option<i64> {
        self.terms.keys().map(|e| e.get(index)).max()
    }

    /// Smallest exponent of variable `index`; `None` for zero.
    pub fn min_degree_in(&self, index: usize) -> Option<i64> {
        self.terms.keys().map(|e| e.get(index)).min()
    }

    /// Smallest generalized degree over the support; `None` for zero.
    pub fn order(&self) -> Option<i64> {
        self.terms.keys().map(ExponentVector::degree).min()
    }

    /// The common generalized degree when P is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(ExponentVector::degree);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    fn check_arity(&self, other: &LaurentPoly) -> Result<(), PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_arity(other)?;
        let mut out = LaurentPoly::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.arity);
        }
        LaurentPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial z^shift.
    pub fn shift(&self, shift: &ExponentVector) -> LaurentPoly {
        assert_eq!(shift.arity(), self.arity, "arity mismatch");
        LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(shift), c.clone()))
                .collect(),
        }
    }

    /// P^m by repeated squaring, with P⁰ = 1.
    pub fn pow(&self, m: u32) -> LaurentPoly {
        let mut result = LaurentPoly::one(self.arity);
        let mut base = self.clone();
        let mut k = m;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// P(z⁻¹): every exponent negated.
    pub fn invert_variables(&self) -> LaurentPoly {
        LaurentPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.neg(), c.clone())).collect(),
        }
    }

    /// Applies `f` to every exponent vector, re-canonicalizing.
    pub fn map_exponents<F>(&self, arity: usize, mut f: F) -> LaurentPoly
    where
        F: FnMut(&ExponentVector) -> ExponentVector,
    {
        let mut out = LaurentPoly::zero(arity);
        for (e, c) in &self.terms {
            let image = f(e);
            assert_eq!(image.arity(), arity, "exponent map changed arity inconsistently");
            out.add_term(image, c.clone());
        }
        out
    }

    /// Re-embeds into `arity` variables, sending variable `i` to
    /// `positions[i]`.
    pub fn embed(&self, arity: usize, positions: &[usize]) -> Result<LaurentPoly, PolyError> {
        if positions.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                left: self.arity,
                right: positions.len(),
            });
        }
        if let Some(&p) = positions.iter().find(|&&p| p >= arity) {
            return Err(PolyError::VariableOutOfRange { index: p, arity });
        }
        Ok(self.map_exponents(arity, |e| {
            let mut v = vec![0; arity];
            for (i, &p) in positions.iter().enumerate() {
                v[p] += e.get(i);
            }
            ExponentVector::new(v)
        }))
    }

    /// Substitutes the polynomial `value` for variable `index`. The variable
    /// must occur with nonnegative exponents only.
    pub fn substitute(&self, index: usize, value: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_arity(value)?;
        if index >= self.arity {
            return Err(PolyError::VariableOutOfRange {
                index,
                arity: self.arity,
            });
        }
        if let Some(e) = self.terms.keys().find(|e| e.get(index) < 0) {
            return Err(PolyError::NegativeExponent { exponent: e.clone() });
        }
        let max = self.degree_in(index).unwrap_or(0).max(0) as u32;
        let powers: Vec<LaurentPoly> = std::iter::successors(Some(LaurentPoly::one(self.arity)), |p| {
            Some(p * value)
        })
        .take(max as usize + 1)
        .collect();
        let mut out = LaurentPoly::zero(self.arity);
        for (e, c) in &self.terms {
            let k = e.get(index) as usize;
            let mut rest = e.entries().to_vec();
            rest[index] = 0;
            let term = powers[k].shift(&ExponentVector::new(rest)).scale(c);
            out = &out + &term;
        }
        Ok(out)
    }

    /// Canonical text with the given variable names, e.g. `3/4*x^-2*y^3 - 1`.
    pub fn to_text(&self, vars: &[String]) -> String {
        assert_eq!(vars.len(), self.arity, "one name per variable");
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            let mono = monomial_text(e, vars);
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

fn monomial_text(e: &ExponentVector, vars: &[String]) -> String {
    let factors: Vec<String> = e
        .entries()
        .iter()
        .zip(vars)
        .filter(|(&k, _)| k != 0)
        .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    factors.join("*")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&default_var_names(self.arity)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("arity mismatch in polynomial addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("arity mismatch in polynomial subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("arity mismatch in polynomial multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Falling factorial b(b−1)⋯(b−k+1); equals 1 when k = 0.
pub fn falling_factorial(b: i64, k: u64) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, i| acc * (b - i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(arity: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(arity, terms)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn addition_cancels_and_keeps_canonical_form() {
        let x_plus_y = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let minus_x = p(2, &[(&[1, 0], -1)]);
        assert_eq!(&x_plus_y + &minus_x, p(2, &[(&[0, 1], 1)]));
        assert_eq!(&x_plus_y + &LaurentPoly::zero(2), x_plus_y);

        let a = p(1, &[(&[-1], 1), (&[0], 1)]);
        let b = p(1, &[(&[-1], 1), (&[0], -1)]);
        let sum = &a + &b;
        assert_eq!(sum, p(1, &[(&[-1], 2)]));
        assert_eq!(sum.len(), 1);
    }

    #[test]
    fn multiplication_examples() {
        let x_plus_y = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let x_minus_y = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(&x_plus_y * &x_minus_y, p(2, &[(&[2, 0], 1), (&[0, 2], -1)]));

        let x = p(1, &[(&[1], 1)]);
        let x_inv = p(1, &[(&[-1], 1)]);
        assert_eq!(&x_inv * &x, LaurentPoly::one(1));

        let a = p(2, &[(&[0, 0], 1), (&[-1, 0], 1)]);
        let b = p(2, &[(&[0, 0], 1), (&[0, -1], 1)]);
        assert_eq!(
            &a * &b,
            p(2, &[(&[0, 0], 1), (&[-1, 0], 1), (&[0, -1], 1), (&[-1, -1], 1)])
        );
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = LaurentPoly::one(1);
        let b = LaurentPoly::one(2);
        assert_eq!(
            a.checked_add(&b),
            Err(PolyError::ArityMismatch { left: 1, right: 2 })
        );
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn powers() {
        let a = p(1, &[(&[0], 1), (&[-1], 1)]);
        assert_eq!(a.pow(2), p(1, &[(&[0], 1), (&[-1], 2), (&[-2], 1)]));
        assert_eq!(a.pow(1), a);
        assert_eq!(a.pow(0), LaurentPoly::one(1));

        let x_plus_y = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let cubed = &(&x_plus_y * &x_plus_y) * &x_plus_y;
        assert_eq!(x_plus_y.pow(3), cubed);
        assert_eq!(
            cubed,
            p(2, &[(&[3, 0], 1), (&[2, 1], 3), (&[1, 2], 3), (&[0, 3], 1)])
        );
    }

    #[test]
    fn coefficients() {
        let a = p(2, &[(&[2, 0], 1), (&[0, 2], -1)]);
        assert_eq!(a.coeff_at(&ExponentVector::new(vec![2, 0])), q(1, 1));
        assert_eq!(a.coeff_at(&ExponentVector::new(vec![1, 1])), q(0, 1));
        let b = p(1, &[(&[0], 1), (&[-1], 1)]).pow(2);
        assert_eq!(b.coeff_at(&ExponentVector::new(vec![-1])), q(2, 1));
    }

    #[test]
    fn holomorphic_parts() {
        let a = p(2, &[(&[-1, 1], 1), (&[1, 1], 1)]);
        assert_eq!(a.holomorphic_part(), p(2, &[(&[1, 1], 1)]));
        let b = p(2, &[(&[-1, 0], 1), (&[-2, 1], 1)]);
        assert!(b.holomorphic_part().is_zero());
        let c = p(1, &[(&[0], 1), (&[-1], 1)]);
        assert_eq!(c.holomorphic_part(), LaurentPoly::one(1));
    }

    #[test]
    fn graded_lex_order_drives_printing() {
        let a = p(2, &[(&[0, 2], -1), (&[2, 0], 1), (&[0, 0], 3), (&[1, 1], 1)]);
        assert_eq!(a.to_string(), "x^2 + x*y - y^2 + 3");
        let b = LaurentPoly::from_terms(
            2,
            vec![
                (ExponentVector::new(vec![-2, 3]), q(3, 4)),
                (ExponentVector::zeros(2), q(-1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(b.to_string(), "3/4*x^-2*y^3 - 1");
        assert_eq!(LaurentPoly::zero(3).to_string(), "0");
        assert_eq!((-&LaurentPoly::var(1, 0)).to_string(), "-z");
    }

    #[test]
    fn substitution_is_exact() {
        // (x + y)^2 with y -> y - x gives y^2
        let sq = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]).pow(2);
        let y_minus_x = p(2, &[(&[0, 1], 1), (&[1, 0], -1)]);
        assert_eq!(sq.substitute(1, &y_minus_x).unwrap(), p(2, &[(&[0, 2], 1)]));
        let bad = p(2, &[(&[0, -1], 1)]);
        assert!(bad.substitute(1, &y_minus_x).is_err());
    }

    #[test]
    fn homogeneity() {
        assert_eq!(p(2, &[(&[2, 0], 1), (&[1, 1], 5)]).homogeneous_degree(), Some(2));
        assert_eq!(p(2, &[(&[2, 0], 1), (&[1, 0], 5)]).homogeneous_degree(), None);
        assert_eq!(p(2, &[(&[-1, 0], 1), (&[0, -1], 5)]).homogeneous_degree(), Some(-1));
        assert_eq!(LaurentPoly::zero(2).homogeneous_degree(), None);
    }

    #[test]
    fn dominance_is_componentwise() {
        let a = ExponentVector::new(vec![2, 1]);
        assert!(a.dominates(&ExponentVector::new(vec![1, 1])));
        assert!(!a.dominates(&ExponentVector::new(vec![0, 2])));
        assert!(a.dominates(&a));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(falling_factorial(-1, 1), BigInt::from(-1));
        assert_eq!(falling_factorial(-1, 2), BigInt::from(2));
        assert_eq!(falling_factorial(1, 2), BigInt::from(0));
        assert_eq!(falling_factorial(7, 0), BigInt::from(1));
    }
}
