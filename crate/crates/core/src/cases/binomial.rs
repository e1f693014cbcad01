use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Signed, Zero};

use super::CaseError;
use crate::poly::factorial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialGap {
    pub d: u64,
    pub r: u64,
    /// C(2d, r) ≥ 2^r·C(d, r).
    pub gap_holds: bool,
    /// Leading coefficient of Λ²(P²) at x = 0 for f = y^d, Φ = ξ^r, when r ≥ 2.
    pub expression: Option<BigInt>,
}

impl BinomialGap {
    pub fn holds(&self) -> bool {
        self.gap_holds && self.expression.as_ref().map_or(true, |e| e.is_positive())
    }
}

fn ratio(a: u64, b: u64) -> BigInt {
    factorial(a) / factorial(b)
}

pub fn binomial_gap(d: u64, r: u64) -> Result<BinomialGap, CaseError> {
    if d < r {
        return Err(CaseError::Precondition(format!("need d >= r, got d={d}, r={r}")));
    }
    let lhs = binomial(BigInt::from(2 * d), BigInt::from(r));
    let rhs = (BigInt::from(1) << r) * binomial(BigInt::from(d), BigInt::from(r));
    let expression = (r >= 2).then(|| {
        let v = if d < 2 * r { BigInt::zero() } else { ratio(d - r, d - 2 * r) };
        let dr = ratio(d, d - r);
        BigInt::from(2) * &v * &dr + BigInt::from(2) * &dr * &dr
            - BigInt::from(4) * &dr * ratio(2 * d - r, 2 * d - 2 * r)
            + ratio(2 * d, 2 * d - 2 * r)
    });
    Ok(BinomialGap {
        d,
        r,
        gap_holds: lhs >= rhs,
        expression,
    })
}

/// Both inequalities behind the order bound for Φ: the binomial gap and,
/// for r ≥ 2, strict positivity of the leading-coefficient expression.
pub fn binomial_gap_check(d: u64, r: u64) -> Result<bool, CaseError> {
    Ok(binomial_gap(d, r)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff::{DiffMode, DiffOp};
    use crate::poly::{ExponentVector, LaurentPoly};

    #[test]
    fn small_cases() {
        assert!(binomial_gap_check(4, 2).unwrap());
        assert!(binomial_gap_check(5, 5).unwrap());
        let g = binomial_gap(3, 0).unwrap();
        assert!(g.gap_holds && g.expression.is_none());
        assert!(binomial_gap(2, 3).is_err());
    }

    /// 2fΦ²f + 2(Φf)² − 4Φ(fΦf) + Φ²(f²) for f = y^d, Φ = ∂^r, read at y^{2d−2r}.
    fn leading_coefficient(d: i64, r: i64) -> BigInt {
        let f = LaurentPoly::monomial(ExponentVector::new(vec![d]), crate::Rational::from_integer(1.into()));
        let phi = DiffOp::monomial(ExponentVector::new(vec![r])).unwrap();
        let phi2 = phi.pow(2);
        let ap = |op: &DiffOp, p: &LaurentPoly| op.apply(p, DiffMode::Polynomial).unwrap();
        let two = crate::Rational::from_integer(2.into());
        let four = crate::Rational::from_integer(4.into());
        let phi_f = ap(&phi, &f);
        let total = &(&(&f * &ap(&phi2, &f)).scale(&two) + &(&phi_f * &phi_f).scale(&two))
            - &ap(&phi, &(&f * &phi_f)).scale(&four);
        let total = &total + &ap(&phi2, &(&f * &f));
        total.coeff_at(&ExponentVector::new(vec![2 * d - 2 * r])).to_integer()
    }

    #[test]
    fn expression_matches_symbolic_leading_coefficient() {
        for r in 2..=5 {
            for d in r..=10 {
                let got = binomial_gap(d as u64, r as u64).unwrap().expression.unwrap();
                assert_eq!(got, leading_coefficient(d, r), "d={d} r={r}");
            }
        }
    }
}
