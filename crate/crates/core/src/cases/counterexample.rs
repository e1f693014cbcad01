use num_traits::{One, Zero};

use super::{require_horizon, CaseError};
use crate::diff::{DiffMode, DiffOp};
use crate::poly::{factorial, ExponentVector, LaurentPoly};
use crate::series::TruncSeries;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleRow {
    pub m: u32,
    /// Precision in y of the compared values.
    pub precision: i64,
    pub checks: Vec<(String, bool)>,
    /// Each compared value, for reporting.
    pub values: Vec<(String, LaurentPoly)>,
}

impl CounterexampleRow {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub name: String,
    pub horizon: u32,
    pub precision: i64,
    pub rows: Vec<CounterexampleRow>,
}

impl CounterexampleReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(CounterexampleRow::holds)
    }
}

fn y_exp(precision: i64) -> Result<TruncSeries, CaseError> {
    Ok(TruncSeries::variable(2, 1, precision).exp()?)
}

/// c·Σ_{j ≤ precision} y^j/j! in (x, y).
fn scaled_exp(c: &Rational, precision: i64) -> LaurentPoly {
    let terms = (0..=precision).map(|j| {
        (
            ExponentVector::new(vec![0, j]),
            c / Rational::from_integer(factorial(j as u64)),
        )
    });
    LaurentPoly::from_terms(2, terms).expect("arity 2")
}

/// Λ = ∂_y∂_x and P = x + e^y, with e^y truncated at y^D. For each m ≤ M:
/// Λ^m(P^m) = 0, Λ^m(P^{m+1}) = (m+1)!·e^y and Λ^m(P^m x) = m·m!·e^y, the
/// last two compared on y^j for j ≤ D − m.
pub fn counterexample_ddv(horizon: u32, precision: i64) -> Result<CounterexampleReport, CaseError> {
    require_horizon(horizon)?;
    if precision < horizon as i64 + 2 {
        return Err(CaseError::Precondition(format!(
            "precision D={precision} must be at least M+2={}",
            horizon + 2
        )));
    }
    let e = y_exp(precision)?;
    let p = e.checked_add(&TruncSeries::exact(LaurentPoly::var(2, 0)))?;
    let x = LaurentPoly::var(2, 0);
    let op = DiffOp::monomial(ExponentVector::new(vec![1, 1]))?;

    let mut rows = Vec::with_capacity(horizon as usize);
    let mut p_power = p.clone();
    for m in 1..=horizon {
        let p_next = p_power.checked_mul(&p)?;
        let plain = op.apply_power(m, &p_power, DiffMode::Polynomial)?;
        let next = op.apply_power(m, &p_next, DiffMode::Polynomial)?;
        let with_x = op.apply_power(m, &p_power.mul_poly(&x)?, DiffMode::Polynomial)?;
        let window = precision - m as i64;
        let m_fact = Rational::from_integer(factorial(m as u64));
        let expect_next = scaled_exp(&(&m_fact * Rational::from_integer((m + 1).into())), window);
        let expect_with_x = scaled_exp(&(&m_fact * Rational::from_integer(m.into())), window);
        let checks = vec![
            ("plain = 0".to_string(), plain.is_zero_to_precision()),
            (
                "next = (m+1)!*e^y".to_string(),
                next.precision_in(1) == Some(window) && *next.body() == expect_next,
            ),
            (
                "with-x = m*m!*e^y".to_string(),
                with_x.precision_in(1) == Some(window) && *with_x.body() == expect_with_x,
            ),
            ("next has no x".to_string(), next.body().degree_in(0).is_none_or(|d| d == 0)),
        ];
        rows.push(CounterexampleRow {
            m,
            precision: window,
            checks,
            values: vec![
                ("plain".into(), plain.into_body()),
                ("next".into(), next.into_body()),
                ("with-x".into(), with_x.into_body()),
            ],
        });
        p_power = p_next;
    }
    Ok(CounterexampleReport {
        name: "ddv".into(),
        horizon,
        precision,
        rows,
    })
}

/// f = y⁻¹(1 + x⁻¹e^y) with e^y truncated at y^D, g = x. For each m ≤ M the
/// constant term of f^m is 0 and that of f^m·x is 1/(m−1)!.
pub fn counterexample_dk(horizon: u32, precision: i64) -> Result<CounterexampleReport, CaseError> {
    require_horizon(horizon)?;
    if precision < horizon as i64 {
        return Err(CaseError::Precondition(format!(
            "precision D={precision} must be at least M={horizon}"
        )));
    }
    let e = y_exp(precision)?;
    let inner = e
        .mul_poly(&LaurentPoly::monomial(ExponentVector::new(vec![-1, 0]), Rational::one()))?
        .checked_add(&TruncSeries::exact(LaurentPoly::one(2)))?;
    let f = inner.mul_poly(&LaurentPoly::monomial(ExponentVector::new(vec![0, -1]), Rational::one()))?;
    let x = LaurentPoly::var(2, 0);
    let origin = ExponentVector::zeros(2);

    let mut rows = Vec::with_capacity(horizon as usize);
    let mut f_power = TruncSeries::exact(LaurentPoly::one(2));
    for m in 1..=horizon {
        f_power = f_power.checked_mul(&f)?;
        let with_x = f_power.mul_poly(&x)?;
        let c_plain = f_power.coeff_at(&origin)?;
        let c_with_x = with_x.coeff_at(&origin)?;
        let expected = Rational::new(1.into(), factorial(m as u64 - 1));
        let x_range = f_power.body().min_degree_in(0).is_none_or(|d| d >= -(m as i64))
            && f_power.body().degree_in(0).is_none_or(|d| d <= 0);
        let checks = vec![
            ("constant term of f^m = 0".to_string(), c_plain.is_zero()),
            ("constant term of f^m*x = 1/(m-1)!".to_string(), c_with_x == expected),
            ("x-exponents in -m..0".to_string(), x_range),
        ];
        rows.push(CounterexampleRow {
            m,
            precision: f_power.precision_in(1).unwrap_or(precision),
            checks,
            values: vec![
                ("constant".into(), LaurentPoly::constant(2, c_plain)),
                ("constant-with-x".into(), LaurentPoly::constant(2, c_with_x)),
            ],
        });
    }
    Ok(CounterexampleReport {
        name: "dk".into(),
        horizon,
        precision,
        rows,
    })
}
