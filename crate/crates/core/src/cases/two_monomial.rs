use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::monomial::{holomorphic_engine, moveaway_over};
use super::{monomial_case_check, record_sweep, require_arity, require_horizon, sweep, CaseError, CaseVerdict};
use crate::diff::{DiffMode, DiffOp};
use crate::poly::{ExponentVector, LaurentPoly, PolyError};
use crate::polytope::{OrthantMeet, Point, RationalPolytope};
use crate::Rational;

/// a·z^α + b·z^β, read either as an operator symbol or as a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoTerm {
    pub a: Rational,
    pub alpha: ExponentVector,
    pub b: Rational,
    pub beta: ExponentVector,
}

impl TwoTerm {
    pub fn new(a: Rational, alpha: ExponentVector, b: Rational, beta: ExponentVector) -> Self {
        TwoTerm { a, alpha, b, beta }
    }

    pub fn arity(&self) -> usize {
        self.alpha.arity()
    }

    pub fn to_poly(&self) -> LaurentPoly {
        &LaurentPoly::monomial(self.alpha.clone(), self.a.clone())
            + &LaurentPoly::monomial(self.beta.clone(), self.b.clone())
    }

    /// {kα + ℓβ : k + ℓ = m}.
    pub fn expected_support(&self, m: u32) -> BTreeSet<ExponentVector> {
        (0..=m as i64)
            .map(|k| self.alpha.scale(k).add(&self.beta.scale(m as i64 - k)))
            .collect()
    }

    fn validate(&self) -> Result<(), CaseError> {
        require_arity(self.alpha.arity(), self.beta.arity())?;
        for e in [&self.alpha, &self.beta] {
            if !e.is_nonnegative() {
                return Err(PolyError::NegativeExponent { exponent: e.clone() }.into());
            }
        }
        if self.alpha.degree() == self.beta.degree() {
            return Err(CaseError::Precondition("need |alpha| != |beta|".into()));
        }
        if self.a.is_zero() && self.b.is_zero() {
            return Err(PolyError::ZeroPolynomial.into());
        }
        Ok(())
    }

    /// The surviving exponent and coefficient when a or b vanishes.
    fn single(&self) -> Option<(&ExponentVector, &Rational)> {
        if self.a.is_zero() {
            Some((&self.beta, &self.b))
        } else if self.b.is_zero() {
            Some((&self.alpha, &self.a))
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Operator,
    Polynomial,
}

fn support_set(p: &LaurentPoly) -> BTreeSet<ExponentVector> {
    p.support().into_iter().collect()
}

fn engine(
    name: &str,
    side: Side,
    term: &TwoTerm,
    op: &DiffOp,
    p: &LaurentPoly,
    g: &LaurentPoly,
    horizon: u32,
) -> Result<CaseVerdict, CaseError> {
    let mut v = CaseVerdict::new(name, horizon);
    let two_term = term.to_poly();

    let mut power = LaurentPoly::one(term.arity());
    let mut formula = true;
    for m in 1..=horizon.min(5) {
        power = &power * &two_term;
        if support_set(&power) != term.expected_support(m) {
            formula = false;
            v.anomalies.push(format!("support of the {m}-th power differs from {{k*alpha + l*beta}}"));
        }
    }
    v.notes.push(format!("support formula holds for m <= {}: {formula}", horizon.min(5)));

    let poly_p = RationalPolytope::newton(p)?;
    let poly_op = RationalPolytope::newton(op.symbol())?;
    let sigma = poly_p.minkowski_diff(&poly_op)?;
    let meet = sigma.orthant_meet();
    let from = match &meet {
        OrthantMeet::Certificate(cert) => {
            let n = moveaway_over(&sigma, g, cert)?;
            v.notes.push(format!("certificate c={} delta={} N={n}", cert.c, cert.delta));
            v.bound = Some(Rational::from_integer((n - 1).into()));
            Some(n as u32)
        }
        OrthantMeet::Witness { point, coefficients } => {
            let width = poly_op.generators().len();
            let mut u = Point::zeros(term.arity());
            let mut w = Point::zeros(term.arity());
            for (idx, c) in coefficients.iter().enumerate() {
                u = u.add(&poly_p.generators()[idx / width].scale(c));
                w = w.add(&poly_op.generators()[idx % width].scale(c));
            }
            v.notes.push(format!("witness {point} = u - v with u={u} in Poly(P), v={w} in Poly(Lambda)"));
            None
        }
    };

    let rows = sweep(op, p, g, horizon)?;
    let hypothesis = record_sweep(&mut v, &rows, from);
    if meet.is_disjoint() && !hypothesis {
        v.anomalies.push("certificate found but plain does not vanish".into());
    }
    if !meet.is_disjoint() && hypothesis {
        v.notes.push(format!("plain must fail beyond M={horizon}"));
    }

    // each piece of Λ^m(P^m) vanishes on its own, in pairwise distinct degrees
    let mut op_power = DiffOp::new(LaurentPoly::one(op.arity()))?;
    let mut p_power = LaurentPoly::one(p.arity());
    for (i, (plain, _)) in rows.iter().enumerate() {
        let m = i as u32 + 1;
        op_power = op_power.compose(op)?;
        p_power = &p_power * p;
        let mut degrees = BTreeSet::new();
        for mu in term.expected_support(m) {
            let piece = match side {
                Side::Operator => DiffOp::monomial(mu)?.apply(&p_power, DiffMode::Polynomial)?,
                Side::Polynomial => op_power.apply(&LaurentPoly::monomial(mu, Rational::one()), DiffMode::Polynomial)?,
            };
            if piece.is_zero() {
                continue;
            }
            if plain.is_zero() {
                v.anomalies.push(format!("plain vanishes at m={m} but a single piece does not"));
            }
            match piece.homogeneous_degree() {
                Some(d) if degrees.insert(d) => {}
                _ => v.anomalies.push(format!("pieces at m={m} are not separated by degree")),
            }
        }
    }
    Ok(v.finish())
}

/// Λ = a∂^α + b∂^β with |α| ≠ |β| and P homogeneous.
///
/// Vanishing is decided by Σ = Poly(P) − Poly(Λ): a certificate gives the
/// move-away bound; a witness decomposes as u − v with u ≥ v, which rules
/// out the hypothesis for some m.
pub fn two_monomial_check(term: &TwoTerm, p: &LaurentPoly, g: &LaurentPoly, horizon: u32) -> Result<CaseVerdict, CaseError> {
    require_horizon(horizon)?;
    term.validate()?;
    require_arity(term.arity(), p.arity())?;
    require_arity(term.arity(), g.arity())?;
    p.require_polynomial()?;
    g.require_polynomial()?;
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    if p.homogeneous_degree().is_none() {
        return Err(CaseError::Precondition("P must be homogeneous".into()));
    }
    let op = DiffOp::new(term.to_poly())?;
    if let Some((gamma, _)) = term.single() {
        let f = p.shift(&gamma.neg());
        return holomorphic_engine("two-monomial", &op, p, &f, g, horizon);
    }
    engine("two-monomial", Side::Operator, term, &op, p, g, horizon)
}

/// P = a·z^α + b·z^β with |α| ≠ |β| and Λ homogeneous; the roles of P and Λ
/// are exchanged relative to [`two_monomial_check`].
pub fn homogeneous_two_monomial_p_check(
    op: &DiffOp,
    term: &TwoTerm,
    g: &LaurentPoly,
    horizon: u32,
) -> Result<CaseVerdict, CaseError> {
    require_horizon(horizon)?;
    term.validate()?;
    require_arity(term.arity(), op.arity())?;
    require_arity(term.arity(), g.arity())?;
    g.require_polynomial()?;
    if op.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    if op.symbol().homogeneous_degree().is_none() {
        return Err(CaseError::Precondition("the operator symbol must be homogeneous".into()));
    }
    if let Some((gamma, _)) = term.single() {
        return monomial_case_check(op, gamma, g, horizon);
    }
    let p = term.to_poly();
    engine("two-monomial-p", Side::Polynomial, term, op, &p, g, horizon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::CaseStatus;
    use crate::parse::{parse_op, parse_poly};

    fn e(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn certificate_branch() {
        let term = TwoTerm::new(r(1), e(&[2, 0]), r(1), e(&[0, 3]));
        let p = parse_poly("x*y", &xy()).unwrap();
        let v = two_monomial_check(&term, &p, &LaurentPoly::one(2), 6).unwrap();
        assert!(v.notes[1].starts_with("certificate"), "{:?}", v.notes);
        assert_eq!(v.verified, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(v.status, CaseStatus::Confirmed);
    }

    #[test]
    fn support_formula_small_case() {
        let term = TwoTerm::new(r(1), e(&[1, 0]), r(1), e(&[0, 2]));
        let expected: BTreeSet<_> = [e(&[2, 0]), e(&[1, 2]), e(&[0, 4])].into_iter().collect();
        assert_eq!(term.expected_support(2), expected);
        assert_eq!(support_set(&term.to_poly().pow(2)), expected);
    }

    #[test]
    fn one_variable_trivial_case() {
        let term = TwoTerm::new(r(1), e(&[1]), r(1), e(&[2]));
        let v = two_monomial_check(&term, &LaurentPoly::one(1), &LaurentPoly::one(1), 5).unwrap();
        assert!(v.notes[1].starts_with("certificate c=(1) delta=1"), "{:?}", v.notes);
        assert_eq!(v.status, CaseStatus::Confirmed);
    }

    #[test]
    fn witness_branch_and_failing_hypothesis() {
        // Λ = ∂_x + ∂_y², P = x: Σ = {(0,0), (1,-2)} contains 0
        let term = TwoTerm::new(r(1), e(&[1, 0]), r(1), e(&[0, 2]));
        let p = parse_poly("x", &xy()).unwrap();
        let v = two_monomial_check(&term, &p, &LaurentPoly::one(2), 3).unwrap();
        assert!(v.notes.iter().any(|n| n.starts_with("witness")));
        assert_eq!(v.status, CaseStatus::HypothesisFails);
        assert!(v.anomalies.is_empty(), "{:?}", v.anomalies);
    }

    #[test]
    fn mixed_signs() {
        let term = TwoTerm::new(r(2), e(&[3, 0]), r(-5), e(&[0, 1]));
        let p = parse_poly("x + y", &xy()).unwrap();
        let v = two_monomial_check(&term, &p, &LaurentPoly::one(2), 4).unwrap();
        assert!(v.anomalies.is_empty(), "{:?}", v.anomalies);
    }

    #[test]
    fn rejects_equal_degrees() {
        let term = TwoTerm::new(r(1), e(&[1, 0]), r(1), e(&[0, 1]));
        assert!(two_monomial_check(&term, &LaurentPoly::one(2), &LaurentPoly::one(2), 3).is_err());
    }

    #[test]
    fn p_side_examples() {
        let op = parse_op("dx*dy", &xy()).unwrap();
        let term = TwoTerm::new(r(1), e(&[2, 0]), r(1), e(&[0, 3]));
        let v = homogeneous_two_monomial_p_check(&op, &term, &LaurentPoly::one(2), 4).unwrap();
        assert!(v.notes.iter().any(|n| n.starts_with("witness")));
        assert_eq!(v.status, CaseStatus::HypothesisFails);
        assert_eq!(v.residuals[0].m, 2);

        let op = parse_op("dx", &xy()).unwrap();
        let term = TwoTerm::new(r(1), e(&[0, 1]), r(1), e(&[0, 2]));
        let g = parse_poly("x^2*y + y^3", &xy()).unwrap();
        let v = homogeneous_two_monomial_p_check(&op, &term, &g, 6).unwrap();
        assert_eq!(v.bound, Some(r(2)));
        assert_eq!(v.status, CaseStatus::Confirmed);

        // ∂_x² on P = x + y²: Λ^m(P^m) vanishes for every m
        let op = parse_op("dx^2", &xy()).unwrap();
        let term = TwoTerm::new(r(1), e(&[1, 0]), r(1), e(&[0, 2]));
        let v = homogeneous_two_monomial_p_check(&op, &term, &LaurentPoly::one(2), 5).unwrap();
        assert_eq!(v.status, CaseStatus::Confirmed);

        let inhom = parse_op("dx + dy^2", &xy()).unwrap();
        assert!(homogeneous_two_monomial_p_check(&inhom, &term, &LaurentPoly::one(2), 3).is_err());
    }
}
