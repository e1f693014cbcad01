use num_traits::One;

use super::{record_sweep, require_arity, require_horizon, sweep, CaseError, CaseVerdict};
use crate::diff::DiffOp;
use crate::poly::{ExponentVector, LaurentPoly, PolyError};
use crate::polytope::{OrthantMeet, Point, RationalPolytope};
use crate::Rational;

/// The largest move-away bound over the exponents of g; 1 for g = 0.
pub(crate) fn moveaway_over(
    sigma: &RationalPolytope,
    g: &LaurentPoly,
    cert: &crate::polytope::SeparationCertificate,
) -> Result<u64, CaseError> {
    let mut n = 1;
    for (gamma, _) in g.iter() {
        n = n.max(sigma.moveaway_bound(&Point(gamma.to_rational()), cert)?);
    }
    Ok(n)
}

/// Shared engine for Λ^m(P^m g) when Λ^m(P^m) vanishes exactly when the
/// holomorphic part of f^m does.
pub(crate) fn holomorphic_engine(
    name: &str,
    op: &DiffOp,
    p: &LaurentPoly,
    f: &LaurentPoly,
    g: &LaurentPoly,
    horizon: u32,
) -> Result<CaseVerdict, CaseError> {
    let mut v = CaseVerdict::new(name, horizon);
    v.notes.push(format!("f={f}"));
    let mut f_power = LaurentPoly::one(f.arity());
    let mut holo = Vec::with_capacity(horizon as usize);
    for _ in 0..horizon {
        f_power = &f_power * f;
        holo.push(f_power.holomorphic_part().is_zero());
    }
    v.check(
        format!("holomorphic part of f^m vanishes for m <= {horizon}"),
        holo.iter().all(|&h| h),
    );

    let sigma = RationalPolytope::newton(f)?;
    let meet = sigma.orthant_meet();
    let from = match &meet {
        OrthantMeet::Certificate(cert) => {
            let n = moveaway_over(&sigma, g, cert)?;
            v.notes.push(format!("certificate c={} delta={} N={n}", cert.c, cert.delta));
            v.bound = Some(Rational::from_integer((n - 1).into()));
            Some(n as u32)
        }
        OrthantMeet::Witness { point, .. } => {
            v.notes.push(format!("Poly(f) meets the orthant at {point}"));
            None
        }
    };

    let rows = sweep(op, p, g, horizon)?;
    let hypothesis = record_sweep(&mut v, &rows, from);
    for (i, ((plain, _), h)) in rows.iter().zip(&holo).enumerate() {
        if plain.is_zero() != *h {
            v.anomalies.push(format!("operator and holomorphic-part routes disagree at m={}", i + 1));
        }
    }
    if meet.is_disjoint() && !hypothesis {
        v.anomalies.push("certificate found but plain does not vanish".into());
    }
    Ok(v.finish())
}

/// P = z^α: vanishing is read off f(z) = Λ(z⁻¹)z^α.
pub fn monomial_case_check(
    op: &DiffOp,
    alpha: &ExponentVector,
    g: &LaurentPoly,
    horizon: u32,
) -> Result<CaseVerdict, CaseError> {
    require_horizon(horizon)?;
    require_arity(op.arity(), alpha.arity())?;
    require_arity(op.arity(), g.arity())?;
    g.require_polynomial()?;
    if !alpha.is_nonnegative() {
        return Err(PolyError::NegativeExponent { exponent: alpha.clone() }.into());
    }
    if op.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    let p = LaurentPoly::monomial(alpha.clone(), Rational::one());
    let f = op.symbol().invert_variables().shift(alpha);
    holomorphic_engine("monomial", op, &p, &f, g, horizon)
}

/// Λ = ∂^α with P general: f(z) = z^{−α}P(z).
pub fn monomial_operator_check(
    alpha: &ExponentVector,
    p: &LaurentPoly,
    g: &LaurentPoly,
    horizon: u32,
) -> Result<CaseVerdict, CaseError> {
    require_horizon(horizon)?;
    require_arity(alpha.arity(), p.arity())?;
    require_arity(alpha.arity(), g.arity())?;
    p.require_polynomial()?;
    g.require_polynomial()?;
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    let op = DiffOp::monomial(alpha.clone())?;
    let f = p.shift(&alpha.neg());
    holomorphic_engine("monomial-operator", &op, p, &f, g, horizon)
}
