use num_traits::Zero;

use super::expoly::{expoly_apply, ExpPoly};
use super::gaussian::GaussianRational;
use super::{first_beyond, record_sweep, require_arity, require_horizon, sweep, CaseError, CaseVerdict};
use crate::diff::DiffOp;
use crate::poly::{ExponentVector, LaurentPoly, PolyError};
use crate::Rational;

fn dense(p: &LaurentPoly) -> Vec<GaussianRational> {
    let len = p.degree_in(0).map_or(0, |d| d as usize + 1);
    let mut out = vec![GaussianRational::zero(); len];
    for (e, c) in p.iter() {
        out[e.get(0) as usize] = GaussianRational::real(c.clone());
    }
    out
}

fn from_expoly(e: &ExpPoly) -> Option<LaurentPoly> {
    let mut freqs = e.frequencies();
    let lambda = match freqs.next() {
        None => return Some(LaurentPoly::zero(1)),
        Some(l) => l,
    };
    if !lambda.is_zero() || freqs.next().is_some() {
        return None;
    }
    let mut out = LaurentPoly::zero(1);
    for (j, c) in e.coefficient(lambda)?.iter().enumerate() {
        if !c.im.is_zero() {
            return None;
        }
        out = &out + &LaurentPoly::monomial(ExponentVector::new(vec![j as i64]), c.re.clone());
    }
    Some(out)
}

/// One-variable case: with m₁ the multiplicity of 0 as a root of Λ(ξ) and
/// d = deg P < m₁, Λ^m(P^m g) = 0 for every m > deg g/(m₁ − d).
///
/// Each Λ^m(P^m g) is computed twice, directly and through the exponential
/// expansion with frequency 0; disagreement is an anomaly.
pub fn one_var_check(op: &DiffOp, p: &LaurentPoly, g: &LaurentPoly, horizon: u32) -> Result<CaseVerdict, CaseError> {
    require_horizon(horizon)?;
    require_arity(1, op.arity())?;
    require_arity(1, p.arity())?;
    require_arity(1, g.arity())?;
    if op.is_zero() || p.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    p.require_polynomial()?;
    g.require_polynomial()?;

    let m1 = op.symbol().order().unwrap_or(0);
    let d = p.total_degree().unwrap_or(0);
    let d_prime = g.total_degree().unwrap_or(0);
    let mut v = CaseVerdict::new("one-var", horizon);
    v.notes.push(format!("m1={m1} d={d} d'={d_prime}"));

    let bound = (m1 > d).then(|| Rational::new(d_prime.into(), (m1 - d).into()));
    let from = bound.as_ref().map(first_beyond);
    v.bound = bound;

    let rows = sweep(op, p, g, horizon)?;
    let hypothesis = record_sweep(&mut v, &rows, from);
    if hypothesis && d > m1 - 1 {
        v.anomalies.push(format!("plain vanishes up to M but deg P = {d} > m1 - 1 = {}", m1 - 1));
    }

    let symbol = dense(op.symbol());
    let mut symbol_power = vec![GaussianRational::one()];
    let mut p_power = LaurentPoly::one(1);
    for (i, (_, with_g)) in rows.iter().enumerate() {
        let m = i + 1;
        symbol_power = poly_mul(&symbol_power, &symbol);
        p_power = &p_power * p;
        let e = ExpPoly::term(GaussianRational::zero(), dense(&(&p_power * g)));
        match from_expoly(&expoly_apply(&symbol_power, &e)) {
            Some(ref via) if via == with_g => {}
            _ => v.anomalies.push(format!("exponential-expansion route disagrees at m={m}")),
        }
    }
    Ok(v.finish())
}

fn poly_mul(a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![GaussianRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}
