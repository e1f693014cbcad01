use num_traits::Zero;

use super::{first_beyond, record_sweep, require_arity, require_horizon, sweep, CaseError, CaseVerdict};
use crate::diff::{DiffMode, DiffOp};
use crate::poly::{factorial, ExponentVector, LaurentPoly, PolyError};
use crate::Rational;

/// The operator ∂_x − Φ(∂_y) in the variables (x, y).
pub fn phi_operator(phi: &LaurentPoly) -> Result<DiffOp, CaseError> {
    require_arity(1, phi.arity())?;
    let symbol = &LaurentPoly::var(2, 0) - &phi.embed(2, &[1])?;
    Ok(DiffOp::new(symbol)?)
}

fn require_flow_input(phi: &LaurentPoly, f: &LaurentPoly) -> Result<(), CaseError> {
    require_arity(1, phi.arity())?;
    require_arity(1, f.arity())?;
    phi.require_polynomial()?;
    f.require_polynomial()?;
    Ok(())
}

/// e^{xΦ(∂_y)} f(y) = Σ_k x^k Φ(∂_y)^k f / k!, a finite sum since Φ(0) = 0.
/// The result is checked to be annihilated by ∂_x − Φ(∂_y).
pub fn phi_flow(phi: &LaurentPoly, f: &LaurentPoly) -> Result<LaurentPoly, CaseError> {
    require_flow_input(phi, f)?;
    if !phi.constant_term().is_zero() {
        return Err(CaseError::Precondition("Φ must have order at least 1".into()));
    }
    let op = DiffOp::new(phi.clone())?;
    let mut term = f.clone();
    let mut out = LaurentPoly::zero(2);
    let mut k: u64 = 0;
    while !term.is_zero() {
        let lifted = term
            .embed(2, &[1])?
            .shift(&ExponentVector::new(vec![k as i64, 0]))
            .scale(&Rational::new(1.into(), factorial(k)));
        out = &out + &lifted;
        term = op.apply(&term, DiffMode::Polynomial)?;
        k += 1;
    }
    if !phi_operator(phi)?.apply(&out, DiffMode::Polynomial)?.is_zero() {
        return Err(CaseError::Invariant("flow is not annihilated by ∂_x − Φ(∂_y)".into()));
    }
    Ok(out)
}

/// y ↦ y − q·x, the pullback along (x, y) ↦ (x, y + q·x).
fn shear(p: &LaurentPoly, q: &Rational) -> Result<LaurentPoly, PolyError> {
    let value = &LaurentPoly::var(2, 1) - &LaurentPoly::var(2, 0).scale(q);
    p.substitute(1, &value)
}

/// Λ = ∂_x − Φ(∂_y) with P = e^{xΦ(∂_y)} f.
///
/// A linear term q₁ξ of Φ is removed by the shear y ↦ y − q₁x applied to P
/// and g. Afterwards Φ = 0 gives the bound deg_x g, and o(Φ) ≥ 2 gives
/// (o(Φ)·deg_x g + deg_y g)/(o(Φ) − deg f) once o(Φ) > deg f.
pub fn phi_case_check(phi: &LaurentPoly, f: &LaurentPoly, g: &LaurentPoly, horizon: u32) -> Result<CaseVerdict, CaseError> {
    require_horizon(horizon)?;
    require_flow_input(phi, f)?;
    require_arity(2, g.arity())?;
    g.require_polynomial()?;
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    let mut v = CaseVerdict::new("phi", horizon);
    let order_ok = phi.constant_term().is_zero();
    v.check("order(Phi) >= 1", order_ok);
    if !order_ok {
        return Ok(v.finish());
    }

    let op = phi_operator(phi)?;
    let p = phi_flow(phi, f)?;
    let q1 = phi.coeff_at(&ExponentVector::new(vec![1]));
    let (phi_t, p_t, g_t) = if q1.is_zero() {
        (phi.clone(), p.clone(), g.clone())
    } else {
        let phi_t = phi - &LaurentPoly::var(1, 0).scale(&q1);
        let p_t = shear(&p, &q1)?;
        if p_t != phi_flow(&phi_t, f)? {
            v.anomalies.push("sheared P differs from the flow of the reduced Φ".into());
        }
        v.notes.push(format!("sheared by q1={q1}"));
        (phi_t, p_t, shear(g, &q1)?)
    };

    let deg_f = f.total_degree().unwrap_or(0);
    let deg_x = g_t.degree_in(0).unwrap_or(0);
    let deg_y = g_t.degree_in(1).unwrap_or(0);
    let order = phi_t.order();
    v.bound = match order {
        None => Some(Rational::from_integer(deg_x.into())),
        Some(o) if o > deg_f => Some(Rational::new((o * deg_x + deg_y).into(), (o - deg_f).into())),
        Some(_) => None,
    };
    v.notes.push(match order {
        None => format!("reduced Phi=0 deg_x(g)={deg_x}"),
        Some(o) => format!("order={o} deg(f)={deg_f} deg_x(g)={deg_x} deg_y(g)={deg_y}"),
    });
    let from = v.bound.as_ref().map(first_beyond);

    let rows = sweep(&op, &p, g, horizon)?;
    let hypothesis = record_sweep(&mut v, &rows, from);
    if hypothesis && order.is_some_and(|o| o <= deg_f) {
        v.anomalies.push(format!("plain vanishes up to M but order {} <= deg f = {deg_f}", order.unwrap_or(0)));
    }
    if hypothesis && p_t != f.embed(2, &[1])? {
        v.anomalies.push("plain vanishes up to M but P is not f(y) after reduction".into());
    }

    if !q1.is_zero() {
        let op_t = phi_operator(&phi_t)?;
        let reduced = sweep(&op_t, &p_t, &g_t, horizon)?;
        for (i, ((_, orig), (_, red))) in rows.iter().zip(&reduced).enumerate() {
            if shear(orig, &q1)? != *red {
                v.anomalies.push(format!("sheared and original coordinates disagree at m={}", i + 1));
            }
        }
    }
    Ok(v.finish())
}
