//! Finite-horizon searches for lattice points of Supp(P^m) on rays.
//!
//! For a rational point u of Poly(P), some power P^m has a support point on
//! the ray R_u from the origin through u; nothing bounds that m in general,
//! so every search here reports either what it found or that it was
//! inconclusive at its horizon. It never reports failure.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::poly::{ExponentVector, LaurentPoly, PolyError};
use crate::polytope::{Point, PolytopeError, RationalPolytope};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("point {0} is not in the Newton polytope")]
    NotInPolytope(Point),
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("homogeneous degree must be nonzero")]
    ZeroDegree,
    #[error("horizon must be at least 1")]
    EmptyHorizon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Found,
    Inconclusive,
    HypothesisFails,
    Consistent,
    PredictsNonzero,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Found => "found",
            Verdict::Inconclusive => "inconclusive",
            Verdict::HypothesisFails => "hypothesis-fails",
            Verdict::Consistent => "consistent",
            Verdict::PredictsNonzero => "predicts-nonzero",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayHit {
    pub m: u32,
    pub lambda: ExponentVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaySearchReport {
    pub u: Point,
    pub horizon: u32,
    /// Every support point on R_u, sorted by m.
    pub hits: Vec<RayHit>,
}

impl RaySearchReport {
    pub fn first_hit(&self) -> Option<u32> {
        self.hits.first().map(|h| h.m)
    }

    pub fn verdict(&self) -> Verdict {
        if self.hits.is_empty() {
            Verdict::Inconclusive
        } else {
            Verdict::Found
        }
    }

    /// The distinct m values with at least one hit.
    pub fn hit_exponents(&self) -> Vec<u32> {
        let mut ms: Vec<u32> = self.hits.iter().map(|h| h.m).collect();
        ms.dedup();
        ms
    }
}

/// Is the lattice point λ on R_u? For u ≠ 0 this means λ = k·u for some
/// k ≥ 0, decided by integer cross-multiplication; for u = 0 it means λ = 0.
pub fn on_ray(lambda: &ExponentVector, u: &Point) -> bool {
    if u.is_zero() {
        return lambda.is_zero();
    }
    let scale = u.denominator_lcm();
    let v: Vec<BigInt> = u
        .coords()
        .iter()
        .map(|a| (a * Rational::from_integer(scale.clone())).to_integer())
        .collect();
    let l: Vec<BigInt> = lambda.entries().iter().map(|&a| BigInt::from(a)).collect();
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            if &l[i] * &v[j] != &l[j] * &v[i] {
                return false;
            }
        }
    }
    let dot: BigInt = l.iter().zip(&v).map(|(a, b)| a * b).sum();
    !dot.is_negative()
}

fn check_membership(p: &LaurentPoly, u: &Point) -> Result<(), DensityError> {
    let np = RationalPolytope::newton(p)?;
    if np.contains_point(u)?.is_none() {
        return Err(DensityError::NotInPolytope(u.clone()));
    }
    Ok(())
}

/// Scans Supp(P^m) for m = 1..=horizon and collects every point on R_u.
pub fn ray_hits_support(p: &LaurentPoly, u: &Point, horizon: u32) -> Result<RaySearchReport, DensityError> {
    if horizon == 0 {
        return Err(DensityError::EmptyHorizon);
    }
    check_membership(p, u)?;
    let mut hits = Vec::new();
    let mut power = LaurentPoly::one(p.arity());
    for m in 1..=horizon {
        power = &power * p;
        for (lambda, _) in power.iter() {
            if on_ray(lambda, u) {
                hits.push(RayHit {
                    m,
                    lambda: lambda.clone(),
                });
            }
        }
    }
    Ok(RaySearchReport {
        u: u.clone(),
        horizon,
        hits,
    })
}

/// All m ≤ horizon with R_u ∩ Supp(P^m) ≠ ∅, increasing.
pub fn repeated_hits(p: &LaurentPoly, u: &Point, horizon: u32) -> Result<Vec<u32>, DensityError> {
    Ok(ray_hits_support(p, u, horizon)?.hit_exponents())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousDensity {
    pub degree: i64,
    /// m ≤ horizon with m·u ∈ Supp(P^m).
    pub hits: Vec<u32>,
    /// Ray hits that are not m·u; for homogeneous P of nonzero degree there
    /// must be none.
    pub anomalies: Vec<RayHit>,
}

/// For P homogeneous of degree d ≠ 0, the ray R_u meets m·Poly(P) only at
/// m·u, so the hits are exactly the m with m·u ∈ Supp(P^m).
pub fn homogeneous_density(p: &LaurentPoly, u: &Point, horizon: u32) -> Result<HomogeneousDensity, DensityError> {
    let degree = p.homogeneous_degree().ok_or(DensityError::Inhomogeneous)?;
    if degree == 0 {
        return Err(DensityError::ZeroDegree);
    }
    let report = ray_hits_support(p, u, horizon)?;
    let mut hits = Vec::new();
    let mut anomalies = Vec::new();
    for hit in report.hits {
        let target = u.scale(&Rational::from_integer(hit.m.into()));
        if Point(hit.lambda.to_rational()) == target {
            hits.push(hit.m);
        } else {
            anomalies.push(hit);
        }
    }
    hits.dedup();
    Ok(HomogeneousDensity {
        degree,
        hits,
        anomalies,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DkReport {
    pub horizon: u32,
    /// Constant terms of f^m for m = 1..=horizon.
    pub constant_terms: Vec<Rational>,
    /// Convex coefficients of 0 over Supp(f), when 0 ∈ Poly(f).
    pub origin_in_polytope: Option<Vec<Rational>>,
}

impl DkReport {
    /// The first m whose constant term is nonzero, with its value.
    pub fn first_nonzero(&self) -> Option<(u32, &Rational)> {
        self.constant_terms
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32 + 1, c))
    }

    pub fn verdict(&self) -> Verdict {
        match (self.first_nonzero(), &self.origin_in_polytope) {
            (Some(_), _) => Verdict::HypothesisFails,
            (None, None) => Verdict::Consistent,
            (None, Some(_)) => Verdict::PredictsNonzero,
        }
    }
}

/// Constant terms of f^m up to the horizon, classified against 0 ∈ Poly(f).
///
/// All-zero constant terms with 0 ∈ Poly(f) is only a horizon alarm: the
/// Duistermaat–van der Kallen theorem then guarantees a nonzero constant
/// term at some larger m.
pub fn dk_check(f: &LaurentPoly, horizon: u32) -> Result<DkReport, DensityError> {
    if horizon == 0 {
        return Err(DensityError::EmptyHorizon);
    }
    let np = RationalPolytope::newton(f)?;
    let origin_in_polytope = np.contains_point(&Point::zeros(f.arity()))?;
    let mut constant_terms = Vec::with_capacity(horizon as usize);
    let mut power = LaurentPoly::one(f.arity());
    for _ in 0..horizon {
        power = &power * f;
        constant_terms.push(power.constant_term());
    }
    Ok(DkReport {
        horizon,
        constant_terms,
        origin_in_polytope,
    })
}
