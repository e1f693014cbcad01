//! Exact computations around the vanishing conjecture for differential
//! operators with constant coefficients.
//!
//! The building blocks are sparse Laurent polynomials over ℚ
//! ([`poly::LaurentPoly`]), truncated series ([`series::TruncSeries`]),
//! constant-coefficient operators ([`diff::DiffOp`]) and rational polytopes
//! with LP-backed queries ([`polytope::RationalPolytope`]). On top of them,
//! [`density`] and [`cases`] run finite-horizon checks of the proved cases,
//! their explicit bounds, and the two power-series counterexamples.
//!
//! Everything is exact; there is no floating point anywhere. A finite
//! horizon can only ever verify a statement up to that horizon.

pub mod cases;
pub mod density;
pub mod diff;
pub mod lp;
pub mod parse;
pub mod poly;
pub mod polytope;
pub mod record;
pub mod series;

pub type Rational = num_rational::BigRational;

pub use cases::{CaseStatus, CaseVerdict};
pub use density::{dk_check, ray_hits_support, RaySearchReport, Verdict};
pub use diff::{vanishing_profile, DiffMode, DiffOp, VanishingProfile};
pub use poly::{ExponentVector, LaurentPoly};
pub use polytope::{OrthantMeet, Point, RationalPolytope, SeparationCertificate};
pub use record::{Record, ToRecords};
pub use series::TruncSeries;
