//! Exact exponent calculus for dispersive regularity bootstraps.
//!
//! Everything here is exact: big rationals, a formal infinitesimal `ε` for
//! the `a±` exponents of the trade, polynomials and rational functions in the
//! regularity parameter `s`, certified sign determination on intervals, and
//! validated root isolation. On top of that substrate sit the domain layers:
//!
//! * [`spaces`] — Strichartz admissibility and exponent shifts, Sobolev
//!   embeddings in three spatial dimensions, two-space interpolation;
//! * [`product_laws`] — the bilinear wave-Sobolev estimate checker and the
//!   Sobolev multiplication law, plus a feasibility search over ε orders;
//! * [`coulomb`] / [`lorenz`] — the gauge bootstrap recurrences, their
//!   fixed points, the regularity thresholds, and the monotonicity lemma
//!   verifications that back them;
//! * [`fixtures`] — a curated suite of exponent instantiations, each bound
//!   to the checker that must accept (or reject) it;
//! * [`report`] — structured condition reports and document emission.
//!
//! No floating point is used anywhere in a verification path.

pub mod coulomb;
pub mod eps;
pub mod expr;
pub mod fixtures;
pub mod interval;
pub mod lorenz;
pub mod poly;
pub mod product_laws;
pub mod ratfn;
pub mod rational;
pub mod report;
pub mod roots;
pub mod spaces;
pub mod sym;

pub use eps::EpsExponent;
pub use interval::{ClosedInterval, SignVerdict};
pub use poly::PolynomialInS;
pub use ratfn::RationalFnInS;
pub use rational::Rational;
pub use sym::{SDomain, SymExponent};

/// Errors shared across the exponent-calculus layers.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate affine map: 1 - a vanishes identically")]
    DegenerateMap,
    #[error("division by a rational function that is identically zero")]
    DivisionByZero,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid conjugate exponent: {0}")]
    InvalidConjugate(String),
    #[error("interpolation parameter out of range: {0}")]
    ThetaOutOfRange(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("fixture definition error: {0}")]
    FixtureDefinition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
