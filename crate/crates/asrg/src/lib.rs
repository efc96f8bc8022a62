//! Constructions and feasibility analysis for strongly regular and
//! approximately strongly regular graphs.
//!
//! The crate builds orthogonality graphs over odd-characteristic finite
//! fields and cap-associated graphs, measures how far arbitrary regular
//! graphs are from strong regularity (the parameters `(v, k, λ, μ; σ)`),
//! and evaluates Krein-type and absolute-type existence bounds both in
//! their classical forms and in regular-graph variants, exactly where the
//! arithmetic is exact and in log-space for asymptotic family scans.

pub mod bounds;
pub mod constructions;
pub mod field;
pub mod geometry;
pub mod graph;
pub mod report;
pub mod spectral;

/// Scalar used for all floating-point spectral work.
pub type Real = f64;

/// Exact rational scalar used for pair statistics and identity checks.
pub type Rat = num_rational::BigRational;

use num_bigint::BigInt;

/// Builds a [`Rat`] from an integer numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Converts an exact rational to the nearest [`Real`].
pub fn rat_to_real(r: &Rat) -> Real {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}
