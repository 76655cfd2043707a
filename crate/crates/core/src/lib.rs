//! Exact arithmetic for the cohomology shadow of special cycles on orthogonal
//! Shimura varieties attached to even unimodular lattices of signature `(n, 2)`.
//!
//! Classes of Heegner divisors and of the Kähler form are modeled as linear
//! functionals on the space `M_k` of level-one modular forms of weight
//! `k = 1 + n/2`: the `m`-th Heegner divisor corresponds to the coefficient
//! functional `c_m`, the Kähler class to `-c_0`. Everything is computed over
//! the rationals with no rounding.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, caching and the
//! command-line front end live in the `spcycles` crate.
//!
//! Modules:
//!
//! - [`numtheory`]: Bernoulli numbers, zeta at negative integers, divisor sums, Möbius.
//! - [`qseries`]: truncated q-expansions, Eisenstein series, `Δ`, Miller bases.
//! - [`classes`]: functional combinations for `H_m`, `P_m`, `ω` and the Eisenstein identities.
//! - [`cones`]: oriented rays, exact LP, pointedness, membership and extremal rays.
//! - [`lattice`]: even unimodular Gram matrices, moment matrices, binary reduction.
#![no_std]

extern crate alloc;

pub mod classes;
pub mod cones;
mod error;
pub mod lattice;
mod linalg;
pub mod numtheory;
pub mod qseries;

pub use error::Error;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type ExactRational = num_rational::BigRational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Shorthand for building an [`ExactRational`] from a machine integer.
pub fn rat(n: i64) -> ExactRational {
    ExactRational::from_integer(n.into())
}

/// Shorthand for `num / den`; panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> ExactRational {
    ExactRational::new(num.into(), den.into())
}
