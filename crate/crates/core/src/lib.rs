//! Exact Bernoulli numbers and polynomials, an umbral proof engine for the
//! generalized Carlitz identity, and grid certification of its special cases.
//!
//! Everything is computed over arbitrary-precision rationals; no floating
//! point is used anywhere in the computational path.

pub mod bernoulli;
pub mod cli;
pub mod error;
pub mod identities;
pub mod numkit;
pub mod series;
pub mod umbral;

pub use bernoulli::{BernoulliCache, BernoulliMethod};
pub use error::{Error, Result};
pub use identities::{IdentityName, IdentityReport};
pub use numkit::{binomial, Polynomial, Rational};
pub use series::TruncatedSeries;
pub use umbral::{IdentityParams, Parity, ProofTrace};
