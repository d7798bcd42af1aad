//! Exact scalar and polynomial algebra.

mod binomial;
mod polynomial;
mod rational;

pub use binomial::binomial;
pub use polynomial::Polynomial;
pub use rational::{fraction_string, is_canonical, parse_fraction, rat, Rational};
