use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// Exact rational scalar. `BigRational` keeps every value reduced with a
/// positive denominator after each operation, so equality is structural.
pub type Rational = BigRational;

/// Shorthand for a small rational literal.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Renders `p/q` with `q >= 1`, integers included (`3/1`, `0/1`).
pub fn fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses a strict `p/q` string. Non-reduced forms, zero or negative
/// denominators and stray whitespace are rejected.
pub fn parse_fraction(s: &str) -> Option<Rational> {
    let (p, q) = s.split_once('/')?;
    if q.starts_with(['+', '-']) || p.starts_with('+') {
        return None;
    }
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if !q.is_positive() || !p.gcd(&q).is_one() {
        return None;
    }
    Some(Rational::new_raw(p, q))
}

/// Canonical form check: positive denominator, `gcd(|p|, q) = 1`.
pub fn is_canonical(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}
