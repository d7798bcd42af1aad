//! Direct-summation residuals of the Carlitz identity and its
//! generalization, the named special cases, and grid verification.
//!
//! Nothing here goes through the umbral proof engine: residuals are summed
//! straight from the Bernoulli table, so agreement between the two is a
//! genuine cross-check.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;

use crate::bernoulli::BernoulliCache;
use crate::error::{Error, Result};
use crate::numkit::{binomial, Rational};
use crate::umbral::IdentityParams;

fn sign(k: usize) -> i32 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn signed(s: i32, r: Rational) -> Rational {
    if s < 0 {
        -r
    } else {
        r
    }
}

/// `(-1)^m sum_{k=0}^{m} C(m,k) B_{n+k} - (-1)^n sum_{k=0}^{n} C(n,k) B_{m+k}`.
pub fn carlitz_residual(m: usize, n: usize, cache: &BernoulliCache) -> Result<Rational> {
    cache.require(m + n)?;
    let b = cache.values();
    let sum = |outer: usize, shift: usize| -> Rational {
        (0..=outer)
            .map(|k| Rational::from_integer(binomial(outer, k as isize)) * &b[shift + k])
            .sum()
    };
    Ok(signed(sign(m), sum(m, n)) - signed(sign(n), sum(n, m)))
}

/// `sum_{k=0}^{outer+q} C(outer+q, k) C(shift+q+k, q) B_{shift+k}`.
fn weighted_sum(outer: usize, shift: usize, q: usize, b: &[Rational]) -> Rational {
    (0..=outer + q)
        .filter(|k| !b[shift + k].is_zero())
        .map(|k| {
            let w = binomial(outer + q, k as isize) * binomial(shift + q + k, q as isize);
            Rational::from_integer(w) * &b[shift + k]
        })
        .sum()
}

/// The two signed halves of the generalized identity,
/// `(-1)^m sum_{k=0}^{m+q} ...` and `(-1)^{n+q} sum_{k=0}^{n+q} ...`; the
/// residual is their difference.
fn partial_sums_over(params: IdentityParams, b: &[Rational]) -> (Rational, Rational) {
    let IdentityParams { m, n, q } = params;
    let first = signed(sign(m), weighted_sum(m, n, q, b));
    let second = signed(sign(n + q), weighted_sum(n, m, q, b));
    (first, second)
}

pub fn generalized_partial_sums(
    params: IdentityParams,
    cache: &BernoulliCache,
) -> Result<(Rational, Rational)> {
    cache.require(params.max_bernoulli_index())?;
    Ok(partial_sums_over(params, cache.values()))
}

/// `(-1)^m sum_{k=0}^{m+q} C(m+q,k) C(n+q+k,q) B_{n+k}
///   - (-1)^{n+q} sum_{k=0}^{n+q} C(n+q,k) C(m+q+k,q) B_{m+k}`.
pub fn generalized_residual(params: IdentityParams, cache: &BernoulliCache) -> Result<Rational> {
    let (first, second) = generalized_partial_sums(params, cache)?;
    Ok(first - second)
}

/// Identities known to the verifier: the two general forms and the
/// historical special cases of the generalized one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityName {
    Carlitz,
    Generalized,
    Momiyama,
    KanekoSeidel,
    ChenSun,
    ZekiriBencherif,
}

impl IdentityName {
    pub const ALL: [IdentityName; 6] = [
        IdentityName::Carlitz,
        IdentityName::Generalized,
        IdentityName::Momiyama,
        IdentityName::KanekoSeidel,
        IdentityName::ChenSun,
        IdentityName::ZekiriBencherif,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Carlitz => "carlitz",
            Self::Generalized => "generalized",
            Self::Momiyama => "momiyama",
            Self::KanekoSeidel => "kaneko_seidel",
            Self::ChenSun => "chen_sun",
            Self::ZekiriBencherif => "zekiri_bencherif",
        }
    }

    /// Names of the free parameters, in the order `bind` expects them.
    pub fn free_params(self) -> &'static [&'static str] {
        match self {
            Self::Carlitz | Self::Momiyama => &["m", "n"],
            Self::Generalized => &["m", "n", "q"],
            Self::KanekoSeidel | Self::ChenSun => &["n"],
            Self::ZekiriBencherif => &["n", "q"],
        }
    }

    /// Binds the free parameters to a point of the generalized identity.
    pub fn bind(self, free: &[usize]) -> Result<IdentityParams> {
        let expected = self.free_params().len();
        if free.len() != expected {
            return Err(Error::Arity {
                name: self.name(),
                expected,
                got: free.len(),
            });
        }
        let params = match self {
            Self::Carlitz => IdentityParams::new(free[0], free[1], 0),
            Self::Generalized => IdentityParams::new(free[0], free[1], free[2]),
            Self::Momiyama => IdentityParams::new(free[0], free[1], 1),
            Self::KanekoSeidel => IdentityParams::new(free[0], free[0], 1),
            Self::ChenSun => IdentityParams::new(free[0], free[0], 3),
            Self::ZekiriBencherif => {
                if free[1].is_multiple_of(2) {
                    return Err(Error::EvenQ(free[1]));
                }
                IdentityParams::new(free[0], free[0], free[1])
            }
        };
        Ok(params)
    }

    /// Grid points for the given ranges, in lexicographic `(m, n, q)` order.
    /// Ranges that the identity fixes are ignored.
    fn grid(self, m_max: usize, n_max: usize, q_max: usize) -> Vec<IdentityParams> {
        let mut points = Vec::new();
        match self {
            Self::Carlitz | Self::Momiyama => {
                let q = if self == Self::Carlitz { 0 } else { 1 };
                for m in 0..=m_max {
                    for n in 0..=n_max {
                        points.push(IdentityParams::new(m, n, q));
                    }
                }
            }
            Self::Generalized => {
                for m in 0..=m_max {
                    for n in 0..=n_max {
                        for q in 0..=q_max {
                            points.push(IdentityParams::new(m, n, q));
                        }
                    }
                }
            }
            Self::KanekoSeidel | Self::ChenSun => {
                let q = if self == Self::KanekoSeidel { 1 } else { 3 };
                points.extend((0..=n_max).map(|n| IdentityParams::new(n, n, q)));
            }
            Self::ZekiriBencherif => {
                for n in 0..=n_max {
                    for q in (1..=q_max).step_by(2) {
                        points.push(IdentityParams::new(n, n, q));
                    }
                }
            }
        }
        points
    }

    fn grid_description(self, m_max: usize, n_max: usize, q_max: usize) -> String {
        match self {
            Self::Carlitz => format!("m=0..={m_max}, n=0..={n_max}, q=0"),
            Self::Generalized => format!("m=0..={m_max}, n=0..={n_max}, q=0..={q_max}"),
            Self::Momiyama => format!("m=0..={m_max}, n=0..={n_max}, q=1"),
            Self::KanekoSeidel => format!("m=n=0..={n_max}, q=1"),
            Self::ChenSun => format!("m=n=0..={n_max}, q=3"),
            Self::ZekiriBencherif => format!("m=n=0..={n_max}, odd q=1..={q_max}"),
        }
    }

    fn residual(self, params: IdentityParams, cache: &BernoulliCache) -> Result<Rational> {
        match self {
            Self::Carlitz => carlitz_residual(params.m, params.n, cache),
            _ => generalized_residual(params, cache),
        }
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

/// Residual of a named special case. `free_params` follows
/// [`IdentityName::free_params`].
pub fn special_case(
    name: IdentityName,
    free_params: &[usize],
    cache: &BernoulliCache,
) -> Result<Rational> {
    let params = name.bind(free_params)?;
    generalized_residual(params, cache)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridFailure {
    pub params: IdentityParams,
    pub residual: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: IdentityName,
    pub grid: String,
    pub checked: usize,
    /// Nonzero residuals in grid order.
    pub failures: Vec<GridFailure>,
    pub all_zero: bool,
}

/// Evaluates `identity` at every point of the grid.
///
/// The cache is first extended to the largest index the grid needs; the
/// points are then evaluated in parallel against the now read-only table.
pub fn verify_grid(
    identity: IdentityName,
    m_max: usize,
    n_max: usize,
    q_max: usize,
    cache: &mut BernoulliCache,
) -> IdentityReport {
    let points = identity.grid(m_max, n_max, q_max);
    if let Some(max) = points.iter().map(IdentityParams::max_bernoulli_index).max() {
        cache.extend_to(max);
    }
    let cache: &BernoulliCache = cache;
    let failures: Vec<GridFailure> = points
        .par_iter()
        .map(|&params| {
            let residual = identity
                .residual(params, cache)
                .expect("cache extended to grid maximum");
            (params, residual)
        })
        .filter(|(_, r)| !r.is_zero())
        .map(|(params, residual)| GridFailure { params, residual })
        .collect();
    IdentityReport {
        identity,
        grid: identity.grid_description(m_max, n_max, q_max),
        checked: points.len(),
        all_zero: failures.is_empty(),
        failures,
    }
}
