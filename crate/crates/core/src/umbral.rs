//! The linear form `L(x^n) = B_n` and a mechanical replay of the short
//! proof of the generalized Carlitz identity.
//!
//! For parameters `(m, n, q)` the proof runs through
//!
//! ```text
//! P(x) = (-1)^{m+q} x^{n+q} (1+x)^{m+q} - (-1)^n x^{m+q} (1+x)^{n+q}
//! P(-1/2 + x) + (-1)^q P(-1/2 - x) = 0
//! P^{(q)}(-1/2 + x) + P^{(q)}(-1/2 - x) = 0      (P^{(q)} odd in x + 1/2)
//! L(P^{(q)}) = 0                                   (L kills odd powers of x + 1/2)
//! ```
//!
//! and `(-1)^q P^{(q)} / q!` expands to the double sum whose image under `L`
//! is the identity's left-hand side. [`replay_proof`] records every one of
//! these objects without asserting anything.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bernoulli::BernoulliCache;
use crate::error::Result;
use crate::numkit::{binomial, rat, Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdentityParams {
    pub m: usize,
    pub n: usize,
    pub q: usize,
}

impl IdentityParams {
    pub fn new(m: usize, n: usize, q: usize) -> Self {
        Self { m, n, q }
    }

    /// Highest Bernoulli index touched by the identity and by `L(P^{(q)})`.
    pub fn max_bernoulli_index(&self) -> usize {
        self.m + self.n + self.q
    }
}

impl fmt::Display for IdentityParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, n={}, q={})", self.m, self.n, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Self::Even
        } else {
            Self::Odd
        }
    }
}

/// `(-1)^k` as a rational.
pub(crate) fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `L(p) = sum_i p_i B_i`.
pub fn apply_l(p: &Polynomial, cache: &BernoulliCache) -> Result<Rational> {
    if let Some(d) = p.degree() {
        cache.require(d)?;
    }
    Ok(p.coeffs()
        .iter()
        .zip(cache.values())
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, b)| c * b)
        .sum())
}

/// `x^a (1 + x)^b`.
fn power_times_shifted(a: usize, b: usize) -> Polynomial {
    &Polynomial::monomial(Rational::one(), a) * &Polynomial::shifted_power(&Rational::one(), b)
}

pub fn build_p(params: IdentityParams) -> Polynomial {
    let IdentityParams { m, n, q } = params;
    let first = power_times_shifted(n + q, m + q).scale(&sign(m + q));
    let second = power_times_shifted(m + q, n + q).scale(&sign(n));
    first - second
}

/// `p(-1/2 + x) + (-1)^q p(-1/2 - x)`.
pub fn antisymmetry_residual(p: &Polynomial, q_parity: Parity) -> Polynomial {
    let minus_half = rat(-1, 2);
    let plus = p.compose_affine(&Rational::one(), &minus_half);
    let minus = p.compose_affine(&-Rational::one(), &minus_half);
    match q_parity {
        Parity::Even => plus + minus,
        Parity::Odd => plus - minus,
    }
}

/// The double sum
/// `(-1)^m sum_{k=0}^{m+q} C(m+q,k) C(n+q+k,q) x^{n+k}
///   - (-1)^{n+q} sum_{k=0}^{n+q} C(n+q,k) C(m+q+k,q) x^{m+k}`,
/// equal to `(-1)^q P^{(q)} / q!`.
pub fn closed_form_expansion(params: IdentityParams) -> Polynomial {
    let IdentityParams { m, n, q } = params;
    let mut coeffs = vec![Rational::zero(); m + n + q + 1];
    let add_sum = |outer: usize, shift: usize, s: Rational, coeffs: &mut Vec<Rational>| {
        // s * sum_{k=0}^{outer+q} C(outer+q, k) C(shift+q+k, q) x^{shift+k}
        for k in 0..=outer + q {
            let c = binomial(outer + q, k as isize) * binomial(shift + q + k, q as isize);
            coeffs[shift + k] += &s * Rational::from_integer(c);
        }
    };
    add_sum(m, n, sign(m), &mut coeffs);
    add_sum(n, m, -sign(n + q), &mut coeffs);
    Polynomial::from_coeffs(coeffs)
}

/// Every intermediate object of the proof for one parameter triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTrace {
    pub params: IdentityParams,
    /// `P(x)`.
    pub p: Polynomial,
    /// `P(-1/2 + x) + (-1)^q P(-1/2 - x)`.
    pub antisymmetry_residual: Polynomial,
    /// `P^{(q)}(x)`.
    pub pq: Polynomial,
    /// `P^{(q)}(-1/2 + x) + P^{(q)}(-1/2 - x)`.
    pub pq_antisymmetry_residual: Polynomial,
    /// Every even power of `x + 1/2` is absent from `P^{(q)}`.
    pub odd_in_shifted: bool,
    /// `q! * closed_form_expansion == (-1)^q P^{(q)}`.
    pub expansion_match: bool,
    /// `L(P^{(q)})`.
    pub l_value: Rational,
}

impl ProofTrace {
    /// `m = n` with `q` even makes `P` vanish identically.
    pub fn is_degenerate(&self) -> bool {
        self.p.is_zero()
    }

    /// All the proof's claims hold for this trace.
    pub fn holds(&self) -> bool {
        self.antisymmetry_residual.is_zero()
            && self.pq_antisymmetry_residual.is_zero()
            && self.odd_in_shifted
            && self.expansion_match
            && self.l_value.is_zero()
    }
}

/// Runs the proof for `params`. The cache must reach index `m + n + q`
/// (the degree bound of `P^{(q)}`).
pub fn replay_proof(params: IdentityParams, cache: &BernoulliCache) -> Result<ProofTrace> {
    cache.require(params.max_bernoulli_index())?;
    let q = params.q;
    let p = build_p(params);
    let antisymmetry = antisymmetry_residual(&p, Parity::of(q));
    let pq = p.derivative(q);
    let pq_antisymmetry = antisymmetry_residual(&pq, Parity::Even);
    let odd_in_shifted = pq.is_odd_about(&rat(1, 2));
    let q_factorial = Rational::from_integer((1..=q).map(BigInt::from).product());
    let expansion_match = closed_form_expansion(params).scale(&q_factorial) == pq.scale(&sign(q));
    let l_value = apply_l(&pq, cache)?;
    Ok(ProofTrace {
        params,
        p,
        antisymmetry_residual: antisymmetry,
        pq,
        pq_antisymmetry_residual: pq_antisymmetry,
        odd_in_shifted,
        expansion_match,
        l_value,
    })
}
