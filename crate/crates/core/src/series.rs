//! Truncated formal power series with rational coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numkit::Rational;

/// Coefficients `c_0..=c_N` of a power series cut at order `N`.
///
/// Trailing zeros are kept: the length is always `order + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Panics on an empty vector; a series always has at least `c_0`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "truncated series needs at least one coefficient"
        );
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    /// `e^{a z}`: coefficients `a^i / i!`.
    pub fn exp(a: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rational::one();
        coeffs.push(term.clone());
        for i in 1..=order {
            term = term * a / Rational::from_integer(BigInt::from(i));
            coeffs.push(term.clone());
        }
        Self { coeffs }
    }

    /// `(e^z - 1) / z = sum z^i / (i+1)!`, the unit whose inverse is `z / (e^z - 1)`.
    pub fn exp_minus_one_over_z(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut fact = BigInt::one();
        for i in 0..=order {
            fact *= i + 1;
            coeffs.push(Rational::new(BigInt::one(), fact.clone()));
        }
        Self { coeffs }
    }

    fn check_orders(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Cauchy product truncated at the shared order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_orders(other)?;
        let n = self.order();
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Self { coeffs })
    }

    /// `self / divisor` by forward substitution; `divisor` must have a
    /// nonzero constant term.
    pub fn div_unit(&self, divisor: &Self) -> Result<Self> {
        self.check_orders(divisor)?;
        let d0 = &divisor.coeffs[0];
        if d0.is_zero() {
            return Err(Error::NonUnitDivisor);
        }
        let inv_d0 = d0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        for k in 0..self.coeffs.len() {
            let mut acc = self.coeffs[k].clone();
            for (j, c) in out.iter().enumerate() {
                let d = &divisor.coeffs[k - j];
                if !d.is_zero() {
                    acc -= c * d;
                }
            }
            out.push(acc * &inv_d0);
        }
        Ok(Self { coeffs: out })
    }

    /// `s(-z)`: flips the sign of every odd coefficient.
    pub fn negate_argument(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        Self { coeffs }
    }

    /// `S_x(z) = z e^{xz} / (e^z - 1)` to order `N`; the coefficient of
    /// `z^n` is `B_n(x) / n!`.
    pub fn bernoulli_at(x: &Rational, order: usize) -> Self {
        Self::exp(x, order)
            .div_unit(&Self::exp_minus_one_over_z(order))
            .expect("(e^z - 1)/z has constant term 1")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::{bernoulli_polynomial, BernoulliCache};
    use crate::numkit::rat;
    use proptest::prelude::*;

    fn s(c: &[(i64, i64)]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(c.iter().map(|&(a, b)| rat(a, b)).collect())
    }

    fn ints(c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(c.iter().map(|&a| rat(a, 1)).collect())
    }

    fn factorial(n: usize) -> Rational {
        Rational::from_integer((1..=n).map(BigInt::from).product())
    }

    #[test]
    fn exp_examples() {
        assert_eq!(TruncatedSeries::exp(&rat(0, 1), 4), ints(&[1, 0, 0, 0, 0]));
        assert_eq!(
            TruncatedSeries::exp(&rat(1, 1), 3),
            s(&[(1, 1), (1, 1), (1, 2), (1, 6)])
        );
        assert_eq!(
            TruncatedSeries::exp(&rat(1, 2), 2),
            s(&[(1, 1), (1, 2), (1, 8)])
        );
        assert_eq!(TruncatedSeries::exp(&rat(3, 1), 0).order(), 0);
    }

    #[test]
    fn mul_examples() {
        let a = s(&[(2, 3), (-1, 1), (5, 7)]);
        assert_eq!(TruncatedSeries::one(2).mul(&a).unwrap(), a);
        let z = ints(&[0, 1, 0, 0]);
        assert_eq!(z.mul(&z).unwrap(), ints(&[0, 0, 1, 0]));
        let e = TruncatedSeries::exp(&rat(1, 1), 6);
        let e_neg = TruncatedSeries::exp(&rat(-1, 1), 6);
        assert_eq!(e.mul(&e_neg).unwrap(), TruncatedSeries::one(6));
    }

    #[test]
    fn order_mismatch_rejected() {
        let a = TruncatedSeries::one(3);
        let b = TruncatedSeries::one(4);
        assert!(matches!(
            a.mul(&b),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        ));
        assert!(matches!(a.div_unit(&b), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn div_examples() {
        let a = s(&[(2, 3), (-1, 1), (5, 7)]);
        assert_eq!(a.div_unit(&TruncatedSeries::one(2)).unwrap(), a);
        assert_eq!(
            TruncatedSeries::one(4)
                .div_unit(&TruncatedSeries::exp(&rat(1, 1), 4))
                .unwrap(),
            s(&[(1, 1), (-1, 1), (1, 2), (-1, 6), (1, 24)])
        );
        assert_eq!(
            TruncatedSeries::one(3)
                .div_unit(&ints(&[1, -1, 0, 0]))
                .unwrap(),
            ints(&[1, 1, 1, 1])
        );
    }

    #[test]
    fn div_by_non_unit_rejected() {
        let z = ints(&[0, 1, 0]);
        assert!(matches!(
            TruncatedSeries::one(2).div_unit(&z),
            Err(Error::NonUnitDivisor)
        ));
    }

    #[test]
    fn negate_argument_examples() {
        let even = s(&[(1, 1), (0, 1), (-1, 12), (0, 1), (7, 3)]);
        assert_eq!(even.negate_argument(), even);
        assert_eq!(ints(&[0, 1, 0, 0]).negate_argument(), ints(&[0, -1, 0, 0]));
        let a = s(&[(2, 3), (-1, 1), (5, 7), (4, 1)]);
        assert_eq!(a.negate_argument().negate_argument(), a);
    }

    #[test]
    fn bernoulli_series_constant_term() {
        let s0 = TruncatedSeries::bernoulli_at(&rat(0, 1), 10);
        assert_eq!(s0.coeff(0), &rat(1, 1));
        assert_eq!(s0.order(), 10);
    }

    #[test]
    fn bernoulli_series_matches_recurrence() {
        let cache = BernoulliCache::up_to(64);
        let s0 = TruncatedSeries::bernoulli_at(&rat(0, 1), 64);
        for n in 0..=64 {
            assert_eq!(s0.coeff(n) * factorial(n), cache.values()[n], "n={n}");
        }
    }

    #[test]
    fn bernoulli_series_matches_polynomials() {
        let cache = BernoulliCache::up_to(40);
        for x0 in [rat(0, 1), rat(1, 2), rat(1, 1), rat(-1, 1), rat(1, 3)] {
            let sx = TruncatedSeries::bernoulli_at(&x0, 40);
            for n in 0..=40 {
                let poly = bernoulli_polynomial(n, &cache).unwrap();
                assert_eq!(sx.coeff(n) * factorial(n), poly.eval(&x0), "x={x0} n={n}");
            }
        }
    }

    #[test]
    fn midpoint_series_is_even() {
        let half = TruncatedSeries::bernoulli_at(&rat(1, 2), 64);
        assert_eq!(half.negate_argument(), half);
        assert!(half.coeffs().iter().skip(1).step_by(2).all(Zero::is_zero));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-40i64..=40, 1i64..=9).prop_map(|(a, b)| rat(a, b))
    }

    proptest! {
        #[test]
        fn div_then_mul_recovers(
            order in 0usize..10,
            a in prop::collection::vec(arb_rational(), 10),
            b in prop::collection::vec(arb_rational(), 10),
            b0 in arb_rational().prop_filter("unit", |r| !r.is_zero()),
        ) {
            let a = TruncatedSeries::from_coeffs(a[..=order].to_vec());
            let mut bc = b[..=order].to_vec();
            bc[0] = b0;
            let b = TruncatedSeries::from_coeffs(bc);
            let q = a.div_unit(&b).unwrap();
            prop_assert_eq!(q.order(), order);
            prop_assert_eq!(q.mul(&b).unwrap(), a);
        }
    }
}
