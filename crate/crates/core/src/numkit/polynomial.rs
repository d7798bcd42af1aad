use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::binomial;
use super::rational::Rational;

/// Dense univariate polynomial over the rationals.
///
/// `coeffs[i]` is the coefficient of `x^i`. The vector never ends in a zero,
/// so the zero polynomial is the empty vector and equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `c * x^degree`.
    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `(x + c)^k`, expanded by the binomial theorem.
    pub fn shifted_power(c: &Rational, k: usize) -> Self {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut cpow = Rational::one();
        let mut c_pows = Vec::with_capacity(k + 1);
        for j in 0..=k {
            c_pows.push(cpow.clone());
            if j < k {
                cpow = &cpow * c;
            }
        }
        for i in 0..=k {
            // coefficient of x^i is C(k, i) c^{k-i}
            let b = Rational::from_integer(binomial(k, i as isize));
            coeffs.push(b * &c_pows[k - i]);
        }
        Self::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// The `q`-fold formal derivative.
    pub fn derivative(&self, q: usize) -> Self {
        if q == 0 {
            return self.clone();
        }
        if q >= self.coeffs.len() {
            return Self::zero();
        }
        let coeffs = self.coeffs[q..]
            .iter()
            .enumerate()
            .map(|(j, c)| {
                // x^{j+q} -> (j+q)!/j! x^j
                let falling: BigInt = (j + 1..=j + q).map(BigInt::from).product();
                c * Rational::from_integer(falling)
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// `p(a*x + b)`, by Horner's scheme in the polynomial ring.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        for c in self.coeffs.iter().rev() {
            // out <- out * (a x + b) + c
            let mut next = vec![Rational::zero(); out.len() + 1];
            for (i, o) in out.iter().enumerate() {
                if o.is_zero() {
                    continue;
                }
                next[i] += o * b;
                next[i + 1] += o * a;
            }
            next[0] += c;
            out = next;
        }
        Self::from_coeffs(out)
    }

    /// Exact value at `x` (Horner).
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Coordinates of `p` in the basis `(x + c)^i`: the returned vector `d`
    /// satisfies `p(x) = sum d_i (x + c)^i`.
    pub fn rebase(&self, c: &Rational) -> Vec<Rational> {
        self.compose_affine(&Rational::one(), &-c).into_coeffs()
    }

    /// True when `p` contains only odd powers of `(x + c)`.
    pub fn is_odd_about(&self, c: &Rational) -> bool {
        self.rebase(c).iter().step_by(2).all(Zero::is_zero)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

/// Ascending sparse form, e.g. `-1 - 2*x + 1/3*x^4`; the zero polynomial
/// prints as `0`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
