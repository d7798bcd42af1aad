//! Bernoulli numbers (convention `B_1 = -1/2`) and Bernoulli polynomials.
//!
//! Three independent algorithms are provided:
//!
//! * `Recurrence`: solves `sum_{k=0}^{n} C(n+1, k) B_k = 0` for `B_n`.
//! * `Series`: reads coefficients off the truncated series `z / (e^z - 1)`.
//! * `AkiyamaTanigawa`: the Akiyama–Tanigawa triangle, sign-corrected at
//!   index 1 since the triangle produces `B_1 = +1/2`.
//!
//! [`BernoulliCache`] is the append-only table used by everything else and
//! is always filled by the recurrence.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numkit::{binomial, fraction_string, parse_fraction, rat, Polynomial, Rational};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BernoulliMethod {
    Recurrence,
    Series,
    AkiyamaTanigawa,
}

impl BernoulliMethod {
    pub const ALL: [BernoulliMethod; 3] = [
        BernoulliMethod::Recurrence,
        BernoulliMethod::Series,
        BernoulliMethod::AkiyamaTanigawa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Recurrence => "recurrence",
            Self::Series => "series",
            Self::AkiyamaTanigawa => "akiyama_tanigawa",
        }
    }
}

impl fmt::Display for BernoulliMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BernoulliMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recurrence" => Ok(Self::Recurrence),
            "series" => Ok(Self::Series),
            "akiyama_tanigawa" | "akiyama-tanigawa" => Ok(Self::AkiyamaTanigawa),
            other => Err(Error::UnknownMethod(other.to_string())),
        }
    }
}

/// `B_n` computed from scratch with the chosen algorithm.
pub fn bernoulli_number(n: usize, method: BernoulliMethod) -> Rational {
    bernoulli_sequence(n, method)
        .pop()
        .expect("sequence has n + 1 entries")
}

/// `B_0, ..., B_{n_max}` computed from scratch with the chosen algorithm.
pub fn bernoulli_sequence(n_max: usize, method: BernoulliMethod) -> Vec<Rational> {
    match method {
        BernoulliMethod::Recurrence => BernoulliCache::up_to(n_max).values,
        BernoulliMethod::Series => series_sequence(n_max),
        BernoulliMethod::AkiyamaTanigawa => akiyama_tanigawa(n_max),
    }
}

fn series_sequence(n_max: usize) -> Vec<Rational> {
    let s = TruncatedSeries::bernoulli_at(&Rational::zero(), n_max);
    let mut factorial = BigInt::one();
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i > 0 {
                factorial *= i;
            }
            c * Rational::from_integer(factorial.clone())
        })
        .collect()
}

fn akiyama_tanigawa(n_max: usize) -> Vec<Rational> {
    let mut row: Vec<Rational> = Vec::with_capacity(n_max + 1);
    let mut out = Vec::with_capacity(n_max + 1);
    for m in 0..=n_max {
        row.push(rat(1, m as i64 + 1));
        for j in (1..=m).rev() {
            let diff = &row[j - 1] - &row[j];
            row[j - 1] = diff * Rational::from_integer(BigInt::from(j));
        }
        let b = if m == 1 {
            -row[0].clone()
        } else {
            row[0].clone()
        };
        out.push(b);
    }
    out
}

/// Append-only table `B_0..=B_max`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BernoulliCache {
    values: Vec<Rational>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn up_to(n_max: usize) -> Self {
        let mut cache = Self::new();
        cache.extend_to(n_max);
        cache
    }

    /// Highest populated index, `None` when empty.
    pub fn max_index(&self) -> Option<usize> {
        self.values.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Result<&Rational> {
        self.values.get(n).ok_or(Error::CacheTooShort {
            needed: n,
            have: self.values.len(),
        })
    }

    /// Errors unless index `n` is populated.
    pub fn require(&self, n: usize) -> Result<()> {
        self.get(n).map(|_| ())
    }

    /// Populates every index up to `new_max` with the defining recurrence.
    /// Existing entries are left untouched; a smaller `new_max` is a no-op.
    pub fn extend_to(&mut self, new_max: usize) {
        for n in self.values.len()..=new_max {
            let b = if n == 0 {
                Rational::one()
            } else {
                let mut sum = Rational::zero();
                let mut c = BigInt::one(); // C(n+1, k), advanced along k
                for (k, bk) in self.values.iter().enumerate() {
                    if !bk.is_zero() {
                        sum += bk * Rational::from_integer(c.clone());
                    }
                    c = c * (n + 1 - k) / (k + 1);
                }
                -sum / Rational::from_integer(BigInt::from(n + 1))
            };
            self.values.push(b);
        }
    }

    /// Serializes as `n<TAB>p/q<LF>` per entry, ascending.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        for (n, b) in self.values.iter().enumerate() {
            writeln!(w, "{n}\t{}", fraction_string(b))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_file_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Parses the persistence format and validates the cache invariants:
    /// dense ascending indices from 0, `B_0 = 1`, `B_1 = -1/2`, zero at
    /// every odd index from 3 on.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |line: usize, reason: &str| Error::CacheFormat {
            line,
            reason: reason.to_string(),
        };
        if !text.is_empty() && !text.ends_with('\n') {
            let last = text.split('\n').count();
            return Err(bad(last, "missing trailing newline"));
        }
        let mut values = Vec::new();
        for (i, line) in text.split_terminator('\n').enumerate() {
            let lineno = i + 1;
            let (idx, value) = line
                .split_once('\t')
                .ok_or_else(|| bad(lineno, "expected `n<TAB>p/q`"))?;
            let idx: usize = idx
                .parse()
                .map_err(|_| bad(lineno, "index is not a nonnegative integer"))?;
            if idx != i {
                return Err(bad(
                    lineno,
                    &format!("expected index {i}, found {idx} (gap or disorder)"),
                ));
            }
            let b = parse_fraction(value)
                .ok_or_else(|| bad(lineno, "value is not a reduced `p/q` fraction"))?;
            let ok = match idx {
                0 => b.is_one(),
                1 => b == rat(-1, 2),
                n if n % 2 == 1 => b.is_zero(),
                _ => true,
            };
            if !ok {
                let reason = match idx {
                    0 => "B_0 must be 1".to_string(),
                    1 => "B_1 must be -1/2".to_string(),
                    n => format!("odd-index entry B_{n} must be 0"),
                };
                return Err(bad(lineno, &reason));
            }
            values.push(b);
        }
        Ok(Self { values })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = fs::File::create(path)?;
        self.write_to(std::io::BufWriter::new(file))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }
}

/// `B_n(x) = sum_{k=0}^{n} C(n, k) B_k x^{n-k}`.
pub fn bernoulli_polynomial(n: usize, cache: &BernoulliCache) -> Result<Polynomial> {
    cache.require(n)?;
    let coeffs = (0..=n)
        .map(|i| {
            // x^i carries C(n, n-i) B_{n-i}
            let k = n - i;
            Rational::from_integer(binomial(n, k as isize)) * &cache.values[k]
        })
        .collect();
    Ok(Polynomial::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::is_canonical;

    #[test]
    fn first_values_each_method() {
        // Hand solution of sum_{k<=n} C(n+1,k) B_k = 0:
        // n=1: 1 + 2 B_1 = 0; n=2: 1 + 3 B_1 + 3 B_2 = 0;
        // n=3: 1 + 4 B_1 + 6 B_2 + 4 B_3 = 0; n=4: 1 + 5 B_1 + 10 B_2 + 10 B_3 + 5 B_4 = 0
        let expected = [rat(1, 1), rat(-1, 2), rat(1, 6), rat(0, 1), rat(-1, 30)];
        for method in BernoulliMethod::ALL {
            for (n, e) in expected.iter().enumerate() {
                assert_eq!(&bernoulli_number(n, method), e, "{method} n={n}");
            }
        }
    }

    #[test]
    fn method_names_round_trip_and_reject_unknown() {
        for m in BernoulliMethod::ALL {
            assert_eq!(m.name().parse::<BernoulliMethod>().unwrap(), m);
        }
        assert!(matches!(
            "bogus".parse::<BernoulliMethod>(),
            Err(Error::UnknownMethod(_))
        ));
    }

    #[test]
    fn extend_cache_examples() {
        let mut c = BernoulliCache::new();
        assert_eq!(c.max_index(), None);
        c.extend_to(0);
        assert_eq!(c.values(), &[rat(1, 1)]);

        let mut c4 = BernoulliCache::up_to(4);
        let before = c4.clone();
        c4.extend_to(4);
        assert_eq!(c4, before);
        c4.extend_to(2);
        assert_eq!(c4, before);

        let c6 = BernoulliCache::up_to(6);
        assert_eq!(
            c6.values(),
            &[
                rat(1, 1),
                rat(-1, 2),
                rat(1, 6),
                rat(0, 1),
                rat(-1, 30),
                rat(0, 1),
                rat(1, 42)
            ]
        );
    }

    #[test]
    fn extension_is_append_only() {
        let small = BernoulliCache::up_to(20);
        let mut grown = small.clone();
        grown.extend_to(45);
        assert_eq!(&grown.values()[..=20], small.values());
        assert_eq!(grown, BernoulliCache::up_to(45));
    }

    #[test]
    fn get_past_end_is_cache_too_short() {
        let c = BernoulliCache::up_to(3);
        assert!(matches!(
            c.get(4),
            Err(Error::CacheTooShort { needed: 4, have: 4 })
        ));
        assert!(bernoulli_polynomial(5, &c).is_err());
    }

    #[test]
    fn known_larger_values() {
        let c = BernoulliCache::up_to(30);
        assert_eq!(c.values()[12], rat(-691, 2730));
        assert_eq!(c.values()[14], rat(7, 6));
        assert_eq!(c.values()[30], rat(8615841276005, 14322));
    }

    #[test]
    fn von_staudt_clausen_denominators() {
        // denominator of B_{2k} is the product of primes p with (p-1) | 2k
        let c = BernoulliCache::up_to(60);
        let is_prime = |p: usize| {
            p >= 2
                && (2..p)
                    .take_while(|d| d * d <= p)
                    .all(|d| !p.is_multiple_of(d))
        };
        for k in 1..=30 {
            let n = 2 * k;
            let expected: usize = (2..=n + 1)
                .filter(|&p| is_prime(p) && n % (p - 1) == 0)
                .product();
            assert_eq!(c.values()[n].denom(), &BigInt::from(expected), "B_{n}");
        }
    }

    #[test]
    fn polynomial_examples() {
        let c = BernoulliCache::up_to(10);
        assert_eq!(bernoulli_polynomial(0, &c).unwrap(), Polynomial::one());
        assert_eq!(
            bernoulli_polynomial(1, &c).unwrap(),
            Polynomial::from_coeffs(vec![rat(-1, 2), rat(1, 1)])
        );
        let b3 = bernoulli_polynomial(3, &c).unwrap();
        assert_eq!(b3.eval(&rat(1, 2)), rat(0, 1));
        // B_2(x) = x^2 - x + 1/6
        assert_eq!(
            bernoulli_polynomial(2, &c).unwrap(),
            Polynomial::from_coeffs(vec![rat(1, 6), rat(-1, 1), rat(1, 1)])
        );
    }

    #[test]
    fn polynomial_degree_leading_and_constant_term() {
        let c = BernoulliCache::up_to(64);
        for n in 0..=64 {
            let b = bernoulli_polynomial(n, &c).unwrap();
            assert_eq!(b.degree(), Some(n));
            assert!(b.leading_coeff().unwrap().is_one());
            assert_eq!(b.eval(&Rational::zero()), c.values()[n]);
        }
    }

    #[test]
    fn polynomial_derivative_chain() {
        let c = BernoulliCache::up_to(40);
        for n in 1..=40 {
            let lhs = bernoulli_polynomial(n, &c).unwrap().derivative(1);
            let rhs = bernoulli_polynomial(n - 1, &c)
                .unwrap()
                .scale(&Rational::from_integer(BigInt::from(n)));
            assert_eq!(lhs, rhs, "n={n}");
        }
    }

    #[test]
    fn cache_values_canonical() {
        assert!(BernoulliCache::up_to(80).values().iter().all(is_canonical));
    }

    #[test]
    fn file_format_is_byte_exact() {
        let c = BernoulliCache::up_to(4);
        assert_eq!(
            c.to_file_string(),
            "0\t1/1\n1\t-1/2\n2\t1/6\n3\t0/1\n4\t-1/30\n"
        );
        assert_eq!(BernoulliCache::new().to_file_string(), "");
    }

    #[test]
    fn file_round_trip() {
        let c = BernoulliCache::up_to(50);
        let back = BernoulliCache::parse(&c.to_file_string()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.max_index(), Some(50));
        assert_eq!(BernoulliCache::parse("").unwrap(), BernoulliCache::new());
    }

    #[test]
    fn loader_rejects_invariant_violations() {
        let cases = [
            ("0\t2/1\n", "B_0"),
            ("0\t1/1\n1\t1/2\n", "B_1"),
            ("0\t1/1\n1\t-1/2\n2\t1/6\n3\t1/7\n", "odd"),
            ("0\t1/1\n1\t-1/2\n2\t1/6\n4\t-1/30\n", "gap"),
            ("1\t-1/2\n", "gap"),
            ("0\t1/1\n1\t-1/2\n2\t2/12\n", "reduced"),
            ("0\t1\n", "p/q"),
            ("0 1/1\n", "TAB"),
            ("0\t1/1", "newline"),
            ("0\t1/1\n\n", "TAB"),
            ("x\t1/1\n", "index"),
        ];
        for (text, why) in cases {
            match BernoulliCache::parse(text) {
                Err(Error::CacheFormat { reason, .. }) => {
                    assert!(reason.contains(why), "{text:?}: {reason}")
                }
                other => panic!("{text:?} accepted: {other:?}"),
            }
        }
    }
}
