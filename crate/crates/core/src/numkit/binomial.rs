use num_bigint::BigInt;
use num_traits::One;

/// `C(n, k)`, zero outside `0 <= k <= n`.
///
/// Multiplicative formula; every intermediate `C(n-k+i, i)` is an integer
/// so each division is exact.
pub fn binomial(n: usize, k: isize) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::from(0);
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}
