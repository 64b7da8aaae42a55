//! Exact binomial coefficients and factorials.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `n choose k`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    // acc stays an integer: after step i it equals C(n-k+i, i).
    for i in 1..=k {
        acc = acc * (n - k + i) / i;
    }
    acc
}

/// Number of size-`k` multisets drawn from `n` symbols.
pub fn multichoose(n: u64, k: u64) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    if n == 0 {
        return BigUint::zero();
    }
    binomial(n + k - 1, k)
}
