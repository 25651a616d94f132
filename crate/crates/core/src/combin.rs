//! Binomial coefficients and factorials over arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)`, zero whenever `k < 0`, `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Number of maps `[n] -> [d]` whose image contains `[k]`.
pub fn surjective_onto_prefix(n: u64, d: u64, k: u64) -> BigInt {
    (0..=k)
        .map(|j| {
            let term = binomial(k as i64, j as i64) * BigInt::from(d.saturating_sub(j)).pow(n as u32);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}
