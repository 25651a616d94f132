//! Macaulay's growth bound and the M-sequence test.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Greedy `i`-binomial representation of `a`:
/// `a = C(a_i, i) + C(a_{i-1}, i-1) + ... + C(a_j, j)` with
/// `a_i > a_{i-1} > ... > a_j >= j >= 1`. Returned as `(a_l, l)` pairs.
pub fn binomial_representation(a: &BigInt, i: usize) -> Vec<(u64, usize)> {
    assert!(i >= 1, "binomial representation needs i >= 1");
    let mut rest = a.clone();
    let mut out = Vec::new();
    let mut level = i;
    while level >= 1 && rest.is_positive() {
        // largest top with C(top, level) <= rest; C(level, level) = 1 <= rest
        let mut top = level as u64;
        let mut value = BigInt::one();
        loop {
            let next = &value * BigInt::from(top + 1) / BigInt::from(top + 1 - level as u64);
            if next > rest {
                break;
            }
            value = next;
            top += 1;
        }
        rest -= &value;
        out.push((top, level));
        level -= 1;
    }
    out
}

/// `a^<i>`: shift every term of the `i`-binomial representation up by one.
pub fn macaulay_bound(a: &BigInt, i: usize) -> BigInt {
    if a.is_zero() {
        return BigInt::zero();
    }
    if i == 1 {
        // a = C(a, 1), so a^<1> = C(a + 1, 2)
        return a * (a + 1u32) / 2u32;
    }
    binomial_representation(a, i)
        .into_iter()
        .map(|(top, level)| crate::combin::binomial(top as i64 + 1, level as i64 + 1))
        .sum()
}

/// True iff `g_0 = 1`, all entries are nonnegative, and
/// `g_{i+1} <= g_i^<i>` for every `i >= 1`.
pub fn m_sequence_check(g: &[BigInt]) -> bool {
    match g.first() {
        Some(g0) if g0.is_one() => {}
        _ => return false,
    }
    if g.iter().any(|x| x.is_negative()) {
        return false;
    }
    (1..g.len().saturating_sub(1)).all(|i| g[i + 1] <= macaulay_bound(&g[i], i))
}
