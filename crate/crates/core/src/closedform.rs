//! Closed forms for the octopus polytopes `Q_{n,k}` and their
//! generalisation `Q_{n,d,k}` (sum bound `d` instead of `n`).

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::combin::{binomial, factorial};
use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, RatPolynomial};
use crate::polyalg::{from_magic_basis, GammaVector, MagicVector};

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n < 1 || k > n {
        return Err(Error::InvalidParameters(format!("need n >= 1 and 0 <= k <= n; got ({n}, {k})")));
    }
    Ok(())
}

fn check_ndk(n: usize, d: usize, k: usize) -> Result<()> {
    if n < 1 || d < 1 || k > n.min(d) {
        return Err(Error::InvalidParameters(format!(
            "need n, d >= 1 and 0 <= k <= min(n, d); got ({n}, {d}, {k})"
        )));
    }
    Ok(())
}

/// `sum_j (-1)^j C(k, j) prod_{i<n} (slope(j, i) t + intercept(j, i))`.
fn alternating_product_sum(
    n: usize,
    k: usize,
    factor: impl Fn(i64, i64) -> (i64, i64),
) -> IntPolynomial {
    (0..=k as i64)
        .map(|j| {
            let prod = IntPolynomial::product_of_linear((0..n as i64).map(|i| {
                let (a, b) = factor(j, i);
                (BigInt::from(a), BigInt::from(b))
            }));
            let c = binomial(k as i64, j);
            prod.scale(&if j % 2 == 0 { c } else { -c })
        })
        .sum()
}

fn divide_by_factorial(p: &IntPolynomial, n: usize) -> RatPolynomial {
    let f = BigRational::from_integer(factorial(n as u64));
    p.to_rational().map(|c| c / &f)
}

/// `n! Ehr(Q_{n,k}, t) = sum_j (-1)^j C(k,j) prod_{i<n} ((n-j)t + n-j-i)`.
pub fn ehrhart_qnk_scaled(n: usize, k: usize) -> Result<IntPolynomial> {
    check_nk(n, k)?;
    let n_ = n as i64;
    Ok(alternating_product_sum(n, k, |j, i| (n_ - j, n_ - j - i)))
}

pub fn ehrhart_qnk(n: usize, k: usize) -> Result<RatPolynomial> {
    Ok(divide_by_factorial(&ehrhart_qnk_scaled(n, k)?, n))
}

/// `n! Ehr(Q_{n,d,k}, t) = sum_j (-1)^j C(k,j) prod_{i<n} ((d-j)t + n-j-i)`.
pub fn ehrhart_qndk_scaled(n: usize, d: usize, k: usize) -> Result<IntPolynomial> {
    check_ndk(n, d, k)?;
    let (n_, d_) = (n as i64, d as i64);
    Ok(alternating_product_sum(n, k, |j, i| (d_ - j, n_ - j - i)))
}

pub fn ehrhart_qndk(n: usize, d: usize, k: usize) -> Result<RatPolynomial> {
    Ok(divide_by_factorial(&ehrhart_qndk_scaled(n, d, k)?, n))
}

/// `f_{n,k}(t) = sum_j (-1)^j C(k,j) prod_{i<n} (i t + n-j-i)`; its
/// coefficients are the magic coefficients of `n! Ehr(Q_{n,k})`.
pub fn f_poly(n: usize, k: usize) -> Result<IntPolynomial> {
    check_nk(n, k)?;
    let n_ = n as i64;
    Ok(alternating_product_sum(n, k, |j, i| (i, n_ - j - i)))
}

/// `f_{n,d,k}(t) = sum_j (-1)^j C(k,j) prod_{i<n} ((d-n+i) t + n-j-i)`.
pub fn f_poly_general(n: usize, d: usize, k: usize) -> Result<IntPolynomial> {
    check_ndk(n, d, k)?;
    let (n_, d_) = (n as i64, d as i64);
    Ok(alternating_product_sum(n, k, |j, i| (d_ - n_ + i, n_ - j - i)))
}

/// True iff `n! Ehr(Q_{n,d,k}) = sum c_i t^i (1+t)^(n-i)` with the `c_i`
/// read off `f_poly_general(n, d, k)`.
pub fn magic_identity_check(n: usize, d: usize, k: usize) -> Result<bool> {
    let lhs = ehrhart_qndk_scaled(n, d, k)?;
    let f = f_poly_general(n, d, k)?;
    if f.degree().is_some_and(|deg| deg > n) {
        return Ok(false);
    }
    let rhs = from_magic_basis(&MagicVector { n, cs: f.padded(n + 1) });
    Ok(lhs == rhs)
}

/// `gamma_i = C(n-k, i) C(n-i, i)` for `0 <= i <= n/2`.
pub fn gamma_vector_qnk(n: usize, k: usize) -> Result<GammaVector> {
    check_nk(n, k)?;
    let (n_, k_) = (n as i64, k as i64);
    Ok(GammaVector {
        n,
        gammas: (0..=n_ / 2).map(|i| binomial(n_ - k_, i) * binomial(n_ - i, i)).collect(),
    })
}

/// `h(tau_{n,k}, t) = sum_i C(n-k, i) C(n-i, i) t^i (1+t)^(n-2i)`.
pub fn h_poly_qnk(n: usize, k: usize) -> Result<IntPolynomial> {
    Ok(gamma_vector_qnk(n, k)?.to_polynomial())
}

/// The same polynomial via the zero-coordinate count: the coefficient of
/// `t^j` in `t^n h(1/t)` is `sum_i C(n-k, i) C(k, j-i) C(n-k+j-i, j)`.
pub fn h_poly_qnk_lemma(n: usize, k: usize) -> Result<IntPolynomial> {
    check_nk(n, k)?;
    let (n_, k_) = (n as i64, k as i64);
    let reversed = IntPolynomial::new(
        (0..=n_)
            .map(|j| {
                (0..=n_ - k_)
                    .map(|i| binomial(n_ - k_, i) * binomial(k_, j - i) * binomial(n_ - k_ + j - i, j))
                    .sum()
            })
            .collect(),
    );
    Ok(reversed.reversed(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{count_dilate, ehrhart_interpolated, h_vector, polytope_qndk};
    use num_traits::Signed;

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ehrhart_examples() {
        assert_eq!(ehrhart_qnk(2, 1).unwrap(), RatPolynomial::from_ratios(&[(1, 1), (5, 2), (3, 2)]));
        for n in 1..=5 {
            // C(n(t+1), n) evaluated at small t by counting
            let e = ehrhart_qnk(n, 0).unwrap();
            for m in 0..3u64 {
                let v = e.eval(&BigRational::from_integer(m.into()));
                assert_eq!(v, BigRational::from_integer(binomial((n as i64) * (m as i64 + 1), n as i64)));
            }
        }
        assert_eq!(ehrhart_qnk(1, 1).unwrap(), ip(&[1, 1]).to_rational());
        assert_eq!(ehrhart_qndk(2, 3, 1).unwrap(), RatPolynomial::from_ratios(&[(1, 1), (7, 2), (5, 2)]));
        for n in 1..=5 {
            for k in 0..=n {
                assert_eq!(ehrhart_qndk(n, n, k).unwrap(), ehrhart_qnk(n, k).unwrap());
            }
        }
        assert_eq!(ehrhart_qndk_scaled(3, 2, 0).unwrap(), ip(&[6, 22, 24, 8]));
        assert!(ehrhart_qnk(0, 0).is_err());
        assert!(ehrhart_qnk(2, 3).is_err());
        assert!(ehrhart_qndk(3, 2, 3).is_err());
    }

    #[test]
    fn table_one_entries() {
        assert_eq!(f_poly(3, 1).unwrap(), ip(&[6, 11, 2]));
        assert_eq!(f_poly(4, 2).unwrap(), ip(&[24, 64, 22]));
        for n in 1..=7 {
            assert_eq!(f_poly(n, n).unwrap(), IntPolynomial::constant(factorial(n as u64)));
        }
    }

    #[test]
    fn general_f_examples() {
        assert_eq!(f_poly_general(2, 3, 1).unwrap(), ip(&[2, 3]));
        for n in 1..=5 {
            for k in 0..=n {
                assert_eq!(f_poly_general(n, n, k).unwrap(), f_poly(n, k).unwrap());
            }
        }
        let f = f_poly_general(3, 2, 0).unwrap();
        assert_eq!(f, ip(&[6, 4, -2]));
        let m = crate::polyalg::to_magic_basis(&ehrhart_qndk_scaled(3, 2, 0).unwrap(), 3).unwrap();
        assert_eq!(m.cs, f.padded(4));
    }

    #[test]
    fn magic_identity_examples() {
        assert!(magic_identity_check(2, 2, 1).unwrap());
        assert!(magic_identity_check(3, 2, 0).unwrap());
        assert!(magic_identity_check(1, 1, 0).unwrap());
        assert_eq!(
            from_magic_basis(&MagicVector { n: 2, cs: bigs(&[2, 1, 0]) }),
            ehrhart_qnk_scaled(2, 1).unwrap()
        );
    }

    #[test]
    fn magic_identity_grid_and_positivity() {
        for n in 1..=6usize {
            for d in [n.saturating_sub(1).max(1), n, n + 1, n + 2] {
                for k in 0..=n.min(d) {
                    assert!(magic_identity_check(n, d, k).unwrap(), "({n},{d},{k})");
                    if d >= n {
                        assert!(f_poly_general(n, d, k).unwrap().all_nonnegative());
                    }
                }
            }
        }
        assert!(f_poly_general(3, 2, 0).unwrap().coeffs().iter().any(|c| c.is_negative()));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_vector_qnk(4, 1).unwrap().gammas, bigs(&[1, 9, 3]));
        assert_eq!(gamma_vector_qnk(5, 5).unwrap().gammas, bigs(&[1, 0, 0]));
        assert_eq!(gamma_vector_qnk(3, 1).unwrap().gammas, bigs(&[1, 4]));
        assert_eq!(h_poly_qnk(2, 0).unwrap(), ip(&[1, 4, 1]));
        assert_eq!(h_poly_qnk(4, 1).unwrap(), ip(&[1, 13, 27, 13, 1]));
        for n in 1..=6 {
            assert_eq!(h_poly_qnk(n, n).unwrap(), IntPolynomial::one_plus_t_pow(n));
        }
        assert_eq!(h_poly_qnk_lemma(2, 0).unwrap(), ip(&[1, 4, 1]));
        assert_eq!(h_poly_qnk_lemma(3, 3).unwrap(), ip(&[1, 3, 3, 1]));
        assert_eq!(h_poly_qnk_lemma(3, 2).unwrap(), ip(&[1, 5, 5, 1]));
    }

    #[test]
    fn lemma_agrees_with_gamma_formula() {
        for n in 1..=10 {
            for k in 0..=n {
                assert_eq!(h_poly_qnk(n, k).unwrap(), h_poly_qnk_lemma(n, k).unwrap());
            }
        }
    }

    #[test]
    fn closed_forms_match_enumeration() {
        for n in 1..=5 {
            for k in 0..=n {
                let p = polytope_qndk(n, n, k).unwrap();
                assert_eq!(ehrhart_interpolated(&p).unwrap(), ehrhart_qnk(n, k).unwrap());
                assert_eq!(h_vector(&p).to_polynomial(), h_poly_qnk(n, k).unwrap());
            }
        }
        assert_eq!(h_vector(&polytope_qndk(4, 4, 1).unwrap()).total(), BigInt::from(55));
        assert_eq!(count_dilate(&polytope_qndk(2, 3, 1).unwrap(), 1), BigInt::from(7));
    }

    #[test]
    fn normalized_volume_counts_maps() {
        for n in 1..=6 {
            for k in 0..=n {
                let lead = ehrhart_qnk_scaled(n, k).unwrap().leading().unwrap().clone();
                assert_eq!(lead, crate::combin::surjective_onto_prefix(n as u64, n as u64, k as u64));
            }
        }
    }
}
