//! Exact interpolation and the Ehrhart-to-h* transform.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combin::binomial;
use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, RatPolynomial};

/// The unique polynomial of degree below `points.len()` through `points`.
pub fn lagrange_interpolate(points: &[(BigRational, BigRational)]) -> Result<RatPolynomial> {
    for (i, (xi, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(xj, _)| xj == xi) {
            return Err(Error::DuplicateAbscissa(xi.to_string()));
        }
    }
    let mut out = RatPolynomial::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = RatPolynomial::one();
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = basis.mul_linear(&BigRational::one(), &-xj.clone());
                denom *= xi - xj;
            }
        }
        out = &out + &basis.scale(&(yi / denom));
    }
    Ok(out)
}

/// Interpolates integer samples at `m = 0, 1, ..., values.len() - 1`.
pub fn interpolate_from_zero(values: &[BigInt]) -> RatPolynomial {
    let points: Vec<_> = values
        .iter()
        .enumerate()
        .map(|(m, v)| (BigRational::from_integer(m.into()), BigRational::from_integer(v.clone())))
        .collect();
    lagrange_interpolate(&points).expect("nodes are distinct")
}

/// Numerator of `sum_m e(m) x^m = h*(x) / (1-x)^(n+1)`:
/// `h*_i = sum_{j<=i} (-1)^j C(n+1, j) e(i-j)` for `0 <= i <= n`.
///
/// `n` defaults to `deg e`.
pub fn hstar_from_ehrhart(e: &RatPolynomial, n: Option<usize>) -> Result<IntPolynomial> {
    let n = match n {
        Some(n) => n,
        None => e.degree().ok_or(Error::ZeroPolynomial)?,
    };
    let values: Vec<BigRational> = (0..=n)
        .map(|m| e.eval(&BigRational::from_integer(m.into())))
        .collect();
    let mut hs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc = BigRational::zero();
        for j in 0..=i {
            let c = BigRational::from_integer(binomial(n as i64 + 1, j as i64));
            let term = c * &values[i - j];
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if !acc.is_integer() {
            return Err(Error::NonIntegerHStar { index: i, value: acc.to_string() });
        }
        hs.push(acc.to_integer());
    }
    Ok(IntPolynomial::new(hs))
}

/// Like [`hstar_from_ehrhart`], additionally rejecting negative coefficients.
pub fn hstar_checked(e: &RatPolynomial, n: Option<usize>) -> Result<IntPolynomial> {
    let h = hstar_from_ehrhart(e, n)?;
    if let Some((i, c)) = h.coeffs().iter().enumerate().find(|(_, c)| c.is_negative()) {
        return Err(Error::NegativeHStar { index: i, value: c.to_string() });
    }
    Ok(h)
}
