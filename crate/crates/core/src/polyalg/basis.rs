//! The magic basis `t^i (1+t)^(n-i)`, the gamma basis `t^i (1+t)^(n-2i)`
//! and the sequence predicates used on h-vectors.

use num_bigint::BigInt;
use num_traits::{Num, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, Polynomial};

/// Coefficients `c_0..=c_n` of `sum c_i t^i (1+t)^(n-i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagicVector<T = BigInt> {
    pub n: usize,
    pub cs: Vec<T>,
}

impl MagicVector<BigInt> {
    pub fn is_nonnegative(&self) -> bool {
        self.cs.iter().all(|c| !c.is_negative())
    }

    /// The `c_i` read as the coefficients of a polynomial in `t`.
    pub fn as_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.cs.clone())
    }
}

/// Coefficients `gamma_0..=gamma_{n/2}` of `sum gamma_i t^i (1+t)^(n-2i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaVector {
    pub n: usize,
    pub gammas: Vec<BigInt>,
}

impl GammaVector {
    pub fn is_nonnegative(&self) -> bool {
        self.gammas.iter().all(|g| !g.is_negative())
    }

    pub fn to_polynomial(&self) -> IntPolynomial {
        from_gamma_basis(self)
    }
}

/// Lattice points of a polytope graded by their number of nonzero coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    pub n: usize,
    pub hs: Vec<BigInt>,
}

impl HVector {
    pub fn to_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.hs.clone())
    }

    pub fn total(&self) -> BigInt {
        self.hs.iter().sum()
    }

    /// `g_0 = h_0` and `g_i = h_i - h_{i-1}` for `1 <= i <= n/2`.
    pub fn g_vector(&self) -> Vec<BigInt> {
        (0..=self.n / 2)
            .map(|i| {
                if i == 0 {
                    self.hs[0].clone()
                } else {
                    &self.hs[i] - &self.hs[i - 1]
                }
            })
            .collect()
    }
}

/// Writes `p` in the basis `t^i (1+t)^(n-i)`.
///
/// Substituting `u = t/(1+t)` turns the expansion into the power series
/// `c(u) = sum_i p_i u^i (1-u)^(n-i)`, which is a polynomial of degree at
/// most `n` whose coefficients are the `c_i`.
pub fn to_magic_basis<T: Clone + Num>(p: &Polynomial<T>, n: usize) -> Result<MagicVector<T>> {
    if let Some(d) = p.degree() {
        if d > n {
            return Err(Error::DegreeExceedsBasis { degree: d, n });
        }
    }
    let one_minus_u = Polynomial::linear(T::zero() - T::one(), T::one());
    let c: Polynomial<T> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, pi)| Polynomial::monomial(pi.clone(), i) * one_minus_u.pow(n - i))
        .sum();
    Ok(MagicVector { n, cs: c.padded(n + 1) })
}

pub fn from_magic_basis<T: Clone + Num>(m: &MagicVector<T>) -> Polynomial<T> {
    m.cs
        .iter()
        .enumerate()
        .map(|(i, c)| Polynomial::monomial(c.clone(), i) * Polynomial::one_plus_t_pow(m.n - i))
        .sum()
}

/// True iff `coeff(i) == coeff(n - i)` for every `i` and `deg p <= n`.
pub fn is_palindromic(p: &IntPolynomial, n: usize) -> bool {
    if p.degree().is_some_and(|d| d > n) {
        return false;
    }
    (0..=n / 2).all(|i| p.coeff(i) == p.coeff(n - i))
}

/// Weakly increasing, then weakly decreasing.
pub fn is_unimodal<T: PartialOrd>(v: &[T]) -> bool {
    let mut i = 0;
    while i + 1 < v.len() && v[i] <= v[i + 1] {
        i += 1;
    }
    while i + 1 < v.len() && v[i] >= v[i + 1] {
        i += 1;
    }
    i + 1 >= v.len()
}

/// Peels `gamma_i t^i (1+t)^(n-2i)` off the low-degree end.
pub fn to_gamma_basis(p: &IntPolynomial, n: usize) -> Result<GammaVector> {
    if !is_palindromic(p, n) {
        return Err(Error::NotPalindromic { n });
    }
    let mut residual = p.clone();
    let mut gammas = Vec::with_capacity(n / 2 + 1);
    for i in 0..=n / 2 {
        let g = residual.coeff(i);
        if !g.is_zero() {
            let term = IntPolynomial::monomial(g.clone(), i) * IntPolynomial::one_plus_t_pow(n - 2 * i);
            residual = &residual - &term;
        }
        gammas.push(g);
    }
    debug_assert!(residual.is_zero());
    Ok(GammaVector { n, gammas })
}

pub fn from_gamma_basis(g: &GammaVector) -> IntPolynomial {
    g.gammas
        .iter()
        .enumerate()
        .map(|(i, c)| IntPolynomial::monomial(c.clone(), i) * IntPolynomial::one_plus_t_pow(g.n - 2 * i))
        .sum()
}
