//! Exact univariate polynomials over arbitrary-precision integers and
//! rationals.
//!
//! Coefficients are stored in ascending degree order and kept trimmed, so
//! the zero polynomial is the empty coefficient vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

pub type IntPolynomial = Polynomial<BigInt>;
pub type RatPolynomial = Polynomial<BigRational>;

impl<T: Clone + Zero> Default for Polynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Clone + Zero> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^degree`
    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Coefficients padded with zeros to length `len`.
    pub fn padded(&self, len: usize) -> Vec<T> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), T::zero());
        v
    }

    /// `t^n p(1/t)`; requires `n >= deg p`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut v = self.padded(n + 1);
        v.reverse();
        Self::new(v)
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Clone + Num> Polynomial<T> {
    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// `slope * t + intercept`
    pub fn linear(slope: T, intercept: T) -> Self {
        Self::new(vec![intercept, slope])
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let mut k = T::zero();
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for c in self.coeffs.iter() {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `p(q(t))`
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// `p(1 + t)`
    pub fn shift_by_one(&self) -> Self {
        self.compose(&Self::linear(T::one(), T::one()))
    }

    /// `(1 + t)^e`
    pub fn one_plus_t_pow(e: usize) -> Self {
        Self::linear(T::one(), T::one()).pow(e)
    }

    /// Product of linear factors `a t + b`, expanded by iterated convolution.
    pub fn product_of_linear<I>(factors: I) -> Self
    where
        I: IntoIterator<Item = (T, T)>,
    {
        factors
            .into_iter()
            .fold(Self::one(), |acc, (a, b)| acc.mul_linear(&a, &b))
    }

    /// Multiplies by `a t + b` in place of a full convolution.
    pub fn mul_linear(&self, a: &T, b: &T) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].clone() + c.clone() * b.clone();
            out[i + 1] = out[i + 1].clone() + c.clone() * a.clone();
        }
        Self::new(out)
    }
}

impl<'a, T: Clone + Num> Add<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a, T: Clone + Num> Sub<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a, T: Clone + Num> Mul<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<T: Clone + Num> $tr for Polynomial<T> {
            type Output = Polynomial<T>;
            fn $m(self, rhs: Polynomial<T>) -> Polynomial<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<T: Clone + Num + Neg<Output = T>> Neg for Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<T: Clone + Num> std::iter::Sum for Polynomial<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| &acc + &p)
    }
}

impl IntPolynomial {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> RatPolynomial {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Gcd of the coefficients, always nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the (positive) content; signs are preserved.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.map(|x| x / &c)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl RatPolynomial {
    pub fn from_ratios(coeffs: &[(i64, i64)]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    }

    /// `Some` when every coefficient is an integer.
    pub fn to_integer(&self) -> Option<IntPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::new)
    }

    /// Positive rational multiple with coprime integer coefficients.
    pub fn primitive_integer(&self) -> IntPolynomial {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        );
        ints.primitive_part()
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let c = &rem[shift + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = &rem[shift + j] - &c * b;
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }
}

fn fmt_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    negative: bool,
    magnitude: &str,
    unit: bool,
    degree: usize,
) -> fmt::Result {
    if negative {
        f.write_str("-")?;
    } else if !first {
        f.write_str("+")?;
    }
    if degree == 0 || !unit {
        f.write_str(magnitude)?;
    }
    match degree {
        0 => Ok(()),
        1 => f.write_str("t"),
        d => write!(f, "t^{d}"),
    }
}

/// Renders as `c_d t^d + ... + c_0` with no spaces, e.g. `2t^2+11t+6`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            fmt_term(f, first, c.is_negative(), &mag.to_string(), mag.is_one(), d)?;
            first = false;
        }
        Ok(())
    }
}

/// Non-integer coefficients are parenthesised, e.g. `(3/2)t^2+(5/2)t+1`.
impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let text = if mag.is_integer() || d == 0 {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            fmt_term(f, first, c.is_negative(), &text, mag.is_one(), d)?;
            first = false;
        }
        Ok(())
    }
}

/// JSON helpers: integers become exact JSON numbers, rationals become
/// `"num/den"` strings (or `"num"` when the denominator is 1).
pub mod json {
    use super::*;
    use serde_json::{Number, Value};

    pub fn int(c: &BigInt) -> Value {
        Value::Number(Number::from_str(&c.to_string()).expect("integer literal"))
    }

    pub fn rat(c: &BigRational) -> Value {
        Value::String(c.to_string())
    }

    pub fn ints(cs: &[BigInt]) -> Value {
        Value::Array(cs.iter().map(int).collect())
    }

    pub fn rats(cs: &[BigRational]) -> Value {
        Value::Array(cs.iter().map(rat).collect())
    }

    pub fn parse_int(v: &Value) -> Option<BigInt> {
        match v {
            Value::Number(n) => BigInt::from_str(&n.to_string()).ok(),
            Value::String(s) => BigInt::from_str(s).ok(),
            _ => None,
        }
    }

    pub fn parse_rat(v: &Value) -> Option<BigRational> {
        match v {
            Value::Number(n) => BigInt::from_str(&n.to_string())
                .ok()
                .map(BigRational::from_integer),
            Value::String(s) => BigRational::from_str(s).ok(),
            _ => None,
        }
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&json::int(c))?;
        }
        seq.end()
    }
}

impl Serialize for RatPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        raw.iter()
            .map(|v| json::parse_int(v).ok_or_else(|| de::Error::custom(format!("not an integer: {v}"))))
            .collect::<Result<Vec<_>, _>>()
            .map(Polynomial::new)
    }
}

impl<'de> Deserialize<'de> for RatPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        raw.iter()
            .map(|v| json::parse_rat(v).ok_or_else(|| de::Error::custom(format!("not a rational: {v}"))))
            .collect::<Result<Vec<_>, _>>()
            .map(Polynomial::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn trims_trailing_zeros() {
        assert!(ip(&[0, 0]).is_zero());
        assert_eq!(ip(&[1, 2, 0]).coeffs().len(), 2);
        assert_eq!(ip(&[]).degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = ip(&[1, 1]);
        assert_eq!(&a * &a, ip(&[1, 2, 1]));
        assert_eq!(&a - &a, IntPolynomial::zero());
        assert_eq!(a.pow(3), ip(&[1, 3, 3, 1]));
        assert_eq!(ip(&[2, 3]).mul_linear(&2.into(), &1.into()), ip(&[2, 7, 6]));
        assert_eq!(ip(&[2, 0, 1]).shift_by_one(), ip(&[3, 2, 1]));
        assert_eq!(ip(&[5, 0, 3]).derivative(), ip(&[0, 6]));
        assert_eq!(ip(&[1, 2]).reversed(2), ip(&[0, 2, 1]));
    }

    #[test]
    fn rational_division_and_gcd() {
        let p = ip(&[2, 3, 1]).to_rational(); // (t+1)(t+2)
        let q = ip(&[1, 1]).to_rational();
        let (quot, rem) = p.div_rem(&q);
        assert_eq!(quot, ip(&[2, 1]).to_rational());
        assert!(rem.is_zero());
        let sq = (&p * &q).squarefree_part();
        assert_eq!(sq.monic(), p);
    }

    #[test]
    fn rendering() {
        assert_eq!(ip(&[6, 11, 2]).to_string(), "2t^2+11t+6");
        assert_eq!(ip(&[2, 1]).to_string(), "t+2");
        assert_eq!(ip(&[24]).to_string(), "24");
        assert_eq!(ip(&[6, 4, -2]).to_string(), "-2t^2+4t+6");
        assert_eq!(ip(&[0, -1]).to_string(), "-t");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        let r = RatPolynomial::from_ratios(&[(1, 1), (5, 2), (3, 2)]);
        assert_eq!(r.to_string(), "(3/2)t^2+(5/2)t+1");
    }

    #[test]
    fn json_forms() {
        let r = RatPolynomial::from_ratios(&[(1, 1), (5, 2), (3, 2)]);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"["1","5/2","3/2"]"#);
        let big = IntPolynomial::new(vec![BigInt::from(10).pow(30), BigInt::from(-3)]);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, "[1000000000000000000000000000000,-3]");
        let back: IntPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, big);
        let back: RatPolynomial = serde_json::from_str(r#"["1","5/2","3/2"]"#).unwrap();
        assert_eq!(back, r);
    }
}
