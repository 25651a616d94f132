//! Real-root counting with exact Sturm chains.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, RatPolynomial};

/// An interval endpoint on the extended real line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    Finite(BigRational),
    PosInfinity,
}

impl Bound {
    pub fn int(v: i64) -> Self {
        Bound::Finite(BigRational::from_integer(v.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Bound::Finite(BigRational::new(num.into(), den.into()))
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        use Bound::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (NegInfinity, NegInfinity) | (PosInfinity, PosInfinity) => Ordering::Equal,
            (NegInfinity, _) | (_, PosInfinity) => Ordering::Less,
            (_, NegInfinity) | (PosInfinity, _) => Ordering::Greater,
        }
    }
}

/// Sign of `p(a/b)` for `b > 0`, computed as the sign of `b^deg p(a/b)`.
fn sign_at(p: &IntPolynomial, x: &BigRational) -> i8 {
    let (a, b) = (x.numer(), x.denom());
    let d = p.degree().unwrap_or(0);
    let mut acc = BigInt::zero();
    let mut apow = BigInt::one();
    let mut bpows: Vec<BigInt> = Vec::with_capacity(d + 1);
    let mut bp = BigInt::one();
    for _ in 0..=d {
        bpows.push(bp.clone());
        bp *= b;
    }
    for (i, c) in p.coeffs().iter().enumerate() {
        acc += c * &apow * &bpows[d - i];
        apow *= a;
    }
    signum(&acc)
}

fn signum(v: &BigInt) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Sturm sequence of the squarefree part of a polynomial.
///
/// Every member is stored as a primitive integer polynomial; the scaling
/// applied at each remainder step is a positive rational, so sign patterns
/// are those of the textbook rational chain.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn new(p: &RatPolynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let sf = p.squarefree_part().primitive_integer();
        let mut chain = vec![sf.clone()];
        let mut prev = sf.to_rational();
        let mut cur = sf.derivative().to_rational();
        while !cur.is_zero() {
            chain.push(cur.primitive_integer());
            let (_, r) = prev.div_rem(&cur);
            prev = cur;
            cur = (-r).primitive_integer().to_rational();
        }
        Ok(SturmChain { chain })
    }

    /// Degree of the squarefree part, an upper bound on distinct real roots.
    pub fn distinct_root_bound(&self) -> usize {
        self.chain[0].degree().unwrap_or(0)
    }

    pub fn squarefree(&self) -> &IntPolynomial {
        &self.chain[0]
    }

    fn sign(p: &IntPolynomial, x: &Bound) -> i8 {
        let lead = signum(p.leading().expect("chain members are nonzero"));
        match x {
            Bound::PosInfinity => lead,
            Bound::NegInfinity => {
                if p.degree().unwrap_or(0).is_multiple_of(2) {
                    lead
                } else {
                    -lead
                }
            }
            Bound::Finite(v) => sign_at(p, v),
        }
    }

    /// Sign changes along the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &Bound) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for p in &self.chain {
            let s = Self::sign(p, x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    /// Distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations(lo) - self.variations(hi)
    }

    pub fn vanishes_at(&self, x: &Bound) -> bool {
        matches!(x, Bound::Finite(v) if sign_at(&self.chain[0], v) == 0)
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_real_root_count(p: &RatPolynomial, lo: &Bound, hi: &Bound) -> Result<usize> {
    Ok(SturmChain::new(p)?.count(lo, hi))
}

/// Root localisation summary for a closed interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    /// Degree of the squarefree part.
    pub distinct_roots: usize,
    pub real_roots: usize,
    pub real_roots_in_interval: usize,
}

impl RootReport {
    pub fn all_real_in_interval(&self) -> bool {
        self.real_roots_in_interval == self.distinct_roots
    }
}

pub fn locate_roots(p: &RatPolynomial, lo: &Bound, hi: &Bound) -> Result<RootReport> {
    let chain = SturmChain::new(p)?;
    let real = chain.count(&Bound::NegInfinity, &Bound::PosInfinity);
    let mut inside = chain.count(lo, hi);
    if lo <= hi && chain.vanishes_at(lo) {
        inside += 1;
    }
    Ok(RootReport {
        distinct_roots: chain.distinct_root_bound(),
        real_roots: real,
        real_roots_in_interval: inside,
    })
}

/// True iff every root of `p` is real and lies in `[lo, hi]`.
/// Multiplicities are ignored.
pub fn all_roots_real_in(p: &RatPolynomial, lo: &Bound, hi: &Bound) -> Result<bool> {
    Ok(locate_roots(p, lo, hi)?.all_real_in_interval())
}
