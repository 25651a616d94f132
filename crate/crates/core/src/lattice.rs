//! Inequality descriptions of arbor polytopes and brute-force lattice-point
//! enumeration of their dilates.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::arbor::Arbor;
use crate::combin::binomial;
use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, RatPolynomial};
use crate::polyalg::{hstar_checked, interpolate_from_zero, HVector};

/// `sum_{i in support} x_i <= bound` (scaled by the dilation factor).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumConstraint {
    pub support: Vec<usize>,
    pub bound: u64,
}

/// A polytope in the nonnegative orthant of `R^n` cut out by unit caps
/// `x_i <= 1` and sum constraints. Coordinates are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    n: usize,
    upper_unit: BTreeSet<usize>,
    sum_constraints: Vec<SumConstraint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    pub coords: Vec<u64>,
}

impl LatticePoint {
    pub fn nonzero_count(&self) -> usize {
        self.coords.iter().filter(|&&x| x != 0).count()
    }
}

impl HPolytope {
    pub fn new(n: usize, upper_unit: BTreeSet<usize>, sum_constraints: Vec<SumConstraint>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("dimension must be positive".into()));
        }
        let in_range = |i: &usize| (1..=n).contains(i);
        if !upper_unit.iter().all(in_range) {
            return Err(Error::InvalidParameters("unit cap index outside [1, n]".into()));
        }
        for c in &sum_constraints {
            if c.bound == 0 {
                return Err(Error::InvalidParameters("sum constraint bound must be positive".into()));
            }
            if c.support.is_empty() || !c.support.iter().all(in_range) {
                return Err(Error::InvalidParameters("sum constraint support outside [1, n]".into()));
            }
        }
        for i in 1..=n {
            if !upper_unit.contains(&i) && !sum_constraints.iter().any(|c| c.support.contains(&i)) {
                return Err(Error::InvalidParameters(format!("coordinate {i} is unbounded")));
            }
        }
        Ok(HPolytope { n, upper_unit, sum_constraints })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn upper_unit(&self) -> &BTreeSet<usize> {
        &self.upper_unit
    }

    pub fn sum_constraints(&self) -> &[SumConstraint] {
        &self.sum_constraints
    }

    pub fn contains(&self, x: &[u64], m: u64) -> bool {
        x.len() == self.n
            && self.upper_unit.iter().all(|&i| x[i - 1] <= m)
            && self
                .sum_constraints
                .iter()
                .all(|c| c.support.iter().map(|&i| x[i - 1]).sum::<u64>() <= m * c.bound)
    }
}

/// One sum constraint `(D(v), |D(v)|)` per block, in block order.
pub fn polytope_of_arbor(a: &Arbor) -> Result<HPolytope> {
    let table = a.descendant_sets()?;
    let constraints = table
        .sets
        .iter()
        .map(|s| SumConstraint { support: s.iter().copied().collect(), bound: s.len() as u64 })
        .collect();
    HPolytope::new(a.n(), BTreeSet::new(), constraints)
}

/// `x_i <= 1` for `i <= k` and `x_1 + ... + x_n <= d`.
pub fn polytope_qndk(n: usize, d: usize, k: usize) -> Result<HPolytope> {
    if n < 1 || d < 1 || k > n.min(d) {
        return Err(Error::InvalidParameters(format!(
            "Q(n,d,k) needs n, d >= 1 and k <= min(n, d); got ({n}, {d}, {k})"
        )));
    }
    HPolytope::new(
        n,
        (1..=k).collect(),
        vec![SumConstraint { support: (1..=n).collect(), bound: d as u64 }],
    )
}

/// Precomputed per-coordinate view used by the enumerators.
struct Walker {
    n: usize,
    m: u64,
    capped: Vec<bool>,
    /// constraint indices touching each coordinate
    touching: Vec<Vec<usize>>,
    initial: Vec<u64>,
}

impl Walker {
    fn new(p: &HPolytope, m: u64) -> Self {
        let mut touching = vec![Vec::new(); p.n];
        for (ci, c) in p.sum_constraints.iter().enumerate() {
            for &i in &c.support {
                touching[i - 1].push(ci);
            }
        }
        Walker {
            n: p.n,
            m,
            capped: (1..=p.n).map(|i| p.upper_unit.contains(&i)).collect(),
            touching,
            initial: p.sum_constraints.iter().map(|c| c.bound * m).collect(),
        }
    }

    /// Largest admissible value of coordinate `i` given the residuals.
    fn cap(&self, i: usize, residual: &[u64]) -> u64 {
        let mut cap = if self.capped[i] { self.m } else { u64::MAX };
        for &c in &self.touching[i] {
            cap = cap.min(residual[c]);
        }
        cap
    }

    fn set(&self, i: usize, v: u64, residual: &mut [u64]) {
        for &c in &self.touching[i] {
            residual[c] -= v;
        }
    }

    fn unset(&self, i: usize, v: u64, residual: &mut [u64]) {
        for &c in &self.touching[i] {
            residual[c] += v;
        }
    }

    fn count_from(&self, i: usize, residual: &mut [u64]) -> u128 {
        let cap = self.cap(i, residual);
        if i + 1 == self.n {
            return cap as u128 + 1;
        }
        let mut total = 0u128;
        for v in 0..=cap {
            self.set(i, v, residual);
            total += self.count_from(i + 1, residual);
            self.unset(i, v, residual);
        }
        total
    }

    /// Adds to `by_support[j]` the number of points with `j` nonzero coordinates.
    fn grade_from(&self, i: usize, nonzero: usize, residual: &mut [u64], by_support: &mut [u128]) {
        let cap = self.cap(i, residual);
        if i + 1 == self.n {
            by_support[nonzero] += 1;
            by_support[nonzero + 1] += cap as u128;
            return;
        }
        for v in 0..=cap {
            self.set(i, v, residual);
            self.grade_from(i + 1, nonzero + usize::from(v != 0), residual, by_support);
            self.unset(i, v, residual);
        }
    }

    fn visit_from(&self, i: usize, x: &mut Vec<u64>, residual: &mut [u64], f: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        if i == self.n {
            return f(x);
        }
        let cap = self.cap(i, residual);
        for v in 0..=cap {
            self.set(i, v, residual);
            x.push(v);
            let go_on = self.visit_from(i + 1, x, residual, f);
            x.pop();
            self.unset(i, v, residual);
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Number of lattice points in the `m`-th dilate.
///
/// Depth-first over coordinates in index order; the bound on each
/// coordinate is the smallest residual among the constraints touching it.
/// The first coordinate's range is split across the rayon pool.
pub fn count_dilate(p: &HPolytope, m: u64) -> BigInt {
    let w = Walker::new(p, m);
    let first_cap = w.cap(0, &w.initial);
    if w.n == 1 {
        return BigInt::from(first_cap as u128 + 1);
    }
    let total: u128 = (0..=first_cap)
        .into_par_iter()
        .map(|v| {
            let mut residual = w.initial.clone();
            w.set(0, v, &mut residual);
            w.count_from(1, &mut residual)
        })
        .sum();
    BigInt::from(total)
}

/// Points of the undilated polytope graded by number of nonzero coordinates.
pub fn h_vector(p: &HPolytope) -> HVector {
    let w = Walker::new(p, 1);
    let mut by_support = vec![0u128; p.n + 1];
    let mut residual = w.initial.clone();
    w.grade_from(0, 0, &mut residual, &mut by_support);
    HVector { n: p.n, hs: by_support.into_iter().map(BigInt::from).collect() }
}

/// Visits every lattice point of the `m`-th dilate in lexicographic order
/// until `f` returns `false`.
pub fn for_each_point(p: &HPolytope, m: u64, mut f: impl FnMut(&[u64]) -> bool) {
    let w = Walker::new(p, m);
    let mut residual = w.initial.clone();
    let mut x = Vec::with_capacity(p.n);
    w.visit_from(0, &mut x, &mut residual, &mut f);
}

/// Materialises the points of the `m`-th dilate, refusing beyond `cap`.
pub fn lattice_points(p: &HPolytope, m: u64, cap: u64) -> Result<Vec<LatticePoint>> {
    let mut out = Vec::new();
    let mut overflow = false;
    for_each_point(p, m, |x| {
        if out.len() as u64 >= cap {
            overflow = true;
            return false;
        }
        out.push(LatticePoint { coords: x.to_vec() });
        true
    });
    if overflow {
        return Err(Error::PointCapExceeded { cap });
    }
    Ok(out)
}

/// Degree-`n` polynomial through the counts at `m = 0..=n`, confirmed by
/// the count at `m = n + 1`.
pub fn ehrhart_interpolated(p: &HPolytope) -> Result<RatPolynomial> {
    let n = p.n as u64;
    let counts: Vec<BigInt> = (0..=n).map(|m| count_dilate(p, m)).collect();
    let e = interpolate_from_zero(&counts);
    let check = count_dilate(p, n + 1);
    let predicted = e.eval(&BigRational::from_integer((n + 1).into()));
    if predicted != BigRational::from_integer(check.clone()) {
        return Err(Error::InterpolationMismatch {
            m: n + 1,
            predicted: predicted.to_string(),
            counted: check.to_string(),
        });
    }
    Ok(e)
}

/// h*-polynomial of the polytope, from its interpolated Ehrhart polynomial.
pub fn hstar(p: &HPolytope) -> Result<IntPolynomial> {
    hstar_checked(&ehrhart_interpolated(p)?, Some(p.n))
}

/// `sum prod_i C(m+1, a_i)` over weak compositions `(a_1..a_n)` of `n` with
/// `a_1, ..., a_k >= 1`.
pub fn composition_ehrhart_oracle(n: usize, k: usize, m: u64) -> Result<BigInt> {
    if k > n {
        return Err(Error::InvalidParameters(format!("need k <= n, got n = {n}, k = {k}")));
    }
    let row: Vec<BigInt> = (0..=n).map(|a| binomial(m as i64 + 1, a as i64)).collect();
    fn go(pos: usize, left: usize, n: usize, k: usize, row: &[BigInt], acc: &BigInt, out: &mut BigInt) {
        if pos == n {
            if left == 0 {
                *out += acc;
            }
            return;
        }
        let lo = usize::from(pos < k);
        for a in lo..=left {
            if row[a] == BigInt::from(0) {
                continue;
            }
            go(pos + 1, left - a, n, k, row, &(acc * &row[a]), out);
        }
    }
    let mut out = BigInt::from(0);
    go(0, n, n, k, &row, &BigInt::from(1), &mut out);
    Ok(out)
}
