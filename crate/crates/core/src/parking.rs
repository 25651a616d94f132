//! Largest-available parking, the word families `W_{n,d,k}` and `W_tau`,
//! and the descent, unlucky and excedance enumerators built on them.
//!
//! Cars `1..=n` arrive in order. Car `i` takes space `w_i` when that space
//! exists and is free; otherwise it takes the largest free space. A car is
//! lucky when it gets its preferred space.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arbor::Arbor;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// A preference word over the alphabet `[d]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<usize>,
    d: usize,
}

impl Word {
    pub fn new(letters: Vec<usize>, d: usize) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l > d) {
            return Err(Error::InvalidParameters(format!("letter {bad} outside [1, {d}]")));
        }
        Ok(Word { letters, d })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn alphabet(&self) -> usize {
        self.d
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParkingOutcome {
    /// Space taken by each car, 1-based.
    pub spot: Vec<usize>,
    pub lucky: Vec<bool>,
    pub unlucky_count: usize,
}

/// Parks `w.len()` cars on as many spaces.
pub fn park(w: &Word) -> ParkingOutcome {
    park_on(w.letters(), w.len()).expect("spaces equal cars")
}

/// Parks the cars of `prefs` on `spaces >= prefs.len()` spaces.
pub fn park_on(prefs: &[usize], spaces: usize) -> Result<ParkingOutcome> {
    if spaces < prefs.len() {
        return Err(Error::InvalidParameters(format!(
            "{} cars cannot park on {spaces} spaces",
            prefs.len()
        )));
    }
    let mut free: BTreeSet<usize> = (1..=spaces).collect();
    let mut spot = Vec::with_capacity(prefs.len());
    let mut lucky = Vec::with_capacity(prefs.len());
    for &p in prefs {
        if free.remove(&p) {
            spot.push(p);
            lucky.push(true);
        } else {
            let s = free.pop_last().expect("a space is always free");
            spot.push(s);
            lucky.push(false);
        }
    }
    let unlucky_count = lucky.iter().filter(|l| !**l).count();
    Ok(ParkingOutcome { spot, lucky, unlucky_count })
}

/// Unlucky count for `n = prefs.len() < 64` cars, tracking free spaces in
/// a bitmask.
fn unlucky_fast(prefs: &[usize]) -> usize {
    let n = prefs.len();
    let mut free: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut unlucky = 0;
    for &p in prefs {
        let bit = if p <= n { 1u64 << (p - 1) } else { 0 };
        if free & bit != 0 {
            free &= !bit;
        } else {
            let top = 63 - free.leading_zeros();
            free &= !(1u64 << top);
            unlucky += 1;
        }
    }
    unlucky
}

pub fn unlucky(prefs: &[usize]) -> usize {
    if prefs.len() <= 64 {
        unlucky_fast(prefs)
    } else {
        park_on(prefs, prefs.len()).unwrap().unlucky_count
    }
}

pub fn descent_count(letters: &[usize]) -> usize {
    letters.windows(2).filter(|w| w[0] > w[1]).count()
}

fn contains_prefix(letters: &[usize], k: usize) -> bool {
    let mut seen = 0u128;
    for &l in letters {
        if l <= k {
            seen |= 1 << (l - 1);
        }
    }
    k == 0 || seen.count_ones() as usize == k
}

/// Odometer over `[d]^n` in lexicographic order.
struct Odometer {
    cur: Option<Vec<usize>>,
    d: usize,
}

impl Odometer {
    fn new(n: usize, d: usize) -> Self {
        Odometer { cur: (d >= 1 || n == 0).then(|| vec![1; n]), d }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if cur[i] < self.d {
                cur[i] += 1;
                for x in &mut cur[i + 1..] {
                    *x = 1;
                }
                break;
            }
        }
        Some(out)
    }
}

fn check_ndk(n: usize, d: usize, k: usize) -> Result<()> {
    if n < 1 || d < 1 || k > n.min(d) {
        return Err(Error::InvalidParameters(format!(
            "need n, d >= 1 and 0 <= k <= min(n, d); got ({n}, {d}, {k})"
        )));
    }
    Ok(())
}

/// Words in `[d]^n` containing each of `1..=k` at least once, lexicographic.
pub fn words_w(n: usize, d: usize, k: usize) -> Result<impl Iterator<Item = Word>> {
    check_ndk(n, d, k)?;
    Ok(Odometer::new(n, d)
        .filter(move |w| contains_prefix(w, k))
        .map(move |letters| Word { letters, d }))
}

/// Per-block multiplicity test defining `W_tau`: the letters of `D(v)` occur
/// at least `|D(v)|` times in total.
#[derive(Clone, Debug)]
pub struct ArborWordFilter {
    /// (membership indexed by letter, required count); the root is omitted.
    conditions: Vec<(Vec<bool>, usize)>,
}

impl ArborWordFilter {
    pub fn new(a: &Arbor) -> Result<Self> {
        let table = a.descendant_sets()?;
        let root = a.root();
        let conditions = table
            .sets
            .iter()
            .enumerate()
            .filter(|(b, _)| *b != root)
            .map(|(_, s)| {
                let mut member = vec![false; a.n() + 1];
                for &x in s {
                    member[x] = true;
                }
                (member, s.len())
            })
            .collect();
        Ok(ArborWordFilter { conditions })
    }

    pub fn accepts(&self, letters: &[usize]) -> bool {
        self.conditions
            .iter()
            .all(|(member, need)| letters.iter().filter(|&&l| member[l]).count() >= *need)
    }
}

/// Words of `[n]^n` satisfying the multiplicity condition of every block.
pub fn words_wtau(a: &Arbor) -> Result<impl Iterator<Item = Word>> {
    let filter = ArborWordFilter::new(a)?;
    let n = a.n();
    Ok(Odometer::new(n, n)
        .filter(move |w| filter.accepts(w))
        .map(move |letters| Word { letters, d: n }))
}

fn histogram_to_poly(hist: Vec<u64>) -> IntPolynomial {
    IntPolynomial::new(hist.into_iter().map(BigInt::from).collect())
}

/// `sum t^stat(w)` over the words of `[d]^n` passing `keep`, split on the
/// first letter across the rayon pool.
fn word_statistic<K, S>(n: usize, d: usize, keep: K, stat: S) -> IntPolynomial
where
    K: Fn(&[usize]) -> bool + Sync,
    S: Fn(&[usize]) -> usize + Sync,
{
    let hist = (1..=d)
        .into_par_iter()
        .map(|first| {
            let mut hist = vec![0u64; n + 1];
            let mut word = vec![first];
            for rest in Odometer::new(n - 1, d) {
                word.truncate(1);
                word.extend_from_slice(&rest);
                if keep(&word) {
                    hist[stat(&word)] += 1;
                }
            }
            hist
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    histogram_to_poly(hist)
}

/// `sum_{w in W_{n,d,k}} t^unlucky(w)`.
pub fn unlucky_generating_poly(n: usize, d: usize, k: usize) -> Result<IntPolynomial> {
    check_ndk(n, d, k)?;
    Ok(word_statistic(n, d, |w| contains_prefix(w, k), unlucky))
}

/// `sum t^(n-1-des(w))` over a stream of words of length `n`.
pub fn descent_enumerator(words: impl IntoIterator<Item = Word>, n: usize) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::InvalidParameters("word length must be positive".into()));
    }
    let mut hist = vec![0u64; n];
    for w in words {
        if w.len() != n {
            return Err(Error::InvalidParameters(format!("word of length {} in a stream of length {n}", w.len())));
        }
        hist[n - 1 - descent_count(w.letters())] += 1;
    }
    Ok(histogram_to_poly(hist))
}

/// Parallel form of `descent_enumerator(words_w(n, d, k), n)`.
pub fn descent_enumerator_w(n: usize, d: usize, k: usize) -> Result<IntPolynomial> {
    check_ndk(n, d, k)?;
    Ok(word_statistic(n, d, |w| contains_prefix(w, k), |w| n - 1 - descent_count(w)))
}

/// Parallel form of `descent_enumerator(words_wtau(a), n)`.
pub fn descent_enumerator_tau(a: &Arbor) -> Result<IntPolynomial> {
    let filter = ArborWordFilter::new(a)?;
    let n = a.n();
    Ok(word_statistic(n, n, |w| filter.accepts(w), |w| n - 1 - descent_count(w)))
}

/// `(a_1, ..., a_n)` with `sum a_i = n`; indexes the rearrangements of the
/// multiset holding `a_i` copies of `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakComposition {
    parts: Vec<usize>,
}

impl WeakComposition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let total: usize = parts.iter().sum();
        if total != parts.len() {
            return Err(Error::InvalidParameters(format!(
                "parts sum to {total}, expected {}",
                parts.len()
            )));
        }
        Ok(WeakComposition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    /// The sorted word `1^{a_1} 2^{a_2} ...`.
    pub fn base_word(&self) -> Vec<usize> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| std::iter::repeat_n(i + 1, a))
            .collect()
    }
}

/// All weak compositions of `n` into `n` parts with `a_1, ..., a_k >= 1`.
pub fn weak_compositions(n: usize, k: usize) -> Vec<WeakComposition> {
    fn go(pos: usize, left: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<WeakComposition>) {
        if pos == n {
            if left == 0 {
                out.push(WeakComposition { parts: cur.clone() });
            }
            return;
        }
        for a in usize::from(pos < k)..=left {
            cur.push(a);
            go(pos + 1, left - a, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, n, k, &mut Vec::new(), &mut out);
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Distinct rearrangements of the multiset, in lexicographic order.
pub fn multiset_permutations(mu: &WeakComposition) -> impl Iterator<Item = Vec<usize>> {
    let mut cur = Some(mu.base_word());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        if !next_permutation(c) {
            cur = None;
        }
        Some(out)
    })
}

/// `sum t^des(w)` over the rearrangements of the multiset.
pub fn multiset_descent_enumerator(mu: &WeakComposition) -> IntPolynomial {
    let mut hist = vec![0u64; mu.n().max(1)];
    for w in multiset_permutations(mu) {
        hist[descent_count(&w)] += 1;
    }
    histogram_to_poly(hist)
}

/// A map `phi: [n] -> [2d-1]` with `phi(i) <= 2d - n + i - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcMap {
    pub values: Vec<usize>,
    /// Number of `i` with `phi(i) > d`.
    pub exc: usize,
}

/// Excedance maps whose image contains `1..=k`. Requires `d >= n`.
pub fn exc_maps(n: usize, d: usize, k: usize) -> Result<impl Iterator<Item = ExcMap>> {
    check_ndk(n, d, k)?;
    if d < n {
        return Err(Error::InvalidParameters(format!("excedance maps need d >= n; got n = {n}, d = {d}")));
    }
    let bounds: Vec<usize> = (1..=n).map(|i| 2 * d - n + i - 1).collect();
    let mut cur = Some(vec![1usize; n]);
    let iter = std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = n;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < bounds[i] {
                c[i] += 1;
                for x in &mut c[i + 1..] {
                    *x = 1;
                }
                break;
            }
        }
        Some(out)
    });
    Ok(iter.filter(move |v| contains_prefix(v, k)).map(move |values| {
        let exc = values.iter().filter(|&&v| v > d).count();
        ExcMap { values, exc }
    }))
}

/// `sum t^exc(phi)` over [`exc_maps`].
pub fn exc_enumerator(n: usize, d: usize, k: usize) -> Result<IntPolynomial> {
    let mut hist = vec![0u64; n + 1];
    for phi in exc_maps(n, d, k)? {
        hist[phi.exc] += 1;
    }
    Ok(histogram_to_poly(hist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{f_poly, f_poly_general};

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn word(l: &[usize], d: usize) -> Word {
        Word::new(l.to_vec(), d).unwrap()
    }

    #[test]
    fn parking_examples() {
        let out = park(&word(&[3, 5, 3, 4, 1], 5));
        assert_eq!(out.lucky, vec![true, true, false, false, true]);
        assert_eq!(out.unlucky_count, 2);
        assert_eq!(out.spot, vec![3, 5, 4, 2, 1]);
        assert_eq!(park(&word(&[1, 2], 2)).unlucky_count, 0);
        let out = park(&word(&[3, 1], 3));
        assert_eq!(out.spot, vec![2, 1]);
        assert_eq!(out.lucky, vec![false, true]);
        assert_eq!(out.unlucky_count, 1);
        assert!(Word::new(vec![0, 1], 2).is_err());
        assert!(Word::new(vec![3], 2).is_err());
        assert!(park_on(&[1, 1, 1], 2).is_err());
    }

    #[test]
    fn fast_unlucky_agrees_with_protocol() {
        for n in 1..=4 {
            for d in 1..=n + 2 {
                for w in Odometer::new(n, d) {
                    let slow = park_on(&w, n).unwrap();
                    assert_eq!(unlucky_fast(&w), slow.unlucky_count);
                    let mut spots = slow.spot.clone();
                    spots.sort();
                    assert_eq!(spots, (1..=n).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn permutations_are_all_lucky() {
        for n in 1..=5 {
            for w in Odometer::new(n, n) {
                let mut s = w.clone();
                s.sort();
                if s == (1..=n).collect::<Vec<_>>() {
                    assert_eq!(unlucky(&w), 0);
                }
            }
        }
    }

    #[test]
    fn word_families() {
        let got: Vec<_> = words_w(2, 2, 1).unwrap().map(|w| w.letters().to_vec()).collect();
        assert_eq!(got, vec![vec![1, 1], vec![1, 2], vec![2, 1]]);
        assert_eq!(words_w(3, 4, 0).unwrap().count(), 64);
        let got: Vec<_> = words_w(2, 3, 1).unwrap().map(|w| w.letters().to_vec()).collect();
        assert_eq!(got, vec![vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 1], vec![3, 1]]);
        for n in 1..=4 {
            for d in 1..=5 {
                for k in 0..=n.min(d) {
                    let expected = crate::combin::surjective_onto_prefix(n as u64, d as u64, k as u64);
                    assert_eq!(BigInt::from(words_w(n, d, k).unwrap().count()), expected);
                }
            }
        }
        assert!(words_w(2, 1, 2).is_err());
    }

    #[test]
    fn arbor_word_families() {
        let oct: Vec<_> = words_wtau(&Arbor::octopus(2, 1).unwrap()).unwrap().collect();
        let w: Vec<_> = words_w(2, 2, 1).unwrap().collect();
        assert_eq!(oct, w);
        for n in 1..=4 {
            assert_eq!(words_wtau(&Arbor::octopus(n, 0).unwrap()).unwrap().count(), n.pow(n as u32));
        }
        let got: Vec<_> = words_wtau(&Arbor::linear(2).unwrap()).unwrap().map(|w| w.letters().to_vec()).collect();
        assert_eq!(got, vec![vec![1, 1], vec![1, 2], vec![2, 1]]);
        // octopus words are W_{n,k}
        for n in 2..=4 {
            for k in 0..n {
                let a: Vec<_> = words_wtau(&Arbor::octopus(n, k).unwrap()).unwrap().collect();
                let b: Vec<_> = words_w(n, n, k).unwrap().collect();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn unlucky_examples() {
        assert_eq!(unlucky_generating_poly(2, 2, 1).unwrap(), ip(&[2, 1]));
        assert_eq!(unlucky_generating_poly(2, 3, 1).unwrap(), ip(&[2, 3]));
        for n in 1..=5 {
            assert_eq!(
                unlucky_generating_poly(n, n, n).unwrap(),
                IntPolynomial::constant(crate::combin::factorial(n as u64))
            );
        }
    }

    #[test]
    fn unlucky_matches_f_poly() {
        for n in 1..=5 {
            for k in 0..=n {
                assert_eq!(unlucky_generating_poly(n, n, k).unwrap(), f_poly(n, k).unwrap());
            }
        }
        for n in 1..=4 {
            for d in n..=n + 2 {
                for k in 0..=n {
                    assert_eq!(unlucky_generating_poly(n, d, k).unwrap(), f_poly_general(n, d, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn descents() {
        assert_eq!(descent_count(&[1, 2]), 0);
        assert_eq!(descent_count(&[2, 1]), 1);
        assert_eq!(descent_count(&[3, 5, 3, 4, 1]), 2);
        assert_eq!(descent_enumerator(words_w(2, 2, 1).unwrap(), 2).unwrap(), ip(&[1, 2]));
        assert_eq!(descent_enumerator(words_w(2, 2, 2).unwrap(), 2).unwrap(), ip(&[1, 1]));
        let single = Arbor::octopus(2, 0).unwrap();
        assert_eq!(descent_enumerator(words_wtau(&single).unwrap(), 2).unwrap(), ip(&[1, 3]));
        for n in 1..=4 {
            for k in 0..=n {
                assert_eq!(
                    descent_enumerator_w(n, n, k).unwrap(),
                    descent_enumerator(words_w(n, n, k).unwrap(), n).unwrap()
                );
            }
        }
        for a in crate::arbor::enumerate_arbors(3) {
            assert_eq!(descent_enumerator_tau(&a).unwrap(), descent_enumerator(words_wtau(&a).unwrap(), 3).unwrap());
        }
        assert!(descent_enumerator(vec![word(&[1], 1)], 2).is_err());
    }

    #[test]
    fn multiset_examples() {
        let mu = |p: &[usize]| WeakComposition::new(p.to_vec()).unwrap();
        assert_eq!(multiset_descent_enumerator(&mu(&[1, 1])), ip(&[1, 1]));
        assert_eq!(multiset_descent_enumerator(&mu(&[2, 0])), ip(&[1]));
        let perms: Vec<_> = multiset_permutations(&mu(&[2, 1, 0])).collect();
        assert_eq!(perms, vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
        assert_eq!(multiset_descent_enumerator(&mu(&[2, 1, 0])), ip(&[1, 2]));
        assert!(WeakComposition::new(vec![1, 0]).is_err());
    }

    #[test]
    fn compositions_partition_w() {
        for n in 1..=5 {
            for k in 0..=n {
                let total: IntPolynomial = weak_compositions(n, k)
                    .iter()
                    .map(|mu| multiset_descent_enumerator(mu).reversed(n - 1))
                    .sum();
                assert_eq!(total, descent_enumerator_w(n, n, k).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn excedance_examples() {
        assert_eq!(exc_enumerator(2, 2, 1).unwrap(), ip(&[3, 1]));
        for n in 1..=4 {
            assert_eq!(exc_enumerator(n, n, 0).unwrap(), f_poly(n, 0).unwrap().shift_by_one());
        }
        assert_eq!(exc_enumerator(2, 3, 1).unwrap(), ip(&[5, 3]));
        assert!(exc_enumerator(3, 2, 0).is_err());
        for phi in exc_maps(3, 4, 1).unwrap() {
            for (i, &v) in phi.values.iter().enumerate() {
                // phi(i) <= 2d - n + i - 1 with d = 4, n = 3, i 1-based
                assert!(v < 2 * 4 - 3 + (i + 1));
            }
        }
    }
}
