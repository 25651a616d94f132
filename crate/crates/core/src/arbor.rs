//! Arbors: rooted trees on the blocks of a set partition of `[n]`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rooted tree whose vertices are the blocks of a set partition of `[n]`.
///
/// Elements are 1-based. `parent[b]` is the index of the parent block of
/// block `b`, or `None` for the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arbor {
    n: usize,
    blocks: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
}

/// `D(v)` for every block: the union of the blocks weakly below `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendantTable {
    pub sets: Vec<BTreeSet<usize>>,
}

impl DescendantTable {
    pub fn set(&self, block: usize) -> &BTreeSet<usize> {
        &self.sets[block]
    }

    pub fn size(&self, block: usize) -> usize {
        self.sets[block].len()
    }
}

impl Arbor {
    /// Builds and validates an arbor. Block contents are sorted.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>, parent: Vec<Option<usize>>) -> Result<Self> {
        let arbor = Self::new_unchecked(n, blocks, parent);
        arbor.validate().map_err(Error::InvalidArbor)?;
        Ok(arbor)
    }

    /// Builds without validation; pair with [`Arbor::validate`].
    pub fn new_unchecked(n: usize, mut blocks: Vec<Vec<usize>>, parent: Vec<Option<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        Arbor { n, blocks, parent }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn parent(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn root(&self) -> usize {
        self.parent
            .iter()
            .position(Option::is_none)
            .expect("validated arbor has a root")
    }

    pub fn children(&self, block: usize) -> impl Iterator<Item = usize> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter(move |(_, p)| **p == Some(block))
            .map(|(i, _)| i)
    }

    /// Every block has at most one child.
    pub fn is_linear(&self) -> bool {
        (0..self.blocks.len()).all(|b| self.children(b).count() <= 1)
    }

    /// `Ok(())` when all invariants hold, otherwise a description of the
    /// first violated one.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.n == 0 {
            return Err("size must be positive".into());
        }
        if self.blocks.is_empty() {
            return Err("no blocks".into());
        }
        if self.parent.len() != self.blocks.len() {
            return Err(format!(
                "{} blocks but {} parent entries",
                self.blocks.len(),
                self.parent.len()
            ));
        }
        let mut seen = vec![false; self.n + 1];
        for (b, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(format!("block {b} is empty"));
            }
            for &x in block {
                if x == 0 || x > self.n {
                    return Err(format!("element {x} of block {b} is outside [1, {}]", self.n));
                }
                if seen[x] {
                    return Err(format!("element {x} appears in more than one block"));
                }
                seen[x] = true;
            }
        }
        if let Some(x) = (1..=self.n).find(|&x| !seen[x]) {
            return Err(format!("element {x} is in no block"));
        }
        let roots = self.parent.iter().filter(|p| p.is_none()).count();
        if roots != 1 {
            return Err(format!("expected exactly one root, found {roots}"));
        }
        for (b, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= self.blocks.len() {
                    return Err(format!("parent {p} of block {b} does not exist"));
                }
            }
        }
        // walking up from any block must reach the root within #blocks steps
        for start in 0..self.blocks.len() {
            let mut cur = start;
            let mut steps = 0;
            while let Some(p) = self.parent[cur] {
                cur = p;
                steps += 1;
                if steps > self.blocks.len() {
                    return Err(format!("block {start} lies on a cycle"));
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Octopus `tau_{n,k}`: root `{k+1..n}` with leaves `{1}, ..., {k}`.
    pub fn octopus(n: usize, k: usize) -> Result<Self> {
        if n < 1 || k >= n {
            return Err(Error::InvalidParameters(format!(
                "octopus needs 0 <= k < n, got n = {n}, k = {k}"
            )));
        }
        let mut blocks = vec![(k + 1..=n).collect::<Vec<_>>()];
        let mut parent = vec![None];
        for i in 1..=k {
            blocks.push(vec![i]);
            parent.push(Some(0));
        }
        Self::new(n, blocks, parent)
    }

    /// Chain of singletons `{1} <- {2} <- ... <- {n}` rooted at `{n}`.
    pub fn linear(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameters("linear arbor needs n >= 1".into()));
        }
        let blocks = (1..=n).map(|i| vec![i]).collect();
        let parent = (0..n).map(|i| (i + 1 < n).then_some(i + 1)).collect();
        Self::new(n, blocks, parent)
    }

    pub fn descendant_sets(&self) -> Result<DescendantTable> {
        self.validate().map_err(Error::InvalidArbor)?;
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.blocks.len()];
        for (b, block) in self.blocks.iter().enumerate() {
            let mut cur = Some(b);
            while let Some(v) = cur {
                sets[v].extend(block.iter().copied());
                cur = self.parent[v];
            }
        }
        Ok(DescendantTable { sets })
    }

    /// `{"n": 6, "blocks": [[4,5,6],[1],[2],[3]], "parent": [-1,0,0,0]}`
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        write!(s, "{{\"n\": {}, \"blocks\": [", self.n).unwrap();
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push('[');
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    s.push(',');
                }
                write!(s, "{x}").unwrap();
            }
            s.push(']');
        }
        s.push_str("], \"parent\": [");
        for (i, p) in self.parent.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            match p {
                Some(p) => write!(s, "{p}").unwrap(),
                None => s.push_str("-1"),
            }
        }
        s.push_str("]}");
        s
    }

    /// Parses the JSON form without validating; see [`Arbor::from_json`].
    pub fn from_json_unchecked(text: &str) -> Result<Self> {
        let raw: ArborJson = serde_json::from_str(text)?;
        let parent = raw
            .parent
            .iter()
            .map(|&p| match p {
                -1 => Ok(None),
                p if p >= 0 => Ok(Some(p as usize)),
                p => Err(Error::InvalidArbor(format!("parent index {p} is negative"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new_unchecked(raw.n, raw.blocks, parent))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let a = Self::from_json_unchecked(text)?;
        a.validate().map_err(Error::InvalidArbor)?;
        Ok(a)
    }
}

#[derive(Serialize, Deserialize)]
struct ArborJson {
    n: usize,
    blocks: Vec<Vec<usize>>,
    parent: Vec<i64>,
}

/// All set partitions of `[n]` as blocks ordered by minimum element.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    // restricted growth strings
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut rgs = vec![0usize; n];
    loop {
        let b = rgs.iter().max().unwrap() + 1;
        let mut blocks = vec![Vec::new(); b];
        for (i, &g) in rgs.iter().enumerate() {
            blocks[g].push(i + 1);
        }
        out.push(blocks);
        // advance: rightmost position that can grow
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let prefix_max = rgs[..i].iter().max().copied().unwrap();
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for x in &mut rgs[i + 1..] {
                    *x = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Every parent function on `b` vertices forming a rooted tree, in
/// odometer order.
pub fn rooted_trees(b: usize) -> impl Iterator<Item = Vec<Option<usize>>> {
    let total = (b as u64).pow(b as u32);
    (0..total).filter_map(move |mut code| {
        // digit == own index encodes "no parent"
        let mut parent = vec![None; b];
        for (v, slot) in parent.iter_mut().enumerate() {
            let d = (code % b as u64) as usize;
            code /= b as u64;
            *slot = (d != v).then_some(d);
        }
        if parent.iter().filter(|p| p.is_none()).count() != 1 {
            return None;
        }
        for start in 0..b {
            let mut cur = start;
            let mut steps = 0;
            while let Some(p) = parent[cur] {
                cur = p;
                steps += 1;
                if steps > b {
                    return None;
                }
            }
        }
        Some(parent)
    })
}

/// Every arbor of size `n` exactly once, deterministically ordered.
pub fn enumerate_arbors(n: usize) -> impl Iterator<Item = Arbor> {
    set_partitions(n).into_iter().flat_map(move |blocks| {
        rooted_trees(blocks.len()).map(move |parent| Arbor::new_unchecked(n, blocks.clone(), parent))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn validation_examples() {
        assert!(Arbor::new_unchecked(2, vec![vec![1, 2]], vec![None]).is_valid());
        let overlapping = Arbor::new_unchecked(2, vec![vec![1], vec![1, 2]], vec![None, Some(0)]);
        assert!(overlapping.validate().unwrap_err().contains("more than one block"));
        let self_loop = Arbor::new_unchecked(2, vec![vec![1], vec![2]], vec![Some(0), Some(1)]);
        assert!(!self_loop.is_valid());
        let two_roots = Arbor::new_unchecked(2, vec![vec![1], vec![2]], vec![None, None]);
        assert!(!two_roots.is_valid());
        let missing = Arbor::new_unchecked(3, vec![vec![1], vec![2]], vec![None, Some(0)]);
        assert!(missing.validate().unwrap_err().contains("element 3"));
        let cycle = Arbor::new_unchecked(
            3,
            vec![vec![1], vec![2], vec![3]],
            vec![None, Some(2), Some(1)],
        );
        assert!(cycle.validate().unwrap_err().contains("cycle"));
        let empty = Arbor::new_unchecked(1, vec![vec![1], vec![]], vec![None, Some(0)]);
        assert!(!empty.is_valid());
    }

    #[test]
    fn octopus_examples() {
        let a = Arbor::octopus(3, 0).unwrap();
        assert_eq!(a.blocks(), &[vec![1, 2, 3]]);
        let a = Arbor::octopus(6, 3).unwrap();
        assert_eq!(a.blocks(), &[vec![4, 5, 6], vec![1], vec![2], vec![3]]);
        assert_eq!(a.parent(), &[None, Some(0), Some(0), Some(0)]);
        let a = Arbor::octopus(2, 1).unwrap();
        assert_eq!(a.blocks(), &[vec![2], vec![1]]);
        assert!(Arbor::octopus(3, 3).is_err());
        assert!(Arbor::octopus(3, 4).is_err());
        assert!(Arbor::octopus(0, 0).is_err());
    }

    #[test]
    fn descendant_examples() {
        let d = Arbor::octopus(6, 3).unwrap().descendant_sets().unwrap();
        assert_eq!(d.set(0), &set(&[1, 2, 3, 4, 5, 6]));
        assert_eq!(d.set(1), &set(&[1]));
        let lin = Arbor::linear(3).unwrap();
        let d = lin.descendant_sets().unwrap();
        assert_eq!(d.set(2), &set(&[1, 2, 3]));
        assert_eq!(d.set(1), &set(&[1, 2]));
        assert_eq!(d.set(0), &set(&[1]));
        let single = Arbor::octopus(4, 0).unwrap().descendant_sets().unwrap();
        assert_eq!(single.set(0), &set(&[1, 2, 3, 4]));
        let bad = Arbor::new_unchecked(2, vec![vec![1], vec![2]], vec![None, None]);
        assert!(bad.descendant_sets().is_err());
    }

    fn stirling2(n: usize, k: usize) -> u64 {
        if n == 0 && k == 0 {
            return 1;
        }
        if n == 0 || k == 0 {
            return 0;
        }
        k as u64 * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_arbors(1).count(), 1);
        assert_eq!(enumerate_arbors(2).count(), 3);
        assert_eq!(enumerate_arbors(3).count(), 16);
        for n in 1..=6 {
            let expected: u64 = (1..=n).map(|b| stirling2(n, b) * (b as u64).pow(b as u32 - 1)).sum();
            let all: Vec<Arbor> = enumerate_arbors(n).collect();
            assert_eq!(all.len() as u64, expected, "n = {n}");
            let distinct: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), all.len());
            for a in &all {
                assert!(a.is_valid());
                let d = a.descendant_sets().unwrap();
                assert_eq!(d.size(a.root()), n);
                for (b, s) in d.sets.iter().enumerate() {
                    assert!(a.blocks()[b].iter().all(|x| s.contains(x)));
                    for c in a.children(b) {
                        assert!(d.set(c).is_subset(s));
                    }
                }
            }
        }
    }

    #[test]
    fn rooted_tree_counts_are_cayley() {
        for b in 1..=6usize {
            assert_eq!(rooted_trees(b).count() as u64, (b as u64).pow(b as u32 - 1));
        }
    }

    #[test]
    fn json_is_byte_stable() {
        let a = Arbor::octopus(6, 3).unwrap();
        let text = a.to_json();
        assert_eq!(text, r#"{"n": 6, "blocks": [[4,5,6],[1],[2],[3]], "parent": [-1,0,0,0]}"#);
        let back = Arbor::from_json(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.to_json(), text);
        let unsorted = Arbor::from_json(r#"{"n": 3, "blocks": [[3,1],[2]], "parent": [-1,0]}"#).unwrap();
        assert_eq!(unsorted.to_json(), r#"{"n": 3, "blocks": [[1,3],[2]], "parent": [-1,0]}"#);
        assert!(Arbor::from_json(r#"{"n": 2, "blocks": [[1],[1,2]], "parent": [-1,0]}"#).is_err());
    }

    #[test]
    fn linear_detection() {
        assert!(Arbor::linear(4).unwrap().is_linear());
        assert!(!Arbor::octopus(4, 2).unwrap().is_linear());
        assert!(Arbor::octopus(4, 1).unwrap().is_linear());
    }
}
