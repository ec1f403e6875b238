//! Subsets of the ground set {0, …, m−1}, stored as bit masks.
//!
//! Displayed and serialized 1-based, matching the `[m]` convention of input files.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        IndexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// From 0-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut b = 0u64;
        for i in it {
            assert!(i < MAX_GROUND, "index {i} out of range");
            b |= 1 << i;
        }
        IndexSet(b)
    }

    /// From 1-based indices, checked against the ground set size.
    pub fn from_one_based(idx: &[usize], m: usize) -> Result<Self> {
        let mut b = 0u64;
        for &i in idx {
            if i == 0 || i > m {
                return Err(Error::Parse(format!("index {i} outside [1, {m}]")));
            }
            b |= 1 << (i - 1);
        }
        Ok(IndexSet(b))
    }

    /// The whole ground set [m].
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_GROUND);
        if m == 64 {
            IndexSet(u64::MAX)
        } else {
            IndexSet((1u64 << m) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        IndexSet(1 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_GROUND && self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        IndexSet(self.0 | 1 << i)
    }

    pub fn remove(self, i: usize) -> Self {
        IndexSet(self.0 & !(1 << i))
    }

    pub fn union(self, o: Self) -> Self {
        IndexSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        IndexSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        IndexSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    /// Complement within [m], written Î in the documentation.
    pub fn complement(self, m: usize) -> Self {
        IndexSet(Self::full(m).0 & !self.0)
    }

    /// 0-based members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut b = self.0;
        std::iter::from_fn(move || {
            if b == 0 {
                None
            } else {
                let i = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// All subsets, in increasing bit order.
    pub fn subsets(self) -> impl Iterator<Item = IndexSet> {
        let full = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == full { None } else { Some((s.wrapping_sub(full)) & full) };
            Some(IndexSet(s))
        })
    }

    /// All subsets of [m] of the given size.
    pub fn k_subsets(m: usize, k: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexSet>) {
            if cur.len() == k {
                out.push(IndexSet::from_indices(cur.iter().copied()));
                return;
            }
            for i in start..m {
                if m - i < k - cur.len() {
                    break;
                }
                cur.push(i);
                rec(i + 1, m, k, cur, out);
                cur.pop();
            }
        }
        if k <= m {
            rec(0, m, k, &mut cur, &mut out);
        }
        out
    }

    /// Ordering key: by size, then by sorted member list.
    pub fn sort_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.to_vec())
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// Shorthand for tests and examples: 1-based members.
pub fn iset(one_based: &[usize]) -> IndexSet {
    IndexSet::from_indices(one_based.iter().map(|&i| i - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let s = iset(&[1, 3]);
        assert_eq!(s.len(), 2);
        assert!(s.contains(0) && s.contains(2) && !s.contains(1));
        assert_eq!(s.complement(4), iset(&[2, 4]));
        assert_eq!(format!("{s}"), "{1,3}");
        assert_eq!(s.subsets().count(), 4);
        assert_eq!(IndexSet::k_subsets(5, 2).len(), 10);
        assert_eq!(IndexSet::k_subsets(3, 0), vec![IndexSet::EMPTY]);
        assert!(IndexSet::from_one_based(&[0], 3).is_err());
        assert_eq!(IndexSet::full(64).len(), 64);
    }

    #[test]
    fn subsets_enumerates_each_once() {
        let s = iset(&[2, 4, 5]);
        let mut subs: Vec<_> = s.subsets().collect();
        subs.sort();
        subs.dedup();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset(s)));
    }
}
