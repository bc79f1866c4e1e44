//! Small fixed-capacity subsets of `0..n`, backed by a single `u128`.
//!
//! Every finite structure in this crate indexes its carrier by `usize` and
//! stores subsets (ideals, opens, supports) as [`Set`]s. Families of sets are
//! kept in canonical order: first by cardinality, then by bit pattern.

use std::cmp::Ordering;
use std::fmt;

/// Maximum carrier size supported by [`Set`].
pub const CAPACITY: usize = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Set(u128);

impl Set {
    pub const EMPTY: Set = Set(0);

    pub fn from_bits(bits: u128) -> Self {
        Set(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= CAPACITY);
        if n == CAPACITY {
            Set(u128::MAX)
        } else {
            Set((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < CAPACITY);
        Set(1u128 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < CAPACITY && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    pub fn with(self, i: usize) -> Self {
        Set(self.0 | 1u128 << i)
    }

    pub fn union(self, other: Set) -> Self {
        Set(self.0 | other.0)
    }

    pub fn intersect(self, other: Set) -> Self {
        Set(self.0 & other.0)
    }

    pub fn minus(self, other: Set) -> Self {
        Set(self.0 & !other.0)
    }

    /// Complement relative to `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Self {
        Set::full(n).minus(self)
    }

    pub fn is_subset(self, other: Set) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Set) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> SetIter {
        SetIter(self.0)
    }

    /// Order used for canonical families: cardinality, then bit pattern.
    pub fn canonical_cmp(&self, other: &Set) -> Ordering {
        self.len().cmp(&other.len()).then(self.0.cmp(&other.0))
    }

    /// Every subset of `{0, .., n-1}`; only sensible for small `n`.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = Set> {
        assert!(n < 32, "exhaustive subset enumeration over {n} elements");
        (0u128..(1u128 << n)).map(Set)
    }

    /// Every subset of `self`.
    pub fn subsets(self) -> impl Iterator<Item = Set> {
        let mask = self.0;
        let mut next = Some(0u128);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(Set(cur))
        })
    }
}

impl FromIterator<usize> for Set {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Set::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for Set {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct SetIter(u128);

impl Iterator for SetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SetIter {}

/// Sort a family canonically and remove duplicates.
pub fn canonicalize(family: &mut Vec<Set>) {
    family.sort_by(Set::canonical_cmp);
    family.dedup();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_of_mask_are_exhaustive() {
        let s: Set = [1, 3, 4].into_iter().collect();
        let subs: Vec<Set> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        let mut uniq = subs.clone();
        canonicalize(&mut uniq);
        assert_eq!(uniq.len(), 8);
        assert_eq!(Set::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn full_and_complement() {
        assert_eq!(Set::full(0), Set::EMPTY);
        assert_eq!(Set::full(128).len(), 128);
        let s: Set = [0, 2].into_iter().collect();
        assert_eq!(s.complement(4), [1, 3].into_iter().collect());
    }
}
