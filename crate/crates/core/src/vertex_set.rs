//! Fixed-capacity bitsets over the vertices `0..n` of a graph.

use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A set of vertex indices, stored as a bitset sized to the owning graph.
///
/// Binary set operations require both operands to share the same capacity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    capacity: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(capacity: usize) -> Self {
        VertexSet { capacity, words: vec![0; words_for(capacity)] }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::empty(capacity);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * WORD;
            let hi = (lo + WORD).min(capacity);
            *w = if hi - lo == WORD { u64::MAX } else { (1u64 << (hi - lo)) - 1 };
        }
        s
    }

    /// Builds a set from indices. Panics if an index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(capacity: usize, items: I) -> Self {
        let mut s = Self::empty(capacity);
        for v in items {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Inserts `v`, returning whether it was newly added.
    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.capacity, "vertex {v} out of range for set of capacity {}", self.capacity);
        let w = &mut self.words[v / WORD];
        let bit = 1u64 << (v % WORD);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.capacity {
            return false;
        }
        let w = &mut self.words[v / WORD];
        let bit = 1u64 << (v % WORD);
        let present = *w & bit != 0;
        *w &= !bit;
        present
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.capacity, other.capacity, "vertex sets over different graphs");
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_same(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        VertexSet { capacity: self.capacity, words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check_same(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        VertexSet { capacity: self.capacity, words }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check_same(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        VertexSet { capacity: self.capacity, words }
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_same(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_same(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        self.check_same(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// `|self ∩ other|` without allocating.
    #[inline]
    pub fn intersection_len(&self, other: &Self) -> usize {
        self.check_same(other);
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// `|self − other|` without allocating.
    #[inline]
    pub fn difference_len(&self, other: &Self) -> usize {
        self.check_same(other);
        self.words.iter().zip(&other.words).map(|(a, b)| (a & !b).count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference_len(other) == 0
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection_len(other) == 0
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, index: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}
