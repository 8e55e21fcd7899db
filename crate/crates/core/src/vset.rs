//! Dense vertex-id sets backed by a bit vector.
//!
//! Instances with up to 64 vertices stay inline; larger sets spill to the
//! heap. Words are kept trimmed of trailing zeros so that `Eq` and `Hash`
//! are canonical regardless of the history of mutations.

use smallvec::SmallVec;
use std::fmt;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: SmallVec<[u64; 1]>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: u32) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    /// The set {0, 1, ..., n-1}.
    pub fn full(n: usize) -> Self {
        let mut s = Self::new();
        for v in 0..n {
            s.insert(v as u32);
        }
        s
    }

    pub fn from_ids<I: IntoIterator<Item = u32>>(ids: I) -> Self {
        let mut s = Self::new();
        for v in ids {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: u32) {
        let w = (v / 64) as usize;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1u64 << (v % 64);
    }

    pub fn remove(&mut self, v: u32) {
        let w = (v / 64) as usize;
        if w < self.words.len() {
            self.words[w] &= !(1u64 << (v % 64));
            self.normalize();
        }
    }

    pub fn contains(&self, v: u32) -> bool {
        let w = (v / 64) as usize;
        w < self.words.len() && self.words[w] & (1u64 << (v % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest id in the set.
    pub fn min(&self) -> Option<u32> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i as u32 * 64 + w.trailing_zeros());
            }
        }
        None
    }

    /// Ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let base = i as u32 * 64;
            BitIter { word: w, base }
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, o: &Self) {
        if self.words.len() < o.words.len() {
            self.words.resize(o.words.len(), 0);
        }
        for (i, &w) in o.words.iter().enumerate() {
            self.words[i] |= w;
        }
    }

    pub fn intersect_with(&mut self, o: &Self) {
        for (i, w) in self.words.iter_mut().enumerate() {
            *w &= o.words.get(i).copied().unwrap_or(0);
        }
        self.normalize();
    }

    pub fn subtract(&mut self, o: &Self) {
        for (i, w) in self.words.iter_mut().enumerate() {
            *w &= !o.words.get(i).copied().unwrap_or(0);
        }
        self.normalize();
    }

    pub fn union(&self, o: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(o);
        s
    }

    pub fn intersection(&self, o: &Self) -> Self {
        let mut s = self.clone();
        s.intersect_with(o);
        s
    }

    pub fn difference(&self, o: &Self) -> Self {
        let mut s = self.clone();
        s.subtract(o);
        s
    }

    pub fn is_subset_of(&self, o: &Self) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &w)| w & !o.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn is_disjoint(&self, o: &Self) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &w)| w & o.words.get(i).copied().unwrap_or(0) == 0)
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

struct BitIter {
    word: u64,
    base: u32,
}

impl Iterator for BitIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.word == 0 {
            return None;
        }
        let b = self.word.trailing_zeros();
        self.word &= self.word - 1;
        Some(self.base + b)
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        Self::from_ids(iter)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
