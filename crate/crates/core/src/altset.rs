//! Packed bit sets over alternative indices.
//!
//! Every set carries the size of the universe it was created for. Binary
//! operations between sets of different universes panic; the library never
//! mixes them.

use smallvec::SmallVec;
use std::fmt;

pub(crate) type Word = u64;
pub(crate) const WORD_BITS: usize = Word::BITS as usize;

type Words = SmallVec<[Word; 2]>;

#[inline]
fn num_words(universe: usize) -> usize {
    universe.div_ceil(WORD_BITS)
}

/// A subset of the alternatives `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AltSet {
    universe: usize,
    words: Words,
}

impl AltSet {
    pub fn empty(universe: usize) -> Self {
        AltSet {
            universe,
            words: SmallVec::from_elem(0, num_words(universe)),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = AltSet {
            universe,
            words: SmallVec::from_elem(!0, num_words(universe)),
        };
        set.clear_excess_bits();
        set
    }

    pub fn singleton(universe: usize, index: usize) -> Self {
        let mut set = Self::empty(universe);
        set.insert(index);
        set
    }

    /// Builds a set from indices; panics if one is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut set = Self::empty(universe);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// The set whose members are the set bits of `mask` (universe at most 64).
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD_BITS, "mask only covers 64 alternatives");
        let mut set = Self::empty(universe);
        if universe > 0 {
            set.words[0] = mask;
            set.clear_excess_bits();
        }
        set
    }

    fn clear_excess_bits(&mut self) {
        let tail = self.universe % WORD_BITS;
        if tail > 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1 << tail) - 1;
        }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, index: usize) -> bool {
        index < self.universe && self.words[index / WORD_BITS] >> (index % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, index: usize) -> bool {
        assert!(index < self.universe, "index {index} out of range {}", self.universe);
        let word = &mut self.words[index / WORD_BITS];
        let bit = 1 << (index % WORD_BITS);
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, index: usize) -> bool {
        if index >= self.universe {
            return false;
        }
        let word = &mut self.words[index / WORD_BITS];
        let bit = 1 << (index % WORD_BITS);
        let present = *word & bit != 0;
        *word &= !bit;
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

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    fn check_universe(&self, other: &AltSet) {
        assert_eq!(self.universe, other.universe, "alternative sets over different universes");
    }

    pub fn intersect_with(&mut self, other: &AltSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &AltSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn subtract(&mut self, other: &AltSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &AltSet) -> AltSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn union(&self, other: &AltSet) -> AltSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn difference(&self, other: &AltSet) -> AltSet {
        let mut out = self.clone();
        out.subtract(other);
        out
    }

    /// `|self ∩ other|` without allocating.
    #[inline]
    pub fn intersection_len(&self, other: &AltSet) -> usize {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    #[inline]
    pub fn intersects(&self, other: &AltSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &AltSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for AltSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [Word],
    index: usize,
    current: Word,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a AltSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}
