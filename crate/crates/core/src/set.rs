//! Bit-vector subsets of a ground set `{0, .., n-1}`.

use std::fmt;

use smallvec::SmallVec;

/// Index of an element in the ground set.
pub type Element = usize;

const WORD: usize = 64;

/// A subset of a ground set of `n` indexed elements.
///
/// Sets over at most 64 elements live in a single inline word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    n: usize,
    words: SmallVec<[u64; 1]>,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        let len = n.div_ceil(WORD).max(1);
        ElementSet {
            n,
            words: SmallVec::from_elem(0, len),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for e in 0..n {
            s.insert(e);
        }
        s
    }

    /// Panics if an element lies outside the ground set.
    pub fn from_elements<I: IntoIterator<Item = Element>>(n: usize, elements: I) -> Self {
        let mut s = Self::empty(n);
        for e in elements {
            s.insert(e);
        }
        s
    }

    /// Builds a set from the low `n` bits of `bits`. Requires `n <= 64`.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        assert!(n <= WORD, "from_bits needs n <= 64, got {n}");
        let mask = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
        let mut s = Self::empty(n);
        s.words[0] = bits & mask;
        s
    }

    /// Low word of the membership vector; exact when `n <= 64`.
    pub fn bits(&self) -> u64 {
        self.words[0]
    }

    /// Size of the ground set this subset lives in.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, e: Element) -> bool {
        e < self.n && self.words[e / WORD] >> (e % WORD) & 1 == 1
    }

    /// Returns whether the element was newly added.
    pub fn insert(&mut self, e: Element) -> bool {
        assert!(
            e < self.n,
            "element {e} outside ground set of size {}",
            self.n
        );
        let fresh = !self.contains(e);
        self.words[e / WORD] |= 1 << (e % WORD);
        fresh
    }

    pub fn remove(&mut self, e: Element) -> bool {
        let present = self.contains(e);
        if present {
            self.words[e / WORD] &= !(1 << (e % WORD));
        }
        present
    }

    /// Copy of `self` with `e` added.
    pub fn with(&self, e: Element) -> Self {
        let mut s = self.clone();
        s.insert(e);
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn union_with(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// `|self ∩ other|` without allocating.
    pub fn intersection_len(&self, other: &Self) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection_len(other) == 0
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            bits: self.words[0],
        }
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the sorted member lists.
    pub fn cmp_lexicographic(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.n, other.n, "set operation across ground sets");
        ElementSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

pub struct Iter<'a> {
    set: &'a ElementSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        loop {
            if self.bits != 0 {
                let tz = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * WORD + tz);
            }
            self.word += 1;
            if self.word >= self.set.words.len() {
                return None;
            }
            self.bits = self.set.words[self.word];
        }
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = Element;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}
