//! Fixed-capacity bitset over loop elements.

use std::fmt;

const WORDS: usize = 4;

/// A set of element indices below 256, stored as a bitmask.
///
/// Iteration is always ascending, so `to_vec` yields the sorted list form.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: [u64; WORDS],
}

impl ElementSet {
    pub const CAPACITY: usize = 64 * WORDS;

    pub const fn new() -> Self {
        ElementSet { bits: [0; WORDS] }
    }

    /// `{0, 1, .., n - 1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY);
        let mut set = Self::new();
        for (i, word) in set.bits.iter_mut().enumerate() {
            let lo = i * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        set
    }

    pub fn singleton(x: usize) -> Self {
        let mut set = Self::new();
        set.insert(x);
        set
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < Self::CAPACITY && self.bits[x >> 6] >> (x & 63) & 1 == 1
    }

    /// Returns `true` if `x` was not already present.
    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < Self::CAPACITY, "element {x} exceeds set capacity");
        let fresh = !self.contains(x);
        self.bits[x >> 6] |= 1 << (x & 63);
        fresh
    }

    #[inline]
    pub fn remove(&mut self, x: usize) {
        if x < Self::CAPACITY {
            self.bits[x >> 6] &= !(1 << (x & 63));
        }
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.bits.iter_mut().zip(other.bits) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.bits.iter_mut().zip(other.bits) {
            *a &= b;
        }
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.iter().zip(other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> Iter {
        Iter {
            bits: self.bits,
            word: 0,
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = Self::new();
        for x in iter {
            set.insert(x);
        }
        set
    }
}

impl IntoIterator for &ElementSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter {
    bits: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.bits[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.bits[self.word] &= w - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_iteration() {
        assert_eq!(ElementSet::full(0).len(), 0);
        assert_eq!(ElementSet::full(5).to_vec(), vec![0, 1, 2, 3, 4]);
        assert_eq!(ElementSet::full(64).len(), 64);
        assert_eq!(ElementSet::full(200).len(), 200);
        assert!(ElementSet::full(70).contains(69));
        assert!(!ElementSet::full(70).contains(70));
    }

    #[test]
    fn set_algebra() {
        let a: ElementSet = [0, 2, 130].into_iter().collect();
        let b: ElementSet = [2, 3].into_iter().collect();
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 3, 130]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert!(ElementSet::singleton(2).is_subset(&a));
        assert!(!b.is_subset(&a));
        let mut c = a;
        assert!(!c.insert(2));
        c.remove(130);
        assert_eq!(c.to_vec(), vec![0, 2]);
    }
}
