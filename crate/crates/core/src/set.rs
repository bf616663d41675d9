//! Subsets of a finite carrier as fixed-width bit blocks.

use std::fmt;

/// Largest carrier an [`ElementSet`] can address.
pub const MAX_CARRIER: usize = 128;

/// A subset of carrier indices `0..size`, stored as a 128-bit mask.
///
/// Set algebra is pure; the carrier size is not stored, callers pass it
/// where a complement or a full set is needed.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet(u128);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_bits(bits: u128) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(x: usize) -> Self {
        debug_assert!(x < MAX_CARRIER);
        ElementSet(1u128 << x)
    }

    /// All of `0..size`.
    pub fn full(size: usize) -> Self {
        debug_assert!(size <= MAX_CARRIER);
        if size == MAX_CARRIER {
            ElementSet(u128::MAX)
        } else {
            ElementSet((1u128 << size) - 1)
        }
    }

    pub fn contains(self, x: usize) -> bool {
        x < MAX_CARRIER && self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1u128 << x;
    }

    pub fn remove(&mut self, x: usize) {
        self.0 &= !(1u128 << x);
    }

    pub fn with(self, x: usize) -> Self {
        ElementSet(self.0 | 1u128 << x)
    }

    pub fn without(self, x: usize) -> Self {
        ElementSet(self.0 & !(1u128 << x))
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// The single element, if this is a singleton.
    pub fn as_singleton(self) -> Option<usize> {
        (self.0.count_ones() == 1).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Image under an index map.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Self {
        self.iter().map(f).collect()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Ascending iteration over members.
pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_singletons() {
        assert_eq!(ElementSet::full(3).len(), 3);
        assert_eq!(ElementSet::full(128).len(), 128);
        assert_eq!(ElementSet::singleton(5).as_singleton(), Some(5));
        assert_eq!(ElementSet::full(2).as_singleton(), None);
        assert_eq!(ElementSet::EMPTY.min(), None);
    }

    proptest! {
        #[test]
        fn iteration_matches_membership(bits in any::<u128>()) {
            let s = ElementSet::from_bits(bits);
            let members: Vec<usize> = s.iter().collect();
            prop_assert_eq!(members.len(), s.len());
            prop_assert!(members.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(members.iter().copied().collect::<ElementSet>(), s);
        }

        #[test]
        fn lattice_laws(a in any::<u128>(), b in any::<u128>()) {
            let (a, b) = (ElementSet::from_bits(a), ElementSet::from_bits(b));
            prop_assert!(a.intersection(b).is_subset(a));
            prop_assert!(a.is_subset(a.union(b)));
            prop_assert_eq!(a.difference(b).intersection(b), ElementSet::EMPTY);
            prop_assert_eq!(a.difference(b).union(a.intersection(b)), a);
        }
    }
}
