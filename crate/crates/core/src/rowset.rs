//! Fixed-width bit sets over inequality rows.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Upper bound on inequality rows in any polyhedron handled here.
pub const MAX_ROWS: usize = 128;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RowSet(pub u128);

impl RowSet {
    pub const EMPTY: RowSet = RowSet(0);

    pub fn full(m: usize) -> Self {
        debug_assert!(m <= MAX_ROWS);
        if m == MAX_ROWS {
            RowSet(u128::MAX)
        } else {
            RowSet((1u128 << m) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        RowSet(1u128 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(RowSet::EMPTY, |s, i| s.with(i))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        RowSet(self.0 | 1u128 << i)
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, o: RowSet) -> RowSet {
        RowSet(self.0 | o.0)
    }

    #[inline]
    pub fn intersect(self, o: RowSet) -> RowSet {
        RowSet(self.0 & o.0)
    }

    #[inline]
    pub fn minus(self, o: RowSet) -> RowSet {
        RowSet(self.0 & !o.0)
    }

    #[inline]
    pub fn is_subset(self, o: RowSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }
}

impl fmt::Debug for RowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for RowSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        RowSet::from_indices(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = RowSet::from_indices([0, 3, 127]);
        let b = RowSet::from_indices([3, 5]);
        assert_eq!(a.len(), 3);
        assert!(a.contains(127));
        assert_eq!(a.intersect(b), RowSet::singleton(3));
        assert_eq!(a.union(b).iter().collect::<Vec<_>>(), vec![0, 3, 5, 127]);
        assert!(RowSet::singleton(3).is_subset(b));
        assert_eq!(RowSet::full(128).len(), 128);
        assert_eq!(a.minus(b).iter().collect::<Vec<_>>(), vec![0, 127]);
    }
}
