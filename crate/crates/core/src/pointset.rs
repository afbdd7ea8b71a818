//! Fixed-width subsets of a ground set `{0, .., n-1}` with `n <= 16`.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

/// Largest supported ground set.
pub const MAX_POINTS: usize = 16;

/// A subset of `{0, .., n-1}` stored as a bit mask.
///
/// Bits at or above `n` are never set. Binary operators require both
/// operands to live over the same ground set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    bits: u16,
    n: u8,
}

fn mask(n: usize) -> u16 {
    if n >= 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

impl PointSet {
    pub fn empty(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        PointSet { bits: 0, n: n as u8 }
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        PointSet {
            bits: mask(n),
            n: n as u8,
        }
    }

    pub fn singleton(n: usize, x: usize) -> Self {
        assert!(x < n, "point {x} outside ground set of size {n}");
        PointSet {
            bits: 1 << x,
            n: n as u8,
        }
    }

    /// Builds a set from raw bits, returning `None` if a bit `>= n` is set.
    pub fn from_bits(n: usize, bits: u16) -> Option<Self> {
        if n > MAX_POINTS || bits & !mask(n) != 0 {
            return None;
        }
        Some(PointSet { bits, n: n as u8 })
    }

    /// Builds a set from point indices, returning `None` on an out-of-range index.
    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Option<Self> {
        let mut s = PointSet::empty(n);
        for x in indices {
            if x >= n {
                return None;
            }
            s.bits |= 1 << x;
        }
        Some(s)
    }

    #[inline]
    pub fn bits(self) -> u16 {
        self.bits
    }

    #[inline]
    pub fn n(self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        x < self.n() && self.bits & (1 << x) != 0
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x < self.n());
        self.bits |= 1 << x;
    }

    pub fn remove(&mut self, x: usize) {
        assert!(x < self.n());
        self.bits &= !(1 << x);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(self) -> bool {
        self.bits == mask(self.n())
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        PointSet {
            bits: self.bits | other.bits,
            n: self.n,
        }
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        PointSet {
            bits: self.bits & other.bits,
            n: self.n,
        }
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        PointSet {
            bits: self.bits & !other.bits,
            n: self.n,
        }
    }

    /// Complement relative to the ground set.
    #[inline]
    pub fn complement(self) -> Self {
        PointSet {
            bits: !self.bits & mask(self.n()),
            n: self.n,
        }
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits & other.bits == 0
    }

    #[inline]
    pub fn meets(self, other: Self) -> bool {
        !self.is_disjoint(other)
    }

    /// Points in ascending order.
    pub fn iter(self) -> Points {
        Points { bits: self.bits }
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    /// All subsets of `self`, in ascending bit order (starting with the empty set).
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.bits,
            next: Some(0),
            n: self.n,
        }
    }

    /// All subsets of the ground set `{0, .., n-1}` in ascending bit order.
    pub fn all_subsets(n: usize) -> Subsets {
        PointSet::full(n).subsets()
    }
}

impl BitOr for PointSet {
    type Output = PointSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitAnd for PointSet {
    type Output = PointSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl Sub for PointSet {
    type Output = PointSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl Not for PointSet {
    type Output = PointSet;
    fn not(self) -> Self {
        self.complement()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub struct Points {
    bits: u16,
}

impl Iterator for Points {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let x = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.bits.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Points {}

pub struct Subsets {
    mask: u16,
    next: Option<u16>,
    n: u8,
}

impl Iterator for Subsets {
    type Item = PointSet;

    fn next(&mut self) -> Option<PointSet> {
        let cur = self.next?;
        // ascending enumeration of submasks
        self.next = if cur == self.mask {
            None
        } else {
            Some(((cur | !self.mask).wrapping_add(1)) & self.mask)
        };
        Some(PointSet {
            bits: cur,
            n: self.n,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn subsets_are_ascending_and_complete() {
        let s = PointSet::from_indices(5, [0, 2, 4]).unwrap();
        let subs: Vec<u16> = s.subsets().map(|t| t.bits()).collect();
        assert_eq!(subs, vec![0, 1, 4, 5, 16, 17, 20, 21]);
        assert_eq!(PointSet::all_subsets(16).count(), 1 << 16);
        assert_eq!(PointSet::all_subsets(0).count(), 1);
    }

    #[test]
    fn from_bits_rejects_stray_bits() {
        assert!(PointSet::from_bits(3, 0b1000).is_none());
        assert!(PointSet::from_bits(3, 0b111).is_some());
        assert!(PointSet::from_indices(2, [2]).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(PointSet::from_indices(4, [1, 3]).unwrap().to_string(), "{1,3}");
        assert_eq!(PointSet::empty(4).to_string(), "{}");
    }

    proptest! {
        #[test]
        fn set_algebra_laws(n in 1usize..=16, a in any::<u16>(), b in any::<u16>()) {
            let m = mask(n);
            let a = PointSet::from_bits(n, a & m).unwrap();
            let b = PointSet::from_bits(n, b & m).unwrap();
            prop_assert_eq!(!(a | b), !a & !b);
            prop_assert_eq!(!!a, a);
            prop_assert!(a.is_subset(a | b));
            prop_assert!((a & b).is_subset(a));
            prop_assert_eq!(a - b, a & !b);
            prop_assert_eq!(a | !a, PointSet::full(n));
            prop_assert_eq!(a.len() + (!a).len(), n);
            prop_assert!(PointSet::from_bits(n, (!a).bits()).is_some());
        }
    }
}
