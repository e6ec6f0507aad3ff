//! Parikh vectors and prefix tables.
//!
//! Hot loops use a packed form: letter `c` owns the 16-bit lane starting at
//! bit `16 * c` of a `u128`. Prefix rows are component-wise non-decreasing,
//! so subtracting two packed rows never borrows across lanes and yields the
//! packed Parikh vector of the factor between them.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

pub(crate) const LANE_BITS: u32 = 16;

/// Packed Parikh vector of a factor; see the module docs for the layout.
pub type PackedParikh = u128;

#[inline]
pub(crate) fn unit(letter: u8) -> PackedParikh {
    1u128 << (LANE_BITS * letter as u32)
}

pub(crate) fn unpack(packed: PackedParikh, size: usize) -> Vec<u32> {
    (0..size).map(|c| ((packed >> (LANE_BITS * c as u32)) & 0xffff) as u32).collect()
}

/// Per-letter occurrence counts of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParikhVector {
    counts: Vec<u32>,
}

impl ParikhVector {
    pub fn new(counts: Vec<u32>) -> Self {
        ParikhVector { counts }
    }

    pub fn zero(size: usize) -> Self {
        ParikhVector { counts: vec![0; size] }
    }

    pub fn of(letters: &[u8], size: usize) -> Self {
        let mut counts = vec![0; size];
        letters.iter().for_each(|&c| counts[c as usize] += 1);
        ParikhVector { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Length of the factor this vector describes.
    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    pub(crate) fn from_packed(packed: PackedParikh, size: usize) -> Self {
        ParikhVector { counts: unpack(packed, size) }
    }
}

impl Add for &ParikhVector {
    type Output = ParikhVector;

    fn add(self, rhs: &ParikhVector) -> ParikhVector {
        let counts = self.counts.iter().zip(&rhs.counts).map(|(a, b)| a + b).collect();
        ParikhVector { counts }
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Row `i` holds the packed Parikh vector of the first `i` letters.
#[derive(Debug, Clone)]
pub struct ParikhPrefixTable {
    rows: Vec<PackedParikh>,
    size: usize,
}

impl ParikhPrefixTable {
    pub fn new(letters: &[u8], size: usize) -> Self {
        let mut rows = Vec::with_capacity(letters.len() + 1);
        let mut acc = 0u128;
        rows.push(acc);
        for &c in letters {
            acc += unit(c);
            rows.push(acc);
        }
        ParikhPrefixTable { rows, size }
    }

    /// Number of letters covered.
    pub fn len(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Packed Parikh vector of letters `start..end`.
    #[inline]
    pub fn packed(&self, start: usize, end: usize) -> PackedParikh {
        self.rows[end] - self.rows[start]
    }

    pub fn parikh(&self, start: usize, end: usize) -> ParikhVector {
        ParikhVector::from_packed(self.packed(start, end), self.size)
    }

    /// Whether `start..start+half` and `start+half..start+2*half` share a
    /// Parikh vector.
    #[inline]
    pub fn is_abelian_square(&self, start: usize, half: usize) -> bool {
        let mid = start + half;
        self.packed(start, mid) == self.packed(mid, mid + half)
    }

    pub fn row(&self, i: usize) -> ParikhVector {
        ParikhVector::from_packed(self.rows[i], self.size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn packed_subtraction_matches_counts() {
        let letters = [0, 2, 2, 1, 0, 2];
        let table = ParikhPrefixTable::new(&letters, 3);
        assert_eq!(table.parikh(1, 4).counts(), &[0, 1, 2]);
        assert_eq!(table.parikh(3, 3).counts(), &[0, 0, 0]);
        assert_eq!(table.row(6).total(), 6);
    }

    proptest! {
        #[test]
        fn rows_grow_by_one_letter(letters in prop::collection::vec(0u8..8, 0..60)) {
            let table = ParikhPrefixTable::new(&letters, 8);
            for i in 0..letters.len() {
                let (a, b) = (table.row(i), table.row(i + 1));
                let diffs: Vec<u32> =
                    a.counts().iter().zip(b.counts()).map(|(x, y)| y - x).collect();
                prop_assert_eq!(diffs.iter().sum::<u32>(), 1);
                prop_assert_eq!(diffs[letters[i] as usize], 1);
            }
        }

        #[test]
        fn parikh_is_additive(
            letters in prop::collection::vec(0u8..4, 1..40),
            cuts in prop::collection::vec(any::<prop::sample::Index>(), 3),
        ) {
            let n = letters.len();
            let mut c: Vec<usize> = cuts.iter().map(|ix| ix.index(n + 1)).collect();
            c.sort_unstable();
            let table = ParikhPrefixTable::new(&letters, 4);
            let joined = &table.parikh(c[0], c[1]) + &table.parikh(c[1], c[2]);
            prop_assert_eq!(joined, table.parikh(c[0], c[2]));
            prop_assert_eq!(table.parikh(0, n).total(), n as u64);
            prop_assert_eq!(table.parikh(c[0], c[2]), ParikhVector::of(&letters[c[0]..c[2]], 4));
        }
    }
}
