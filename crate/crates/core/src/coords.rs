use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sorted set of 1-based coordinate indices.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoordSet(Vec<usize>);

impl CoordSet {
    /// Sorts and deduplicates the given 1-based indices.
    pub fn new(items: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        CoordSet(v)
    }

    pub fn empty() -> Self {
        CoordSet(Vec::new())
    }

    /// The full range `1..=n`.
    pub fn full(n: usize) -> Self {
        CoordSet((1..=n).collect())
    }

    pub fn from_zero_based(items: impl IntoIterator<Item = usize>) -> Self {
        CoordSet::new(items.into_iter().map(|i| i + 1))
    }

    pub fn from_mask(mask: u128) -> Self {
        CoordSet::from_zero_based((0..128).filter(|b| mask >> b & 1 == 1))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn zero_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i - 1).collect()
    }

    /// Bit `i - 1` set for each member `i`. Requires every index `<= 128`.
    pub fn mask(&self) -> u128 {
        self.0.iter().fold(0, |m, &i| m | 1 << (i - 1))
    }

    /// Fails unless every member lies in `1..=n`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i == 0 || i > n) {
            Some(&index) => Err(Error::IndexOutOfRange { index, n }),
            None => Ok(()),
        }
    }

    pub fn is_subset(&self, other: &CoordSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn is_disjoint(&self, other: &CoordSet) -> bool {
        self.0.iter().all(|&i| !other.contains(i))
    }

    pub fn union(&self, other: &CoordSet) -> CoordSet {
        CoordSet::new(self.iter().chain(other.iter()))
    }

    pub fn with(&self, i: usize) -> CoordSet {
        CoordSet::new(self.iter().chain(std::iter::once(i)))
    }

    pub fn without(&self, i: usize) -> CoordSet {
        CoordSet(self.0.iter().copied().filter(|&j| j != i).collect())
    }
}

impl FromIterator<usize> for CoordSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        CoordSet::new(iter)
    }
}

impl<const N: usize> From<[usize; N]> for CoordSet {
    fn from(items: [usize; N]) -> Self {
        CoordSet::new(items)
    }
}

impl fmt::Debug for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_input() {
        let s = CoordSet::new([5, 3, 5, 1]);
        assert_eq!(s.as_slice(), &[1, 3, 5]);
        assert_eq!(s.to_string(), "{1,3,5}");
        assert_eq!(s.mask(), 0b10101);
        assert_eq!(CoordSet::from_mask(0b10101), s);
    }

    #[test]
    fn range_check() {
        assert!(CoordSet::from([1, 6]).check_within(6).is_ok());
        assert_eq!(
            CoordSet::from([1, 7]).check_within(6),
            Err(Error::IndexOutOfRange { index: 7, n: 6 })
        );
        assert!(CoordSet::from([0]).check_within(6).is_err());
    }

    #[test]
    fn serializes_as_plain_array() {
        let s = CoordSet::from([2, 4]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[2,4]");
    }
}
