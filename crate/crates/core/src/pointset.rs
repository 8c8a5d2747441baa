//! Bit-packed subsets of a finite ground set `{0, .., n-1}`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A subset of the ground set of a finite closure space.
///
/// Serialized as a bit string where character `i` is `'1'` iff point `i` is a member.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    n: usize,
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(n: usize) -> Self {
        PointSet { n, words: vec![0; n.div_ceil(WORD)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for w in s.words.iter_mut() {
            *w = !0;
        }
        s.trim();
        s
    }

    pub fn singleton(n: usize, x: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(x);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for i in indices {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            s.insert(i);
        }
        Ok(s)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut s = Self::empty(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                s.insert(i);
            }
        }
        s
    }

    /// Parses a `'0'`/`'1'` string; character `i` is membership of point `i`.
    pub fn from_bit_str(bits: &str) -> Result<Self> {
        let chars: Vec<char> = bits.chars().collect();
        let mut s = Self::empty(chars.len());
        for (i, c) in chars.into_iter().enumerate() {
            match c {
                '1' => s.insert(i),
                '0' => {}
                other => {
                    return Err(Error::Invalid(format!("bad character {other:?} in bit string {bits:?}")))
                }
            }
        }
        Ok(s)
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.n).map(|i| if self.contains(i) { '1' } else { '0' }).collect()
    }

    /// Size of the ground set.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.n && self.words[x / WORD] >> (x % WORD) & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x < self.n, "point {x} out of range for universe {}", self.n);
        self.words[x / WORD] |= 1 << (x % WORD);
    }

    pub fn remove(&mut self, x: usize) {
        if x < self.n {
            self.words[x / WORD] &= !(1 << (x % WORD));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
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

    pub fn complement(&self) -> Self {
        let mut s = PointSet { n: self.n, words: self.words.iter().map(|w| !w).collect() };
        s.trim();
        s
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Member indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical ordering key: cardinality first, then member indices.
    pub fn sort_key(&self) -> (usize, Vec<usize>) {
        (self.len(), self.to_vec())
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        self.check_universe(other);
        PointSet {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    fn check_universe(&self, other: &Self) {
        assert_eq!(self.n, other.n, "point sets over different ground sets");
    }

    fn trim(&mut self) {
        let tail = self.n % WORD;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_bit_string())
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        PointSet::from_bit_str(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra_across_word_boundary() {
        let n = 130;
        let a = PointSet::from_indices(n, [0, 63, 64, 129]).unwrap();
        let b = PointSet::from_indices(n, [63, 100]).unwrap();
        assert_eq!(a.union(&b).to_vec(), vec![0, 63, 64, 100, 129]);
        assert_eq!(a.intersection(&b).to_vec(), vec![63]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 64, 129]);
        assert_eq!(a.complement().len(), n - 4);
        assert!(PointSet::full(n).is_full());
        assert!(a.complement().complement() == a);
    }

    #[test]
    fn bit_string_round_trip() {
        let s = PointSet::from_bit_str("10110").unwrap();
        assert_eq!(s.to_vec(), vec![0, 2, 3]);
        assert_eq!(s.to_bit_string(), "10110");
        assert!(PointSet::from_bit_str("10x").is_err());
    }

    #[test]
    fn out_of_range_index() {
        assert_eq!(
            PointSet::from_indices(3, [3]),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        );
    }
}
