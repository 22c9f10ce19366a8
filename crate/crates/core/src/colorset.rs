//! Subsets of a color ground set `[n] = {1,..,n}`, `n <= 16`, as bitmasks.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::MAX_COLORS;

/// A set of colors from `[n]`. Color `c` (1-based) occupies bit `c-1`.
/// `Ord` is the numeric order on masks, used only for deterministic storage;
/// lexicographic comparisons of sorted color tuples are made explicitly.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ColorSet(pub u16);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn full(n: usize) -> ColorSet {
        assert!(n <= MAX_COLORS);
        ColorSet(if n == 16 { u16::MAX } else { (1u16 << n) - 1 })
    }

    pub fn singleton(c: u8) -> ColorSet {
        ColorSet(1 << (c - 1))
    }

    pub fn from_colors(colors: &[u8]) -> ColorSet {
        let mut s = ColorSet::EMPTY;
        for &c in colors {
            s = s.insert(c);
        }
        s
    }

    pub fn contains(self, c: u8) -> bool {
        self.0 >> (c - 1) & 1 == 1
    }

    #[must_use]
    pub fn insert(self, c: u8) -> ColorSet {
        assert!((1..=MAX_COLORS as u8).contains(&c));
        ColorSet(self.0 | 1 << (c - 1))
    }

    #[must_use]
    pub fn remove(self, c: u8) -> ColorSet {
        ColorSet(self.0 & !(1 << (c - 1)))
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn inter(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    pub fn minus(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: ColorSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Colors in ascending order.
    pub fn iter(self) -> impl Iterator<Item = u8> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let c = m.trailing_zeros() as u8 + 1;
                m &= m - 1;
                Some(c)
            }
        })
    }

    pub fn colors(self) -> Vec<u8> {
        self.iter().collect()
    }

    /// The `k`-th smallest color, 1-based rank.
    pub fn nth(self, k: usize) -> Option<u8> {
        self.iter().nth(k - 1)
    }

    /// All `k`-subsets of `[n]`, ascending in mask order.
    pub fn subsets_of_size(n: usize, k: usize) -> Vec<ColorSet> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: u8, n: u8, k: usize, cur: &mut Vec<u8>, out: &mut Vec<ColorSet>) {
            if cur.len() == k {
                out.push(ColorSet::from_colors(cur));
                return;
            }
            for c in start..=n {
                cur.push(c);
                rec(c + 1, n, k, cur, out);
                cur.pop();
            }
        }
        if k <= n {
            rec(1, n as u8, k, &mut cur, &mut out);
        }
        out.sort();
        out
    }

    /// Reverses colors within `[n]`: `c -> n+1-c`.
    #[must_use]
    pub fn reversed(self, n: usize) -> ColorSet {
        ColorSet::from_colors(&self.iter().map(|c| n as u8 + 1 - c).collect::<Vec<_>>())
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ColorSet {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.colors().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ColorSet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let colors = Vec::<u8>::deserialize(de)?;
        for &c in &colors {
            if !(1..=MAX_COLORS as u8).contains(&c) {
                return Err(D::Error::custom(format!("color {c} out of range 1..=16")));
            }
        }
        Ok(ColorSet::from_colors(&colors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let s = ColorSet::from_colors(&[3, 1, 4]);
        assert_eq!(s.colors(), vec![1, 3, 4]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(2));
        assert_eq!(s.remove(3).colors(), vec![1, 4]);
        assert_eq!(s.nth(2), Some(3));
        assert_eq!(format!("{s}"), "{1,3,4}");
    }

    #[test]
    fn subsets_count() {
        assert_eq!(ColorSet::subsets_of_size(5, 2).len(), 10);
        assert_eq!(ColorSet::subsets_of_size(4, 4).len(), 1);
        assert_eq!(ColorSet::subsets_of_size(3, 4).len(), 0);
    }

    #[test]
    fn reversal() {
        let s = ColorSet::from_colors(&[1, 2]);
        assert_eq!(s.reversed(4).colors(), vec![3, 4]);
    }
}
