use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use super::combinat::factorial;
use crate::error::{Error, Result};

/// A finitely supported sequence `m = (m(1), m(2), ...)` of nonnegative
/// integers, stored sparsely. Only positive multiplicities are kept, so two
/// multi-indices are equal exactly when their maps are equal; the derived
/// ordering compares the sorted `(index, multiplicity)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    entries: BTreeMap<u32, u32>,
}

impl MultiIndex {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit vector `δ_a`.
    pub fn delta(a: u32) -> Self {
        assert!(a >= 1, "multi-index positions start at 1");
        let mut entries = BTreeMap::new();
        entries.insert(a, 1);
        Self { entries }
    }

    /// Builds `m` from dense multiplicities `[m(1), m(2), ...]`.
    pub fn from_multiplicities(mults: &[u32]) -> Self {
        let entries = mults
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(i, &v)| (i as u32 + 1, v))
            .collect();
        Self { entries }
    }

    /// Builds `m` from `(index, multiplicity)` pairs; repeated indices add up.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut m = Self::zero();
        for (a, k) in pairs {
            m.add_at(a, k);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, a: u32) -> u32 {
        self.entries.get(&a).copied().unwrap_or(0)
    }

    /// `(index, multiplicity)` pairs in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.entries.iter().map(|(&a, &k)| (a, k))
    }

    /// `|m| = Σ a·m(a)`.
    pub fn weight(&self) -> u64 {
        self.iter().map(|(a, k)| a as u64 * k as u64).sum()
    }

    /// `‖m‖ = Σ m(a)`.
    pub fn norm(&self) -> u64 {
        self.iter().map(|(_, k)| k as u64).sum()
    }

    /// `m! = Π m(a)!`.
    pub fn multi_factorial(&self) -> BigInt {
        self.iter()
            .fold(BigInt::one(), |acc, (_, k)| acc * factorial(k as u64))
    }

    pub fn max_index(&self) -> u32 {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    pub fn min_index(&self) -> Option<u32> {
        self.entries.keys().next().copied()
    }

    pub fn add_at(&mut self, a: u32, k: u32) {
        assert!(a >= 1, "multi-index positions start at 1");
        if k > 0 {
            *self.entries.entry(a).or_insert(0) += k;
        }
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        let mut out = self.clone();
        for (a, k) in other.iter() {
            out.add_at(a, k);
        }
        out
    }

    pub fn plus_delta(&self, a: u32) -> MultiIndex {
        let mut out = self.clone();
        out.add_at(a, 1);
        out
    }

    /// `m - δ_a`, or `None` when `m(a) = 0`.
    pub fn minus_delta(&self, a: u32) -> Option<MultiIndex> {
        let k = self.get(a);
        if k == 0 {
            return None;
        }
        let mut out = self.clone();
        if k == 1 {
            out.entries.remove(&a);
        } else {
            out.entries.insert(a, k - 1);
        }
        Some(out)
    }

    /// Dense multiplicities `[m(1), ..., m(len)]`, padded with zeros.
    pub fn to_dense(&self, len: usize) -> Vec<u32> {
        let mut out = vec![0; len];
        for (a, k) in self.iter() {
            if (a as usize) <= len {
                out[a as usize - 1] = k;
            }
        }
        out
    }

    /// The comma-separated text form `"m(1),m(2),...,m(A)"`; the zero index
    /// prints as `"0"`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.to_dense(self.max_index() as usize)
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::ParseMultiIndex(text.into()));
        }
        let mults = trimmed
            .split(',')
            .map(|part| part.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::ParseMultiIndex(text.into()))?;
        Ok(Self::from_multiplicities(&mults))
    }
}

impl serde::Serialize for MultiIndex {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_text())
    }
}

impl<'de> serde::Deserialize<'de> for MultiIndex {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let text = <String as serde::Deserialize>::deserialize(de)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Every multi-index of weight exactly `w`, i.e. the integer partitions of `w`
/// written as multiplicity vectors, in ascending canonical order.
pub fn multi_indices_of_weight(w: u64) -> Vec<MultiIndex> {
    fn go(rest: u64, max_part: u64, current: &mut Vec<u64>, out: &mut Vec<MultiIndex>) {
        if rest == 0 {
            out.push(MultiIndex::from_pairs(
                current.iter().map(|&a| (a as u32, 1)),
            ));
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            current.push(part);
            go(rest - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(w, w, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Every multi-index with `|m| <= w`, grouped by weight.
pub fn multi_indices_up_to_weight(w: u64) -> Vec<MultiIndex> {
    (0..=w).flat_map(multi_indices_of_weight).collect()
}
