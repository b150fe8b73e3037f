use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Result, TlnError};

/// A subset of neurons, stored as a bitmask (bit `i` = neuron `i`, 0-based).
///
/// Ordered by size, then lexicographically on the sorted members, which is the
/// order families of supports are printed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Support(u32);

impl Support {
    pub const EMPTY: Support = Support(0);

    pub fn from_bits(bits: u32) -> Self {
        Support(bits)
    }

    pub fn full(n: usize) -> Self {
        Support(((1u64 << n) - 1) as u32)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Support(indices.iter().fold(0, |acc, &i| acc | 1 << i))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn with(self, i: usize) -> Self {
        Support(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Support(self.0 & !(1 << i))
    }

    pub fn complement(self, n: usize) -> Self {
        Support(!self.0 & Support::full(n).0)
    }

    pub fn is_subset(self, other: Support) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |&i| bits >> i & 1 == 1)
    }

    /// Every subset of `0..n`, including the empty set, in canonical order.
    pub fn all(n: usize) -> Vec<Support> {
        let mut v: Vec<Support> = (0..1u32 << n).map(Support).collect();
        v.sort();
        v
    }
}

impl Ord for Support {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for Support {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        if self.indices().all(|i| i < 9) {
            for i in self.indices() {
                write!(f, "{}", i + 1)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.indices().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", parts.join(" "))
        }
    }
}

impl FromStr for Support {
    type Err = TlnError;

    /// `"123"` is `{1,2,3}` (1-based digits); `"∅"` is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "∅" {
            return Ok(Support::EMPTY);
        }
        let mut out = Support::EMPTY;
        for c in s.chars() {
            match c.to_digit(10) {
                Some(d) if d > 0 && !out.contains(d as usize - 1) => out = out.with(d as usize - 1),
                _ => return Err(TlnError::Parse(format!("bad support {s:?}"))),
            }
        }
        if out.is_empty() {
            return Err(TlnError::Parse("empty support string".into()));
        }
        Ok(out)
    }
}

/// A set of supports in canonical order, e.g. `{12,23,123}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct SupportFamily(BTreeSet<Support>);

impl SupportFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, s: Support) -> bool {
        self.0.insert(s)
    }

    pub fn contains(&self, s: Support) -> bool {
        self.0.contains(&s)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Support> + '_ {
        self.0.iter().copied()
    }

    pub fn difference(&self, other: &SupportFamily) -> SupportFamily {
        SupportFamily(self.0.difference(&other.0).copied().collect())
    }

    /// Members of size one, as neuron indices.
    pub fn singletons(&self) -> Vec<usize> {
        self.iter().filter(|s| s.len() == 1).flat_map(|s| s.indices()).collect()
    }

    /// Parses `"{12,23,123}"` (braces optional).
    pub fn parse(text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut fam = SupportFamily::new();
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            fam.insert(part.parse()?);
        }
        Ok(fam)
    }
}

impl FromIterator<Support> for SupportFamily {
    fn from_iter<I: IntoIterator<Item = Support>>(iter: I) -> Self {
        SupportFamily(iter.into_iter().collect())
    }
}

impl fmt::Display for SupportFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
