use std::fmt;
use std::str::FromStr;

use crate::error::{Result, TlnError};

/// A member of the ground set `(e_1, h_1, …, e_n, h_n, e_∞)` (0-based neuron index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    E(usize),
    H(usize),
    Inf,
}

impl Element {
    /// Position in the canonical ground-set order for a network of `n` neurons.
    pub fn index(self, n: usize) -> usize {
        match self {
            Element::E(i) => 2 * i,
            Element::H(i) => 2 * i + 1,
            Element::Inf => 2 * n,
        }
    }

    pub fn from_index(idx: usize, n: usize) -> Element {
        if idx == 2 * n {
            Element::Inf
        } else if idx % 2 == 0 {
            Element::E(idx / 2)
        } else {
            Element::H(idx / 2)
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Element::E(i) => write!(f, "e{}", i + 1),
            Element::H(i) => write!(f, "h{}", i + 1),
            Element::Inf => write!(f, "e_inf"),
        }
    }
}

impl FromStr for Element {
    type Err = TlnError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "e_inf" | "einf" | "e∞" | "inf") {
            return Ok(Element::Inf);
        }
        let bad = || TlnError::Parse(format!("unknown ground element {s:?}"));
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(p, _)| p));
        let i: usize = tail.trim_start_matches('_').parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        match head {
            "e" => Ok(Element::E(i - 1)),
            "h" => Ok(Element::H(i - 1)),
            _ => Err(bad()),
        }
    }
}

/// An unordered subset of ground-set indices, as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis(pub u32);

impl Basis {
    pub fn from_indices(idx: &[usize]) -> Self {
        Basis(idx.iter().fold(0, |acc, &i| acc | 1 << i))
    }

    pub fn from_elements(elems: &[Element], n: usize) -> Self {
        Basis(elems.iter().fold(0, |acc, e| acc | 1 << e.index(n)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, idx: usize) -> bool {
        self.0 >> idx & 1 == 1
    }

    /// Members in ascending order.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    pub fn elements(self, n: usize) -> Vec<Element> {
        self.indices().into_iter().map(|i| Element::from_index(i, n)).collect()
    }

    /// Ground-set indices `0..2n+1` not in this basis, ascending.
    pub fn complement(self, n: usize) -> Vec<usize> {
        (0..=2 * n).filter(|&i| !self.contains(i)).collect()
    }

    pub fn name(self, n: usize) -> String {
        let parts: Vec<String> = self.elements(n).iter().map(ToString::to_string).collect();
        parts.join(" ")
    }

    /// Rank in colexicographic order among subsets of the same size.
    pub fn colex_rank(self) -> usize {
        self.indices().iter().enumerate().map(|(t, &c)| binomial(c, t + 1)).sum()
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `0..m` in colex order (Gosper's hack).
pub fn subsets(m: usize, k: usize) -> Vec<Basis> {
    if k > m {
        return Vec::new();
    }
    if k == 0 {
        return vec![Basis(0)];
    }
    let mut out = Vec::with_capacity(binomial(m, k));
    let mut v: u64 = (1 << k) - 1;
    while v < 1 << m {
        out.push(Basis(v as u32));
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}
