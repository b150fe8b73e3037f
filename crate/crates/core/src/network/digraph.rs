use std::fmt;

use crate::error::{Result, TlnError};

/// Simple directed graph on nodes `0..n` (no self-loops).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digraph {
    n: usize,
    adj: Vec<bool>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Self { n, adj: vec![false; n * n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(TlnError::Index(format!("edge {}>{} outside {n} nodes", i + 1, j + 1)));
            }
            if i == j {
                return Err(TlnError::Parse(format!("self-loop at node {}", i + 1)));
            }
            g.add_edge(i, j);
        }
        Ok(g)
    }

    /// Parses `"1>2,2>1,3>2"` (1-based). `"none"` or an empty string is the empty graph.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let text = text.trim();
        let mut edges = Vec::new();
        if !(text.is_empty() || text.eq_ignore_ascii_case("none")) {
            for item in text.split(',') {
                let item = item.trim();
                let (a, b) = item
                    .split_once('>')
                    .ok_or_else(|| TlnError::Parse(format!("edge {item:?} is not of the form i>j")))?;
                let node = |s: &str| -> Result<usize> {
                    let v: usize = s
                        .trim()
                        .parse()
                        .map_err(|_| TlnError::Parse(format!("bad node {s:?} in {item:?}")))?;
                    if v == 0 {
                        return Err(TlnError::Parse("nodes are numbered from 1".into()));
                    }
                    Ok(v - 1)
                };
                edges.push((node(a)?, node(b)?));
            }
        }
        Self::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i * self.n + j] = true;
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.has_edge(i, j))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&e| e).count()
    }

    pub fn out_degree(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.has_edge(i, j)).count()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.out_degree(i) == 0).collect()
    }

    /// `i ↔ j`.
    pub fn bidirected(&self, i: usize, j: usize) -> bool {
        self.has_edge(i, j) && self.has_edge(j, i)
    }

    /// Neither `i → j` nor `j → i`.
    pub fn non_adjacent(&self, i: usize, j: usize) -> bool {
        !self.has_edge(i, j) && !self.has_edge(j, i)
    }

    /// `k` separates `i` from `j`: `k → i` and `k ↛ j`.
    pub fn separates(&self, k: usize, i: usize, j: usize) -> bool {
        k != i && k != j && i != j && self.has_edge(k, i) && !self.has_edge(k, j)
    }

    /// Whether `m` separates any ordered pair of other nodes.
    pub fn is_separating(&self, m: usize) -> bool {
        (0..self.n).any(|i| (0..self.n).any(|j| self.separates(m, i, j)))
    }

    /// Relabel node `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut g = Self::empty(self.n);
        for (i, j) in self.edges() {
            g.add_edge(perm[i], perm[j]);
        }
        g
    }

    fn code(&self) -> u64 {
        let n = self.n;
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if self.has_edge(i, j) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    /// Lexicographically smallest relabelling, with the permutation that produces it.
    pub fn canonical(&self) -> (Digraph, Vec<usize>) {
        let mut best: Option<(u64, Vec<usize>)> = None;
        for perm in permutations(self.n) {
            let code = self.permute(&perm).code();
            if best.as_ref().map_or(true, |(c, _)| code < *c) {
                best = Some((code, perm));
            }
        }
        let (_, perm) = best.expect("at least one permutation");
        (self.permute(&perm), perm)
    }

    pub fn is_isomorphic(&self, other: &Digraph) -> bool {
        self.n == other.n && self.edge_count() == other.edge_count() && self.canonical().0 == other.canonical().0
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges = self.edges();
        if edges.is_empty() {
            return write!(f, "none");
        }
        let parts: Vec<String> = edges.iter().map(|(i, j)| format!("{}>{}", i + 1, j + 1)).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// One canonical representative per isomorphism class of digraphs on `n` nodes,
/// ordered by edge count and then by edge code.
pub fn isomorphism_classes(n: usize) -> Result<Vec<Digraph>> {
    if n > 4 {
        return Err(TlnError::Unsupported(format!("brute-force enumeration for n = {n}")));
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let mut reps = std::collections::BTreeSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut g = Digraph::empty(n);
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                g.add_edge(i, j);
            }
        }
        let canon = g.canonical().0;
        reps.insert((canon.edge_count(), canon.code(), canon));
    }
    Ok(reps.into_iter().map(|(_, _, g)| g).collect())
}
