//! Three-term Grassmann-Plücker relations, exactly and as sign conditions.

use std::fmt;

use num::{Signed, Zero};

use crate::chirotope::{subsets, Basis, Element, GroundSet, SignMap};
use crate::exact::{format_exact, sort_with_parity, Rational, Sign};
use crate::network::Network;

/// One relation `[σ τ1 τ2][σ τ3 τ4] − [σ τ1 τ3][σ τ2 τ4] + [σ τ1 τ4][σ τ2 τ3] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPTriple {
    pub sigma: Vec<usize>,
    pub tau: [usize; 4],
    /// The three products, in the order they appear above (before the signs).
    pub terms: [Rational; 3],
}

impl GPTriple {
    pub fn residual(&self) -> Rational {
        &self.terms[0] - &self.terms[1] + &self.terms[2]
    }

    pub fn describe(&self, n: usize) -> String {
        let name = |i: &usize| Element::from_index(*i, n).to_string();
        let s: Vec<String> = self.sigma.iter().map(name).collect();
        let t: Vec<String> = self.tau.iter().map(name).collect();
        format!(
            "σ=({}) τ=({}) terms {} {} {}",
            s.join(","),
            t.join(","),
            format_exact(&self.terms[0]),
            format_exact(&self.terms[1]),
            format_exact(&self.terms[2])
        )
    }
}

/// All base determinants of a network, indexed by colex rank, with the
/// alternating extension to ordered tuples.
pub struct DetTable {
    n: usize,
    values: Vec<Rational>,
}

impl DetTable {
    pub fn new(net: &Network) -> Self {
        let ground = GroundSet::new(net);
        let n = net.n();
        let values = subsets(2 * n + 1, n + 1)
            .iter()
            .map(|b| ground.det(&b.indices()).expect("n+1 rows"))
            .collect();
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn det(&self, tuple: &[usize]) -> Rational {
        let mut sorted = tuple.to_vec();
        match sort_with_parity(&mut sorted) {
            Sign::Zero => Rational::zero(),
            Sign::Pos => self.values[Basis::from_indices(&sorted).colex_rank()].clone(),
            Sign::Neg => -self.values[Basis::from_indices(&sorted).colex_rank()].clone(),
        }
    }
}

fn with(sigma: &[usize], a: usize, b: usize) -> Vec<usize> {
    let mut t = sigma.to_vec();
    t.push(a);
    t.push(b);
    t
}

/// Evaluates one relation for arbitrary ordered `σ` (length `n−1`) and `τ`.
pub fn gp_relation(table: &DetTable, sigma: &[usize], tau: [usize; 4]) -> GPTriple {
    let [a, b, c, d] = tau;
    let p = |x, y| table.det(&with(sigma, x, y));
    let terms = [p(a, b) * p(c, d), p(a, c) * p(b, d), p(a, d) * p(b, c)];
    GPTriple { sigma: sigma.to_vec(), tau, terms }
}

/// Every `(σ, τ)` with `σ` an `(n−1)`-subset and `τ` a 4-subset of its complement,
/// both in ascending order.
pub fn relation_index(n: usize) -> Vec<(Vec<usize>, [usize; 4])> {
    let m = 2 * n + 1;
    let mut out = Vec::new();
    for s in subsets(m, n - 1) {
        let rest: Vec<usize> = (0..m).filter(|&i| !s.contains(i)).collect();
        for t in subsets(rest.len(), 4) {
            let idx = t.indices();
            out.push((s.indices(), [rest[idx[0]], rest[idx[1]], rest[idx[2]], rest[idx[3]]]));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct GpReport {
    pub relations: usize,
    pub max_residual: Rational,
    pub nonzero: Vec<GPTriple>,
}

impl fmt::Display for GpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "residual {} over {} relations", format_exact(&self.max_residual), self.relations)
    }
}

/// Evaluates every three-term relation of the network exactly.
pub fn gp_check(net: &Network) -> GpReport {
    let table = DetTable::new(net);
    let mut max_residual = Rational::zero();
    let mut nonzero = Vec::new();
    let index = relation_index(net.n());
    for (sigma, tau) in &index {
        let rel = gp_relation(&table, sigma, *tau);
        let r = rel.residual().abs();
        if !r.is_zero() {
            if r > max_residual {
                max_residual = r;
            }
            nonzero.push(rel);
        }
    }
    GpReport { relations: index.len(), max_residual, nonzero }
}

/// Sign form of one relation: the three signed terms `+t1, −t2, +t3` must
/// either all vanish or include both a `+` and a `−`.
pub fn gp_signs_consistent(chi: &(impl SignMap + ?Sized), sigma: &[usize], tau: [usize; 4]) -> bool {
    let [a, b, c, d] = tau;
    let p = |x, y| chi.chi(&with(sigma, x, y));
    let signed = [p(a, b) * p(c, d), -(p(a, c) * p(b, d)), p(a, d) * p(b, c)];
    if signed.iter().all(|s| s.is_zero()) {
        return true;
    }
    signed.contains(&Sign::Pos) && signed.contains(&Sign::Neg)
}

/// Whether a sign map satisfies every three-term relation.
pub fn satisfies_gp(chi: &(impl SignMap + ?Sized)) -> bool {
    relation_index(chi.n()).iter().all(|(s, t)| gp_signs_consistent(chi, s, *t))
}
