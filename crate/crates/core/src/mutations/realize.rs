//! Randomised search for a network realising a given chirotope.

use num::{BigInt, ToPrimitive};
use rand::Rng;

use crate::chirotope::{subsets, Basis, Chirotope, SignMap};
use crate::exact::{Rational, Sign};
use crate::network::{Digraph, Network};

/// Parameters stay inside the sampling box `W ∈ (−3, 0)`, `b ∈ (0, 1)`.
const W_LO: f64 = -3.0 + 1e-6;
const W_HI: f64 = -1e-6;
const B_LO: f64 = 1e-6;
const B_HI: f64 = 1.0 - 1e-6;
const MARGIN: f64 = 1e-5;
const START_STEP: f64 = 0.05;
const MIN_STEP: f64 = 1e-9;
const FAILS_BEFORE_HALVING: usize = 16;

/// Flat parameter vector: off-diagonal `W` row by row, then `b`.
#[derive(Clone, Debug)]
struct Params {
    n: usize,
    x: Vec<f64>,
}

impl Params {
    fn of(net: &Network) -> Self {
        let n = net.n();
        let w = net.w_f64();
        let mut x = Vec::with_capacity(n * n);
        for (i, row) in w.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if i != j {
                    x.push(v);
                }
            }
        }
        x.extend(net.b_f64());
        Self { n, x }
    }

    fn weights(&self) -> usize {
        self.n * (self.n - 1)
    }

    fn clamp(&mut self) {
        let m = self.weights();
        for (t, v) in self.x.iter_mut().enumerate() {
            *v = if t < m { v.clamp(W_LO, W_HI) } else { v.clamp(B_LO, B_HI) };
        }
    }

    /// Arrangement rows `e_1, h_1, …, e_n, h_n, e_∞`.
    fn rows(&self) -> Vec<Vec<f64>> {
        let n = self.n;
        let mut rows = Vec::with_capacity(2 * n + 1);
        let mut t = 0;
        for i in 0..n {
            let mut e = vec![0.0; n + 1];
            e[i] = 1.0;
            rows.push(e);
            let mut h = vec![0.0; n + 1];
            for (j, slot) in h.iter_mut().enumerate().take(n) {
                if i == j {
                    *slot = -1.0;
                } else {
                    *slot = self.x[t];
                    t += 1;
                }
            }
            h[n] = self.x[self.weights() + i];
            rows.push(h);
        }
        let mut inf = vec![0.0; n + 1];
        inf[n] = 1.0;
        rows.push(inf);
        rows
    }

    fn round(&self, den: i64) -> Option<Network> {
        let n = self.n;
        let q = |v: f64| -> Option<Rational> {
            let k = (v * den as f64).round();
            Some(Rational::new(BigInt::from(k.to_i64()?), BigInt::from(den)))
        };
        let mut w = vec![vec![Rational::from_integer(0.into()); n]; n];
        let mut t = 0;
        for (i, row) in w.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                if i != j {
                    *slot = q(self.x[t])?;
                    t += 1;
                }
            }
        }
        let b = (0..n).map(|i| q(self.x[self.weights() + i])).collect::<Option<Vec<_>>>()?;
        Network::new(w, b).ok()
    }
}

fn det_f64(mut m: Vec<Vec<f64>>) -> f64 {
    let k = m.len();
    let mut d = 1.0;
    for c in 0..k {
        let p = (c..k).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).expect("nonempty");
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        let (top, rest) = m.split_at_mut(c + 1);
        let pivot = &top[c];
        for row in rest {
            let f = row[c] / pivot[c];
            for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= f * p;
            }
        }
    }
    d
}

struct Objective {
    bases: Vec<Vec<usize>>,
    target: Vec<f64>,
}

impl Objective {
    fn new(target: &Chirotope) -> Self {
        let n = target.n();
        let bases: Vec<Basis> = subsets(2 * n + 1, n + 1);
        Self {
            target: bases
                .iter()
                .map(|&b| match target.base_sign(b) {
                    Sign::Pos => 1.0,
                    Sign::Neg => -1.0,
                    Sign::Zero => 0.0,
                })
                .collect(),
            bases: bases.iter().map(|b| b.indices()).collect(),
        }
    }

    /// Hinge loss with a margin; zero once every sign matches with room to spare.
    fn loss(&self, p: &Params) -> f64 {
        let rows = p.rows();
        self.bases
            .iter()
            .zip(&self.target)
            .map(|(idx, &t)| {
                let d = det_f64(idx.iter().map(|&r| rows[r].clone()).collect());
                (MARGIN - t * d).max(0.0)
            })
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Objective evaluations allowed for one target.
    pub evaluations: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { evaluations: 10_000 }
    }
}

/// Outcome of one search; `evaluations` counts objective calls actually used.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub witness: Option<Network>,
    pub evaluations: usize,
}

fn verify(p: &Params, target: &Chirotope, g: &Digraph) -> Option<Network> {
    for den in [1_000_000, 1_000_000_000] {
        let Some(net) = p.round(den) else { continue };
        if net.is_competitive() && net.graph().ok().as_ref() == Some(g) && Chirotope::of(&net) == *target {
            return Some(net);
        }
    }
    None
}

/// Hill-climbs from `start` towards a network whose chirotope is `target` and whose
/// graph is `g`. Any witness returned has been checked exactly.
pub fn realize(
    target: &Chirotope,
    g: &Digraph,
    start: &Network,
    rng: &mut impl Rng,
    budget: SearchBudget,
) -> SearchResult {
    let obj = Objective::new(target);
    let origin = Params::of(start);
    let mut x = origin.clone();
    let mut loss = obj.loss(&x);
    let mut used = 1;
    let mut step = START_STEP;
    let mut fails = 0;
    let dim = x.x.len();
    let mut drift = false;
    while used < budget.evaluations {
        if loss == 0.0 && !drift {
            if let Some(net) = verify(&x, target, g) {
                return SearchResult { witness: Some(net), evaluations: used };
            }
            // too close to a wall for rounding: take any move that stays feasible
            drift = true;
        }
        let mut y = x.clone();
        if rng.gen_bool(0.5) {
            let t = rng.gen_range(0..dim);
            y.x[t] += step * rng.gen_range(-1.0..1.0);
        } else {
            for v in y.x.iter_mut() {
                *v += step * rng.gen_range(-1.0..1.0);
            }
        }
        y.clamp();
        let ly = obj.loss(&y);
        used += 1;
        if ly < loss || (drift && ly == 0.0) {
            drift = false;
            x = y;
            loss = ly;
            fails = 0;
            step = (step * 1.5).min(0.5);
        } else {
            fails += 1;
            if fails >= FAILS_BEFORE_HALVING {
                step /= 2.0;
                fails = 0;
            }
        }
        if step < MIN_STEP {
            // restart near the origin
            x = origin.clone();
            for v in x.x.iter_mut() {
                *v += rng.gen_range(-0.1..0.1);
            }
            x.clamp();
            loss = obj.loss(&x);
            used += 1;
            step = START_STEP;
        }
    }
    SearchResult { witness: None, evaluations: used }
}
