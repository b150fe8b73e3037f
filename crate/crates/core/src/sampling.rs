//! Random competitive networks on the grid used throughout: `W_ij = −k/1000`
//! with `k ∈ [1, 2999]` and `b_i = k/1000` with `k ∈ [1, 999]`.

use num::{BigInt, Zero};
use rand::Rng;

use crate::chirotope::{a_sigma, Chirotope, GroundSet, SIndex, SignMap};
use crate::error::{Result, TlnError};
use crate::exact::{ratio, Rational};
use crate::fixed_points::Support;
use crate::network::{Digraph, Network};

pub const DEN: i64 = 1000;
pub const W_MAX: i64 = 2999;
pub const B_MAX: i64 = 999;

fn build(n: usize, wk: &[Vec<i64>], bk: &[i64]) -> Network {
    let w = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::zero() } else { ratio(-wk[i][j], DEN) }).collect())
        .collect();
    let b = bk.iter().map(|&k| ratio(k, DEN)).collect();
    Network::new(w, b).expect("square by construction")
}

/// Uniform over the grid, with no conditioning.
pub fn random_network(rng: &mut impl Rng, n: usize) -> Network {
    let wk: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(1..=W_MAX)).collect()).collect();
    let bk: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=B_MAX)).collect();
    build(n, &wk, &bk)
}

/// Uniform over grid networks whose graph is `g`.
///
/// Inputs are drawn first; each weight `W_ji` is then drawn from the grid values
/// that put `i → j` on the required side (`k·b_i < 1000·b_j` for an edge, `>` for
/// none; equality is a wall and never produced).
pub fn random_network_with_graph(rng: &mut impl Rng, g: &Digraph, max_tries: usize) -> Result<Network> {
    let n = g.n();
    'retry: for _ in 0..max_tries {
        let bk: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=B_MAX)).collect();
        let mut wk = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                // k·b_i < DEN·b_j  ⇔  s^{ij}_j > 0
                let bound = DEN * bk[j];
                let (lo, hi) = if g.has_edge(i, j) {
                    (1, ((bound - 1) / bk[i]).min(W_MAX))
                } else {
                    (bound / bk[i] + 1, W_MAX)
                };
                if lo > hi {
                    continue 'retry;
                }
                wk[j][i] = rng.gen_range(lo..=hi);
            }
        }
        return Ok(build(n, &wk, &bk));
    }
    Err(TlnError::SearchExhausted(format!("no grid network with graph {g} after {max_tries} draws")))
}

/// No `s^σ_i` vanishes and the graph is defined, so supports are well defined.
pub fn is_generic(net: &Network) -> bool {
    let n = net.n();
    if net.graph().is_err() {
        return false;
    }
    let ground = GroundSet::new(net);
    Support::all(n).into_iter().all(|sigma| {
        let mut t = a_sigma(n, sigma);
        t.push(0);
        (0..n).map(SIndex::Neuron).chain([SIndex::Inf]).all(|idx| {
            t[n] = crate::chirotope::s_element(sigma, idx).index(n);
            !ground.sign(&t).expect("square").is_zero()
        })
    })
}

/// Every base sign is nonzero.
pub fn is_simplicial(net: &Network) -> bool {
    Chirotope::of(net).is_simplicial()
}

/// Draws until `accept` holds, up to `max_tries`.
pub fn sample_where<R: Rng>(
    rng: &mut R,
    max_tries: usize,
    mut draw: impl FnMut(&mut R) -> Result<Network>,
    accept: impl Fn(&Network) -> bool,
) -> Result<Network> {
    for _ in 0..max_tries {
        let net = draw(rng)?;
        if accept(&net) {
            return Ok(net);
        }
    }
    Err(TlnError::SearchExhausted(format!("no acceptable network in {max_tries} draws")))
}

/// Integer numerators of a grid network, handy for hashing and logs.
pub fn grid_key(net: &Network) -> Vec<BigInt> {
    let scale = Rational::from_integer(DEN.into());
    net.weights()
        .iter()
        .flatten()
        .chain(net.inputs())
        .map(|x| (x * &scale).to_integer())
        .collect()
}
