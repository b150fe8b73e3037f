use std::fmt;

use super::{Element, GroundSet, SignMap};
use crate::error::{Result, TlnError};
use crate::exact::{format_exact, Rational, Sign};
use crate::fixed_points::Support;
use crate::network::Network;

/// Lower index of an s-determinant: a neuron or the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SIndex {
    Neuron(usize),
    Inf,
}

impl fmt::Display for SIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SIndex::Neuron(i) => write!(f, "{}", i + 1),
            SIndex::Inf => write!(f, "∞"),
        }
    }
}

/// Ground indices of `a^σ`: `h_k` for `k ∈ σ`, `e_k` otherwise, ascending in `k`.
pub fn a_sigma(n: usize, sigma: Support) -> Vec<usize> {
    (0..n)
        .map(|k| if sigma.contains(k) { Element::H(k) } else { Element::E(k) }.index(n))
        .collect()
}

/// The element appended to `a^σ` in `s^σ_i`.
pub fn s_element(sigma: Support, index: SIndex) -> Element {
    match index {
        SIndex::Inf => Element::Inf,
        SIndex::Neuron(i) if sigma.contains(i) => Element::E(i),
        SIndex::Neuron(i) => Element::H(i),
    }
}

/// Ordered ground-index tuple `(a^σ, x)` whose determinant is `s^σ_i`.
pub fn s_tuple(n: usize, sigma: Support, index: SIndex) -> Vec<usize> {
    let mut t = a_sigma(n, sigma);
    t.push(s_element(sigma, index).index(n));
    t
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SDeterminant {
    pub sigma: Support,
    pub index: SIndex,
    pub value: Rational,
}

impl fmt::Display for SDeterminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s^{}_{} = {}", self.sigma, self.index, format_exact(&self.value))
    }
}

fn check(n: usize, sigma: Support, index: SIndex) -> Result<()> {
    if !sigma.is_subset(Support::full(n)) {
        return Err(TlnError::Index(format!("support {sigma} outside {n} neurons")));
    }
    if let SIndex::Neuron(i) = index {
        if i >= n {
            return Err(TlnError::Index(format!("neuron {} out of range", i + 1)));
        }
    }
    Ok(())
}

pub fn s_determinant_in(ground: &GroundSet, sigma: Support, index: SIndex) -> Result<SDeterminant> {
    check(ground.n(), sigma, index)?;
    let value = ground.det(&s_tuple(ground.n(), sigma, index))?;
    Ok(SDeterminant { sigma, index, value })
}

pub fn s_determinant(net: &Network, sigma: Support, index: SIndex) -> Result<SDeterminant> {
    s_determinant_in(&GroundSet::new(net), sigma, index)
}

/// Sign of `s^σ_i` read from a chirotope.
pub fn s_sign(chi: &(impl SignMap + ?Sized), sigma: Support, index: SIndex) -> Sign {
    chi.chi(&s_tuple(chi.n(), sigma, index))
}

/// Position of the vertex `x^σ` relative to `(E_1, H_1, …, E_n, H_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocircuit {
    pub support: Support,
    pub signs: Vec<Sign>,
}

impl Cocircuit {
    pub fn e(&self, i: usize) -> Sign {
        self.signs[2 * i]
    }

    pub fn h(&self, i: usize) -> Sign {
        self.signs[2 * i + 1]
    }

    /// The vertex is an admissible fixed point: `E_i = +` on the support, `H_j = −` off it.
    pub fn is_fixed_point(&self) -> bool {
        let n = self.signs.len() / 2;
        (0..n).all(|i| {
            if self.support.contains(i) {
                self.e(i) == Sign::Pos
            } else {
                self.h(i) == Sign::Neg
            }
        })
    }
}

impl fmt::Display for Cocircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.signs.iter().map(|s| s.symbol().to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn cocircuit(chi: &(impl SignMap + ?Sized), sigma: Support) -> Result<Cocircuit> {
    let n = chi.n();
    check(n, sigma, SIndex::Inf)?;
    let mut tuple = a_sigma(n, sigma);
    tuple.push(Element::Inf.index(n));
    let at_inf = chi.chi(&tuple);
    if at_inf.is_zero() {
        return Err(TlnError::NoUniqueVertex(sigma.to_string()));
    }
    let signs = (0..2 * n)
        .map(|g| {
            tuple[n] = g;
            chi.chi(&tuple) * at_inf
        })
        .collect();
    Ok(Cocircuit { support: sigma, signs })
}

/// Signed positions of hyperplane/axis intersections along one coordinate axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisSigns {
    pub axis: usize,
    /// `sgn b_axis`: `H_axis` meets the axis on the positive side of `E_axis`.
    pub input: Sign,
    /// `(j, sgn s^{axis j}_j)`: where `H_axis` meets the axis, relative to `H_j`.
    pub pairs: Vec<(usize, Sign)>,
    /// `(i, k, sgn Δ^{ki}_axis)`: where `H_i` meets the axis, relative to `H_k`.
    pub triples: Vec<(usize, usize, Sign)>,
}

impl fmt::Display for AxisSigns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.axis + 1;
        write!(f, "x{a}: b{a} {}", self.input)?;
        for &(j, s) in &self.pairs {
            write!(f, "; s^{a}{}_{} {s}", j + 1, j + 1)?;
        }
        for &(i, k, s) in &self.triples {
            write!(f, "; Δ^{}{}_{a} {s}", k + 1, i + 1)?;
        }
        Ok(())
    }
}

pub fn axis_signs(net: &Network) -> Result<Vec<AxisSigns>> {
    let n = net.n();
    let mut out = Vec::with_capacity(n);
    for axis in 0..n {
        let mut pairs = Vec::new();
        for j in (0..n).filter(|&j| j != axis) {
            pairs.push((j, Sign::of(&net.s_pair(axis, j)?)));
        }
        let mut triples = Vec::new();
        for i in (0..n).filter(|&i| i != axis) {
            for k in (0..n).filter(|&k| k != axis && k != i) {
                triples.push((i, k, Sign::of(&net.delta(k, i, axis)?)));
            }
        }
        out.push(AxisSigns { axis, input: Sign::of(net.b(axis)), pairs, triples });
    }
    Ok(out)
}
