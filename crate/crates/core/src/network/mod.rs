//! Threshold-linear network parameters and the quantities read directly off them.

mod digraph;
mod io;
mod path;

pub use digraph::{isomorphism_classes, Digraph};
pub use io::{from_json, read_network, to_json, write_network};
pub use path::{Param, ParamPath};

use std::fmt;

use num::{Signed, Zero};

use crate::error::{Result, TlnError};
use crate::exact::{format_exact, to_f64, Rational, Sign};

/// Which sign constraints [`Network::validate`] enforces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    /// Zero diagonal, negative off-diagonal weights, positive inputs.
    Competitive,
    /// Zero diagonal only.
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DiagonalNonzero { i: usize },
    WeightNonNegative { i: usize, j: usize },
    InputNonPositive { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::DiagonalNonzero { i } => write!(f, "W_{0}{0} ≠ 0", i + 1),
            Violation::WeightNonNegative { i, j } => write!(f, "W_{}{} ≥ 0", i + 1, j + 1),
            Violation::InputNonPositive { i } => write!(f, "b_{} ≤ 0", i + 1),
        }
    }
}

/// A TLN `ẋ = −x + [Wx + b]_+` with exact rational parameters.
///
/// All indices in this API are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Network {
    w: Vec<Vec<Rational>>,
    b: Vec<Rational>,
}

impl Network {
    pub fn new(w: Vec<Vec<Rational>>, b: Vec<Rational>) -> Result<Self> {
        let n = b.len();
        if n == 0 {
            return Err(TlnError::Dimension("network needs at least one neuron".into()));
        }
        if w.len() != n || w.iter().any(|row| row.len() != n) {
            return Err(TlnError::Dimension(format!("W must be {n}×{n} to match b")));
        }
        Ok(Self { w, b })
    }

    /// Off-diagonal weights all equal to `weight`, every input equal to `input`.
    pub fn uniform(n: usize, weight: Rational, input: Rational) -> Result<Self> {
        let w = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::zero() } else { weight.clone() }).collect())
            .collect();
        Self::new(w, vec![input; n])
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn w(&self, i: usize, j: usize) -> &Rational {
        &self.w[i][j]
    }

    pub fn b(&self, i: usize) -> &Rational {
        &self.b[i]
    }

    pub fn weights(&self) -> &[Vec<Rational>] {
        &self.w
    }

    pub fn inputs(&self) -> &[Rational] {
        &self.b
    }

    pub fn param(&self, p: Param) -> &Rational {
        match p {
            Param::W(i, j) => &self.w[i][j],
            Param::B(i) => &self.b[i],
        }
    }

    /// Copy with one parameter replaced.
    pub fn with_param(&self, p: Param, value: Rational) -> Result<Self> {
        p.check(self.n())?;
        let mut out = self.clone();
        match p {
            Param::W(i, j) => out.w[i][j] = value,
            Param::B(i) => out.b[i] = value,
        }
        Ok(out)
    }

    pub fn validate(&self, class: Class) -> Vec<Violation> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            if !self.w[i][i].is_zero() {
                out.push(Violation::DiagonalNonzero { i });
            }
        }
        if class == Class::Competitive {
            for i in 0..n {
                for j in 0..n {
                    if i != j && !self.w[i][j].is_negative() {
                        out.push(Violation::WeightNonNegative { i, j });
                    }
                }
            }
            for i in 0..n {
                if !self.b[i].is_positive() {
                    out.push(Violation::InputNonPositive { i });
                }
            }
        }
        out
    }

    pub fn is_competitive(&self) -> bool {
        self.validate(Class::Competitive).is_empty()
    }

    pub fn require_competitive(&self) -> Result<()> {
        let v = self.validate(Class::Competitive);
        if v.is_empty() {
            return Ok(());
        }
        let list: Vec<String> = v.iter().map(ToString::to_string).collect();
        Err(TlnError::NotCompetitive(list.join(", ")))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.n() {
            return Err(TlnError::Index(format!("neuron {} out of range 1..={}", i + 1, self.n())));
        }
        Ok(())
    }

    /// `s^{ij}_j = b_i W_ji + b_j`: the value of `h_j` where `H_i` meets the `x_i` axis.
    pub fn s_pair(&self, i: usize, j: usize) -> Result<Rational> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(TlnError::Index(format!("s_pair needs i ≠ j, got {}", i + 1)));
        }
        Ok(&self.b[i] * &self.w[j][i] + &self.b[j])
    }

    /// `Δ^{ij}_k = b_j W_ik − b_i W_jk`.
    pub fn delta(&self, i: usize, j: usize, k: usize) -> Result<Rational> {
        for x in [i, j, k] {
            self.check_index(x)?;
        }
        if i == j || j == k || i == k {
            return Err(TlnError::Index(format!(
                "delta needs distinct indices, got ({}, {}, {})",
                i + 1,
                j + 1,
                k + 1
            )));
        }
        Ok(&self.b[j] * &self.w[i][k] - &self.b[i] * &self.w[j][k])
    }

    /// The digraph with `i → j` iff `s^{ij}_j > 0`.
    pub fn graph(&self) -> Result<Digraph> {
        let n = self.n();
        let mut g = Digraph::empty(n);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                match Sign::of(&self.s_pair(i, j)?) {
                    Sign::Pos => g.add_edge(i, j),
                    Sign::Neg => {}
                    Sign::Zero => {
                        return Err(TlnError::Degenerate(format!(
                            "s^{{{0}{1}}}_{1} = 0, edge {0}→{1} undecided",
                            i + 1,
                            j + 1
                        )))
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn w_f64(&self) -> Vec<Vec<f64>> {
        self.w.iter().map(|r| r.iter().map(to_f64).collect()).collect()
    }

    pub fn b_f64(&self) -> Vec<f64> {
        self.b.iter().map(to_f64).collect()
    }
}

impl fmt::Display for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.w.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(format_exact).collect();
            writeln!(f, "[{}]  {}", cells.join(", "), format_exact(&self.b[i]))?;
        }
        Ok(())
    }
}

/// Free-function alias for [`Network::graph`].
pub fn graph_of(net: &Network) -> Result<Digraph> {
    net.graph()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Network;
    use crate::exact::parse_rational;

    pub fn net(w: &[&[&str]], b: &[&str]) -> Network {
        let w = w.iter().map(|r| r.iter().map(|x| parse_rational(x).unwrap()).collect()).collect();
        let b = b.iter().map(|x| parse_rational(x).unwrap()).collect();
        Network::new(w, b).unwrap()
    }

    pub fn chain3() -> Network {
        net(
            &[&["0", "-0.97", "-1.47"], &["-0.65", "0", "-0.57"], &["-1.34", "-1.45", "0"]],
            &["0.49", "0.40", "0.62"],
        )
    }

    pub fn clique3() -> Network {
        net(
            &[&["0", "-0.63", "-0.84"], &["-0.65", "0", "-0.67"], &["-0.45", "-0.50", "0"]],
            &["0.43", "0.48", "0.41"],
        )
    }

    pub fn net4() -> Network {
        net(
            &[
                &["0", "-0.89", "-0.83", "-0.56"],
                &["-0.89", "0", "-1.44", "-1.38"],
                &["-1.59", "-0.74", "0", "-1.94"],
                &["-0.26", "-0.62", "-0.04", "0"],
            ],
            &["0.46", "0.73", "0.85", "0.48"],
        )
    }
}
