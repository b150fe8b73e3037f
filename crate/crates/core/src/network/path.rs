use std::fmt;
use std::str::FromStr;

use num::Signed;

use super::Network;
use crate::error::{Result, TlnError};
use crate::exact::Rational;

/// A single scalar parameter of a network (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    W(usize, usize),
    B(usize),
}

impl Param {
    pub fn check(self, n: usize) -> Result<()> {
        let ok = match self {
            Param::W(i, j) => i < n && j < n,
            Param::B(i) => i < n,
        };
        if ok {
            Ok(())
        } else {
            Err(TlnError::Index(format!("parameter {self} outside a network of {n} neurons")))
        }
    }

    /// Whether `value` keeps this parameter inside the competitive class.
    pub fn admissible(self, value: &Rational) -> bool {
        match self {
            Param::W(i, j) if i == j => false,
            Param::W(..) => value.is_negative(),
            Param::B(_) => value.is_positive(),
        }
    }
}

impl FromStr for Param {
    type Err = TlnError;

    /// `W31`, `W3,1`, `W_31`, `b2` (1-based).
    fn from_str(text: &str) -> Result<Self> {
        let bad = || TlnError::Parse(format!("parameter {text:?} is not W<i><j> or b<i>"));
        let t = text.trim();
        let (head, rest) = t.split_at(t.char_indices().nth(1).map_or(t.len(), |(p, _)| p));
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        let index = |s: &str| -> Result<usize> {
            match s.parse::<usize>() {
                Ok(v) if v > 0 => Ok(v - 1),
                _ => Err(bad()),
            }
        };
        match head {
            "W" | "w" => {
                let (a, b) = match rest.split_once(',') {
                    Some(pair) => pair,
                    None if rest.len() == 2 && rest.is_ascii() => rest.split_at(1),
                    None => return Err(bad()),
                };
                let (i, j) = (index(a)?, index(b)?);
                if i == j {
                    return Err(TlnError::Parse(format!("{text}: diagonal weights are fixed at 0")));
                }
                Ok(Param::W(i, j))
            }
            "b" | "B" => Ok(Param::B(index(rest)?)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Param::W(i, j) if i < 9 && j < 9 => write!(f, "W{}{}", i + 1, j + 1),
            Param::W(i, j) => write!(f, "W{},{}", i + 1, j + 1),
            Param::B(i) => write!(f, "b{}", i + 1),
        }
    }
}

/// A straight sweep of one parameter from its current value in `base` to `to`.
#[derive(Clone, Debug)]
pub struct ParamPath {
    pub base: Network,
    pub param: Param,
    pub from: Rational,
    pub to: Rational,
    pub steps: usize,
}

impl ParamPath {
    pub fn new(base: Network, param: Param, to: Rational, steps: usize) -> Result<Self> {
        param.check(base.n())?;
        let from = base.param(param).clone();
        if from == to {
            return Err(TlnError::Parse(format!("{param} already equals the target value")));
        }
        for v in [&from, &to] {
            if !param.admissible(v) {
                return Err(TlnError::NotCompetitive(format!(
                    "{param} = {v} leaves the competitive class"
                )));
            }
        }
        if steps == 0 {
            return Err(TlnError::Parse("a path needs at least one step".into()));
        }
        Ok(Self { base, param, from, to, steps })
    }

    /// Parameter value at fraction `t ∈ [0, 1]` along the path.
    pub fn value_at(&self, t: &Rational) -> Rational {
        &self.from + (&self.to - &self.from) * t
    }

    pub fn network_at_value(&self, value: Rational) -> Network {
        self.base.with_param(self.param, value).expect("parameter checked on construction")
    }

    /// The `steps + 1` grid values from `from` to `to` inclusive.
    pub fn grid(&self) -> Vec<Rational> {
        let steps = Rational::from_integer(self.steps.into());
        (0..=self.steps)
            .map(|k| self.value_at(&(Rational::from_integer(k.into()) / &steps)))
            .collect()
    }
}
