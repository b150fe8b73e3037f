use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};

use num::Signed;

use super::Rational;
use crate::error::{Result, TlnError};

/// An element of {+, 0, −}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(value: &Rational) -> Sign {
        if value.is_positive() {
            Sign::Pos
        } else if value.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn of_i128(value: i128) -> Sign {
        Sign::from(value.cmp(&0))
    }

    pub fn of_f64(value: f64) -> Sign {
        if value > 0.0 {
            Sign::Pos
        } else if value < 0.0 {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Neg => -1,
            Sign::Zero => 0,
            Sign::Pos => 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

impl From<Ordering> for Sign {
    fn from(ord: Ordering) -> Self {
        match ord {
            Ordering::Less => Sign::Neg,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Pos,
        }
    }
}

impl From<bool> for Sign {
    /// `true` maps to `+`, `false` to `−`.
    fn from(positive: bool) -> Self {
        if positive {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Parity of a permutation of `0..k`: `+` for even, `−` for odd.
pub fn permutation_parity(perm: &[usize]) -> Result<Sign> {
    let k = perm.len();
    let mut seen = vec![false; k];
    for &p in perm {
        if p >= k || seen[p] {
            return Err(TlnError::NotAPermutation(perm.to_vec()));
        }
        seen[p] = true;
    }
    let mut visited = vec![false; k];
    let mut cycles = 0;
    for start in 0..k {
        if visited[start] {
            continue;
        }
        cycles += 1;
        let mut at = start;
        while !visited[at] {
            visited[at] = true;
            at = perm[at];
        }
    }
    Ok(if (k - cycles) % 2 == 0 { Sign::Pos } else { Sign::Neg })
}

/// Sorts `items` in place and returns the parity of the sorting permutation,
/// or `Sign::Zero` when two items coincide.
pub fn sort_with_parity<T: Ord>(items: &mut [T]) -> Sign {
    let mut sign = Sign::Pos;
    // insertion sort: item counts here are tiny (n + 1 ≤ 12)
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 {
            match items[j - 1].cmp(&items[j]) {
                Ordering::Greater => {
                    items.swap(j - 1, j);
                    sign = -sign;
                    j -= 1;
                }
                Ordering::Equal => return Sign::Zero,
                Ordering::Less => break,
            }
        }
    }
    if items.windows(2).any(|w| w[0] == w[1]) {
        return Sign::Zero;
    }
    sign
}
