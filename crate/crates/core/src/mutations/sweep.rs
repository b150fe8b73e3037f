//! One-parameter sweeps: where along a path does any `s^σ_i` change sign.

use std::collections::BTreeSet;
use std::fmt;

use num::Signed;

use crate::chirotope::{s_tuple, Basis, GroundSet, SIndex};
use crate::error::{Result, TlnError};
use crate::exact::{format_exact, format_fixed, sort_with_parity, Rational, Sign};
use crate::fixed_points::{fixed_point_supports, Support, SupportFamily};
use crate::network::ParamPath;
use crate::sampling::is_generic;

/// A parameter interval containing one or more sign changes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepEvent {
    pub lo: Rational,
    pub hi: Rational,
    /// Names of the determinants that change sign, e.g. `s^123_1`.
    pub crossed: Vec<String>,
    pub before: SupportFamily,
    pub after: SupportFamily,
}

impl SweepEvent {
    pub fn changes_fp(&self) -> bool {
        self.before != self.after
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, value: &Rational) -> bool {
        &self.lo <= value && value <= &self.hi
    }
}

impl fmt::Display for SweepEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}] {} → {} ({})",
            format_fixed(&self.lo, 6),
            format_fixed(&self.hi, 6),
            self.before,
            self.after,
            self.crossed.join(" ")
        )
    }
}

/// Distinct bases behind the `s^σ_i` with a readable name for each.
fn watched(n: usize) -> Vec<(Basis, String)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for sigma in Support::all(n) {
        for i in 0..n {
            let mut t = s_tuple(n, sigma, SIndex::Neuron(i));
            sort_with_parity(&mut t);
            let b = Basis::from_indices(&t);
            // s^σ_i and s^{σ∖i}_i share a basis; name it by the larger support
            if seen.insert(b) {
                out.push((b, format!("s^{}_{}", sigma.with(i), i + 1)));
            }
        }
    }
    out
}

fn sign_at(path: &ParamPath, basis: Basis, value: &Rational) -> Sign {
    GroundSet::new(&path.network_at_value(value.clone())).basis_sign(basis)
}

/// Shrinks `[a, b]` (path order) around the sign change of `basis` to width `≤ tol`.
fn bisect(path: &ParamPath, basis: Basis, mut a: Rational, mut b: Rational, tol: &Rational) -> (Rational, Rational) {
    let sa = sign_at(path, basis, &a);
    let two = Rational::from_integer(2.into());
    while (&b - &a).abs() > *tol {
        let m = (&a + &b) / &two;
        match sign_at(path, basis, &m) {
            Sign::Zero => return (m.clone(), m),
            s if s == sa => a = m,
            _ => b = m,
        }
    }
    (a, b)
}

/// Walks the path on its grid, brackets every sign change of every `s^σ_i`,
/// bisects each bracket exactly to width `≤ tol`, and reports FP on either side.
/// Crossings whose brackets overlap are merged into one event.
pub fn sweep(path: &ParamPath, tol: &Rational) -> Result<Vec<SweepEvent>> {
    if !tol.is_positive() {
        return Err(TlnError::Parse("tolerance must be positive".into()));
    }
    for v in [&path.from, &path.to] {
        if !is_generic(&path.network_at_value(v.clone())) {
            return Err(TlnError::Degenerate(format!("path endpoint {} = {}", path.param, format_exact(v))));
        }
    }
    let grid = path.grid();
    let bases = watched(path.base.n());
    let signs: Vec<Vec<Sign>> = grid
        .iter()
        .map(|v| {
            let g = GroundSet::new(&path.network_at_value(v.clone()));
            bases.iter().map(|(b, _)| g.basis_sign(*b)).collect()
        })
        .collect();
    // (a, b, name) with a before b along the path
    let mut brackets: Vec<(Rational, Rational, String)> = Vec::new();
    for (c, (basis, name)) in bases.iter().enumerate() {
        let mut last = 0;
        for t in 1..grid.len() {
            let s = signs[t][c];
            if s.is_zero() {
                continue;
            }
            if signs[last][c] != s {
                let (a, b) = bisect(path, *basis, grid[last].clone(), grid[t].clone(), tol);
                brackets.push((a, b, name.clone()));
            }
            last = t;
        }
    }
    let forward = path.to > path.from;
    let key = |x: &Rational| if forward { x.clone() } else { -x.clone() };
    brackets.sort_by_key(|x| key(&x.0));
    let mut merged: Vec<(Rational, Rational, Vec<String>)> = Vec::new();
    for (a, b, name) in brackets {
        match merged.last_mut() {
            Some(m) if key(&a) <= key(&m.1) => {
                if key(&b) > key(&m.1) {
                    m.1 = b;
                }
                m.2.push(name);
            }
            _ => merged.push((a, b, vec![name])),
        }
    }
    let two = Rational::from_integer(2.into());
    let fp_at = |v: Rational| fixed_point_supports(&path.network_at_value(v));
    let mut events = Vec::with_capacity(merged.len());
    for (e, (a, b, crossed)) in merged.iter().enumerate() {
        let prev = if e == 0 { path.from.clone() } else { merged[e - 1].1.clone() };
        let next = if e + 1 == merged.len() { path.to.clone() } else { merged[e + 1].0.clone() };
        let before = fp_at((&prev + a) / &two)?;
        let after = fp_at((b + &next) / &two)?;
        let (lo, hi) = if forward { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        events.push(SweepEvent { lo, hi, crossed: crossed.clone(), before, after });
    }
    Ok(events)
}
