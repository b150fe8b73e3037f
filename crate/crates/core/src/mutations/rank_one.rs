use std::fmt;

use super::gp::satisfies_gp;
use crate::chirotope::{Basis, Flipped, SignMap};
use crate::error::{Result, TlnError};
use crate::exact::Sign;

/// `T[λ]_{ij} = χ(λ[i→j])`: `λ_i` replaced in place by the `j`-th element of the complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    pub basis: Basis,
    pub rows: Vec<Vec<Sign>>,
}

impl RepMatrix {
    /// Every row is `±` the first.
    pub fn is_rank_one(&self) -> bool {
        let first = &self.rows[0];
        self.rows.iter().all(|row| {
            let f = row[0] * first[0];
            row.iter().zip(first).all(|(&a, &b)| a * b == f)
        })
    }
}

impl fmt::Display for RepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let s: String = row.iter().map(|s| s.symbol()).collect();
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

pub fn rep_matrix(chi: &(impl SignMap + ?Sized), basis: Basis) -> Result<RepMatrix> {
    let n = chi.n();
    if basis.len() != n + 1 {
        return Err(TlnError::Dimension(format!("a basis has {} elements, got {}", n + 1, basis.len())));
    }
    let lambda = basis.indices();
    let mu = basis.complement(n);
    let mut rows = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut tuple = lambda.clone();
        let row: Vec<Sign> = mu
            .iter()
            .map(|&m| {
                tuple[i] = m;
                chi.chi(&tuple)
            })
            .collect();
        if row.contains(&Sign::Zero) {
            return Err(TlnError::NotSimplicial);
        }
        rows.push(row);
    }
    Ok(RepMatrix { basis, rows })
}

/// Rank-one test on the representative matrix.
pub fn is_mutation(chi: &(impl SignMap + ?Sized), basis: Basis) -> Result<bool> {
    Ok(rep_matrix(chi, basis)?.is_rank_one())
}

/// Every basis that is a mutation, in colex order.
pub fn mutations(chi: &(impl SignMap + ?Sized)) -> Result<Vec<Basis>> {
    let mut out = Vec::new();
    for b in chi.bases() {
        if is_mutation(chi, b)? {
            out.push(b);
        }
    }
    Ok(out)
}

/// Flip the sign and re-check every three-term relation.
pub fn is_mutation_by_flip(chi: &(impl SignMap + ?Sized), basis: Basis) -> bool {
    satisfies_gp(&Flipped { inner: chi, basis })
}
