use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;

use super::{binomial, subsets, Basis, GroundSet};
use crate::error::{Result, TlnError};
use crate::exact::{sort_with_parity, Sign};
use crate::network::Network;

/// An alternating sign map on `(n+1)`-tuples of the `2n+1` ground elements.
pub trait SignMap: Sync {
    fn n(&self) -> usize;

    /// Sign of a basis taken in ascending order.
    fn base_sign(&self, basis: Basis) -> Sign;

    /// Sign of an ordered tuple of ground indices: the base sign times the
    /// parity of the sorting permutation, or `0` if an index repeats.
    fn chi(&self, tuple: &[usize]) -> Sign {
        let mut sorted = tuple.to_vec();
        let parity = sort_with_parity(&mut sorted);
        if parity.is_zero() {
            return Sign::Zero;
        }
        parity * self.base_sign(Basis::from_indices(&sorted))
    }

    fn bases(&self) -> Vec<Basis> {
        subsets(2 * self.n() + 1, self.n() + 1)
    }

    fn is_simplicial(&self) -> bool {
        self.bases().iter().all(|&b| !self.base_sign(b).is_zero())
    }

    /// All base signs in colex order.
    fn sign_vector(&self) -> Vec<Sign> {
        self.bases().iter().map(|&b| self.base_sign(b)).collect()
    }
}

const PAR_MIN_BASES: usize = 500;

/// Chirotope with every base sign stored, indexed by colex rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chirotope {
    n: usize,
    signs: Vec<Sign>,
}

impl Chirotope {
    pub fn of(net: &Network) -> Self {
        Self::from_ground(&GroundSet::new(net))
    }

    pub fn from_ground(ground: &GroundSet) -> Self {
        let n = ground.n();
        let bases = subsets(2 * n + 1, n + 1);
        // small rank: not worth the thread hand-off
        let signs = if bases.len() < PAR_MIN_BASES {
            bases.iter().map(|&b| ground.basis_sign(b)).collect()
        } else {
            bases.par_iter().map(|&b| ground.basis_sign(b)).collect()
        };
        Self { n, signs }
    }

    pub fn from_signs(n: usize, signs: Vec<Sign>) -> Result<Self> {
        let expected = binomial(2 * n + 1, n + 1);
        if signs.len() != expected {
            return Err(TlnError::Dimension(format!(
                "a rank-{} chirotope on {} elements has {expected} bases, got {}",
                n + 1,
                2 * n + 1,
                signs.len()
            )));
        }
        Ok(Self { n, signs })
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Copy with the sign of `basis` negated.
    pub fn flipped(&self, basis: Basis) -> Self {
        let mut out = self.clone();
        let r = basis.colex_rank();
        out.signs[r] = -out.signs[r];
        out
    }

    /// Bases on which the two chirotopes disagree.
    pub fn diff(&self, other: &Chirotope) -> Vec<Basis> {
        self.bases().into_iter().filter(|&b| self.base_sign(b) != other.base_sign(b)).collect()
    }

    /// `+`/`-`/`0` string of all base signs in colex order.
    pub fn sign_string(&self) -> String {
        self.signs.iter().map(|s| s.symbol()).collect()
    }
}

impl SignMap for Chirotope {
    fn n(&self) -> usize {
        self.n
    }

    fn base_sign(&self, basis: Basis) -> Sign {
        self.signs[basis.colex_rank()]
    }

    fn sign_vector(&self) -> Vec<Sign> {
        self.signs.clone()
    }
}

/// Chirotope whose base signs are computed on first use and memoised.
#[derive(Debug)]
pub struct LazyChirotope {
    ground: GroundSet,
    memo: Mutex<HashMap<Basis, Sign>>,
}

impl LazyChirotope {
    pub fn new(net: &Network) -> Self {
        Self { ground: GroundSet::new(net), memo: Mutex::new(HashMap::new()) }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Number of bases evaluated so far.
    pub fn evaluated(&self) -> usize {
        self.memo.lock().expect("memo lock").len()
    }
}

impl SignMap for LazyChirotope {
    fn n(&self) -> usize {
        self.ground.n()
    }

    fn base_sign(&self, basis: Basis) -> Sign {
        if let Some(&s) = self.memo.lock().expect("memo lock").get(&basis) {
            return s;
        }
        // computed outside the lock; a racing fill writes the same value
        let s = self.ground.basis_sign(basis);
        self.memo.lock().expect("memo lock").insert(basis, s);
        s
    }
}

/// A sign map with one base sign negated, without copying the rest.
pub struct Flipped<'a, M: SignMap + ?Sized> {
    pub inner: &'a M,
    pub basis: Basis,
}

impl<M: SignMap + ?Sized> SignMap for Flipped<'_, M> {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn base_sign(&self, basis: Basis) -> Sign {
        let s = self.inner.base_sign(basis);
        if basis == self.basis {
            -s
        } else {
            s
        }
    }
}

/// Eager for `n ≤ 5`, lazy above.
pub enum AnyChirotope {
    Eager(Chirotope),
    Lazy(LazyChirotope),
}

impl SignMap for AnyChirotope {
    fn n(&self) -> usize {
        match self {
            AnyChirotope::Eager(c) => c.n(),
            AnyChirotope::Lazy(c) => c.n(),
        }
    }

    fn base_sign(&self, basis: Basis) -> Sign {
        match self {
            AnyChirotope::Eager(c) => c.base_sign(basis),
            AnyChirotope::Lazy(c) => c.base_sign(basis),
        }
    }
}

pub const EAGER_MAX_N: usize = 5;

pub fn chirotope_of(net: &Network) -> AnyChirotope {
    if net.n() <= EAGER_MAX_N {
        AnyChirotope::Eager(Chirotope::of(net))
    } else {
        AnyChirotope::Lazy(LazyChirotope::new(net))
    }
}

pub fn is_simplicial(chi: &impl SignMap) -> bool {
    chi.is_simplicial()
}
