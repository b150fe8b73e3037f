use num::{One, Zero};

use super::{Basis, Element};
use crate::error::Result;
use crate::exact::{Rational, ScaledRows, Sign};
use crate::network::Network;

/// The `(2n+1)×(n+1)` homogenized arrangement matrix, one row per ground element.
#[derive(Clone, Debug)]
pub struct GroundSet {
    n: usize,
    rows: Vec<Vec<Rational>>,
    scaled: ScaledRows,
}

impl GroundSet {
    pub fn new(net: &Network) -> Self {
        let n = net.n();
        let mut rows = Vec::with_capacity(2 * n + 1);
        for i in 0..n {
            let mut e = vec![Rational::zero(); n + 1];
            e[i] = Rational::one();
            rows.push(e);
            let mut h: Vec<Rational> = (0..n).map(|j| net.w(i, j).clone()).collect();
            h[i] = -Rational::one();
            h.push(net.b(i).clone());
            rows.push(h);
        }
        let mut inf = vec![Rational::zero(); n + 1];
        inf[n] = Rational::one();
        rows.push(inf);
        let scaled = ScaledRows::from_rows(&rows).expect("rows have equal length");
        Self { n, rows, scaled }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, e: Element) -> &[Rational] {
        &self.rows[e.index(self.n)]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Determinant of the rows at `idx`, in that order.
    pub fn det(&self, idx: &[usize]) -> Result<Rational> {
        self.scaled.det(idx)
    }

    pub fn sign(&self, idx: &[usize]) -> Result<Sign> {
        self.scaled.sign(idx)
    }

    pub fn det_elements(&self, elems: &[Element]) -> Result<Rational> {
        let idx: Vec<usize> = elems.iter().map(|e| e.index(self.n)).collect();
        self.det(&idx)
    }

    /// Sign of a basis in ascending order.
    pub fn basis_sign(&self, b: Basis) -> Sign {
        self.sign(&b.indices()).expect("bases have n+1 elements")
    }
}

/// Free-function alias for [`GroundSet::new`].
pub fn arrangement_matrix(net: &Network) -> GroundSet {
    GroundSet::new(net)
}
