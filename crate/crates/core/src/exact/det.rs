//! Fraction-free (Bareiss) determinants.
//!
//! Rational rows are first scaled by the lcm of their denominators, so every
//! elimination step runs on integers and every division is exact. Small inputs
//! go through checked `i128` arithmetic and fall back to `BigInt` on overflow.

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use super::{Matrix, Rational, Sign};
use crate::error::{Result, TlnError};

/// Largest order handled by the stack-buffer fast path.
const SMALL_MAX: usize = 12;

/// Integer rows together with the positive factors they were scaled by.
///
/// `det(rows[idx]) = det_int(idx) / Π scale[idx]`.
#[derive(Clone, Debug)]
pub struct ScaledRows {
    cols: usize,
    small: Option<Vec<i64>>,
    big: Vec<BigInt>,
    scales: Vec<BigInt>,
}

impl ScaledRows {
    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut big = Vec::with_capacity(rows.len() * cols);
        let mut scales = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != cols {
                return Err(TlnError::Dimension("ragged rows".into()));
            }
            let scale = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            for x in row {
                big.push(x.numer() * (&scale / x.denom()));
            }
            scales.push(scale);
        }
        let small = big.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>();
        Ok(Self { cols, small, big, scales })
    }

    pub fn row_count(&self) -> usize {
        self.scales.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn scale(&self, row: usize) -> &BigInt {
        &self.scales[row]
    }

    /// Integer determinant of the selected rows (in the given order).
    pub fn det_int(&self, idx: &[usize]) -> Result<BigInt> {
        self.check_square(idx)?;
        if let Some(v) = self.small_det(idx) {
            return Ok(BigInt::from(v));
        }
        let k = idx.len();
        let mut a = Vec::with_capacity(k * k);
        for &r in idx {
            a.extend_from_slice(&self.big[r * self.cols..(r + 1) * self.cols]);
        }
        Ok(bareiss_big(&mut a, k))
    }

    /// Exact determinant of the selected rows.
    pub fn det(&self, idx: &[usize]) -> Result<Rational> {
        let num = self.det_int(idx)?;
        let den = idx.iter().fold(BigInt::one(), |acc, &r| acc * &self.scales[r]);
        Ok(Rational::new(num, den))
    }

    /// Sign of the determinant of the selected rows; scales are positive so
    /// they never change it.
    pub fn sign(&self, idx: &[usize]) -> Result<Sign> {
        self.check_square(idx)?;
        if let Some(v) = self.small_det(idx) {
            return Ok(Sign::of_i128(v));
        }
        Ok(sign_of_int(&self.det_int(idx)?))
    }

    fn check_square(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.cols {
            return Err(TlnError::Dimension(format!(
                "selected {} rows from a matrix with {} columns",
                idx.len(),
                self.cols
            )));
        }
        if let Some(&bad) = idx.iter().find(|&&r| r >= self.row_count()) {
            return Err(TlnError::Index(format!("row {bad} out of range")));
        }
        Ok(())
    }

    fn small_det(&self, idx: &[usize]) -> Option<i128> {
        let small = self.small.as_ref()?;
        let k = idx.len();
        if k > SMALL_MAX {
            return None;
        }
        let mut buf = [0i128; SMALL_MAX * SMALL_MAX];
        for (i, &r) in idx.iter().enumerate() {
            for j in 0..k {
                buf[i * k + j] = small[r * self.cols + j] as i128;
            }
        }
        bareiss_i128(&mut buf[..k * k], k)
    }
}

pub fn sign_of_int(v: &BigInt) -> Sign {
    if v.is_positive() {
        Sign::Pos
    } else if v.is_negative() {
        Sign::Neg
    } else {
        Sign::Zero
    }
}

/// Bareiss elimination on a row-major `k×k` integer buffer. `None` on overflow.
pub(crate) fn bareiss_i128(a: &mut [i128], k: usize) -> Option<i128> {
    if k == 0 {
        return Some(1);
    }
    let mut negate = false;
    let mut prev: i128 = 1;
    for p in 0..k - 1 {
        if a[p * k + p] == 0 {
            let Some(r) = (p + 1..k).find(|&r| a[r * k + p] != 0) else {
                return Some(0);
            };
            for j in 0..k {
                a.swap(p * k + j, r * k + j);
            }
            negate = !negate;
        }
        let pivot = a[p * k + p];
        for i in p + 1..k {
            let lead = a[i * k + p];
            for j in p + 1..k {
                let num = a[i * k + j]
                    .checked_mul(pivot)?
                    .checked_sub(lead.checked_mul(a[p * k + j])?)?;
                debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
                a[i * k + j] = num / prev;
            }
        }
        prev = pivot;
    }
    let d = a[k * k - 1];
    Some(if negate { -d } else { d })
}

pub(crate) fn bareiss_big(a: &mut [BigInt], k: usize) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for p in 0..k - 1 {
        if a[p * k + p].is_zero() {
            let Some(r) = (p + 1..k).find(|&r| !a[r * k + p].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..k {
                a.swap(p * k + j, r * k + j);
            }
            negate = !negate;
        }
        let pivot = a[p * k + p].clone();
        for i in p + 1..k {
            let lead = a[i * k + p].clone();
            for j in p + 1..k {
                let num = &a[i * k + j] * &pivot - &lead * &a[p * k + j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i * k + j] = q;
            }
        }
        prev = pivot;
    }
    let d = a[k * k - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Determinant of an integer matrix given as rows, by Bareiss elimination.
pub fn det_integer(rows: &[Vec<BigInt>]) -> Result<BigInt> {
    let k = rows.len();
    if rows.iter().any(|r| r.len() != k) {
        return Err(TlnError::Dimension("determinant of a non-square matrix".into()));
    }
    let mut a: Vec<BigInt> = rows.iter().flatten().cloned().collect();
    if k <= SMALL_MAX {
        if let Some(small) = a.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<Vec<_>>>() {
            let mut buf = small;
            if let Some(v) = bareiss_i128(&mut buf, k) {
                return Ok(BigInt::from(v));
            }
        }
    }
    Ok(bareiss_big(&mut a, k))
}

/// Exact determinant of a square rational matrix.
pub fn det(m: &Matrix) -> Result<Rational> {
    if m.rows() != m.cols() {
        return Err(TlnError::Dimension(format!(
            "determinant of a {}×{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let k = m.rows();
    if k == 0 {
        return Ok(Rational::one());
    }
    let scaled = ScaledRows::from_rows(&m.to_rows())?;
    let idx: Vec<usize> = (0..k).collect();
    scaled.det(&idx)
}

pub fn sign_det(m: &Matrix) -> Result<Sign> {
    Ok(Sign::of(&det(m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Cofactor expansion along the first row: the slow reference.
    fn cofactor(m: &[Vec<Rational>]) -> Rational {
        let k = m.len();
        if k == 0 {
            return int(1);
        }
        let mut acc = int(0);
        for c in 0..k {
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][c] * cofactor(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn random_matrix(rng: &mut ChaCha8Rng, k: usize) -> Vec<Vec<Rational>> {
        (0..k)
            .map(|_| (0..k).map(|_| ratio(rng.gen_range(-60..=60), rng.gen_range(1..=40))).collect())
            .collect()
    }

    #[test]
    fn identity_has_unit_determinant() {
        for k in 0..6 {
            assert_eq!(det(&Matrix::identity(k)).unwrap(), int(1));
        }
    }

    #[test]
    fn small_worked_matrix() {
        // rows e1, h2, h3, e∞ of a three-neuron network
        let m = Matrix::from_rows(vec![
            vec![int(1), int(0), int(0), int(0)],
            vec![ratio(-97, 100), int(-1), ratio(-147, 100), ratio(2, 5)],
            vec![ratio(-6, 100), ratio(-59, 100), int(-1), ratio(9, 100)],
            vec![int(0), int(0), int(0), int(1)],
        ])
        .unwrap();
        let d = det(&m).unwrap();
        assert_eq!(d, int(1) - ratio(147, 100) * ratio(59, 100));
    }

    #[test]
    fn repeated_row_is_singular() {
        let row = vec![ratio(1, 3), int(-2), ratio(5, 7)];
        let m = Matrix::from_rows(vec![row.clone(), vec![int(4), int(0), int(1)], row]).unwrap();
        assert_eq!(sign_det(&m).unwrap(), Sign::Zero);
    }

    #[test]
    fn rejects_non_square() {
        let m = Matrix::from_rows(vec![vec![int(1), int(2)]]).unwrap();
        assert!(matches!(det(&m), Err(TlnError::Dimension(_))));
    }

    #[test]
    fn agrees_with_cofactor_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in 1..=5 {
            for _ in 0..20 {
                let rows = random_matrix(&mut rng, k);
                let m = Matrix::from_rows(rows.clone()).unwrap();
                assert_eq!(det(&m).unwrap(), cofactor(&rows));
            }
        }
    }

    #[test]
    fn swapping_rows_negates() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let k = rng.gen_range(2..=6);
            let mut rows = random_matrix(&mut rng, k);
            let before = det(&Matrix::from_rows(rows.clone()).unwrap()).unwrap();
            let a = rng.gen_range(0..k);
            let b = (a + rng.gen_range(1..k)) % k;
            rows.swap(a, b);
            let after = det(&Matrix::from_rows(rows).unwrap()).unwrap();
            assert_eq!(after, -before);
        }
    }

    #[test]
    fn big_path_matches_small_path() {
        let huge = BigInt::from(i64::MAX) * BigInt::from(1_000_003);
        let rows = vec![
            vec![huge.clone(), BigInt::from(3)],
            vec![BigInt::from(5), huge.clone()],
        ];
        assert_eq!(det_integer(&rows).unwrap(), &huge * &huge - BigInt::from(15));
        let small = vec![
            vec![BigInt::from(2), BigInt::from(-1), BigInt::from(0)],
            vec![BigInt::from(-1), BigInt::from(2), BigInt::from(-1)],
            vec![BigInt::from(0), BigInt::from(-1), BigInt::from(2)],
        ];
        assert_eq!(det_integer(&small).unwrap(), BigInt::from(4));
        let mut buf: Vec<BigInt> = small.into_iter().flatten().collect();
        assert_eq!(bareiss_big(&mut buf, 3), BigInt::from(4));
    }

    #[test]
    fn scaled_rows_select_in_order() {
        let rows = vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![ratio(1, 2), ratio(1, 3)],
        ];
        let s = ScaledRows::from_rows(&rows).unwrap();
        assert_eq!(s.det(&[0, 1]).unwrap(), int(1));
        assert_eq!(s.det(&[1, 0]).unwrap(), int(-1));
        assert_eq!(s.det(&[0, 2]).unwrap(), ratio(1, 3));
        assert_eq!(s.sign(&[2, 0]).unwrap(), Sign::Neg);
        assert!(s.det(&[0]).is_err());
        assert!(s.det(&[0, 5]).is_err());
    }
}
