//! Fixed-point supports, by the chirotope sign test and by direct region solves.

mod support;

pub use support::{Support, SupportFamily};

use std::fmt;

use num::{One, Signed, Zero};

use crate::chirotope::{s_sign, LazyChirotope, SIndex, SignMap};
use crate::error::{Result, TlnError};
use crate::exact::{det, format_exact, to_f64, Matrix, Rational, Sign};
use crate::network::Network;

fn s_signs(chi: &(impl SignMap + ?Sized), sigma: Support) -> Result<Vec<Sign>> {
    let n = chi.n();
    (0..n)
        .map(|i| {
            let s = s_sign(chi, sigma, SIndex::Neuron(i));
            if s.is_zero() {
                Err(TlnError::Degenerate(format!("s^{sigma}_{} = 0", i + 1)))
            } else {
                Ok(s)
            }
        })
        .collect()
}

/// Whether `σ` supports a fixed point: `s^σ_i · s^σ_j < 0` for `i ∈ σ`, `j ∉ σ`,
/// and for the full set all `s^σ_i` agree.
pub fn supports_fixed_point(chi: &(impl SignMap + ?Sized), sigma: Support) -> Result<bool> {
    let s = s_signs(chi, sigma)?;
    let inside: Vec<Sign> = sigma.indices().map(|i| s[i]).collect();
    let Some(&first) = inside.first() else {
        return Ok(false);
    };
    if inside.iter().any(|&x| x != first) {
        return Ok(false);
    }
    Ok((0..chi.n()).filter(|&j| !sigma.contains(j)).all(|j| s[j] == -first))
}

/// `FP(W,b)` from the chirotope of a competitive network. The empty set is never listed.
pub fn fp_chirotope(chi: &(impl SignMap + ?Sized)) -> Result<SupportFamily> {
    let mut fam = SupportFamily::new();
    for sigma in Support::all(chi.n()).into_iter().filter(|s| !s.is_empty()) {
        if supports_fixed_point(chi, sigma)? {
            fam.insert(sigma);
        }
    }
    Ok(fam)
}

/// The general sign test with `s^σ_∞`: `s^σ_i s^σ_∞ = +` on `σ`, `s^σ_j s^σ_∞ = −` off it.
pub fn fp_with_infinity(chi: &(impl SignMap + ?Sized)) -> Result<SupportFamily> {
    let n = chi.n();
    let mut fam = SupportFamily::new();
    for sigma in Support::all(n).into_iter().filter(|s| !s.is_empty()) {
        let inf = s_sign(chi, sigma, SIndex::Inf);
        if inf.is_zero() {
            return Err(TlnError::NoUniqueVertex(sigma.to_string()));
        }
        let s = s_signs(chi, sigma)?;
        if (0..n).all(|i| s[i] * inf == if sigma.contains(i) { Sign::Pos } else { Sign::Neg }) {
            fam.insert(sigma);
        }
    }
    Ok(fam)
}

/// `FP(W,b)` via the chirotope, evaluating only the bases the test touches.
pub fn fixed_point_supports(net: &Network) -> Result<SupportFamily> {
    net.require_competitive()?;
    fp_chirotope(&LazyChirotope::new(net))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Admissible,
    Virtual,
}

/// A boundary condition of the region `L^σ` that `x^σ` fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// `x_i ≤ 0` for some `i ∈ σ`.
    Coordinate { i: usize, value: Rational },
    /// `l*_j(x) = Σ W_jk x_k + b_j ≥ 0` for some `j ∉ σ`.
    Drive { j: usize, value: Rational },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Coordinate { i, value } => write!(f, "x_{} = {} ≤ 0", i + 1, format_exact(value)),
            Failure::Drive { j, value } => write!(f, "l*_{}(x) = {} ≥ 0", j + 1, format_exact(value)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub support: Support,
    pub coordinates: Vec<Rational>,
    pub status: Status,
    pub failures: Vec<Failure>,
}

impl FixedPoint {
    pub fn coordinates_f64(&self) -> Vec<f64> {
        self.coordinates.iter().map(to_f64).collect()
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exact: Vec<String> = self.coordinates.iter().map(format_exact).collect();
        let approx: Vec<String> = self.coordinates.iter().map(|x| format!("{:.6}", to_f64(x))).collect();
        let status = match self.status {
            Status::Admissible => "admissible",
            Status::Virtual => "virtual",
        };
        write!(f, "{}  {status}  x = ({}) ≈ ({})", self.support, exact.join(", "), approx.join(", "))?;
        for fail in &self.failures {
            write!(f, "; {fail}")?;
        }
        Ok(())
    }
}

/// Exact solution of the square system `a x = rhs` by Cramer's rule.
fn cramer(a: &Matrix, rhs: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let d = det(a)?;
    if d.is_zero() {
        return Ok(None);
    }
    let k = a.rows();
    (0..k)
        .map(|c| {
            let mut m = a.clone();
            for (r, v) in rhs.iter().enumerate() {
                m.set(r, c, v.clone());
            }
            Ok(det(&m)? / &d)
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// The equilibrium `x^σ` of the linear system on `L^σ` and whether it lies in `L^σ`.
pub fn fixed_point_detail(net: &Network, sigma: Support) -> Result<FixedPoint> {
    let n = net.n();
    if !sigma.is_subset(Support::full(n)) {
        return Err(TlnError::Index(format!("support {sigma} outside {n} neurons")));
    }
    let idx: Vec<usize> = sigma.indices().collect();
    let k = idx.len();
    let mut a = Matrix::zeros(k, k);
    for (r, &i) in idx.iter().enumerate() {
        for (c, &j) in idx.iter().enumerate() {
            let delta = if i == j { Rational::one() } else { Rational::zero() };
            a.set(r, c, delta - net.w(i, j));
        }
    }
    let rhs: Vec<Rational> = idx.iter().map(|&i| net.b(i).clone()).collect();
    let sol = cramer(&a, &rhs)?
        .ok_or_else(|| TlnError::Degenerate(format!("restricted system for {sigma} is singular")))?;
    let mut x = vec![Rational::zero(); n];
    for (r, &i) in idx.iter().enumerate() {
        x[i] = sol[r].clone();
    }
    let mut failures = Vec::new();
    for &i in &idx {
        if !x[i].is_positive() {
            failures.push(Failure::Coordinate { i, value: x[i].clone() });
        }
    }
    for j in (0..n).filter(|&j| !sigma.contains(j)) {
        let drive = (0..n).fold(net.b(j).clone(), |acc, m| acc + net.w(j, m) * &x[m]);
        if !drive.is_negative() {
            failures.push(Failure::Drive { j, value: drive });
        }
    }
    let status = if failures.is_empty() { Status::Admissible } else { Status::Virtual };
    Ok(FixedPoint { support: sigma, coordinates: x, status, failures })
}

/// `FP(W,b)` by solving every region's linear system; independent of the chirotope.
pub fn fp_oracle(net: &Network) -> Result<SupportFamily> {
    net.require_competitive()?;
    let mut fam = SupportFamily::new();
    for sigma in Support::all(net.n()).into_iter().filter(|s| !s.is_empty()) {
        let fp = fixed_point_detail(net, sigma)?;
        if let Some(fail) = fp.failures.iter().find(|f| match f {
            Failure::Coordinate { value, .. } | Failure::Drive { value, .. } => value.is_zero(),
        }) {
            return Err(TlnError::Degenerate(format!("x^{sigma} lies on a region wall: {fail}")));
        }
        if fp.status == Status::Admissible {
            fam.insert(sigma);
        }
    }
    Ok(fam)
}

/// Neurons that are sinks of the network's graph; these are exactly the singleton supports.
pub fn singleton_rule(net: &Network) -> Result<Support> {
    net.require_competitive()?;
    Ok(Support::from_indices(&net.graph()?.sinks()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chirotope::Chirotope;
    use crate::exact::{int, ratio};
    use crate::network::fixtures::{chain3, clique3, net4};
    use crate::network::Param;
    use crate::sampling::{is_generic, random_network};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fam(s: &str) -> SupportFamily {
        SupportFamily::parse(s).unwrap()
    }

    #[test]
    fn worked_families() {
        assert_eq!(fixed_point_supports(&chain3()).unwrap(), fam("12,23,123"));
        assert_eq!(fixed_point_supports(&clique3()).unwrap(), fam("123"));
        assert_eq!(fixed_point_supports(&net4()).unwrap(), fam("14,124,1234"));
        assert_eq!(fp_oracle(&chain3()).unwrap(), fam("12,23,123"));
        assert_eq!(fp_with_infinity(&Chirotope::of(&chain3())).unwrap(), fam("12,23,123"));
    }

    #[test]
    fn symmetric_network() {
        let net = Network::uniform(3, ratio(-1, 2), int(1)).unwrap();
        assert_eq!(fp_oracle(&net).unwrap(), fam("123"));
        let fp = fixed_point_detail(&net, Support::full(3)).unwrap();
        assert_eq!(fp.coordinates, vec![ratio(1, 2); 3]);
        let single = Network::new(vec![vec![int(0)]], vec![int(1)]).unwrap();
        assert_eq!(fp_oracle(&single).unwrap(), fam("1"));
        assert_eq!(fixed_point_detail(&single, Support::full(1)).unwrap().coordinates, vec![int(1)]);
    }

    #[test]
    fn virtual_points_name_the_failing_wall() {
        let net = chain3();
        let x3 = fixed_point_detail(&net, "3".parse().unwrap()).unwrap();
        assert_eq!(x3.status, Status::Virtual);
        assert_eq!(x3.coordinates[2], ratio(62, 100));
        assert!(x3.failures.contains(&Failure::Drive { j: 1, value: ratio(466, 10_000) }));
        assert_eq!(fixed_point_detail(&net, "23".parse().unwrap()).unwrap().status, Status::Admissible);
        let origin = fixed_point_detail(&net, Support::EMPTY).unwrap();
        assert_eq!(origin.status, Status::Virtual);
        assert_eq!(origin.failures.len(), 3);
    }

    #[test]
    fn sinks_and_singletons() {
        let moved = chain3().with_param(Param::W(1, 2), ratio(-8, 10)).unwrap();
        assert_eq!(singleton_rule(&moved).unwrap().to_string(), "3");
        assert_eq!(fixed_point_supports(&moved).unwrap(), fam("3,12,123"));
        let clique = Network::uniform(3, ratio(-1, 2), int(1)).unwrap();
        assert!(singleton_rule(&clique).unwrap().is_empty());
        let empty = Network::uniform(3, int(-2), int(1)).unwrap();
        assert_eq!(singleton_rule(&empty).unwrap(), Support::full(3));
        let f = fp_oracle(&empty).unwrap();
        assert!(["1", "2", "3"].iter().all(|s| f.contains(s.parse().unwrap())));
    }

    #[test]
    fn non_competitive_is_rejected() {
        let net = chain3().with_param(Param::B(0), int(-1)).unwrap();
        assert!(matches!(fp_oracle(&net), Err(TlnError::NotCompetitive(_))));
    }

    #[test]
    fn chirotope_agrees_with_oracle_small_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 1..=4 {
            for _ in 0..40 {
                let net = random_network(&mut rng, n);
                if !is_generic(&net) {
                    continue;
                }
                let chi = Chirotope::of(&net);
                let a = fp_chirotope(&chi).unwrap();
                assert_eq!(a, fp_oracle(&net).unwrap());
                assert_eq!(a, fp_with_infinity(&chi).unwrap());
                assert_eq!(Support::from_indices(&a.singletons()), singleton_rule(&net).unwrap());
            }
        }
    }
}
