//! Floating-point simulation of `ẋ = −x + [Wx + b]_+` and linear stability of
//! admissible fixed points.

use nalgebra::DMatrix;

use crate::error::{Result, TlnError};
use crate::fixed_points::{fixed_point_detail, Status, Support};
use crate::network::Network;

pub const DEFAULT_DT: f64 = 1e-3;
pub const STABILITY_BAND: f64 = 1e-9;

/// The vector field in binary64, built once from a network.
#[derive(Clone, Debug)]
pub struct Field {
    w: Vec<Vec<f64>>,
    b: Vec<f64>,
}

impl Field {
    pub fn new(net: &Network) -> Self {
        Self { w: net.w_f64(), b: net.b_f64() }
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn eval(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let drive: f64 = self.w[i].iter().zip(x).map(|(w, x)| w * x).sum::<f64>() + self.b[i];
            *o = -x[i] + drive.max(0.0);
        }
    }
}

/// Max-norm of `ẋ` at `x`.
pub fn residual(net: &Network, x: &[f64]) -> f64 {
    let f = Field::new(net);
    let mut dx = vec![0.0; f.n()];
    f.eval(x, &mut dx);
    dx.iter().fold(0.0, |m, v| m.max(v.abs()))
}

#[derive(Clone, Debug, Default)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn last(&self) -> &[f64] {
        self.states.last().map_or(&[], Vec::as_slice)
    }
}

/// Fixed-step classical RK4 from `x0` to `t_end`; the final step is shortened to land on `t_end`.
pub fn integrate(net: &Network, x0: &[f64], t_end: f64, dt: f64) -> Result<Trajectory> {
    let n = net.n();
    if x0.len() != n {
        return Err(TlnError::Dimension(format!("x0 has {} entries, network has {n}", x0.len())));
    }
    if !(dt > 0.0 && dt.is_finite()) || !(t_end > 0.0 && t_end.is_finite()) {
        return Err(TlnError::Parse(format!("need dt > 0 and t > 0, got dt = {dt}, t = {t_end}")));
    }
    let field = Field::new(net);
    let steps = (t_end / dt - 1e-9).ceil().max(1.0) as usize;
    let mut traj = Trajectory { times: Vec::with_capacity(steps + 1), states: Vec::with_capacity(steps + 1) };
    let mut x = x0.to_vec();
    let mut t = 0.0;
    traj.times.push(t);
    traj.states.push(x.clone());
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) =
        (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    for step in 1..=steps {
        let h = if step == steps { t_end - t } else { dt };
        field.eval(&x, &mut k1);
        for i in 0..n {
            tmp[i] = x[i] + 0.5 * h * k1[i];
        }
        field.eval(&tmp, &mut k2);
        for i in 0..n {
            tmp[i] = x[i] + 0.5 * h * k2[i];
        }
        field.eval(&tmp, &mut k3);
        for i in 0..n {
            tmp[i] = x[i] + h * k3[i];
        }
        field.eval(&tmp, &mut k4);
        for i in 0..n {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t = if step == steps { t_end } else { step as f64 * dt };
        if x.iter().any(|v| !v.is_finite()) {
            return Err(TlnError::Divergence(t));
        }
        traj.times.push(t);
        traj.states.push(x.clone());
    }
    Ok(traj)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable,
    /// Largest real part within the tolerance band of zero.
    Marginal,
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub support: Support,
    /// `(re, im)` pairs.
    pub eigenvalues: Vec<(f64, f64)>,
    pub max_real: f64,
    pub class: Stability,
}

/// Eigenvalues of `−I + D_σ W`, the Jacobian of the linear system on `L^σ`.
pub fn stability(net: &Network, sigma: Support) -> Result<StabilityReport> {
    let fp = fixed_point_detail(net, sigma)?;
    if fp.status != Status::Admissible {
        return Err(TlnError::Unsupported(format!("x^{sigma} is virtual; stability needs an admissible point")));
    }
    let n = net.n();
    let w = net.w_f64();
    let jac = DMatrix::from_fn(n, n, |i, j| {
        let diag = if i == j { -1.0 } else { 0.0 };
        diag + if sigma.contains(i) { w[i][j] } else { 0.0 }
    });
    let eigenvalues: Vec<(f64, f64)> = jac.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect();
    let max_real = eigenvalues.iter().map(|e| e.0).fold(f64::NEG_INFINITY, f64::max);
    let class = if max_real > STABILITY_BAND {
        Stability::Unstable
    } else if max_real < -STABILITY_BAND {
        Stability::Stable
    } else {
        Stability::Marginal
    };
    Ok(StabilityReport { support: sigma, eigenvalues, max_real, class })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::network::fixtures::chain3;

    fn scalar() -> Network {
        Network::new(vec![vec![int(0)]], vec![int(1)]).unwrap()
    }

    #[test]
    fn scalar_relaxes_to_input() {
        let traj = integrate(&scalar(), &[0.0], 50.0, DEFAULT_DT).unwrap();
        assert!((traj.last()[0] - 1.0).abs() < 1e-9);
        assert_eq!(*traj.times.last().unwrap(), 50.0);
        let rep = stability(&scalar(), Support::full(1)).unwrap();
        assert_eq!(rep.class, Stability::Stable);
        assert!((rep.max_real + 1.0).abs() < 1e-12);
    }

    #[test]
    fn origin_moves_along_input() {
        let net = chain3();
        assert_eq!(residual(&net, &[0.0; 3]), 0.62);
        let f = Field::new(&net);
        let mut dx = [0.0; 3];
        f.eval(&[0.0; 3], &mut dx);
        assert_eq!(dx, [0.49, 0.40, 0.62]);
    }

    #[test]
    fn singleton_supports_are_stable() {
        let net = crate::network::fixtures::chain3()
            .with_param(crate::network::Param::W(1, 2), crate::exact::ratio(-8, 10))
            .unwrap();
        let rep = stability(&net, "3".parse().unwrap()).unwrap();
        assert_eq!(rep.class, Stability::Stable);
        assert!(rep.eigenvalues.iter().all(|&(re, im)| (re + 1.0).abs() < 1e-12 && im == 0.0));
        assert!(stability(&chain3(), "3".parse().unwrap()).is_err());
    }

    #[test]
    fn rk4_is_fourth_order() {
        let net = chain3();
        let x0 = [0.3, 0.1, 0.2];
        let t = 2.0;
        let reference = integrate(&net, &x0, t, 0.1 / 8.0).unwrap();
        let err = |dt: f64| {
            let end = integrate(&net, &x0, t, dt).unwrap();
            end.last().iter().zip(reference.last()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        };
        let (coarse, fine) = (err(0.1), err(0.05));
        assert!(coarse / fine >= 8.0, "error ratio {}", coarse / fine);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(integrate(&scalar(), &[0.0, 1.0], 1.0, 0.1).is_err());
        assert!(integrate(&scalar(), &[0.0], 1.0, 0.0).is_err());
        assert!(integrate(&scalar(), &[0.0], -1.0, 0.1).is_err());
    }
}
