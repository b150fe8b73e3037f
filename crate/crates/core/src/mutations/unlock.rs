//! Single-parameter move plans that flip `s^{123}_i` without changing the graph.

use std::fmt;

use num::{One, Signed, Zero};

use super::pins::graph_allows_flip;
use crate::chirotope::{s_determinant, SIndex};
use crate::error::{Result, TlnError};
use crate::exact::{format_exact, ratio, Rational, Sign};
use crate::fixed_points::Support;
use crate::network::{Digraph, Network, Param};
use crate::sampling::is_generic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub param: Param,
    pub from: Rational,
    pub to: Rational,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = if self.to > self.from { "↑" } else { "↓" };
        write!(f, "{} {dir} {} → {}", self.param, format_exact(&self.from), format_exact(&self.to))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseKind {
    /// Flip `Δ^{ik}_j` so that the target line enters the slice.
    Prerequisite,
    Target,
}

#[derive(Clone, Debug)]
pub struct Phase {
    pub kind: PhaseKind,
    /// The quantity whose sign the phase flips, e.g. `Δ^{32}_1`.
    pub quantity: String,
    pub moves: Vec<Move>,
}

#[derive(Clone, Debug)]
pub struct UnlockPlan {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub phases: Vec<Phase>,
    pub end: Network,
}

impl fmt::Display for UnlockPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "target s^123_{} with (i,j,k) = ({},{},{})", self.i + 1, self.i + 1, self.j + 1, self.k + 1)?;
        for (t, p) in self.phases.iter().enumerate() {
            let kind = match p.kind {
                PhaseKind::Prerequisite => "prerequisite",
                PhaseKind::Target => "target",
            };
            writeln!(f, "phase {} ({kind}): flip {}", t + 1, p.quantity)?;
            for m in &p.moves {
                writeln!(f, "  {m}")?;
            }
        }
        Ok(())
    }
}

fn s123(net: &Network, i: usize) -> Result<Rational> {
    Ok(s_determinant(net, Support::full(3), SIndex::Neuron(i))?.value)
}

/// `sgn(s^{jk}_k · Δ^{ik}_j) < 0`: the line `s^{ijk}_i = 0` crosses the slice
/// quadrant of `(W_ik, W_jk)` that the graph allows.
pub fn slice_admits_flip(net: &Network, i: usize, j: usize, k: usize) -> Result<bool> {
    Ok(Sign::of(&net.s_pair(j, k)?) * Sign::of(&net.delta(i, k, j)?) == Sign::Neg)
}

/// A 2-parameter slice on which `f` is affine, with the point where the graph
/// walls through the slice meet.
struct Slice<'a> {
    p: [Param; 2],
    apex: [Rational; 2],
    /// Preferred direction of travel (up to sign).
    dir: [Rational; 2],
    f: &'a dyn Fn(&Network) -> Result<Rational>,
}

/// Nearest rational with denominator `den`.
fn snap(x: &Rational, den: i64) -> Rational {
    let d = Rational::from_integer(den.into());
    (x * &d).round() / d
}

fn set(net: &Network, p: [Param; 2], x: &[Rational; 2]) -> Result<Network> {
    net.with_param(p[0], x[0].clone())?.with_param(p[1], x[1].clone())
}

fn admissible(net: &Network, g: &Digraph) -> bool {
    net.is_competitive() && net.graph().ok().as_ref() == Some(g) && is_generic(net)
}

impl Slice<'_> {
    fn at(&self, net: &Network) -> [Rational; 2] {
        [net.param(self.p[0]).clone(), net.param(self.p[1]).clone()]
    }

    fn gradient(&self, net: &Network) -> Result<[Rational; 2]> {
        let f0 = (self.f)(net)?;
        let x = self.at(net);
        let mut g = [Rational::zero(), Rational::zero()];
        for c in 0..2 {
            let mut y = x.clone();
            y[c] += Rational::one();
            g[c] = (self.f)(&set(net, self.p, &y)?)? - &f0;
        }
        Ok(g)
    }

    /// Candidate end points, in order of preference.
    fn candidates(&self, net: &Network, want: Sign) -> Result<Vec<[Rational; 2]>> {
        let x = self.at(net);
        let g = self.gradient(net)?;
        let f0 = (self.f)(net)?;
        let mut out = Vec::new();
        let rate = &g[0] * &self.dir[0] + &g[1] * &self.dir[1];
        if !rate.is_zero() {
            // overshoot the crossing by a tenth
            let t = -&f0 / rate * ratio(11, 10);
            out.push([&x[0] + &t * &self.dir[0], &x[1] + &t * &self.dir[1]]);
        }
        // a point just inside the far boundary ray of the current quadrant
        let q = [Sign::of(&(&x[0] - &self.apex[0])), Sign::of(&(&x[1] - &self.apex[1]))];
        let unit = |s: Sign| if s == Sign::Neg { -Rational::one() } else { Rational::one() };
        let rays = [[unit(q[0]), Rational::zero()], [Rational::zero(), unit(q[1])]];
        let along = |u: &[Rational; 2]| Sign::of(&(&g[0] * &u[0] + &g[1] * &u[1]));
        for (far, near) in [(0, 1), (1, 0)] {
            if along(&rays[far]) != want {
                continue;
            }
            let mut eta = ratio(1, 10);
            for _ in 0..20 {
                let v = [&rays[far][0] + &eta * &rays[near][0], &rays[far][1] + &eta * &rays[near][1]];
                if along(&v) == want {
                    let rho = self.apex[0].abs().min(self.apex[1].abs()) / Rational::from_integer(2.into());
                    out.push([&self.apex[0] + &rho * &v[0], &self.apex[1] + &rho * &v[1]]);
                    break;
                }
                eta /= Rational::from_integer(2.into());
            }
        }
        Ok(out)
    }

    /// Moves the two parameters, one at a time, to a point where `f` has sign `want`.
    fn drive(&self, net: &Network, g: &Digraph, want: Sign) -> Result<(Vec<Move>, Network)> {
        let x = self.at(net);
        for p in self.candidates(net, want)? {
            let mut alpha = Rational::one();
            for _ in 0..40 {
                let y = [
                    &self.apex[0] + &alpha * (&p[0] - &self.apex[0]),
                    &self.apex[1] + &alpha * (&p[1] - &self.apex[1]),
                ];
                alpha /= Rational::from_integer(2.into());
                for den in [10_000, 1_000_000, 0] {
                    let y = if den == 0 {
                        y.clone()
                    } else {
                        [snap(&y[0], den), snap(&y[1], den)]
                    };
                    if let Some(plan) = self.try_moves(net, g, &x, &y, want)? {
                        return Ok(plan);
                    }
                }
            }
        }
        Err(TlnError::SearchExhausted(format!("no admissible point in the {}/{} slice", self.p[0], self.p[1])))
    }

    fn try_moves(
        &self,
        net: &Network,
        g: &Digraph,
        x: &[Rational; 2],
        y: &[Rational; 2],
        want: Sign,
    ) -> Result<Option<(Vec<Move>, Network)>> {
        for order in [[0, 1], [1, 0]] {
            let mut cur = net.clone();
            let mut moves = Vec::new();
            let mut ok = true;
            for &c in &order {
                if x[c] == y[c] {
                    continue;
                }
                cur = cur.with_param(self.p[c], y[c].clone())?;
                moves.push(Move { param: self.p[c], from: x[c].clone(), to: y[c].clone() });
                if !admissible(&cur, g) {
                    ok = false;
                    break;
                }
            }
            if ok && Sign::of(&(self.f)(&cur)?) == want {
                return Ok(Some((moves, cur)));
            }
        }
        Ok(None)
    }
}

fn sup(indices: &[usize]) -> String {
    let mut v: Vec<usize> = indices.iter().map(|i| i + 1).collect();
    v.sort();
    v.iter().map(ToString::to_string).collect()
}

/// Plan for flipping the sign of `s^{123}_i` by single-parameter moves on `W`
/// that keep the graph, first flipping `Δ^{ik}_j` if the slice of `(W_ik, W_jk)`
/// does not yet admit the flip.
pub fn unlock_path(net: &Network, i: usize) -> Result<UnlockPlan> {
    if net.n() != 3 {
        return Err(TlnError::Unsupported(format!("move plans are implemented for n = 3, got n = {}", net.n())));
    }
    if i >= 3 {
        return Err(TlnError::Index(format!("neuron {} out of range", i + 1)));
    }
    net.require_competitive()?;
    let g = net.graph()?;
    if !is_generic(net) {
        return Err(TlnError::Degenerate("start network lies on a wall".into()));
    }
    let mut others: Vec<usize> = (0..3).filter(|&m| m != i).collect();
    if !graph_allows_flip(&g, i, others[0], others[1]) {
        return Err(TlnError::Pinned(format!(
            "s^123_{} with graph {g}: nodes {} and {} {}",
            i + 1,
            others[0] + 1,
            others[1] + 1,
            if g.is_separating(others[0]) && g.is_separating(others[1]) {
                "both separate"
            } else {
                "are joined in one direction only"
            }
        )));
    }
    // k varies in the target slice and must be non-separating; prefer the
    // ascending assignment unless swapping saves the prerequisite phase
    let phases_for = |j: usize, k: usize| -> Result<Option<usize>> {
        if g.is_separating(k) {
            return Ok(None);
        }
        if slice_admits_flip(net, i, j, k)? {
            return Ok(Some(1));
        }
        Ok(if g.is_separating(j) { None } else { Some(2) })
    };
    let asc = phases_for(others[0], others[1])?;
    let swp = phases_for(others[1], others[0])?;
    match (asc, swp) {
        (Some(a), Some(s)) if s < a => others.swap(0, 1),
        (None, Some(_)) => others.swap(0, 1),
        (None, None) => {
            return Err(TlnError::Pinned(format!("s^123_{}: no non-separating slice node", i + 1)));
        }
        _ => {}
    }
    let (j, k) = (others[0], others[1]);
    let b = |m: usize| net.b(m).clone();
    let start_sign = Sign::of(&s123(net, i)?);
    let mut cur = net.clone();
    let mut phases = Vec::new();

    if !slice_admits_flip(&cur, i, j, k)? {
        let f = move |n: &Network| n.delta(i, k, j);
        let slice = Slice {
            p: [Param::W(i, j), Param::W(k, j)],
            apex: [-b(i) / b(j), -b(k) / b(j)],
            dir: [b(k), -b(i)],
            f: &f,
        };
        let want = -Sign::of(&cur.s_pair(j, k)?);
        let (moves, next) = slice.drive(&cur, &g, want)?;
        phases.push(Phase { kind: PhaseKind::Prerequisite, quantity: format!("Δ^{}{}_{}", i + 1, k + 1, j + 1), moves });
        cur = next;
    }
    if Sign::of(&s123(&cur, i)?) == start_sign {
        let f = move |n: &Network| s123(n, i);
        let slice = Slice {
            p: [Param::W(i, k), Param::W(j, k)],
            apex: [-b(i) / b(k), -b(j) / b(k)],
            dir: [b(j), -b(i)],
            f: &f,
        };
        let (moves, next) = slice.drive(&cur, &g, -start_sign)?;
        phases.push(Phase { kind: PhaseKind::Target, quantity: format!("s^{}_{}", sup(&[0, 1, 2]), i + 1), moves });
        cur = next;
    }
    Ok(UnlockPlan { i, j, k, phases, end: cur })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed_points::fixed_point_supports;
    use crate::network::fixtures::clique3;
    use crate::network::isomorphism_classes;
    use crate::sampling::random_network_with_graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn replay(net: &Network, plan: &UnlockPlan) -> Network {
        let g = net.graph().unwrap();
        let mut cur = net.clone();
        for m in plan.phases.iter().flat_map(|p| &p.moves) {
            assert_eq!(cur.param(m.param), &m.from);
            assert!(matches!(m.param, Param::W(_, _)));
            cur = cur.with_param(m.param, m.to.clone()).unwrap();
            assert_eq!(cur.graph().unwrap(), g);
            assert!(cur.is_competitive());
        }
        cur
    }

    #[test]
    fn worked_example_needs_two_phases() {
        let net = clique3();
        assert_eq!(net.delta(2, 1, 0).unwrap(), ratio(505, 10_000));
        assert!(!slice_admits_flip(&net, 2, 0, 1).unwrap());
        let plan = unlock_path(&net, 2).unwrap();
        assert_eq!((plan.j, plan.k), (0, 1));
        assert_eq!(plan.phases.len(), 2);
        assert_eq!(plan.phases[0].quantity, "Δ^32_1");
        let params: Vec<Param> = plan.phases[0].moves.iter().map(|m| m.param).collect();
        assert!(params.iter().all(|p| [Param::W(2, 0), Param::W(1, 0)].contains(p)));
        let end = replay(&net, &plan);
        assert_eq!(end, plan.end);
        assert_eq!(Sign::of(&s123(&end, 2).unwrap()), -Sign::of(&s123(&net, 2).unwrap()));
        assert_eq!(fixed_point_supports(&net).unwrap().to_string(), "{123}");
        assert_eq!(fixed_point_supports(&end).unwrap().to_string(), "{12}");
    }

    #[test]
    fn unlocked_start_gives_one_phase() {
        let net = clique3();
        let first = unlock_path(&net, 2).unwrap();
        let mid = replay(&net, &UnlockPlan { phases: first.phases[..1].to_vec(), ..first.clone() });
        let plan = unlock_path(&mid, 2).unwrap();
        assert_eq!(plan.phases.len(), 1);
        assert_eq!(plan.phases[0].kind, PhaseKind::Target);
    }

    #[test]
    fn both_separating_is_pinned() {
        let g = Digraph::parse("1>3,2>3", 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let net = random_network_with_graph(&mut rng, &g, 100).unwrap();
        assert!(matches!(unlock_path(&net, 2), Err(TlnError::Pinned(_))));
    }

    #[test]
    fn plans_follow_the_predicate() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for g in isomorphism_classes(3).unwrap() {
            for _ in 0..5 {
                let net = random_network_with_graph(&mut rng, &g, 100).unwrap();
                if !is_generic(&net) {
                    continue;
                }
                for i in 0..3 {
                    let o: Vec<usize> = (0..3).filter(|&m| m != i).collect();
                    match unlock_path(&net, i) {
                        Ok(plan) => {
                            assert!(graph_allows_flip(&g, i, o[0], o[1]));
                            let end = replay(&net, &plan);
                            assert_ne!(Sign::of(&s123(&end, i).unwrap()), Sign::of(&s123(&net, i).unwrap()));
                        }
                        Err(e) => {
                            assert!(matches!(e, TlnError::Pinned(_)), "{g} {i}: {e}");
                            assert!(!graph_allows_flip(&g, i, o[0], o[1]));
                        }
                    }
                }
            }
        }
    }
}
