use num::{BigInt, One, Signed, Zero};
use proptest::prelude::*;

use crate::chirotope::{cocircuit, s_determinant, Basis, Chirotope, GroundSet, SIndex, SignMap};
use crate::exact::{det, det_integer, int, ratio, sort_with_parity, Matrix, Rational, Sign};
use crate::fixed_points::{fixed_point_detail, fp_chirotope, fp_oracle, Status, Support};
use crate::mutations::{gp_check, is_mutation, is_mutation_by_flip, separation_profile};
use crate::network::{from_json, to_json, Network};
use crate::sampling::is_generic;

/// Competitive networks on the sampling grid: `W_ij = -k/1000`, `b_i = k/1000`.
fn network(n: usize) -> impl Strategy<Value = Network> {
    (prop::collection::vec(1i64..3000, n * n), prop::collection::vec(1i64..1000, n)).prop_map(move |(wk, bk)| {
        let w = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::zero() } else { ratio(-wk[i * n + j], 1000) }).collect())
            .collect();
        Network::new(w, bk.iter().map(|&k| ratio(k, 1000)).collect()).unwrap()
    })
}

fn any_network() -> impl Strategy<Value = Network> {
    (2usize..=4).prop_flat_map(network)
}

fn rational_matrix(k: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec((-20i64..=20, 1i64..=7), k), k)
        .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().map(|(p, q)| ratio(p, q)).collect()).collect())
}

fn cofactor(m: &[Vec<Rational>]) -> Rational {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut total = Rational::zero();
    for c in 0..m.len() {
        let minor: Vec<Vec<Rational>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][c] * cofactor(&minor);
        total = if c % 2 == 0 { total + term } else { total - term };
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_matches_cofactor_expansion(m in (1usize..=5).prop_flat_map(rational_matrix)) {
        let d = det(&Matrix::from_rows(m.clone()).unwrap()).unwrap();
        prop_assert_eq!(d, cofactor(&m));
    }

    #[test]
    fn det_is_alternating(m in rational_matrix(4), a in 0usize..4, b in 0usize..4) {
        prop_assume!(a != b);
        let d = det(&Matrix::from_rows(m.clone()).unwrap()).unwrap();
        let mut swapped = m.clone();
        swapped.swap(a, b);
        prop_assert_eq!(det(&Matrix::from_rows(swapped).unwrap()).unwrap(), -d);
        let mut repeated = m;
        repeated[a] = repeated[b].clone();
        prop_assert!(det(&Matrix::from_rows(repeated).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn integer_det_agrees(rows in prop::collection::vec(prop::collection::vec(-50i64..=50, 4), 4)) {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let rat: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        prop_assert_eq!(Rational::from_integer(det_integer(&big).unwrap()), cofactor(&rat));
    }

    #[test]
    fn delta_is_antisymmetric(net in network(3)) {
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            prop_assert_eq!(net.delta(i, j, k).unwrap(), -net.delta(j, i, k).unwrap());
        }
    }

    #[test]
    fn common_input_scale_keeps_graph(net in any_network(), c in 1i64..50) {
        let scaled = Network::new(
            net.weights().to_vec(),
            net.inputs().iter().map(|b| b * ratio(c, 7)).collect(),
        ).unwrap();
        prop_assert_eq!(net.graph().ok(), scaled.graph().ok());
    }

    #[test]
    fn uniform_input_edges(net in any_network(), theta in 1i64..1000) {
        let n = net.n();
        let uni = Network::new(net.weights().to_vec(), vec![ratio(theta, 1000); n]).unwrap();
        if let Ok(g) = uni.graph() {
            for i in 0..n {
                for j in (0..n).filter(|&j| j != i) {
                    prop_assert_eq!(g.has_edge(i, j), *net.w(j, i) > -Rational::one());
                }
            }
        }
    }

    #[test]
    fn json_round_trip(net in any_network()) {
        prop_assert_eq!(from_json(&to_json(&net)).unwrap(), net);
    }

    #[test]
    fn chirotope_is_alternating(net in any_network(), seed in any::<u64>()) {
        let n = net.n();
        let ground = GroundSet::new(&net);
        let chi = Chirotope::of(&net);
        // a deterministic shuffle of n+1 distinct ground indices
        let mut pool: Vec<usize> = (0..=2 * n).collect();
        let mut s = seed;
        for i in (1..pool.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            pool.swap(i, (s >> 33) as usize % (i + 1));
        }
        pool.truncate(n + 1);
        prop_assert_eq!(chi.chi(&pool), Sign::of(&ground.det(&pool).unwrap()));
        let mut sorted = pool.clone();
        let parity = sort_with_parity(&mut sorted);
        prop_assert_eq!(chi.chi(&pool), parity * chi.base_sign(Basis::from_indices(&sorted)));
    }

    #[test]
    fn s_determinant_antisymmetry(net in any_network()) {
        for sigma in Support::all(net.n()) {
            for i in sigma.indices() {
                let a = s_determinant(&net, sigma, SIndex::Neuron(i)).unwrap().value;
                let b = s_determinant(&net, sigma.without(i), SIndex::Neuron(i)).unwrap().value;
                prop_assert_eq!(a, -b);
            }
        }
    }

    #[test]
    fn cocircuit_zero_pattern(net in any_network()) {
        let chi = Chirotope::of(&net);
        for sigma in Support::all(net.n()) {
            let Ok(c) = cocircuit(&chi, sigma) else { continue };
            for i in 0..net.n() {
                if sigma.contains(i) {
                    prop_assert_eq!(c.h(i), Sign::Zero);
                } else {
                    prop_assert_eq!(c.e(i), Sign::Zero);
                }
            }
        }
    }

    #[test]
    fn fp_routes_agree(net in any_network()) {
        prop_assume!(is_generic(&net));
        let fp = fp_chirotope(&Chirotope::of(&net)).unwrap();
        prop_assert_eq!(&fp, &fp_oracle(&net).unwrap());
        let sinks = net.graph().unwrap().sinks();
        for i in 0..net.n() {
            prop_assert_eq!(fp.contains(Support::from_indices(&[i])), sinks.contains(&i));
        }
    }

    #[test]
    fn admissible_points_solve_the_restricted_system(net in any_network()) {
        prop_assume!(is_generic(&net));
        for sigma in Support::all(net.n()).into_iter().filter(|s| !s.is_empty()) {
            let fp = fixed_point_detail(&net, sigma).unwrap();
            if fp.status != Status::Admissible {
                continue;
            }
            for i in sigma.indices() {
                let drive = (0..net.n()).fold(net.b(i).clone(), |acc, j| acc + net.w(i, j) * &fp.coordinates[j]);
                prop_assert_eq!(&drive, &fp.coordinates[i]);
                prop_assert!(fp.coordinates[i].is_positive());
            }
        }
    }

    #[test]
    fn grassmann_plucker_vanish(net in network(3)) {
        let r = gp_check(&net);
        prop_assert_eq!(r.relations, 105);
        prop_assert!(r.nonzero.is_empty());
    }

    #[test]
    fn rank_one_test_matches_flip_test(net in network(3)) {
        let chi = Chirotope::of(&net);
        prop_assume!(chi.is_simplicial());
        for b in chi.bases() {
            prop_assert_eq!(is_mutation(&chi, b).unwrap(), is_mutation_by_flip(&chi, b));
        }
    }

    #[test]
    fn separation_pins_delta(net in network(3)) {
        prop_assume!(net.graph().is_ok());
        let profile = separation_profile(&net).unwrap();
        prop_assert!(profile.violations().is_empty());
    }
}
