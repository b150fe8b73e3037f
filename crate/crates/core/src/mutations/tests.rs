use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::chirotope::{s_determinant_in, s_tuple, Basis, Chirotope, Element, GroundSet, SIndex, SignMap};
use crate::exact::{Rational, Sign};
use crate::fixed_points::Support;
use crate::network::fixtures::{chain3, clique3};
use crate::network::{isomorphism_classes, Digraph, Network};
use crate::sampling::{random_network, random_network_with_graph};

fn s(g: &GroundSet, sigma: &[usize], idx: usize) -> Rational {
    s_determinant_in(g, Support::from_indices(sigma), SIndex::Neuron(idx)).unwrap().value
}

fn ix(el: Element) -> usize {
    el.index(3)
}

#[test]
fn relation_counts() {
    assert_eq!(relation_index(2).len(), 5);
    assert_eq!(relation_index(3).len(), 105);
    assert_eq!(relation_index(4).len(), 1260);
}

#[test]
fn worked_network_satisfies_every_relation() {
    let report = gp_check(&chain3());
    assert_eq!(report.relations, 105);
    assert!(report.max_residual.is_zero());
    assert_eq!(report.to_string(), "residual 0 over 105 relations");
}

#[test]
fn random_networks_satisfy_every_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for n in 2..=4 {
        for _ in 0..5 {
            let r = gp_check(&random_network(&mut rng, n));
            assert!(r.nonzero.is_empty(), "{}", r.nonzero[0].describe(n));
        }
    }
}

#[test]
fn worked_relation_terms() {
    // σ = (e2, h2), τ = (e1, e3, h1, h3)
    let net = chain3();
    let g = GroundSet::new(&net);
    let table = DetTable::new(&net);
    let rel = gp_relation(
        &table,
        &[ix(Element::E(1)), ix(Element::H(1))],
        [ix(Element::E(0)), ix(Element::E(2)), ix(Element::H(0)), ix(Element::H(2))],
    );
    assert!(rel.residual().is_zero());
    let d213 = net.delta(1, 0, 2).unwrap();
    let d321 = net.delta(2, 1, 0).unwrap();
    // the leading term carries s^{123}_2, not s^{123}_1
    assert_eq!(rel.terms[0], s(&g, &[1], 1) * s(&g, &[0, 1, 2], 1));
    assert_eq!(rel.terms[1], &d213 * &d321);
    assert_eq!(rel.terms[2], -(s(&g, &[1, 2], 1) * s(&g, &[0, 1], 1)));
    assert_ne!(rel.terms[0], s(&g, &[1], 1) * s(&g, &[0, 1, 2], 0));
}

#[test]
fn diagonal_slice_relation() {
    // s^i_i s^{ijk}_i + Δ^{ij}_k Δ^{ik}_j − s^{ik}_i s^{ij}_i = 0
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..50 {
        let net = random_network(&mut rng, 3);
        let g = GroundSet::new(&net);
        for (i, j, k) in triples() {
            let lhs = s(&g, &[i], i) * s(&g, &[0, 1, 2], i) + net.delta(i, j, k).unwrap() * net.delta(i, k, j).unwrap()
                - s(&g, &[i, k], i) * s(&g, &[i, j], i);
            assert!(lhs.is_zero());
        }
    }
}

#[test]
fn off_diagonal_slice_relation() {
    // s^k_k s^{ijk}_i − s^{ik}_i s^{jk}_k − s^{jk}_j Δ^{ik}_j = 0
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..50 {
        let net = random_network(&mut rng, 3);
        let g = GroundSet::new(&net);
        for (i, j, k) in triples() {
            let lhs = s(&g, &[k], k) * s(&g, &[0, 1, 2], i)
                - s(&g, &[i, k], i) * s(&g, &[j, k], k)
                - s(&g, &[j, k], j) * net.delta(i, k, j).unwrap();
            assert!(lhs.is_zero());
        }
    }
}

#[test]
fn repeated_tau_element_zeroes_every_term() {
    let table = DetTable::new(&chain3());
    let rel = gp_relation(&table, &[0, 1], [0, 3, 4, 5]);
    assert!(rel.terms.iter().all(Zero::is_zero));
}

#[test]
fn representative_matrix_shape_and_stability() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let chi = Chirotope::of(&random_network(&mut rng, 2));
    for b in chi.bases() {
        let t = rep_matrix(&chi, b).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert!(t.rows.iter().all(|r| r.len() == 2));
        assert_eq!(rep_matrix(&chi, b).unwrap(), t);
    }
}

#[test]
fn non_simplicial_is_rejected() {
    let wall = crate::network::fixtures::net(
        &[&["0", "-0.5", "-0.5"], &["-1", "0", "-0.5"], &["-0.5", "-0.5", "0"]],
        &["1", "1", "1"],
    );
    let chi = Chirotope::of(&wall);
    let b = chi.bases().into_iter().find(|&b| rep_matrix(&chi, b).is_err());
    assert!(b.is_some());
}

#[test]
fn worked_chirotope_mutations() {
    let chi = Chirotope::of(&chain3());
    let target = Basis::from_elements(&[Element::H(0), Element::H(1), Element::H(2), Element::E(0)], 3);
    assert_eq!(is_mutation(&chi, target).unwrap(), is_mutation_by_flip(&chi, target));
    assert!(is_mutation(&chi, target).unwrap());
    let muts = mutations(&chi).unwrap();
    assert!(muts.contains(&target));
    for b in chi.bases() {
        assert_eq!(muts.contains(&b), is_mutation_by_flip(&chi, b), "{}", b.name(3));
    }
    assert!(muts.len() < 35);
}

#[test]
fn rank_one_agrees_with_flip_test() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let mut checked = 0;
    while checked < 20 {
        let chi = Chirotope::of(&random_network(&mut rng, 3));
        if !chi.is_simplicial() {
            continue;
        }
        for b in chi.bases() {
            assert_eq!(is_mutation(&chi, b).unwrap(), is_mutation_by_flip(&chi, b));
        }
        checked += 1;
    }
}

fn pins_hold(net: &Network) {
    let chi = Chirotope::of(net);
    for p in pinned_bases(&net.graph().unwrap()).unwrap() {
        assert_eq!(chi.base_sign(p.basis), p.sign, "{} on {}", p.reason, net);
    }
}

#[test]
fn pins_hold_on_sampled_networks() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for g in isomorphism_classes(3).unwrap() {
        for _ in 0..40 {
            pins_hold(&random_network_with_graph(&mut rng, &g, 100).unwrap());
        }
    }
    pins_hold(&chain3());
    pins_hold(&clique3());
}

#[test]
fn pin_table_entries() {
    let g = Digraph::parse("3>1", 3).unwrap();
    let pins = pin_map(&g).unwrap();
    let signed = |t: &[usize]| {
        let mut sorted = t.to_vec();
        crate::exact::sort_with_parity(&mut sorted) * pins[&Basis::from_indices(&sorted)]
    };
    for i in 0..3 {
        assert_eq!(signed(&s_tuple(3, Support::from_indices(&[i]), SIndex::Neuron(i))), Sign::Neg);
    }
    // 3 separates 1 from 2: det(e1,e2,h1,h2) = Δ^{12}_3 > 0 (identity parity)
    assert_eq!(signed(&[ix(Element::E(0)), ix(Element::E(1)), ix(Element::H(0)), ix(Element::H(1))]), Sign::Pos);
    assert_eq!(pinned_bases(&g).unwrap().len(), 20);
    let clique = Digraph::parse("1>2,2>1,1>3,3>1,2>3,3>2", 3).unwrap();
    assert_eq!(pinned_bases(&clique).unwrap().len(), 19);
    assert!(pinned_bases(&Digraph::empty(4)).is_err());
}

#[test]
fn separation_pin_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for g in isomorphism_classes(3).unwrap() {
        for _ in 0..30 {
            let net = random_network_with_graph(&mut rng, &g, 100).unwrap();
            assert!(separation_profile(&net).unwrap().violations().is_empty());
        }
    }
}

#[test]
fn predicate_on_worked_graph() {
    let g = clique3().graph().unwrap();
    assert!(g.bidirected(0, 1));
    assert!(graph_allows_flip(&g, 2, 0, 1));
    // 1 and 2 both separate: 1→3, 1↛2 and 2→3, 2↛1
    let both = Digraph::parse("1>3,2>3", 3).unwrap();
    assert!(both.is_separating(0) && both.is_separating(1));
    assert!(!graph_allows_flip(&both, 2, 0, 1));
}

fn fam(s: &str) -> crate::fixed_points::SupportFamily {
    crate::fixed_points::SupportFamily::parse(s).unwrap()
}

fn explored(g: &str) -> MutationGraph {
    mutation_graph(&Digraph::parse(g, 3).unwrap(), &ExploreOptions::default()).unwrap()
}

#[test]
fn worked_graph_exploration() {
    let mg = explored("1>2,2>1,2>3,3>2");
    assert!(mg.is_connected());
    assert!(mg.unknown.is_empty());
    let regimes = mg.regimes();
    for r in ["{12,23,123}", "{12}", "{23}"] {
        assert!(regimes.contains(&fam(r)), "{r}");
    }
    // every node's witness realises it exactly
    for node in &mg.nodes {
        assert_eq!(Chirotope::of(&node.witness), node.chirotope);
        assert_eq!(node.witness.graph().unwrap(), mg.graph);
    }
    // the worked network's own chirotope is reached
    assert!(mg.index_of(&Chirotope::of(&chain3())).is_some());
}

#[test]
fn exploration_is_deterministic() {
    let a = explored("1>2,1>3");
    let b = explored("1>2,1>3");
    let sig = |m: &MutationGraph| m.nodes.iter().map(|n| n.chirotope.sign_string()).collect::<Vec<_>>();
    assert_eq!(sig(&a), sig(&b));
    assert_eq!(a.edges, b.edges);
}

#[test]
fn robust_motif_has_one_regime() {
    let mg = explored("1>2,2>3,3>1");
    let bg = bifurcation_graph(&mg);
    assert_eq!(bg.nodes.len(), 1);
    assert_eq!(bg.nodes[0].fp, fam("{123}"));
    assert!(bg.edges.is_empty());
}

#[test]
fn contraction_keeps_fp_sets_apart() {
    for g in isomorphism_classes(3).unwrap() {
        let mg = mutation_graph(&g, &ExploreOptions::default()).unwrap();
        assert!(mg.is_connected(), "{g}");
        let bg = bifurcation_graph(&mg);
        assert_eq!(bg.nodes.iter().map(|r| r.members.len()).sum::<usize>(), mg.nodes.len());
        for r in &bg.nodes {
            assert!(r.members.iter().all(|&v| mg.nodes[v].fp == r.fp));
        }
        for e in &bg.edges {
            assert_ne!(bg.nodes[e.a].fp, bg.nodes[e.b].fp);
            assert_ne!(e.change.kind(), BifurcationKind::Other, "{g}: {}", e.change);
        }
    }
}

#[test]
fn predicate_matches_explored_bifurcations() {
    for g in isomorphism_classes(3).unwrap() {
        let bg = bifurcation_graph(&mutation_graph(&g, &ExploreOptions::default()).unwrap());
        for (i, j, k) in triples().into_iter().filter(|&(_, j, k)| j < k) {
            let jk = Support::from_indices(&[j, k]);
            let seen = bg.edges.iter().any(|e| {
                let t = e.change.touched();
                t.len() == 2 && t.contains(Support::full(3)) && t.contains(jk)
            });
            assert_eq!(graph_allows_flip(&g, i, j, k), seen, "{g} i={}", i + 1);
        }
    }
}

#[test]
fn both_separating_fixes_the_sign() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for g in isomorphism_classes(3).unwrap() {
        for (i, j, k) in triples().into_iter().filter(|&(_, j, k)| j < k) {
            if !(g.is_separating(j) && g.is_separating(k)) {
                continue;
            }
            let signs: std::collections::BTreeSet<Sign> = (0..200)
                .map(|_| {
                    let net = random_network_with_graph(&mut rng, &g, 100).unwrap();
                    Sign::of(&s(&GroundSet::new(&net), &[0, 1, 2], i))
                })
                .filter(|s| !s.is_zero())
                .collect();
            assert_eq!(signs.len(), 1, "{g} i={}", i + 1);
        }
    }
}

#[test]
fn two_neuron_bifurcation_is_one_edge() {
    let before = crate::network::fixtures::net(&[&["0", "-2"], &["-2", "0"]], &["1", "1"]);
    let after = crate::network::fixtures::net(&[&["0", "-2"], &["-0.9", "0"]], &["1", "1"]);
    let mg = MutationGraph::from_networks(&[before, after]).unwrap();
    assert_eq!(mg.edges.len(), 1);
    let bg = bifurcation_graph(&mg);
    assert_eq!(bg.nodes.len(), 2);
    assert_eq!(bg.edges.len(), 1);
    assert_eq!(bg.nodes[0].fp, fam("{1,2,12}"));
    assert_eq!(bg.nodes[1].fp, fam("{2}"));
    assert_eq!(bg.edges[0].change.to_string(), "{1,12}→∅");
    assert_eq!(bg.edges[0].change.kind(), BifurcationKind::Fold);
}

#[test]
fn single_node_contracts_to_itself() {
    let mg = MutationGraph::from_networks(&[chain3()]).unwrap();
    let bg = bifurcation_graph(&mg);
    assert_eq!(bg.nodes.len(), 1);
    assert!(bg.edges.is_empty());
}

#[test]
fn support_change_kinds() {
    let ch = |a: &str, b: &str| SupportChange::between(&fam(a), &fam(b));
    assert_eq!(ch("{14,124,1234}", "{14}").kind(), BifurcationKind::Fold);
    assert_eq!(ch("{14}", "{134}").kind(), BifurcationKind::Persistent);
    assert_eq!(ch("{123}", "{12}").kind(), BifurcationKind::Persistent);
    assert_eq!(ch("{1}", "{23}").kind(), BifurcationKind::Other);
    assert_eq!(ch("{14}", "{134}").to_string(), "{14}→{134}");
}

#[test]
fn four_neuron_path_goes_through_the_fold() {
    use crate::exact::ratio;
    use crate::network::{Param, ParamPath};
    let net = crate::network::fixtures::net4();
    let path = ParamPath::new(net, Param::W(2, 0), ratio(-1, 100), 256).unwrap();
    let events: Vec<SweepEvent> = sweep(&path, &ratio(1, 10_000)).unwrap().into_iter().filter(|e| e.changes_fp()).collect();
    let fps: Vec<String> = events.iter().map(|e| e.before.to_string()).chain([events.last().unwrap().after.to_string()]).collect();
    assert_eq!(fps, ["{14,124,1234}", "{14}", "{134}"]);
    // the regime graph along the path has no direct {14,124,1234} – {134} edge
    let changes: Vec<SupportChange> = events.iter().map(|e| SupportChange::between(&e.before, &e.after)).collect();
    assert!(!changes.contains(&SupportChange::between(&fam("{14,124,1234}"), &fam("{134}"))));
}

#[test]
fn sweep_rejects_degenerate_endpoint() {
    use crate::exact::ratio;
    use crate::network::{Param, ParamPath};
    // b_1 W_21 + b_2 = 0 at W_21 = -0.40/0.49
    let net = chain3();
    let path = ParamPath::new(net, Param::W(1, 0), ratio(-40, 49), 16).unwrap();
    assert!(sweep(&path, &ratio(1, 10_000)).unwrap_err().is_degenerate());
}

#[test]
fn sampled_regimes_respect_pins() {
    let g = Digraph::parse("1>2,2>1,2>3,3>2", 3).unwrap();
    let st = sample_regimes(&g, 2_000, 0, 0).unwrap();
    assert_eq!(st.drawn, 2_000);
    assert_eq!(st.pin_violations, 0);
    assert!(st.regimes.len() <= 4);
    assert_eq!(st.regimes.values().sum::<usize>() + st.degenerate, 2_000);
}
