mod common;

use common::{all_statements, all_topological_orders, random_partial_orientation};
use dagiso::construct::forced_by_rule;
use dagiso::oracle::{enumerate_dags, extensions, IsomorphismOracle};
use dagiso::{
    decide, full_model, phase1, phase2, phase3, phase3_with_order, Dag, DependencyModel, Graph,
    Pdag, Phase2Mode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_dags() -> Vec<Dag> {
    (1..=4).flat_map(|n| enumerate_dags(n).unwrap().dags().to_vec()).collect()
}

#[test]
fn phase1_recovers_skeleton_and_vees() {
    for d in small_dags() {
        let (g, seps) = phase1(&full_model(&d).unwrap()).unwrap();
        assert_eq!(g.skeleton(), d.skeleton(), "{d:?}");
        assert_eq!(g.vee_structures(), d.vee_structures(), "{d:?}");
        // only the vee edges are directed
        for (t, h) in g.directed_edges() {
            assert!(d.vee_structures().iter().any(|vee| vee.center == h && (vee.left == t || vee.right == t)));
        }
        for link in seps.iter().map(|(l, _)| l) {
            assert!(!d.is_adjacent(link.lo, link.hi));
        }
    }
}

#[test]
fn separators_agree_on_every_middle_node() {
    for d in small_dags() {
        let m = full_model(&d).unwrap();
        for b in d.nodes() {
            let nb = d.neighbors(b);
            for a in nb {
                for c in nb {
                    if a >= c || d.is_adjacent(a, c) {
                        continue;
                    }
                    let with_b: Vec<bool> = m
                        .statements()
                        .iter()
                        .filter(|s| s.is_elementary())
                        .filter(|s| {
                            (s.lhs().contains(a) && s.rhs().contains(c))
                                || (s.lhs().contains(c) && s.rhs().contains(a))
                        })
                        .map(|s| s.cond().contains(b))
                        .collect();
                    assert!(!with_b.is_empty());
                    assert!(with_b.iter().all(|&x| x == with_b[0]), "{d:?} {a:?}-{b:?}-{c:?}");
                }
            }
        }
    }
}

/// Pdags whose rule matches are checked against every extension.
#[test]
fn rules_are_sound_against_all_extensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut fired = [0usize; 5];
    let dags = small_dags();
    for _ in 0..4000 {
        let d = &dags[rng.gen_range(0..dags.len())];
        let undirected = Pdag::new(d.node_count(), &[], &d.directed_edges()).unwrap();
        let along = if rng.gen_bool(0.5) { Some(d) } else { None };
        let Some(g) = random_partial_orientation(&mut rng, &undirected, along, 0.4) else {
            continue;
        };
        let exts = extensions(&g).unwrap();
        for link in g.undirected_edges() {
            for (u, w) in [(link.lo, link.hi), (link.hi, link.lo)] {
                for rule in 1..=4u8 {
                    if let Some(tails) = forced_by_rule(&g, rule, u, w) {
                        fired[rule as usize] += 1;
                        for e in &exts {
                            for t in tails {
                                assert!(e.has_edge(t, w), "rule {rule} on {g:?}: {e:?} lacks {t:?}->{w:?}");
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(fired[1..].iter().all(|&c| c > 0), "{fired:?}");
}

#[test]
fn phase2_output_is_an_extension() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for d in enumerate_dags(4).unwrap().iter() {
        let (g, _) = phase1(&full_model(d).unwrap()).unwrap();
        let h = random_partial_orientation(&mut rng, &g, Some(d), 0.3).unwrap();
        for mode in [Phase2Mode::Backtrack, Phase2Mode::FailFast] {
            for input in [&g, &h] {
                let out = phase2(input, mode).unwrap();
                assert_eq!(out.skeleton(), input.skeleton());
                assert_eq!(out.vee_structures(), input.vee_structures());
                for (t, hd) in input.directed_edges() {
                    assert!(out.has_edge(t, hd));
                }
            }
        }
    }
}

#[test]
fn phase3_verdict_ignores_topological_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let pool = all_statements(4);
    let dags = enumerate_dags(4).unwrap();
    for d in dags.iter() {
        let full = full_model(d).unwrap();
        let mut stmts = full.statements().clone();
        let s = pool[rng.gen_range(0..pool.len())];
        if !stmts.remove(&s) {
            stmts.insert(s);
        }
        let mutated = DependencyModel::explicit(4, stmts).unwrap();
        let other = &dags.dags()[rng.gen_range(0..dags.len())];
        for (dag, m) in [(d, &full), (d, &mutated), (other, &full)] {
            let expected = phase3(dag, m).is_ok();
            for order in all_topological_orders(dag) {
                assert_eq!(phase3_with_order(dag, m, &order).is_ok(), expected, "{dag:?}");
            }
        }
    }
}

#[test]
fn decide_agrees_with_bruteforce_on_every_three_variable_model() {
    let oracle = IsomorphismOracle::new(3).unwrap();
    let pool = all_statements(3);
    let mut witnesses = 0;
    for mask in 0u32..1 << pool.len() {
        let stmts = (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| pool[i]);
        let m = DependencyModel::explicit(3, stmts).unwrap();
        let found = oracle.find(&m).unwrap();
        let got = decide(&m);
        assert_eq!(got.is_witness(), found.is_some(), "{:?}", m.statements());
        if let (Some(w), Some(f)) = (got.witness(), found) {
            assert!(w.is_equivalent(f).unwrap());
            witnesses += 1;
        }
    }
    // one model per equivalence class
    assert_eq!(witnesses, 11);
}
