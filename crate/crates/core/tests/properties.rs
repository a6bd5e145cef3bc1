mod common;

use std::collections::BTreeSet;

use leafpower::cert::WeightedLeafRoot;
use leafpower::enumerate::reduced_topologies;
use leafpower::io::JsonFormat;
use leafpower::lp::{build_feasibility_system, rational, solve_feasibility, Feasibility};
use leafpower::model::expand_rs;
use leafpower::{
    is_chordal, is_separator, leafroot_to_rs, maximal_cliques, rs_to_leafroot, verify_leaf_root, Error,
    Graph, LeafRoot, RSModel, SubtreeModel,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn median_ignores_argument_order(seed: u64, nodes in 1usize..25) {
        let mut r = rng(seed);
        let t = random_tree(&mut r, nodes);
        let ids: Vec<String> = t.nodes().map(str::to_string).collect();
        let pick: Vec<&str> = (0..3).map(|_| ids[r.gen_range(0..ids.len())].as_str()).collect();
        let m = t.median(pick[0], pick[1], pick[2]).unwrap().to_string();
        for p in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            prop_assert_eq!(t.median(pick[p[0]], pick[p[1]], pick[p[2]]).unwrap(), m.as_str());
        }
        prop_assert!(t.on_path(&m, pick[0], pick[1]).unwrap());
        prop_assert!(t.on_path(&m, pick[1], pick[2]).unwrap());
        prop_assert!(t.on_path(&m, pick[0], pick[2]).unwrap());
    }

    #[test]
    fn triangle_inequality_is_tight_on_paths(seed: u64, nodes in 1usize..25) {
        let mut r = rng(seed);
        let t = random_tree(&mut r, nodes);
        let ids: Vec<String> = t.nodes().map(str::to_string).collect();
        let (u, v, w) = (
            &ids[r.gen_range(0..ids.len())],
            &ids[r.gen_range(0..ids.len())],
            &ids[r.gen_range(0..ids.len())],
        );
        let (uv, vw, uw) = (t.distance(u, v).unwrap(), t.distance(v, w).unwrap(), t.distance(u, w).unwrap());
        prop_assert!(uv + vw >= uw);
        let on_path = t.path(u, w).unwrap().contains(&v.as_str());
        prop_assert_eq!(uv + vw == uw, on_path);
        prop_assert_eq!(t.on_path(v, u, w).unwrap(), on_path);
    }

    #[test]
    fn chordality_matches_induced_cycle_search(n in 1usize..=7, mask: u64) {
        let g = graph_from_mask(n, mask);
        prop_assert_eq!(is_chordal(&g), !has_induced_long_cycle(&g));
        if !is_chordal(&g) {
            prop_assert_eq!(maximal_cliques(&g).unwrap_err(), Error::NotChordal);
        }
    }

    #[test]
    fn cliques_of_chordal_graphs_are_maximal(seed: u64, n in 1usize..=8) {
        let g = random_chordal_graph(&mut rng(seed), n);
        prop_assert!(is_chordal(&g));
        let cliques = maximal_cliques(&g).unwrap();
        prop_assert!(cliques.len() <= n);
        for c in &cliques {
            let members: Vec<&String> = c.members().iter().collect();
            for (i, u) in members.iter().enumerate() {
                for v in &members[i + 1..] {
                    prop_assert!(g.has_edge(u, v));
                }
            }
            for x in g.vertices().filter(|x| !c.contains(x)) {
                prop_assert!(!members.iter().all(|u| g.has_edge(u, x)), "{x} extends {:?}", c);
            }
        }
        for (u, v) in g.edges() {
            prop_assert!(cliques.iter().any(|c| c.contains(u) && c.contains(v)));
        }
        let distinct: BTreeSet<_> = cliques.iter().map(|c| c.members().clone()).collect();
        prop_assert_eq!(distinct.len(), cliques.len());
    }

    #[test]
    fn separators_match_component_counting(seed: u64, n in 1usize..=8, density in 0.1f64..0.9) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, density);
        let s: BTreeSet<String> = g.vertices().filter(|_| r.gen_bool(0.3)).map(str::to_string).collect();
        // Components of g that keep a vertex after deleting s; s separates iff
        // g - s has more components than that.
        let survivors = g
            .vertices()
            .filter(|v| !s.contains(*v))
            .map(|v| {
                // representative: smallest label reachable in g
                let mut reach: Vec<String> = g
                    .vertices()
                    .filter(|w| shortest_path(&g, v, w).is_some())
                    .map(str::to_string)
                    .collect();
                reach.sort();
                reach[0].clone()
            })
            .collect::<BTreeSet<_>>()
            .len();
        let after = components(&g, &s);
        prop_assert_eq!(is_separator(&g, &s).unwrap(), after > survivors);
    }

    #[test]
    fn clique_tree_models_satisfy_helly_and_path_cover(seed: u64, n in 1usize..=8) {
        let mut r = rng(seed);
        let g = random_chordal_graph(&mut r, n);
        let m = clique_tree_model(&g);
        prop_assert!(m.verify());
        for c in maximal_cliques(&g).unwrap() {
            prop_assert!(!m.clique_subtree(&c).unwrap().is_empty());
        }
        let vs: Vec<String> = g.vertices().map(str::to_string).collect();
        for _ in 0..8 {
            let (u, v) = (&vs[r.gen_range(0..n)], &vs[r.gen_range(0..n)]);
            let Some(p) = shortest_path(&g, u, v) else { continue };
            let p: Vec<&str> = p.iter().map(String::as_str).collect();
            let xu = *m.assignment(u).unwrap().choose(&mut r).unwrap();
            let xv = *m.assignment(v).unwrap().choose(&mut r).unwrap();
            prop_assert!(m.check_path_cover(&p, xu, xv).unwrap());
        }
    }

    #[test]
    fn expanded_balls_are_connected(seed: u64) {
        let m = random_rs_model(&mut rng(seed), 15, 7, 3);
        let wrong = Graph::new(m.graph().vertices(), Vec::<(&str, &str)>::new()).unwrap();
        let sm = expand_rs(&m);
        prop_assert!(sm.verify());
        // connectivity holds whatever graph the model claims
        let relabelled = sm.with_graph(wrong).unwrap();
        for v in m.graph().vertices() {
            prop_assert!(!relabelled.assignment(v).unwrap().is_empty());
        }
        if let Some(why) = relabelled.first_violation() {
            prop_assert!(!why.contains("disconnected"), "{}", why);
        }
    }

    #[test]
    fn leaf_roots_survive_both_conversions(seed: u64) {
        let root = random_leaf_root(&mut rng(seed), 8, 6);
        let g = root.graph();
        prop_assert!(verify_leaf_root(&g, &root).unwrap());
        let rs = leafroot_to_rs(&root);
        prop_assert!(rs.verify());
        prop_assert_eq!(rs.graph(), &g);
        prop_assert_eq!(rs.max_radius(), root.k());
        let back = rs_to_leafroot(&rs).unwrap();
        prop_assert_eq!(back.k(), 2 * root.k() + 2);
        prop_assert!(verify_leaf_root(&g, &back).unwrap());
    }

    #[test]
    fn rs_models_become_leaf_roots(seed: u64) {
        let m = random_rs_model(&mut rng(seed), 15, 7, 3);
        prop_assert!(m.verify());
        let root = rs_to_leafroot(&m).unwrap();
        prop_assert_eq!(root.k(), 2 * m.max_radius() + 2);
        prop_assert!(verify_leaf_root(m.graph(), &root).unwrap());
    }

    #[test]
    fn row_scaling_keeps_the_optimum(seed: u64, n in 2usize..=4) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, 0.5);
        let topologies = reduced_topologies(n, 2);
        let host = topologies.choose(&mut r).unwrap().to_tree();
        let mut leaves: Vec<String> = host.leaves().into_iter().map(str::to_string).collect();
        leaves.shuffle(&mut r);
        let placement = g.vertices().map(str::to_string).zip(leaves).collect();
        let s = build_feasibility_system(&g, &host, &placement).unwrap();
        let mut scaled = s.clone();
        for c in &mut scaled.constraints {
            let f = rational(r.gen_range(1..50), r.gen_range(1..50));
            c.coeffs.iter_mut().for_each(|x| *x *= &f);
            c.rhs *= &f;
        }
        let (a, b) = (solve_feasibility(&s).unwrap(), solve_feasibility(&scaled).unwrap());
        match (&a, &b) {
            (Feasibility::Feasible { margin: ma, weights }, Feasibility::Feasible { margin: mb, .. }) => {
                prop_assert_eq!(ma, mb);
                let mut x = weights.clone();
                x.push(ma.clone());
                prop_assert!(s.satisfied_by(&x));
            }
            (Feasibility::Infeasible, Feasibility::Infeasible) => {}
            _ => prop_assert!(false, "scaling flipped feasibility: {:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn json_round_trips(seed: u64) {
        let mut r = rng(seed);
        let root = random_leaf_root(&mut r, 8, 6);
        let text = root.to_json();
        prop_assert_eq!(LeafRoot::from_json(&text).unwrap().to_json(), text.clone());
        prop_assert_eq!(LeafRoot::from_json(&text).unwrap(), root);

        let rs = random_rs_model(&mut r, 12, 6, 3);
        let text = rs.to_json();
        prop_assert_eq!(RSModel::from_json(&text).unwrap(), rs.clone());
        let sm = rs.expand();
        prop_assert_eq!(SubtreeModel::from_json(&sm.to_json()).unwrap(), sm);
        let g = random_graph(&mut r, 6, 0.4);
        prop_assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
    }
}

#[test]
fn weighted_roots_round_trip_through_json() {
    use leafpower::cert::{certify_leaf_power, Certification};
    for g in [complete(3), path(3), path(4)] {
        let Certification::Witness(w) = certify_leaf_power(&g, 2).unwrap() else {
            panic!("chordal graph on few vertices should certify");
        };
        let text = w.to_json();
        let back = WeightedLeafRoot::from_json(&text).unwrap();
        assert_eq!(back, w);
        assert_eq!(back.to_json(), text);
    }
}
