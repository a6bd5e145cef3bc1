//! Independent oracles cross-checked against the library: Fourier-Motzkin
//! elimination for the weighted-root LP and exhaustive leaf-rank spot values.

mod common;

use leafpower::enumerate::reduced_topologies;
use leafpower::lp::{build_feasibility_system, solve_feasibility, Feasibility, Rational};
use leafpower::{brute_force_leaf_rank, find_leaf_root, is_cluster_graph, verify_leaf_root, Graph, Tree};
use num_traits::{One, Signed, Zero};

use common::*;

#[derive(Clone)]
struct Row {
    coeffs: Vec<Rational>,
    rhs: Rational,
    strict: bool,
}

/// Decides `exists x: every row holds` by eliminating variables one at a
/// time. Strictness of a combined row is the or of its parents.
fn fourier_motzkin(mut rows: Vec<Row>, vars: usize) -> bool {
    for j in 0..vars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.coeffs[j].is_positive() {
                pos.push(r);
            } else if r.coeffs[j].is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for p in &pos {
            for n in &neg {
                let (fp, fn_) = (Rational::one() / &p.coeffs[j], Rational::one() / -&n.coeffs[j]);
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(a, b)| a * &fp + b * &fn_)
                    .collect();
                rest.push(Row {
                    coeffs,
                    rhs: &p.rhs * &fp + &n.rhs * &fn_,
                    strict: p.strict || n.strict,
                });
            }
        }
        rows = rest;
    }
    rows.iter().all(|r| {
        if r.strict {
            r.rhs.is_positive()
        } else {
            !r.rhs.is_negative()
        }
    })
}

/// Strict form of the weighted leaf-root conditions, built from the tree
/// directly: adjacent sums at most 1, non-adjacent sums above 1, weights
/// positive.
fn strict_rows(g: &Graph, host: &Tree, placement: &[(String, String)]) -> (Vec<Row>, usize) {
    let edges: Vec<(String, String)> = host
        .edges()
        .into_iter()
        .map(|(u, v)| (u.to_string(), v.to_string()))
        .collect();
    let m = edges.len();
    let mut rows = Vec::new();
    for (a, (u, lu)) in placement.iter().enumerate() {
        for (v, lv) in &placement[a + 1..] {
            let path = host.path(lu, lv).unwrap();
            let mut coeffs = vec![Rational::zero(); m];
            for w in path.windows(2) {
                let e = edges
                    .iter()
                    .position(|(x, y)| (x == w[0] && y == w[1]) || (x == w[1] && y == w[0]))
                    .unwrap();
                coeffs[e] = Rational::one();
            }
            if g.has_edge(u, v) {
                rows.push(Row { coeffs, rhs: Rational::one(), strict: false });
            } else {
                rows.push(Row {
                    coeffs: coeffs.into_iter().map(|c| -c).collect(),
                    rhs: -Rational::one(),
                    strict: true,
                });
            }
        }
    }
    for e in 0..m {
        let mut coeffs = vec![Rational::zero(); m];
        coeffs[e] = -Rational::one();
        rows.push(Row { coeffs, rhs: Rational::zero(), strict: true });
    }
    (rows, m)
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

#[test]
fn simplex_agrees_with_fourier_motzkin() {
    let mut checked = (0, 0);
    for n in 2..=4 {
        for g in graphs_up_to_isomorphism(n) {
            for shape in reduced_topologies(n, 2) {
                let host = shape.to_tree();
                let leaves: Vec<String> = host.leaves().into_iter().map(str::to_string).collect();
                for perm in permutations(&leaves) {
                    let placement: Vec<(String, String)> =
                        g.vertices().map(str::to_string).zip(perm).collect();
                    let (rows, vars) = strict_rows(&g, &host, &placement);
                    let fm = fourier_motzkin(rows, vars);
                    let system = build_feasibility_system(&g, &host, &placement.iter().cloned().collect()).unwrap();
                    let lp = match solve_feasibility(&system).unwrap() {
                        Feasibility::Feasible { weights, margin } => {
                            let mut x = weights;
                            x.push(margin);
                            assert!(system.satisfied_by(&x));
                            true
                        }
                        Feasibility::Infeasible => false,
                    };
                    assert_eq!(lp, fm, "graph {:?} on {:?} with {:?}", g.edges(), host.edges(), placement);
                    if fm {
                        checked.0 += 1;
                    } else {
                        checked.1 += 1;
                    }
                }
            }
        }
    }
    // both outcomes were exercised
    assert!(checked.0 > 0 && checked.1 > 0, "{checked:?}");
}

#[test]
fn c4_star_is_infeasible_by_elimination() {
    let c4 = cycle(4);
    let host = reduced_topologies(4, 1)[0].to_tree();
    let leaves: Vec<String> = host.leaves().into_iter().map(str::to_string).collect();
    for perm in permutations(&leaves) {
        let placement: Vec<(String, String)> = c4.vertices().map(str::to_string).zip(perm).collect();
        let (rows, vars) = strict_rows(&c4, &host, &placement);
        assert!(!fourier_motzkin(rows, vars));
    }
}

#[test]
fn leaf_rank_spot_values() {
    let two_k2 = Graph::new(["a", "b", "c", "d"], [("a", "b"), ("c", "d")]).unwrap();
    assert_eq!(brute_force_leaf_rank(&complete(1), 4), Some(1));
    assert_eq!(brute_force_leaf_rank(&complete(2), 6), Some(1));
    assert_eq!(brute_force_leaf_rank(&complete(3), 6), Some(2));
    assert_eq!(brute_force_leaf_rank(&path(3), 8), Some(3));
    assert_eq!(brute_force_leaf_rank(&two_k2, 8), Some(2));
    assert_eq!(brute_force_leaf_rank(&path(4), 9), Some(3));
    assert_eq!(brute_force_leaf_rank(&cycle(4), 9), None);
}

#[test]
fn leaf_rank_is_minimal_within_the_search_space() {
    for (g, max_nodes) in [(path(3), 8), (path(4), 9), (complete(3), 6), (graph_from_mask(4, 0b011011), 9)] {
        let k = brute_force_leaf_rank(&g, max_nodes).expect("leaf power");
        let root = find_leaf_root(&g, k, max_nodes).expect("rank is attained");
        assert!(verify_leaf_root(&g, &root).unwrap());
        if k > 1 {
            assert!(find_leaf_root(&g, k - 1, max_nodes).is_none(), "{:?}", g.edges());
        }
    }
}

#[test]
fn two_leaf_powers_are_cluster_graphs() {
    for n in 1..=5 {
        for g in graphs_up_to_isomorphism(n) {
            let two = brute_force_leaf_rank(&g, 2 * n + 1).is_some_and(|k| k <= 2);
            assert_eq!(two, is_cluster_graph(&g), "{:?}", g.edges());
        }
    }
}
