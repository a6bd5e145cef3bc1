//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use leafpower::graph::maximal_cliques;
use leafpower::{Graph, LeafRoot, RSModel, SubtreeModel, Tree};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Graph on `v0..v(n-1)` whose edges are the set bits of `mask` over the
/// pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let vs = labels(n);
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((vs[i].clone(), vs[j].clone()));
            }
            bit += 1;
        }
    }
    Graph::new(&vs, edges).unwrap()
}

pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let labels: Vec<&str> = g.vertices().collect();
    (0..n)
        .map(|i| (0..n).map(|j| i != j && g.has_edge(labels[i], labels[j])).collect())
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// One labelled representative per isomorphism class of graphs on `n`
/// vertices.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0..1u64 << pairs {
        let g = graph_from_mask(n, mask);
        let adj = adjacency_matrix(&g);
        let canon = perms
            .iter()
            .map(|p| {
                let mut bits = Vec::with_capacity(pairs);
                for i in 0..n {
                    for j in i + 1..n {
                        bits.push(adj[p[i]][p[j]]);
                    }
                }
                bits
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

/// Connectivity by union-find over the edge list.
pub fn components(g: &Graph, removed: &BTreeSet<String>) -> usize {
    let labels: Vec<&str> = g.vertices().filter(|v| !removed.contains(*v)).collect();
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for (u, v) in g.edges() {
        if let (Some(&a), Some(&b)) = (index.get(u), index.get(v)) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    (0..labels.len()).filter(|&x| find(&mut parent, x) == x).count()
}

/// Chordality by searching every vertex subset of size at least four for an
/// induced cycle.
pub fn has_induced_long_cycle(g: &Graph) -> bool {
    let adj = adjacency_matrix(g);
    let n = adj.len();
    for mask in 0u32..1 << n {
        if mask.count_ones() < 4 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let two_regular = members
            .iter()
            .all(|&u| members.iter().filter(|&&v| adj[u][v]).count() == 2);
        if !two_regular {
            continue;
        }
        // a 2-regular graph is a cycle iff connected
        let mut seen = vec![members[0]];
        let mut stack = vec![members[0]];
        while let Some(u) = stack.pop() {
            for &v in &members {
                if adj[u][v] && !seen.contains(&v) {
                    seen.push(v);
                    stack.push(v);
                }
            }
        }
        if seen.len() == members.len() {
            return true;
        }
    }
    false
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut mask = 0u64;
    for bit in 0..pairs {
        if rng.gen_bool(p) {
            mask |= 1 << bit;
        }
    }
    graph_from_mask(n, mask)
}

/// Each new vertex is joined to a random clique of the earlier ones, so the
/// insertion order reversed is a perfect elimination ordering.
pub fn random_chordal_graph(rng: &mut impl Rng, n: usize) -> Graph {
    let vs = labels(n);
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let mut earlier: Vec<usize> = (0..v).collect();
        earlier.shuffle(rng);
        let want = rng.gen_range(0..=v);
        let mut clique: Vec<usize> = Vec::new();
        for u in earlier.into_iter().take(want) {
            if clique.iter().all(|&w| adj[u][w]) {
                clique.push(u);
            }
        }
        for u in clique {
            adj[u][v] = true;
            adj[v][u] = true;
            edges.push((vs[u].clone(), vs[v].clone()));
        }
    }
    Graph::new(&vs, edges).unwrap()
}

/// Clique-tree model: host nodes are the maximal cliques joined by a
/// maximum-weight spanning tree of the clique intersection sizes, and each
/// vertex gets the cliques containing it.
pub fn clique_tree_model(g: &Graph) -> SubtreeModel {
    let cliques: Vec<BTreeSet<String>> = maximal_cliques(g)
        .unwrap()
        .into_iter()
        .map(|c| c.members().clone())
        .collect();
    let m = cliques.len();
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            pairs.push((cliques[i].intersection(&cliques[j]).count(), i, j));
        }
    }
    pairs.sort_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let ids: Vec<String> = (0..m).map(|i| format!("k{i}")).collect();
    let mut edges = Vec::new();
    for (_, i, j) in pairs {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
            edges.push((ids[i].clone(), ids[j].clone()));
        }
    }
    let host = Tree::new(ids.clone(), edges).unwrap();
    let assignment: Vec<(String, Vec<String>)> = g
        .vertices()
        .map(|v| {
            let nodes = (0..m)
                .filter(|&i| cliques[i].contains(v))
                .map(|i| ids[i].clone())
                .collect();
            (v.to_string(), nodes)
        })
        .collect();
    SubtreeModel::new(host, g.clone(), assignment).unwrap()
}

/// Random tree on `n` nodes `t0..`, each node attached to a uniformly
/// chosen earlier one.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Tree {
    let ids: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
    let edges: Vec<(String, String)> = (1..n)
        .map(|i| (ids[rng.gen_range(0..i)].clone(), ids[i].clone()))
        .collect();
    Tree::new(ids, edges).unwrap()
}

/// Random leaf root with at most `max_leaves` leaves and `k <= max_k`.
pub fn random_leaf_root(rng: &mut impl Rng, max_leaves: usize, max_k: usize) -> LeafRoot {
    loop {
        let nodes = rng.gen_range(2..=max_leaves + 4);
        let tree = random_tree(rng, nodes);
        let leaves: Vec<String> = tree.leaves().into_iter().map(str::to_string).collect();
        if leaves.len() > max_leaves {
            continue;
        }
        let mut order = leaves.clone();
        order.shuffle(rng);
        let k = rng.gen_range(1..=max_k);
        let placement: Vec<(String, String)> = order
            .into_iter()
            .enumerate()
            .map(|(i, leaf)| (format!("v{i}"), leaf))
            .collect();
        return LeafRoot::new(tree, k, placement).unwrap();
    }
}

/// Random RS model together with the graph its balls define.
pub fn random_rs_model(rng: &mut impl Rng, max_nodes: usize, max_vertices: usize, max_radius: usize) -> RSModel {
    let nodes = rng.gen_range(1..=max_nodes);
    let tree = random_tree(rng, nodes);
    let n = rng.gen_range(1..=max_vertices);
    let ids: Vec<String> = tree.nodes().map(str::to_string).collect();
    let balls: Vec<(String, String, usize)> = (0..n)
        .map(|i| {
            (
                format!("v{i}"),
                ids[rng.gen_range(0..ids.len())].clone(),
                rng.gen_range(0..=max_radius),
            )
        })
        .collect();
    let vs = labels(n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = tree.distance(&balls[i].1, &balls[j].1).unwrap();
            if d <= balls[i].2 + balls[j].2 {
                edges.push((vs[i].clone(), vs[j].clone()));
            }
        }
    }
    let g = Graph::new(&vs, edges).unwrap();
    RSModel::new(tree, g, balls).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let vs = labels(n);
    let edges: Vec<(String, String)> = (0..n).map(|i| (vs[i].clone(), vs[(i + 1) % n].clone())).collect();
    Graph::new(&vs, edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let vs = labels(n);
    Graph::from_cliques(&vs, std::slice::from_ref(&vs)).unwrap()
}

pub fn path(n: usize) -> Graph {
    let vs = labels(n);
    let edges: Vec<(String, String)> = (1..n).map(|i| (vs[i - 1].clone(), vs[i].clone())).collect();
    Graph::new(&vs, edges).unwrap()
}

/// Induced paths between random vertex pairs of a connected graph, found by
/// BFS (shortest paths are induced).
pub fn shortest_path(g: &Graph, from: &str, to: &str) -> Option<Vec<String>> {
    let mut prev: BTreeMap<String, String> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([from.to_string()]);
    prev.insert(from.to_string(), from.to_string());
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![u.clone()];
            let mut cur = u;
            while prev[&cur] != cur {
                cur = prev[&cur].clone();
                path.push(cur.clone());
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbors(&u).unwrap() {
            if !prev.contains_key(w) {
                prev.insert(w.to_string(), u.clone());
                queue.push_back(w.to_string());
            }
        }
    }
    None
}
