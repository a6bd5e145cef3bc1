//! k-leaf roots, the two conversions between leaf roots and RS models, and
//! a brute-force leaf-rank search for small graphs.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::enumerate::trees_with_leaves;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::RSModel;
use crate::tree::{Tree, TreeBuilder};

/// A tree, a threshold `k` and a bijection from graph vertices onto the
/// leaves of the tree.
///
/// A single-node tree has one leaf (its only node), so `K_1` has a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafRoot {
    host: Tree,
    k: usize,
    /// `(vertex label, leaf index)` sorted by label.
    placement: Vec<(String, usize)>,
}

impl LeafRoot {
    pub fn new<V, L, I>(host: Tree, k: usize, placement: I) -> Result<Self>
    where
        V: Into<String>,
        L: AsRef<str>,
        I: IntoIterator<Item = (V, L)>,
    {
        if k == 0 {
            return Err(Error::InvalidLeafRoot("k must be at least 1".into()));
        }
        let mut pairs = Vec::new();
        let mut labels = HashSet::new();
        let mut used = HashSet::new();
        for (v, leaf) in placement {
            let v = v.into();
            let x = host.require(leaf.as_ref())?;
            if host.degree_idx(x) > 1 {
                return Err(Error::NotALeaf(leaf.as_ref().to_string()));
            }
            if !used.insert(x) {
                return Err(Error::InvalidLeafRoot(format!(
                    "leaf {:?} holds two vertices",
                    leaf.as_ref()
                )));
            }
            if !labels.insert(v.clone()) {
                return Err(Error::InvalidLeafRoot(format!("vertex {v:?} placed twice")));
            }
            pairs.push((v, x));
        }
        if used.len() != host.leaves_idx().len() {
            return Err(Error::InvalidLeafRoot(format!(
                "{} vertices placed on a tree with {} leaves",
                used.len(),
                host.leaves_idx().len()
            )));
        }
        pairs.sort();
        Ok(LeafRoot {
            host,
            k,
            placement: pairs,
        })
    }

    pub fn host(&self) -> &Tree {
        &self.host
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `(vertex, leaf id)` pairs sorted by vertex.
    pub fn placement(&self) -> impl Iterator<Item = (&str, &str)> {
        self.placement
            .iter()
            .map(|(v, x)| (v.as_str(), self.host.id(*x)))
    }

    pub fn leaf_of(&self, v: &str) -> Option<&str> {
        self.placement
            .binary_search_by(|(l, _)| l.as_str().cmp(v))
            .ok()
            .map(|i| self.host.id(self.placement[i].1))
    }

    /// The same tree and placement with a different threshold.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidLeafRoot("k must be at least 1".into()));
        }
        let mut out = self.clone();
        out.k = k;
        Ok(out)
    }

    fn leaf_distances(&self) -> Vec<Vec<usize>> {
        self.placement
            .iter()
            .map(|&(_, x)| {
                let d = self.host.bfs(x);
                self.placement.iter().map(|&(_, y)| d[y]).collect()
            })
            .collect()
    }

    /// The graph this root defines: vertices in label order, adjacent iff
    /// their leaves are at most `k` apart.
    pub fn graph(&self) -> Graph {
        let dist = self.leaf_distances();
        let n = self.placement.len();
        let adj = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && dist[i][j] <= self.k).collect())
            .collect();
        Graph::from_adjacency(self.placement.iter().map(|(v, _)| v.clone()).collect(), adj)
    }
}

/// Checks `uv in E(g) <=> dist(leaf(u), leaf(v)) <= k` for all pairs.
pub fn verify_leaf_root(g: &Graph, r: &LeafRoot) -> Result<bool> {
    if g.vertex_count() != r.placement.len() {
        return Err(Error::InvalidLeafRoot(format!(
            "graph has {} vertices, root places {}",
            g.vertex_count(),
            r.placement.len()
        )));
    }
    let idx = r
        .placement
        .iter()
        .map(|(v, _)| g.index_of(v).ok_or_else(|| Error::UnknownVertex(v.clone())))
        .collect::<Result<Vec<_>>>()?;
    let dist = r.leaf_distances();
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if (dist[i][j] <= r.k) != g.adjacent_idx(idx[i], idx[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Subdivides every edge once and puts a ball of radius `k` on each placed
/// leaf. The model represents the same graph as the root.
pub fn leafroot_to_rs(r: &LeafRoot) -> RSModel {
    let host = r.host.subdivide("sub");
    let graph = r.graph();
    let centers = r
        .placement
        .iter()
        .map(|(_, x)| host.index_of(r.host.id(*x)).expect("original ids survive"))
        .collect();
    let radii = vec![r.k; r.placement.len()];
    RSModel::from_parts(host, graph, centers, radii)
}

/// Hangs a new leaf for every vertex off its center by a path of length
/// `k + 1 - r_v` (`k` the largest radius) and prunes every other leaf. The
/// result is a `(2k + 2)`-leaf root of the model's graph.
pub fn rs_to_leafroot(m: &RSModel) -> Result<LeafRoot> {
    let g = m.graph();
    if g.vertex_count() == 0 {
        return Err(Error::InvalidModel("graph has no vertices".into()));
    }
    let host = m.host();
    let k = m.max_radius();
    let mut b = TreeBuilder::new();
    for id in host.nodes() {
        b.add_node(id)?;
    }
    for (u, v) in host.edges_idx() {
        b.add_edge(u, v);
    }
    let mut placed = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let label = g.label(v);
        let len = k + 1 - m.radius_idx(v);
        let mut taken = |s: &str| b.contains(s);
        let base = unique_name(&format!("{label}@"), len, &mut taken);
        let leaf = b.add_pendant_path(m.center_idx(v), len, |step| format!("{base}{step}"))?;
        placed.push((label.to_string(), leaf));
    }
    let grown = b.build()?;
    let keep = prune_unplaced_leaves(&grown, placed.iter().map(|&(_, x)| x));

    let mut pruned = TreeBuilder::new();
    let mut new_index = vec![usize::MAX; grown.node_count()];
    for x in 0..grown.node_count() {
        if keep[x] {
            new_index[x] = pruned.add_node(grown.id(x))?;
        }
    }
    for (u, v) in grown.edges_idx() {
        if keep[u] && keep[v] {
            pruned.add_edge(new_index[u], new_index[v]);
        }
    }
    let tree = pruned.build()?;
    let placement: Vec<(String, String)> = placed
        .into_iter()
        .map(|(v, x)| (v, grown.id(x).to_string()))
        .collect();
    LeafRoot::new(tree, 2 * k + 2, placement)
}

/// `base`, extended with `#` until none of `{base}1..={base}{len}` is taken.
fn unique_name(base: &str, len: usize, taken: &mut impl FnMut(&str) -> bool) -> String {
    let mut name = base.to_string();
    while (1..=len).any(|step| taken(&format!("{name}{step}"))) {
        name.push('#');
    }
    name
}

/// Repeatedly deletes leaves that are not placed, which removes each dead
/// branch up to its connector. Returns a keep-mask.
fn prune_unplaced_leaves(t: &Tree, placed: impl Iterator<Item = usize>) -> Vec<bool> {
    let n = t.node_count();
    let mut is_placed = vec![false; n];
    for x in placed {
        is_placed[x] = true;
    }
    let mut degree: Vec<usize> = (0..n).map(|x| t.degree_idx(x)).collect();
    let mut keep = vec![true; n];
    let mut stack: Vec<usize> = (0..n)
        .filter(|&x| degree[x] <= 1 && !is_placed[x])
        .collect();
    while let Some(x) = stack.pop() {
        if !keep[x] {
            continue;
        }
        keep[x] = false;
        for &w in t.neighbors_idx(x) {
            if keep[w] {
                degree[w] -= 1;
                if degree[w] <= 1 && !is_placed[w] {
                    stack.push(w);
                }
            }
        }
    }
    keep
}

/// Minimum `k` over every tree with at most `max_nodes` nodes, exactly
/// `|V(g)|` leaves and every placement, such that the placement is a
/// `k`-leaf root of `g`. `None` means no root exists in that search space,
/// which is not a proof that `g` is not a leaf power.
pub fn brute_force_leaf_rank(g: &Graph, max_nodes: usize) -> Option<usize> {
    let n = g.vertex_count();
    if n == 0 || max_nodes < n {
        return None;
    }
    if n == 1 {
        return Some(1);
    }
    let best = AtomicUsize::new(usize::MAX);
    for nodes in n..=max_nodes {
        trees_with_leaves(nodes, n).par_iter().for_each(|shape| {
            let tree = shape.to_tree();
            let bound = best.load(Ordering::Relaxed);
            if let Some(k) = best_placement_k(g, &tree, bound) {
                best.fetch_min(k, Ordering::Relaxed);
            }
        });
    }
    match best.into_inner() {
        usize::MAX => None,
        k => Some(k),
    }
}

/// Some `k`-leaf root of `g` on a tree with at most `max_nodes` nodes, if
/// the search space contains one.
pub fn find_leaf_root(g: &Graph, k: usize, max_nodes: usize) -> Option<LeafRoot> {
    let n = g.vertex_count();
    if n == 0 || k == 0 || max_nodes < n {
        return None;
    }
    if n == 1 {
        return LeafRoot::new(Tree::singleton("t0"), k, [(g.label(0), "t0")]).ok();
    }
    (n..=max_nodes).find_map(|nodes| {
        trees_with_leaves(nodes, n).par_iter().find_map_first(|shape| {
            let tree = shape.to_tree();
            let (leaves, dist) = leaf_distance_matrix(&tree);
            let pred = twin_predecessors(&dist);
            let works = |assigned: &[usize]| {
                (0..n).all(|u| {
                    (u + 1..n).all(|v| (dist[assigned[u]][assigned[v]] <= k) == g.adjacent_idx(u, v))
                })
            };
            let placed = find_placement(n, &pred, |assigned| works(assigned).then(|| assigned.to_vec()))?;
            let pairs: Vec<(String, String)> = placed
                .iter()
                .enumerate()
                .map(|(v, &leaf)| (g.label(v).to_string(), tree.id(leaves[leaf]).to_string()))
                .collect();
            LeafRoot::new(tree.clone(), k, pairs).ok()
        })
    })
}

/// Leaf distance matrix of `tree`, rows and columns in leaf order.
pub(crate) fn leaf_distance_matrix(tree: &Tree) -> (Vec<usize>, Vec<Vec<usize>>) {
    let leaves = tree.leaves_idx();
    let dist = leaves
        .iter()
        .map(|&x| {
            let d = tree.bfs(x);
            leaves.iter().map(|&y| d[y]).collect()
        })
        .collect();
    (leaves, dist)
}

/// Groups leaves into twin classes: leaves at equal distance from every
/// other leaf. Swapping twins never changes leaf distances, so placements
/// only need twins filled in class order. Returns, per leaf, the previous
/// leaf of its class (if any).
pub(crate) fn twin_predecessors(dist: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n = dist.len();
    let twins = |a: usize, b: usize| (0..n).all(|x| x == a || x == b || dist[a][x] == dist[b][x]);
    let mut pred = vec![None; n];
    for b in 0..n {
        pred[b] = (0..b).rev().find(|&a| twins(a, b));
    }
    pred
}

/// Smallest `k < bound` achievable by some placement of `g` on `tree`.
fn best_placement_k(g: &Graph, tree: &Tree, bound: usize) -> Option<usize> {
    let (_, dist) = leaf_distance_matrix(tree);
    let pred = twin_predecessors(&dist);
    let n = g.vertex_count();
    let mut search = PlacementSearch {
        g,
        dist: &dist,
        pred: &pred,
        assigned: vec![usize::MAX; n],
        used: vec![false; n],
        best: bound,
    };
    search.run(0, 0, usize::MAX);
    (search.best < bound).then_some(search.best)
}

struct PlacementSearch<'a> {
    g: &'a Graph,
    dist: &'a [Vec<usize>],
    pred: &'a [Option<usize>],
    /// vertex -> leaf position
    assigned: Vec<usize>,
    used: Vec<bool>,
    best: usize,
}

impl PlacementSearch<'_> {
    /// `max_adj` is the largest distance over adjacent assigned pairs,
    /// `min_non` the smallest over non-adjacent ones. A placement works for
    /// every `k` with `max(max_adj, 1) <= k < min_non`.
    fn run(&mut self, v: usize, max_adj: usize, min_non: usize) {
        let k = max_adj.max(1);
        if k >= min_non || k >= self.best {
            return;
        }
        if v == self.assigned.len() {
            self.best = k;
            return;
        }
        for leaf in 0..self.dist.len() {
            if self.used[leaf] || self.pred[leaf].is_some_and(|p| !self.used[p]) {
                continue;
            }
            let (mut a, mut na) = (max_adj, min_non);
            for u in 0..v {
                let d = self.dist[leaf][self.assigned[u]];
                if self.g.adjacent_idx(u, v) {
                    a = a.max(d);
                } else {
                    na = na.min(d);
                }
            }
            self.used[leaf] = true;
            self.assigned[v] = leaf;
            self.run(v + 1, a, na);
            self.used[leaf] = false;
            self.assigned[v] = usize::MAX;
        }
    }
}

/// Placement search that enumerates every placement up to twin symmetry,
/// calling `visit` with the vertex -> leaf-position map. Stops early when
/// `visit` returns `Some`.
pub(crate) fn find_placement<T>(
    n: usize,
    pred: &[Option<usize>],
    mut visit: impl FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    fn go<T>(
        v: usize,
        n: usize,
        pred: &[Option<usize>],
        assigned: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut impl FnMut(&[usize]) -> Option<T>,
    ) -> Option<T> {
        if v == n {
            return visit(assigned);
        }
        for leaf in 0..used.len() {
            if used[leaf] || pred[leaf].is_some_and(|p| !used[p]) {
                continue;
            }
            used[leaf] = true;
            assigned.push(leaf);
            let found = go(v + 1, n, pred, assigned, used, visit);
            assigned.pop();
            used[leaf] = false;
            if found.is_some() {
                return found;
            }
        }
        None
    }
    let mut used = vec![false; pred.len()];
    go(0, n, pred, &mut Vec::with_capacity(n), &mut used, &mut visit)
}
