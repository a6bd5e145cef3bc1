//! Enumeration of unlabeled free trees, deduplicated by a center-rooted
//! canonical encoding.
//!
//! Trees on `k + 1` nodes are grown from trees on `k` nodes by attaching a
//! leaf at every node and keeping one tree per canonical form. Results are
//! cached per size.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use crate::tree::Tree;

/// An unlabeled tree as sorted adjacency lists over `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    adj: Vec<Vec<usize>>,
}

impl Shape {
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn leaf_count(&self) -> usize {
        (0..self.node_count()).filter(|&v| self.degree(v) <= 1).count()
    }

    /// True iff no node has degree exactly two.
    pub fn is_reduced(&self) -> bool {
        (0..self.node_count()).all(|v| self.degree(v) != 2)
    }

    /// Materialises the shape as a [`Tree`] with node ids `t0, t1, ...`.
    pub fn to_tree(&self) -> Tree {
        let ids = (0..self.node_count()).map(|i| format!("t{i}")).collect();
        let mut edges = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Tree::from_parts(ids, &edges).expect("shape is a tree")
    }

    fn with_leaf_at(&self, v: usize) -> Shape {
        let mut adj = self.adj.clone();
        let new = adj.len();
        adj[v].push(new);
        adj.push(vec![v]);
        Shape { adj }
    }

    /// Nodes remaining after repeatedly stripping all leaves: one or two.
    fn centers(&self) -> Vec<usize> {
        let n = self.node_count();
        if n <= 2 {
            return (0..n).collect();
        }
        let mut degree: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                for &w in &self.adj[v] {
                    if degree[w] > 1 {
                        degree[w] -= 1;
                        if degree[w] == 1 {
                            next.push(w);
                        }
                    }
                }
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    fn encode_rooted(&self, v: usize, parent: usize) -> String {
        let mut children: Vec<String> = self.adj[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| self.encode_rooted(w, v))
            .collect();
        children.sort_unstable();
        format!("({})", children.concat())
    }

    /// Canonical string: equal iff the trees are isomorphic.
    pub fn canonical_form(&self) -> String {
        self.centers()
            .into_iter()
            .map(|c| self.encode_rooted(c, usize::MAX))
            .min()
            .expect("nonempty tree")
    }
}

fn cache() -> &'static Mutex<Vec<Vec<Shape>>> {
    static CACHE: OnceLock<Mutex<Vec<Vec<Shape>>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(vec![
            Vec::new(),
            vec![Shape {
                adj: vec![Vec::new()],
            }],
        ])
    })
}

/// All pairwise non-isomorphic trees on `n` nodes (none for `n == 0`).
pub fn free_trees(n: usize) -> Vec<Shape> {
    let mut cache = cache().lock().expect("tree cache poisoned");
    while cache.len() <= n {
        let prev = cache.last().expect("seeded");
        let mut next: BTreeMap<String, Shape> = BTreeMap::new();
        for shape in prev {
            for v in 0..shape.node_count() {
                let grown = shape.with_leaf_at(v);
                next.entry(grown.canonical_form()).or_insert(grown);
            }
        }
        let level = next.into_values().collect();
        cache.push(level);
    }
    cache[n].clone()
}

/// Trees on `nodes` nodes with exactly `leaves` leaves.
pub fn trees_with_leaves(nodes: usize, leaves: usize) -> Vec<Shape> {
    free_trees(nodes)
        .into_iter()
        .filter(|s| s.leaf_count() == leaves)
        .collect()
}

/// Leaf-root topologies in canonical form: exactly `leaves` leaves, at most
/// `max_internal` internal nodes, every internal node of degree at least
/// three. Ordered by internal node count.
pub fn reduced_topologies(leaves: usize, max_internal: usize) -> Vec<Shape> {
    match leaves {
        0 => Vec::new(),
        1 => free_trees(1),
        2 => free_trees(2),
        _ => (1..=max_internal.min(leaves - 2))
            .flat_map(|internal| {
                trees_with_leaves(leaves + internal, leaves)
                    .into_iter()
                    .filter(Shape::is_reduced)
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        // unlabeled free trees on n nodes, n = 1..=12
        let known = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];
        for (i, &want) in known.iter().enumerate() {
            assert_eq!(free_trees(i + 1).len(), want, "n = {}", i + 1);
        }
        assert!(free_trees(0).is_empty());
    }

    #[test]
    fn canonical_form_ignores_labelling() {
        // path 0-1-2-3 written two ways
        let a = Shape {
            adj: vec![vec![1], vec![0, 2], vec![1, 3], vec![2]],
        };
        let b = Shape {
            adj: vec![vec![2], vec![3], vec![0, 3], vec![1, 2]],
        };
        assert_eq!(a.canonical_form(), b.canonical_form());
        let star = Shape {
            adj: vec![vec![1, 2, 3], vec![0], vec![0], vec![0]],
        };
        assert_ne!(a.canonical_form(), star.canonical_form());
    }

    #[test]
    fn reduced_topologies_small() {
        assert_eq!(reduced_topologies(3, 5).len(), 1);
        // star and the two-cherry tree
        assert_eq!(reduced_topologies(4, 2).len(), 2);
        assert_eq!(reduced_topologies(4, 1).len(), 1);
        // star, (3,4) split, and the 3-3-3 caterpillar
        assert_eq!(reduced_topologies(5, 3).len(), 3);
        assert_eq!(reduced_topologies(2, 3)[0].node_count(), 2);
        assert_eq!(reduced_topologies(1, 3)[0].node_count(), 1);
    }

    #[test]
    fn materialised_trees_are_valid() {
        for s in free_trees(7) {
            let t = s.to_tree();
            assert_eq!(t.node_count(), 7);
            assert_eq!(t.leaves().len(), s.leaf_count());
        }
    }
}
