//! Subtree intersection models and radial subtree (RS) models.
//!
//! Both model types hold their own copy of the host tree and the graph they
//! claim to represent. Construction only checks that labels and node ids
//! resolve; whether the model actually represents the graph is the job of
//! [`SubtreeModel::verify`].

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::graph::{Clique, Graph, VertexSet};
use crate::tree::Tree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeModel {
    host: Tree,
    graph: Graph,
    /// Per graph vertex, the sorted host node indices of its subtree.
    sets: Vec<Vec<usize>>,
}

impl SubtreeModel {
    /// Vertices missing from `assignment` get an empty node set, which makes
    /// the model fail verification.
    pub fn new<K, S, I>(host: Tree, graph: Graph, assignment: I) -> Result<Self>
    where
        K: AsRef<str>,
        S: AsRef<str>,
        I: IntoIterator<Item = (K, Vec<S>)>,
    {
        let mut sets = vec![Vec::new(); graph.vertex_count()];
        let mut seen = vec![false; graph.vertex_count()];
        for (v, nodes) in assignment {
            let i = graph.require(v.as_ref())?;
            if seen[i] {
                return Err(Error::InvalidModel(format!(
                    "vertex {:?} assigned twice",
                    v.as_ref()
                )));
            }
            seen[i] = true;
            let mut idx = host.require_all(&nodes)?;
            idx.sort_unstable();
            idx.dedup();
            sets[i] = idx;
        }
        Ok(SubtreeModel { host, graph, sets })
    }

    pub(crate) fn from_sets(host: Tree, graph: Graph, sets: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(sets.len(), graph.vertex_count());
        SubtreeModel { host, graph, sets }
    }

    pub fn host(&self) -> &Tree {
        &self.host
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub(crate) fn set_idx(&self, v: usize) -> &[usize] {
        &self.sets[v]
    }

    /// The host nodes assigned to `v`, sorted by node order.
    pub fn assignment(&self, v: &str) -> Result<Vec<&str>> {
        let i = self.graph.require(v)?;
        Ok(self.sets[i].iter().map(|&x| self.host.id(x)).collect())
    }

    pub fn assignments(&self) -> BTreeMap<&str, Vec<&str>> {
        (0..self.graph.vertex_count())
            .map(|i| {
                (
                    self.graph.label(i),
                    self.sets[i].iter().map(|&x| self.host.id(x)).collect(),
                )
            })
            .collect()
    }

    /// A copy of this model with `v` reassigned to `nodes`.
    pub fn with_assignment<S: AsRef<str>>(&self, v: &str, nodes: &[S]) -> Result<Self> {
        let i = self.graph.require(v)?;
        let mut idx = self.host.require_all(nodes)?;
        idx.sort_unstable();
        idx.dedup();
        let mut out = self.clone();
        out.sets[i] = idx;
        Ok(out)
    }

    /// A copy of this model claiming to represent a different graph on the
    /// same vertex labels.
    pub fn with_graph(&self, graph: Graph) -> Result<Self> {
        let mut sets = vec![Vec::new(); graph.vertex_count()];
        for (i, v) in self.graph.vertices().enumerate() {
            if let Some(j) = graph.index_of(v) {
                sets[j] = self.sets[i].clone();
            }
        }
        Ok(SubtreeModel::from_sets(self.host.clone(), graph, sets))
    }

    /// Per host node, the sorted indices of the vertices covering it.
    pub(crate) fn covers_idx(&self) -> Vec<Vec<usize>> {
        let mut covers = vec![Vec::new(); self.host.node_count()];
        for (v, set) in self.sets.iter().enumerate() {
            for &x in set {
                covers[x].push(v);
            }
        }
        covers
    }

    pub(crate) fn cover_at(&self, x: usize) -> Vec<usize> {
        (0..self.sets.len())
            .filter(|&v| self.sets[v].binary_search(&x).is_ok())
            .collect()
    }

    /// The vertices whose subtrees contain host node `x`.
    pub fn cover(&self, x: &str) -> Result<VertexSet> {
        let ix = self.host.require(x)?;
        Ok(self
            .cover_at(ix)
            .into_iter()
            .map(|v| self.graph.label(v).to_string())
            .collect())
    }

    /// True iff every subtree is nonempty and connected and two subtrees meet
    /// exactly when their vertices are adjacent.
    pub fn verify(&self) -> bool {
        self.first_violation().is_none()
    }

    /// A description of the first problem found by [`verify`](Self::verify).
    pub fn first_violation(&self) -> Option<String> {
        for (v, set) in self.sets.iter().enumerate() {
            if !self.host.is_connected_set(set) {
                return Some(format!(
                    "subtree of {:?} is empty or disconnected",
                    self.graph.label(v)
                ));
            }
        }
        let mut meet: HashSet<(usize, usize)> = HashSet::new();
        for cover in self.covers_idx() {
            for (a, &u) in cover.iter().enumerate() {
                for &v in &cover[a + 1..] {
                    meet.insert((u, v));
                }
            }
        }
        for &(u, v) in &meet {
            if !self.graph.adjacent_idx(u, v) {
                return Some(format!(
                    "subtrees of non-adjacent {:?} and {:?} intersect",
                    self.graph.label(u),
                    self.graph.label(v)
                ));
            }
        }
        if meet.len() != self.graph.edge_count() {
            for (u, v) in self.graph.edges() {
                let (iu, iv) = (
                    self.graph.index_of(u).unwrap(),
                    self.graph.index_of(v).unwrap(),
                );
                if !meet.contains(&(iu.min(iv), iu.max(iv))) {
                    return Some(format!(
                        "subtrees of adjacent {u:?} and {v:?} are disjoint"
                    ));
                }
            }
        }
        None
    }

    pub(crate) fn clique_subtree_idx(&self, members: &[usize]) -> Result<Vec<usize>> {
        let mut iter = members.iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::InvalidModel("empty clique".into()))?;
        let mut acc: BTreeSet<usize> = self.sets[*first].iter().copied().collect();
        for &v in iter {
            let other: BTreeSet<usize> = self.sets[v].iter().copied().collect();
            acc = acc.intersection(&other).copied().collect();
        }
        if acc.is_empty() {
            return Err(Error::HellyViolation);
        }
        Ok(acc.into_iter().collect())
    }

    /// The intersection of the subtrees of the clique's members.
    pub fn clique_subtree(&self, c: &Clique) -> Result<Vec<&str>> {
        let members = c
            .members()
            .iter()
            .map(|v| self.graph.require(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(self
            .clique_subtree_idx(&members)?
            .into_iter()
            .map(|x| self.host.id(x))
            .collect())
    }

    /// Checks that every host node on the tree path from `x_u` to `x_v` is
    /// covered by some vertex of the graph path `p`.
    ///
    /// `p` must be a path in the graph, `x_u` a node of the first vertex's
    /// subtree and `x_v` a node of the last vertex's subtree.
    pub fn check_path_cover(&self, p: &[&str], x_u: &str, x_v: &str) -> Result<bool> {
        let (Some(first), Some(last)) = (p.first(), p.last()) else {
            return Err(Error::InvalidModel("empty graph path".into()));
        };
        if !self.graph.is_path(p) {
            return Err(Error::InvalidModel("not a path in the graph".into()));
        }
        let pv = p
            .iter()
            .map(|v| self.graph.require(v))
            .collect::<Result<Vec<_>>>()?;
        let (iu, iv) = (self.host.require(x_u)?, self.host.require(x_v)?);
        if self.sets[self.graph.require(first)?]
            .binary_search(&iu)
            .is_err()
            || self.sets[self.graph.require(last)?]
                .binary_search(&iv)
                .is_err()
        {
            return Err(Error::InvalidModel(
                "endpoint nodes are not in the endpoint subtrees".into(),
            ));
        }
        Ok(self
            .host
            .path_idx(iu, iv)
            .into_iter()
            .all(|x| pv.iter().any(|&v| self.sets[v].binary_search(&x).is_ok())))
    }

    /// Recovers centers and radii when every subtree is a ball of the host.
    pub fn to_radial(&self) -> Result<RSModel> {
        let mut centers = Vec::with_capacity(self.sets.len());
        let mut radii = Vec::with_capacity(self.sets.len());
        for (v, set) in self.sets.iter().enumerate() {
            // smallest radius wins, then node order
            let found = set
                .iter()
                .filter_map(|&c| {
                    let dist = self.host.bfs(c);
                    let r = set.iter().map(|&x| dist[x]).max()?;
                    (self.host.ball_idx(c, r) == *set).then_some((c, r))
                })
                .min_by_key(|&(c, r)| (r, c));
            let (c, r) = found.ok_or_else(|| {
                Error::InvalidModel(format!(
                    "subtree of {:?} is not a ball of the host",
                    self.graph.label(v)
                ))
            })?;
            centers.push(c);
            radii.push(r);
        }
        Ok(RSModel {
            host: self.host.clone(),
            graph: self.graph.clone(),
            centers,
            radii,
        })
    }
}

/// A model in which every subtree is the ball of some radius around a
/// center node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RSModel {
    host: Tree,
    graph: Graph,
    centers: Vec<usize>,
    radii: Vec<usize>,
}

impl RSModel {
    /// Every vertex of `graph` needs exactly one `(center, radius)` entry.
    pub fn new<K, S, I>(host: Tree, graph: Graph, balls: I) -> Result<Self>
    where
        K: AsRef<str>,
        S: AsRef<str>,
        I: IntoIterator<Item = (K, S, usize)>,
    {
        let n = graph.vertex_count();
        let mut centers = vec![usize::MAX; n];
        let mut radii = vec![0; n];
        for (v, c, r) in balls {
            let i = graph.require(v.as_ref())?;
            if centers[i] != usize::MAX {
                return Err(Error::InvalidModel(format!(
                    "vertex {:?} has two centers",
                    v.as_ref()
                )));
            }
            centers[i] = host.require(c.as_ref())?;
            radii[i] = r;
        }
        if let Some(i) = centers.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidModel(format!(
                "vertex {:?} has no center",
                graph.label(i)
            )));
        }
        Ok(RSModel {
            host,
            graph,
            centers,
            radii,
        })
    }

    pub(crate) fn from_parts(host: Tree, graph: Graph, centers: Vec<usize>, radii: Vec<usize>) -> Self {
        RSModel {
            host,
            graph,
            centers,
            radii,
        }
    }

    pub fn host(&self) -> &Tree {
        &self.host
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub(crate) fn center_idx(&self, v: usize) -> usize {
        self.centers[v]
    }

    pub(crate) fn radius_idx(&self, v: usize) -> usize {
        self.radii[v]
    }

    pub fn center(&self, v: &str) -> Result<&str> {
        Ok(self.host.id(self.centers[self.graph.require(v)?]))
    }

    pub fn radius(&self, v: &str) -> Result<usize> {
        Ok(self.radii[self.graph.require(v)?])
    }

    /// Zero for a graph without vertices.
    pub fn max_radius(&self) -> usize {
        self.radii.iter().copied().max().unwrap_or(0)
    }

    /// `(vertex, center, radius)` triples in vertex order.
    pub fn balls(&self) -> impl Iterator<Item = (&str, &str, usize)> {
        (0..self.graph.vertex_count())
            .map(|i| (self.graph.label(i), self.host.id(self.centers[i]), self.radii[i]))
    }

    /// The subtree model whose sets are the balls.
    pub fn expand(&self) -> SubtreeModel {
        let sets = self
            .centers
            .iter()
            .zip(&self.radii)
            .map(|(&c, &r)| self.host.ball_idx(c, r))
            .collect();
        SubtreeModel::from_sets(self.host.clone(), self.graph.clone(), sets)
    }

    /// Two balls meet iff their centers are at most the radius sum apart, so
    /// this needs one BFS per vertex rather than expanding the balls.
    pub fn verify(&self) -> bool {
        let n = self.graph.vertex_count();
        for u in 0..n {
            let dist = self.host.bfs(self.centers[u]);
            for v in u + 1..n {
                let meet = dist[self.centers[v]] <= self.radii[u] + self.radii[v];
                if meet != self.graph.adjacent_idx(u, v) {
                    return false;
                }
            }
        }
        true
    }
}

pub fn expand_rs(m: &RSModel) -> SubtreeModel {
    m.expand()
}

pub fn verify_subtree_model(m: &SubtreeModel) -> bool {
    m.verify()
}

pub fn cover(m: &SubtreeModel, x: &str) -> Result<VertexSet> {
    m.cover(x)
}
