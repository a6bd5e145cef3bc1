//! Simple undirected graphs with stable string labels, plus the chordal
//! machinery (maximum cardinality search, perfect elimination orderings,
//! maximal cliques) the rest of the crate is built on.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

pub type VertexSet = BTreeSet<String>;

/// An immutable simple undirected graph.
///
/// Vertices keep the order they were given in; adjacency lists are sorted by
/// vertex index.
#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from labels and label pairs, rejecting self-loops,
    /// duplicate edges, duplicate labels and dangling endpoints.
    pub fn new<S, I, E, P>(vertices: I, edges: E) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = S>,
        E: IntoIterator<Item = (P, P)>,
        P: AsRef<str>,
    {
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        for v in vertices {
            let v = v.as_ref().to_string();
            if index.insert(v.clone(), labels.len()).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex {v:?}")));
            }
            labels.push(v);
        }
        let mut adj = vec![Vec::new(); labels.len()];
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let iu = *index
                .get(u)
                .ok_or_else(|| Error::InvalidGraph(format!("edge endpoint {u:?} not a vertex")))?;
            let iv = *index
                .get(v)
                .ok_or_else(|| Error::InvalidGraph(format!("edge endpoint {v:?} not a vertex")))?;
            if iu == iv {
                return Err(Error::InvalidGraph(format!("self-loop at {u:?}")));
            }
            if adj[iu].contains(&iv) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u:?}-{v:?}")));
            }
            adj[iu].push(iv);
            adj[iv].push(iu);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { labels, index, adj })
    }

    /// Builds a graph whose edges are all pairs inside each of the given
    /// vertex groups. Pairs shared by several groups are added once.
    pub fn from_cliques<S: AsRef<str>>(vertices: &[S], cliques: &[Vec<S>]) -> Result<Self> {
        let mut edges = BTreeSet::new();
        for clique in cliques {
            for (i, u) in clique.iter().enumerate() {
                for v in &clique[i + 1..] {
                    let (u, v) = (u.as_ref().to_string(), v.as_ref().to_string());
                    if u == v {
                        continue;
                    }
                    edges.insert(if u < v { (u, v) } else { (v, u) });
                }
            }
        }
        Graph::new(vertices.iter().map(|s| s.as_ref()), edges)
    }

    pub(crate) fn from_adjacency(labels: Vec<String>, adj: Vec<Vec<usize>>) -> Self {
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Graph { labels, index, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, v: &str) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub(crate) fn require(&self, v: &str) -> Result<usize> {
        self.index_of(v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn contains(&self, v: &str) -> bool {
        self.index.contains_key(v)
    }

    pub(crate) fn neighbors_idx(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub(crate) fn adjacent_idx(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.adjacent_idx(i, j),
            _ => false,
        }
    }

    pub fn neighbors(&self, v: &str) -> Result<Vec<&str>> {
        let i = self.require(v)?;
        Ok(self.adj[i].iter().map(|&j| self.label(j)).collect())
    }

    /// Edges as label pairs with `u < v` lexicographically, sorted.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                if i < j {
                    let (a, b) = (self.label(i), self.label(j));
                    out.push(if a < b { (a, b) } else { (b, a) });
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The subgraph induced by the vertices not in `removed`.
    pub fn without(&self, removed: &VertexSet) -> Graph {
        let keep: Vec<usize> = (0..self.vertex_count())
            .filter(|&i| !removed.contains(self.label(i)))
            .collect();
        self.induced_idx(&keep)
    }

    pub(crate) fn induced_idx(&self, keep: &[usize]) -> Graph {
        let mut new_index = vec![usize::MAX; self.vertex_count()];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = k;
        }
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let adj = keep
            .iter()
            .map(|&i| {
                self.adj[i]
                    .iter()
                    .filter_map(|&j| (new_index[j] != usize::MAX).then_some(new_index[j]))
                    .collect()
            })
            .collect();
        Graph::from_adjacency(labels, adj)
    }

    /// Connected components as lists of vertex indices, in order of first vertex.
    pub(crate) fn components_idx(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.components_idx().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// True iff the vertices form a path `v0 - v1 - ... - vk` in this graph.
    pub fn is_path(&self, path: &[&str]) -> bool {
        path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}

/// A vertex set that is known to be pairwise adjacent in some graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clique {
    members: VertexSet,
}

impl Clique {
    pub fn new<S: AsRef<str>>(g: &Graph, members: impl IntoIterator<Item = S>) -> Result<Self> {
        let members: VertexSet = members.into_iter().map(|s| s.as_ref().to_string()).collect();
        let idx = members
            .iter()
            .map(|v| g.require(v))
            .collect::<Result<Vec<_>>>()?;
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                if !g.adjacent_idx(i, j) {
                    return Err(Error::NotAClique(format!(
                        "{} and {} are not adjacent",
                        g.label(i),
                        g.label(j)
                    )));
                }
            }
        }
        Ok(Clique { members })
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: &str) -> bool {
        self.members.contains(v)
    }
}

/// Maximum cardinality search. Returns vertex indices in visiting order; the
/// reverse of this order is a perfect elimination ordering iff the graph is
/// chordal.
fn maximum_cardinality_search(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        // ties go to the lowest index so the order is deterministic
        let v = (0..n)
            .filter(|&v| !numbered[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unnumbered vertex remains");
        numbered[v] = true;
        order.push(v);
        for &w in g.neighbors_idx(v) {
            if !numbered[w] {
                weight[w] += 1;
            }
        }
    }
    order
}

/// A perfect elimination ordering of `g`, or `None` if `g` is not chordal.
pub(crate) fn perfect_elimination_ordering(g: &Graph) -> Option<Vec<usize>> {
    let mut peo = maximum_cardinality_search(g);
    peo.reverse();
    is_perfect_elimination_ordering(g, &peo).then_some(peo)
}

fn is_perfect_elimination_ordering(g: &Graph, order: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut pos = vec![0usize; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    for &v in order {
        let later: Vec<usize> = g
            .neighbors_idx(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] > pos[v])
            .collect();
        let Some(&parent) = later.iter().min_by_key(|&&w| pos[w]) else {
            continue;
        };
        if later
            .iter()
            .any(|&w| w != parent && !g.adjacent_idx(parent, w))
        {
            return false;
        }
    }
    true
}

pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_ordering(g).is_some()
}

/// Maximal cliques of a chordal graph, sorted by their member labels.
pub fn maximal_cliques(g: &Graph) -> Result<Vec<Clique>> {
    Ok(maximal_cliques_idx(g)?
        .into_iter()
        .map(|c| Clique {
            members: c.into_iter().map(|i| g.label(i).to_string()).collect(),
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect())
}

/// Maximal cliques as sorted index lists. One candidate per vertex (the
/// vertex plus its later neighbours in the elimination order); candidates
/// contained in another candidate are dropped.
pub(crate) fn maximal_cliques_idx(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let peo = perfect_elimination_ordering(g).ok_or(Error::NotChordal)?;
    let n = g.vertex_count();
    let mut pos = vec![0usize; n];
    for (k, &v) in peo.iter().enumerate() {
        pos[v] = k;
    }
    let mut candidates: Vec<Vec<usize>> = peo
        .iter()
        .map(|&v| {
            let mut c: Vec<usize> = g
                .neighbors_idx(v)
                .iter()
                .copied()
                .filter(|&w| pos[w] > pos[v])
                .collect();
            c.push(v);
            c.sort_unstable();
            c
        })
        .collect();
    candidates.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    candidates.dedup();
    let mut maximal: Vec<Vec<usize>> = Vec::new();
    for c in candidates {
        let covered = maximal
            .iter()
            .any(|m| c.iter().all(|x| m.binary_search(x).is_ok()));
        if !covered {
            maximal.push(c);
        }
    }
    maximal.sort();
    Ok(maximal)
}

/// True iff deleting `s` disconnects some pair of remaining vertices that
/// were connected before.
pub fn is_separator(g: &Graph, s: &VertexSet) -> Result<bool> {
    for v in s {
        g.require(v)?;
    }
    let rest = g.without(s);
    let before = g.components_idx();
    // A component of g split by s shows up as more than one component among
    // its surviving vertices.
    let mut comp_of = vec![0usize; rest.vertex_count()];
    for (c, comp) in rest.components_idx().iter().enumerate() {
        for &i in comp {
            comp_of[i] = c;
        }
    }
    for comp in before {
        let mut seen = BTreeSet::new();
        for i in comp {
            if let Some(j) = rest.index_of(g.label(i)) {
                seen.insert(comp_of[j]);
            }
        }
        if seen.len() > 1 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True iff every connected component is complete.
pub fn is_cluster_graph(g: &Graph) -> bool {
    g.components_idx().iter().all(|comp| {
        comp.iter()
            .all(|&v| g.neighbors_idx(v).len() + 1 == comp.len())
    })
}
