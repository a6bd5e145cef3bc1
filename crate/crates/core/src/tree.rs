//! Unweighted trees with string node ids and the hop-count metric helpers
//! used by the model and audit code.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Tree {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.adj == other.adj
    }
}

impl Eq for Tree {}

/// Incremental construction of a tree; validated on `build`.
#[derive(Debug, Default, Clone)]
pub struct TreeBuilder {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
}

impl TreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node, returning its index. Fails on a duplicate id.
    pub fn add_node(&mut self, id: impl Into<String>) -> Result<usize> {
        let id = id.into();
        if self.index.contains_key(&id) {
            return Err(Error::InvalidTree(format!("duplicate node {id:?}")));
        }
        let i = self.ids.len();
        self.index.insert(id.clone(), i);
        self.ids.push(id);
        Ok(i)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    pub fn add_edge_by_id(&mut self, u: &str, v: &str) -> Result<()> {
        let iu = *self
            .index
            .get(u)
            .ok_or_else(|| Error::InvalidTree(format!("edge endpoint {u:?} not a node")))?;
        let iv = *self
            .index
            .get(v)
            .ok_or_else(|| Error::InvalidTree(format!("edge endpoint {v:?} not a node")))?;
        self.add_edge(iu, iv);
        Ok(())
    }

    /// Adds a path of `len` new edges hanging off `from`, using `fresh` to name
    /// the new nodes. Returns the index of the far end (`from` when `len == 0`).
    pub fn add_pendant_path(
        &mut self,
        from: usize,
        len: usize,
        mut fresh: impl FnMut(usize) -> String,
    ) -> Result<usize> {
        let mut prev = from;
        for step in 1..=len {
            let next = self.add_node(fresh(step))?;
            self.add_edge(prev, next);
            prev = next;
        }
        Ok(prev)
    }

    pub fn build(self) -> Result<Tree> {
        Tree::from_parts(self.ids, &self.edges)
    }
}

impl Tree {
    pub fn new<S, I, E, P>(nodes: I, edges: E) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator<Item = S>,
        E: IntoIterator<Item = (P, P)>,
        P: AsRef<str>,
    {
        let mut b = TreeBuilder::new();
        for n in nodes {
            b.add_node(n)?;
        }
        for (u, v) in edges {
            b.add_edge_by_id(u.as_ref(), v.as_ref())?;
        }
        b.build()
    }

    /// A tree with a single node.
    pub fn singleton(id: impl Into<String>) -> Self {
        Tree::new([id.into()], Vec::<(&str, &str)>::new()).expect("single node is a tree")
    }

    pub(crate) fn from_parts(ids: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = ids.len();
        if n == 0 {
            return Err(Error::InvalidTree("tree has no nodes".into()));
        }
        if edges.len() + 1 != n {
            return Err(Error::InvalidTree(format!(
                "{} nodes need {} edges, got {}",
                n,
                n - 1,
                edges.len()
            )));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidTree(format!("duplicate node {id:?}")));
            }
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidTree("edge endpoint out of range".into()));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop at {:?}", ids[u])));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidTree(format!(
                    "duplicate edge {:?}-{:?}",
                    ids[u], ids[v]
                )));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let tree = Tree { ids, index, adj };
        // n - 1 edges plus connectivity means acyclic
        if tree.bfs(0).contains(&usize::MAX) {
            return Err(Error::InvalidTree("not connected".into()));
        }
        Ok(tree)
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = &str> {
        self.ids.iter().map(String::as_str)
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub(crate) fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    pub(crate) fn neighbors_idx(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub(crate) fn degree_idx(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn degree(&self, id: &str) -> Result<usize> {
        Ok(self.degree_idx(self.require(id)?))
    }

    /// Edges as id pairs with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::with_capacity(self.node_count().saturating_sub(1));
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                if i < j {
                    let (a, b) = (self.id(i), self.id(j));
                    out.push(if a < b { (a, b) } else { (b, a) });
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn edges_idx(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.node_count().saturating_sub(1));
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Leaves are nodes of degree at most one, so a single-node tree has one leaf.
    pub(crate) fn leaves_idx(&self) -> Vec<usize> {
        (0..self.node_count())
            .filter(|&i| self.degree_idx(i) <= 1)
            .collect()
    }

    pub fn leaves(&self) -> Vec<&str> {
        self.leaves_idx().into_iter().map(|i| self.id(i)).collect()
    }

    pub fn is_leaf(&self, id: &str) -> Result<bool> {
        Ok(self.degree_idx(self.require(id)?) <= 1)
    }

    /// Hop distances from `src` to every node.
    pub(crate) fn bfs(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.node_count()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Nodes within `radius` hops of `center`, sorted by index.
    pub(crate) fn ball_idx(&self, center: usize, radius: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.node_count()];
        dist[center] = 0;
        let mut out = vec![center];
        let mut queue = VecDeque::from([center]);
        while let Some(u) = queue.pop_front() {
            if dist[u] == radius {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    out.push(w);
                    queue.push_back(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn distance_idx(&self, u: usize, v: usize) -> usize {
        if u == v {
            return 0;
        }
        self.bfs(u)[v]
    }

    pub fn distance(&self, u: &str, v: &str) -> Result<usize> {
        Ok(self.distance_idx(self.require(u)?, self.require(v)?))
    }

    /// The node sequence of the unique path from `u` to `v`.
    pub(crate) fn path_idx(&self, u: usize, v: usize) -> Vec<usize> {
        let parent = self.parents_towards(v);
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            cur = parent[cur];
            path.push(cur);
        }
        path
    }

    pub fn path(&self, u: &str, v: &str) -> Result<Vec<&str>> {
        let (iu, iv) = (self.require(u)?, self.require(v)?);
        Ok(self
            .path_idx(iu, iv)
            .into_iter()
            .map(|i| self.id(i))
            .collect())
    }

    /// Parent pointers of a BFS rooted at `root`; the root points to itself.
    pub(crate) fn parents_towards(&self, root: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.node_count()];
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// Whether `x` lies on the path between `u` and `v` (endpoints included).
    pub fn on_path(&self, x: &str, u: &str, v: &str) -> Result<bool> {
        let (ix, iu, iv) = (self.require(x)?, self.require(u)?, self.require(v)?);
        let dx = self.bfs(ix);
        Ok(dx[iu] + dx[iv] == self.distance_idx(iu, iv))
    }

    pub(crate) fn median_idx(&self, u: usize, v: usize, w: usize) -> usize {
        // The median is the unique minimiser of the summed distance.
        let (du, dv, dw) = (self.bfs(u), self.bfs(v), self.bfs(w));
        (0..self.node_count())
            .min_by_key(|&x| (du[x] + dv[x] + dw[x], x))
            .expect("tree is nonempty")
    }

    /// The unique node on all three pairwise paths. With repeated arguments
    /// this is the repeated node.
    pub fn median(&self, u: &str, v: &str, w: &str) -> Result<&str> {
        let (iu, iv, iw) = (self.require(u)?, self.require(v)?, self.require(w)?);
        Ok(self.id(self.median_idx(iu, iv, iw)))
    }

    pub(crate) fn connector_idx(&self, leaf: usize) -> Result<usize> {
        if self.degree_idx(leaf) > 1 {
            return Err(Error::NotALeaf(self.id(leaf).to_string()));
        }
        let dist = self.bfs(leaf);
        (0..self.node_count())
            .filter(|&x| self.degree_idx(x) >= 3)
            .min_by_key(|&x| dist[x])
            .ok_or(Error::NoConnector)
    }

    /// The nearest node of degree at least three to a leaf.
    pub fn connector(&self, leaf: &str) -> Result<&str> {
        Ok(self.id(self.connector_idx(self.require(leaf)?)?))
    }

    /// Whether the given node indices induce a connected subtree. The empty
    /// set is not considered connected.
    pub(crate) fn is_connected_set(&self, set: &[usize]) -> bool {
        let Some(&start) = set.first() else {
            return false;
        };
        let mut member = vec![false; self.node_count()];
        for &x in set {
            member[x] = true;
        }
        let mut seen = vec![false; self.node_count()];
        seen[start] = true;
        let mut count = 1;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if member[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        let distinct = {
            let mut s = set.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len()
        };
        count == distinct
    }

    pub(crate) fn connecting_path_idx(&self, a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
        if !self.is_connected_set(a) || !self.is_connected_set(b) {
            return Err(Error::NotConnected);
        }
        let mut in_b = vec![false; self.node_count()];
        for &x in b {
            in_b[x] = true;
        }
        if a.iter().any(|&x| in_b[x]) {
            return Err(Error::SubtreesNotDisjoint);
        }
        let mut parent = vec![usize::MAX; self.node_count()];
        let mut queue = VecDeque::new();
        for &x in a {
            parent[x] = x;
            queue.push_back(x);
        }
        while let Some(u) = queue.pop_front() {
            if in_b[u] {
                let mut path = vec![u];
                let mut cur = u;
                while parent[cur] != cur {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Ok(path);
            }
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        unreachable!("trees are connected")
    }

    /// The shortest path joining two disjoint connected node sets; it starts
    /// in `a`, ends in `b` and has no other node in either set.
    pub fn connecting_path<S: AsRef<str>>(&self, a: &[S], b: &[S]) -> Result<Vec<&str>> {
        let a = self.require_all(a)?;
        let b = self.require_all(b)?;
        Ok(self
            .connecting_path_idx(&a, &b)?
            .into_iter()
            .map(|i| self.id(i))
            .collect())
    }

    pub(crate) fn require_all<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>> {
        ids.iter().map(|s| self.require(s.as_ref())).collect()
    }

    /// Subdivides every edge once. New nodes get ids `prefix{k}` for the
    /// smallest free `k`. Returns the new tree; original ids are kept.
    pub fn subdivide(&self, prefix: &str) -> Tree {
        let mut b = TreeBuilder::new();
        for id in &self.ids {
            b.add_node(id.clone()).expect("ids are unique");
        }
        let mut fresh = FreshIds::new(prefix, |s| self.contains(s));
        for (u, v) in self.edges_idx() {
            let m = b.add_node(fresh.next()).expect("fresh id");
            b.add_edge(u, m);
            b.add_edge(m, v);
        }
        b.build().expect("subdivision of a tree is a tree")
    }

    pub fn diameter(&self) -> usize {
        let d0 = self.bfs(0);
        let far = (0..self.node_count()).max_by_key(|&x| d0[x]).unwrap_or(0);
        self.bfs(far).into_iter().max().unwrap_or(0)
    }

    /// True iff every node of degree at least three lies on a single path.
    /// Paths and stars count. Pendant paths may be longer than one edge.
    pub fn is_caterpillar_like(&self) -> bool {
        let branch: Vec<usize> = (0..self.node_count())
            .filter(|&x| self.degree_idx(x) >= 3)
            .collect();
        if branch.len() <= 2 {
            return true;
        }
        // All branch nodes on the path between the two farthest-apart ones.
        let d0 = self.bfs(branch[0]);
        let end = *branch.iter().max_by_key(|&&x| d0[x]).unwrap();
        let de = self.bfs(end);
        let other = *branch.iter().max_by_key(|&&x| de[x]).unwrap();
        let dother = self.bfs(other);
        branch
            .iter()
            .all(|&x| de[x] + dother[x] == de[other])
    }
}

/// Generates ids `prefix0`, `prefix1`, ... skipping ones already taken.
pub(crate) struct FreshIds<F> {
    prefix: String,
    next: usize,
    taken: F,
}

impl<F: Fn(&str) -> bool> FreshIds<F> {
    pub(crate) fn new(prefix: &str, taken: F) -> Self {
        FreshIds {
            prefix: prefix.to_string(),
            next: 0,
            taken,
        }
    }

    pub(crate) fn next(&mut self) -> String {
        loop {
            let id = format!("{}{}", self.prefix, self.next);
            self.next += 1;
            if !(self.taken)(&id) {
                return id;
            }
        }
    }
}
