//! The `R_n` family: construction, its rooted directed path (RDP) model on a
//! caterpillar, and an explicit RS model whose largest radius is `2^n - 1`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{maximal_cliques, Graph, VertexSet};
use crate::model::{RSModel, SubtreeModel};
use crate::tree::{Tree, TreeBuilder};

/// Largest `n` accepted by [`build_exponential_rs_model`]; its host has
/// `3 * 2^(n-1)` nodes.
pub const MAX_EXPONENTIAL_N: usize = 16;

/// The exponential model satisfies `max radius <= RADIUS_CONSTANT * 2^n`.
pub const RADIUS_CONSTANT: u64 = 1;

/// Root of the arborescence used by [`build_rdp_model`].
pub const RDP_ROOT: &str = "x1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RnGraph {
    n: usize,
    graph: Graph,
}

impl RnGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn a(i: usize) -> String {
        format!("a{i}")
    }

    pub fn b(i: usize) -> String {
        format!("b{i}")
    }

    pub fn c(i: usize) -> String {
        format!("c{i}")
    }

    pub fn d(i: usize) -> String {
        format!("d{i}")
    }

    /// `C_i = {a_i, b_i, c_i, d_i}` for `1 <= i <= n`.
    pub fn clique(&self, i: usize) -> VertexSet {
        assert!((1..=self.n).contains(&i), "C_{i} undefined for n = {}", self.n);
        [Self::a(i), Self::b(i), Self::c(i), Self::d(i)].into()
    }

    /// `C'_i = {a_j : i <= j <= n} + {b_i, b_(i+1), c_i}` for `1 <= i < n`.
    pub fn spine_clique(&self, i: usize) -> VertexSet {
        assert!((1..self.n).contains(&i), "C'_{i} undefined for n = {}", self.n);
        spine_clique(self.n, i)
    }

    /// All `2n - 1` maximal cliques as given by the definition.
    pub fn clique_family(&self) -> BTreeSet<VertexSet> {
        (1..=self.n)
            .map(|i| self.clique(i))
            .chain((1..self.n).map(|i| self.spine_clique(i)))
            .collect()
    }

    /// Rebuilds the `R_n` wrapper around `g` if `g` is exactly `R_n` for
    /// `n = |V| / 4`, including vertex order.
    pub fn recognize(g: &Graph) -> Result<Self> {
        let n = g.vertex_count() / 4;
        if !g.vertex_count().is_multiple_of(4) || n < 3 {
            return Err(Error::NotAModelOfRn(format!(
                "{} vertices is not 4n for n >= 3",
                g.vertex_count()
            )));
        }
        let r = build_rn(n)?;
        if r.graph != *g {
            return Err(Error::NotAModelOfRn(format!("graph differs from R_{n}")));
        }
        Ok(r)
    }
}

fn spine_clique(n: usize, i: usize) -> VertexSet {
    (i..=n)
        .map(RnGraph::a)
        .chain([RnGraph::b(i), RnGraph::b(i + 1), RnGraph::c(i)])
        .collect()
}

pub fn build_rn(n: usize) -> Result<RnGraph> {
    if n < 3 {
        return Err(Error::FamilyRange);
    }
    let vertices: Vec<String> = (1..=n)
        .flat_map(|i| [RnGraph::a(i), RnGraph::b(i), RnGraph::c(i), RnGraph::d(i)])
        .collect();
    let cliques: Vec<Vec<String>> = (1..=n)
        .map(|i| vec![RnGraph::a(i), RnGraph::b(i), RnGraph::c(i), RnGraph::d(i)])
        .chain((1..n).map(|i| spine_clique(n, i).into_iter().collect()))
        .collect();
    let graph = Graph::from_cliques(&vertices, &cliques)?;
    let r = RnGraph { n, graph };
    let found: BTreeSet<VertexSet> = maximal_cliques(&r.graph)?
        .into_iter()
        .map(|c| c.members().clone())
        .collect();
    if found != r.clique_family() {
        return Err(Error::ConstructionInvalid(format!(
            "R_{n} maximal cliques differ from the defining family"
        )));
    }
    Ok(r)
}

/// The caterpillar model: spine `x1..xn` rooted at `x1`, leaf `yi` on each
/// `xi`. `a_i` is the path `x1..xi yi`, `b_i` the path `x(i-1) xi yi`
/// (starting at `x1` for `i = 1`), `c_i` is `xi yi` and `d_i` is `yi`.
pub fn build_rdp_model(r: &RnGraph) -> SubtreeModel {
    let n = r.n;
    let x = |i: usize| format!("x{i}");
    let y = |i: usize| format!("y{i}");
    let nodes: Vec<String> = (1..=n).flat_map(|i| [x(i), y(i)]).collect();
    let edges: Vec<(String, String)> = (1..n)
        .map(|i| (x(i), x(i + 1)))
        .chain((1..=n).map(|i| (x(i), y(i))))
        .collect();
    let host = Tree::new(nodes, edges).expect("caterpillar is a tree");
    let mut assignment = Vec::with_capacity(4 * n);
    for i in 1..=n {
        let mut a: Vec<String> = (1..=i).map(x).collect();
        a.push(y(i));
        let b = if i == 1 {
            vec![x(1), y(1)]
        } else {
            vec![x(i - 1), x(i), y(i)]
        };
        assignment.push((RnGraph::a(i), a));
        assignment.push((RnGraph::b(i), b));
        assignment.push((RnGraph::c(i), vec![x(i), y(i)]));
        assignment.push((RnGraph::d(i), vec![y(i)]));
    }
    SubtreeModel::new(host, r.graph.clone(), assignment).expect("labels resolve")
}

/// True iff every subtree is a path that runs away from `root`: it is the
/// tree path from its node closest to the root down to its deepest node.
pub fn is_rooted_directed_path_model(m: &SubtreeModel, root: &str) -> Result<bool> {
    let host = m.host();
    let r = host.require(root)?;
    let depth = host.bfs(r);
    for v in 0..m.graph().vertex_count() {
        let set = m.set_idx(v);
        let (Some(&top), Some(&bottom)) = (
            set.iter().min_by_key(|&&x| depth[x]),
            set.iter().max_by_key(|&&x| depth[x]),
        ) else {
            return Ok(false);
        };
        let mut path = host.path_idx(bottom, top);
        path.sort_unstable();
        // the path must descend monotonically: top is an ancestor of bottom
        if path != set || depth[bottom] - depth[top] + 1 != set.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Spine positions of the hair attachment points: `P_i = 2^(i-1) - 1`.
fn attach_position(i: usize) -> usize {
    (1usize << (i - 1)) - 1
}

/// Hair lengths: `h_1 = 2`, `h_i = 2^(i-1)` otherwise. Always even, and
/// longer than `P_i` so that no `a_j` with `j > i` reaches the tip `y_i`.
fn hair_length(i: usize) -> usize {
    if i == 1 {
        2
    } else {
        1usize << (i - 1)
    }
}

/// An RS model of `R_n` on a caterpillar with pendant paths.
///
/// The spine has nodes `s0..s{P_n}`. Hair `i` is a path of `h_i` nodes
/// hanging off `s{P_i}` and ending at the tip `y{i}`; its inner nodes are
/// `h{i}_{depth}`. Hairs 1 and n continue the spine at its ends. Gaps
/// between consecutive attachment points double, which is the growth the
/// audit checks demand. Balls:
///
/// * `d_i`: the tip, radius 0.
/// * `c_i`: the whole hair including its attachment node.
/// * `b_i`: centered at the tip, reaching back along the spine exactly to
///   `P_(i-1)`; `b_1` equals `c_1`.
/// * `a_i`: centered at the tip, reaching back along the spine exactly to
///   `s0`.
///
/// The largest radius is `r(a_n) = 2^n - 1`.
pub fn build_exponential_rs_model(r: &RnGraph) -> Result<RSModel> {
    let n = r.n;
    if !(3..=MAX_EXPONENTIAL_N).contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    let spine_len = attach_position(n);
    let mut b = TreeBuilder::new();
    let spine: Vec<usize> = (0..=spine_len)
        .map(|p| b.add_node(format!("s{p}")))
        .collect::<Result<_>>()?;
    for w in spine.windows(2) {
        b.add_edge(w[0], w[1]);
    }
    // hair[i][depth], depth 0 being the spine attachment node
    let mut hair: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for i in 1..=n {
        let h = hair_length(i);
        let mut nodes = vec![spine[attach_position(i)]];
        for depth in 1..=h {
            let id = if depth == h {
                format!("y{i}")
            } else {
                format!("h{i}_{depth}")
            };
            let node = b.add_node(id)?;
            b.add_edge(*nodes.last().unwrap(), node);
            nodes.push(node);
        }
        hair[i] = nodes;
    }
    let host = b.build()?;

    let g = r.graph();
    let mut centers = vec![0; g.vertex_count()];
    let mut radii = vec![0; g.vertex_count()];
    let mut set = |label: String, center: usize, radius: usize| {
        let v = g.index_of(&label).expect("R_n label");
        centers[v] = center;
        radii[v] = radius;
    };
    for i in 1..=n {
        let h = hair_length(i);
        let tip = hair[i][h];
        set(RnGraph::d(i), tip, 0);
        set(RnGraph::c(i), hair[i][h / 2], h / 2);
        if i == 1 {
            set(RnGraph::b(i), hair[i][h / 2], h / 2);
        } else {
            set(RnGraph::b(i), tip, h + attach_position(i) - attach_position(i - 1));
        }
        set(RnGraph::a(i), tip, h + attach_position(i));
    }
    let model = RSModel::from_parts(host, g.clone(), centers, radii);
    if !model.verify() {
        let why = model
            .expand()
            .first_violation()
            .unwrap_or_else(|| "ball intersection mismatch".into());
        return Err(Error::ConstructionInvalid(why));
    }
    Ok(model)
}
