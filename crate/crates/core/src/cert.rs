//! Leaf-power certificates: a topology, a placement and exact rational edge
//! weights such that adjacent leaves are at weighted distance at most 1 and
//! non-adjacent leaves strictly further. Witnesses scale to integer k-leaf
//! roots by clearing denominators.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::enumerate::reduced_topologies;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::leafroot::{find_placement, leaf_distance_matrix, twin_predecessors, LeafRoot};
use crate::lp::{build_feasibility_system, solve_feasibility, Feasibility, Rational};
use crate::tree::{Tree, TreeBuilder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedLeafRoot {
    host: Tree,
    /// One weight per host edge, keyed by sorted node ids.
    weights: BTreeMap<(String, String), Rational>,
    /// vertex -> leaf id
    placement: BTreeMap<String, String>,
    margin: Rational,
}

fn edge_key(u: &str, v: &str) -> (String, String) {
    if u < v {
        (u.to_string(), v.to_string())
    } else {
        (v.to_string(), u.to_string())
    }
}

impl WeightedLeafRoot {
    /// Weights must be positive and cover every host edge exactly once; the
    /// placement must biject onto the leaves.
    pub fn new(
        host: Tree,
        weights: impl IntoIterator<Item = ((String, String), Rational)>,
        placement: BTreeMap<String, String>,
        margin: Rational,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((u, v), w) in weights {
            let (iu, iv) = (host.require(&u)?, host.require(&v)?);
            if !host.neighbors_idx(iu).contains(&iv) {
                return Err(Error::InvalidLeafRoot(format!("{u:?}-{v:?} is not a host edge")));
            }
            if !w.is_positive() {
                return Err(Error::InvalidLeafRoot(format!("weight of {u:?}-{v:?} is not positive")));
            }
            if map.insert(edge_key(&u, &v), w).is_some() {
                return Err(Error::InvalidLeafRoot(format!("edge {u:?}-{v:?} weighted twice")));
            }
        }
        if map.len() + 1 != host.node_count() {
            return Err(Error::InvalidLeafRoot("every host edge needs a weight".into()));
        }
        let leaves = host.leaves_idx().len();
        let mut used = std::collections::HashSet::new();
        for leaf in placement.values() {
            let x = host.require(leaf)?;
            if host.degree_idx(x) > 1 {
                return Err(Error::NotALeaf(leaf.clone()));
            }
            if !used.insert(x) {
                return Err(Error::InvalidLeafRoot(format!("leaf {leaf:?} used twice")));
            }
        }
        if used.len() != leaves {
            return Err(Error::InvalidLeafRoot(
                "placement must cover every leaf".into(),
            ));
        }
        Ok(WeightedLeafRoot {
            host,
            weights: map,
            placement,
            margin,
        })
    }

    pub fn host(&self) -> &Tree {
        &self.host
    }

    pub fn weights(&self) -> &BTreeMap<(String, String), Rational> {
        &self.weights
    }

    pub fn weight(&self, u: &str, v: &str) -> Option<&Rational> {
        self.weights.get(&edge_key(u, v))
    }

    pub fn placement(&self) -> &BTreeMap<String, String> {
        &self.placement
    }

    pub fn margin(&self) -> &Rational {
        &self.margin
    }

    fn weighted_distances_from(&self, src: usize) -> Vec<Rational> {
        let n = self.host.node_count();
        let mut dist: Vec<Option<Rational>> = vec![None; n];
        dist[src] = Some(Rational::zero());
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].clone().expect("visited");
            for &w in self.host.neighbors_idx(u) {
                if dist[w].is_none() {
                    let e = &self.weights[&edge_key(self.host.id(u), self.host.id(w))];
                    dist[w] = Some(&du + e);
                    queue.push_back(w);
                }
            }
        }
        dist.into_iter().map(|d| d.expect("tree is connected")).collect()
    }

    /// Weighted distance between the leaves of two vertices.
    pub fn vertex_distance(&self, u: &str, v: &str) -> Result<Rational> {
        let lu = self
            .placement
            .get(u)
            .ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
        let lv = self
            .placement
            .get(v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
        let d = self.weighted_distances_from(self.host.require(lu)?);
        Ok(d[self.host.require(lv)?].clone())
    }

    /// True iff adjacent pairs are at distance at most 1 and non-adjacent
    /// pairs at least `1 + margin`, with a positive margin.
    pub fn verify(&self, g: &Graph) -> Result<bool> {
        if g.vertex_count() != self.placement.len() {
            return Ok(false);
        }
        if !self.margin.is_positive() {
            return Ok(false);
        }
        let one = Rational::one();
        let far = &one + &self.margin;
        let labels: Vec<&String> = self.placement.keys().collect();
        for (a, u) in labels.iter().enumerate() {
            let iu = g.require(u)?;
            let d = self.weighted_distances_from(self.host.require(&self.placement[*u])?);
            for v in &labels[a + 1..] {
                let iv = g.require(v)?;
                let duv = &d[self.host.require(&self.placement[*v])?];
                let ok = if g.adjacent_idx(iu, iv) {
                    *duv <= one
                } else {
                    *duv >= far
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Witness(WeightedLeafRoot),
    /// No topology within the bound works. This does not show that the
    /// graph is not a leaf power.
    NoRootWithinBound,
}

/// Searches topologies with `|V(g)|` leaves and at most `max_internal`
/// internal nodes (all of degree at least three), and every placement up to
/// twin symmetry, for a feasible weighted leaf root. Topologies with fewer
/// internal nodes come first.
pub fn certify_leaf_power(g: &Graph, max_internal: usize) -> Result<Certification> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Certification::NoRootWithinBound);
    }
    let topologies = reduced_topologies(n, max_internal);
    let found = topologies
        .par_iter()
        .map(|shape| certify_on_topology(g, &shape.to_tree()))
        .find_map_first(|r| match r {
            Ok(Some(w)) => Some(Ok(w)),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        });
    match found {
        Some(Ok(w)) => Ok(Certification::Witness(w)),
        Some(Err(e)) => Err(e),
        None => Ok(Certification::NoRootWithinBound),
    }
}

/// First feasible placement of `g` on `host`, if any.
pub fn certify_on_topology(g: &Graph, host: &Tree) -> Result<Option<WeightedLeafRoot>> {
    let (leaves, dist) = leaf_distance_matrix(host);
    if leaves.len() != g.vertex_count() {
        return Ok(None);
    }
    let pred = twin_predecessors(&dist);
    let mut error = None;
    let witness = find_placement(g.vertex_count(), &pred, |assigned| {
        let placement: BTreeMap<String, String> = assigned
            .iter()
            .enumerate()
            .map(|(v, &leaf)| (g.label(v).to_string(), host.id(leaves[leaf]).to_string()))
            .collect();
        let result = build_feasibility_system(g, host, &placement)
            .and_then(|s| Ok((solve_feasibility(&s)?, s)));
        match result {
            Ok((Feasibility::Feasible { weights, margin }, s)) => {
                let weights = s.edges.iter().cloned().zip(weights);
                Some(WeightedLeafRoot::new(host.clone(), weights, placement, margin))
            }
            Ok((Feasibility::Infeasible, _)) => None,
            Err(e) => {
                error = Some(e);
                Some(Err(Error::MalformedSystem("aborted".into())))
            }
        }
    });
    if let Some(e) = error {
        return Err(e);
    }
    witness.transpose()
}

/// Multiplies every weight by the least common denominator `L` and replaces
/// each edge of integer weight `e` by a path of `e` edges. The result is an
/// `L`-leaf root of the same graph.
pub fn scale_to_integer_leafroot(w: &WeightedLeafRoot) -> Result<LeafRoot> {
    if !w.margin.is_positive() {
        return Err(Error::NotStrictlyFeasible);
    }
    let lcd = w
        .weights
        .values()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let k = lcd
        .to_usize()
        .ok_or_else(|| Error::InvalidLeafRoot("scaled k does not fit in usize".into()))?;
    let mut b = TreeBuilder::new();
    for id in w.host.nodes() {
        b.add_node(id)?;
    }
    let mut taken: HashMap<String, ()> = w.host.nodes().map(|s| (s.to_string(), ())).collect();
    for ((u, v), weight) in &w.weights {
        let scaled = weight * Rational::from_integer(lcd.clone());
        let len = scaled
            .to_integer()
            .to_usize()
            .ok_or_else(|| Error::InvalidLeafRoot("edge too long".into()))?;
        let (iu, iv) = (w.host.require(u)?, w.host.require(v)?);
        let mut prev = iu;
        for step in 1..len {
            let mut name = format!("{u}~{v}:{step}");
            while taken.contains_key(&name) {
                name.push('#');
            }
            taken.insert(name.clone(), ());
            let next = b.add_node(name)?;
            b.add_edge(prev, next);
            prev = next;
        }
        b.add_edge(prev, iv);
    }
    let tree = b.build()?;
    LeafRoot::new(tree, k, w.placement.clone())
}
