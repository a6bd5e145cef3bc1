//! JSON formats. Keys are alphabetical, maps are sorted and lists keep the
//! object's own order, so serialising the same value always yields the same
//! bytes and every emitted document parses back to an equal value.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::audit::AuditReport;
use crate::cert::WeightedLeafRoot;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::leafroot::LeafRoot;
use crate::lp::Rational;
use crate::model::{RSModel, SubtreeModel};
use crate::tree::Tree;

pub trait JsonFormat: Sized {
    fn to_json(&self) -> String;
    fn from_json(text: &str) -> Result<Self>;
}

fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serialises");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    edges: Vec<(String, String)>,
    vertices: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeDoc {
    edges: Vec<(String, String)>,
    nodes: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubtreeModelDoc {
    assignment: BTreeMap<String, Vec<String>>,
    graph: GraphDoc,
    host: TreeDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RSModelDoc {
    centers: BTreeMap<String, String>,
    graph: GraphDoc,
    host: TreeDoc,
    radii: BTreeMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LeafRootDoc {
    k: usize,
    placement: BTreeMap<String, String>,
    tree: TreeDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalDoc {
    den: String,
    num: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightDoc {
    den: String,
    num: String,
    u: String,
    v: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightedLeafRootDoc {
    margin: RationalDoc,
    placement: BTreeMap<String, String>,
    tree: TreeDoc,
    weights: Vec<WeightDoc>,
}

fn graph_doc(g: &Graph) -> GraphDoc {
    GraphDoc {
        edges: g
            .edges()
            .into_iter()
            .map(|(u, v)| (u.to_string(), v.to_string()))
            .collect(),
        vertices: g.vertices().map(str::to_string).collect(),
    }
}

fn graph_from(doc: GraphDoc) -> Result<Graph> {
    Graph::new(doc.vertices, doc.edges)
}

fn tree_doc(t: &Tree) -> TreeDoc {
    TreeDoc {
        edges: t
            .edges()
            .into_iter()
            .map(|(u, v)| (u.to_string(), v.to_string()))
            .collect(),
        nodes: t.nodes().map(str::to_string).collect(),
    }
}

fn tree_from(doc: TreeDoc) -> Result<Tree> {
    Tree::new(doc.nodes, doc.edges)
}

fn parse_int(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("{s:?} is not a decimal integer")));
    }
    BigInt::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

fn rational_from(num: &str, den: &str) -> Result<Rational> {
    let (num, den) = (parse_int(num)?, parse_int(den)?);
    if !den.is_positive() {
        return Err(Error::Parse("denominator must be positive".into()));
    }
    Ok(Rational::new(num, den))
}

fn rational_doc(r: &Rational) -> RationalDoc {
    RationalDoc {
        den: r.denom().to_string(),
        num: r.numer().to_string(),
    }
}

impl JsonFormat for Graph {
    fn to_json(&self) -> String {
        render(&graph_doc(self))
    }

    fn from_json(text: &str) -> Result<Self> {
        graph_from(serde_json::from_str(text)?)
    }
}

impl JsonFormat for Tree {
    fn to_json(&self) -> String {
        render(&tree_doc(self))
    }

    fn from_json(text: &str) -> Result<Self> {
        tree_from(serde_json::from_str(text)?)
    }
}

impl JsonFormat for SubtreeModel {
    fn to_json(&self) -> String {
        render(&SubtreeModelDoc {
            assignment: self
                .assignments()
                .into_iter()
                .map(|(v, xs)| (v.to_string(), xs.into_iter().map(str::to_string).collect()))
                .collect(),
            graph: graph_doc(self.graph()),
            host: tree_doc(self.host()),
        })
    }

    fn from_json(text: &str) -> Result<Self> {
        let doc: SubtreeModelDoc = serde_json::from_str(text)?;
        SubtreeModel::new(tree_from(doc.host)?, graph_from(doc.graph)?, doc.assignment)
    }
}

impl JsonFormat for RSModel {
    fn to_json(&self) -> String {
        let mut centers = BTreeMap::new();
        let mut radii = BTreeMap::new();
        for (v, c, r) in self.balls() {
            centers.insert(v.to_string(), c.to_string());
            radii.insert(v.to_string(), r);
        }
        render(&RSModelDoc {
            centers,
            graph: graph_doc(self.graph()),
            host: tree_doc(self.host()),
            radii,
        })
    }

    fn from_json(text: &str) -> Result<Self> {
        let doc: RSModelDoc = serde_json::from_str(text)?;
        if doc.centers.len() != doc.radii.len()
            || doc.centers.keys().zip(doc.radii.keys()).any(|(a, b)| a != b)
        {
            return Err(Error::Parse("centers and radii name different vertices".into()));
        }
        let balls: Vec<(String, String, usize)> = doc
            .centers
            .into_iter()
            .zip(doc.radii.into_values())
            .map(|((v, c), r)| (v, c, r))
            .collect();
        RSModel::new(tree_from(doc.host)?, graph_from(doc.graph)?, balls)
    }
}

impl JsonFormat for LeafRoot {
    fn to_json(&self) -> String {
        render(&LeafRootDoc {
            k: self.k(),
            placement: self
                .placement()
                .map(|(v, x)| (v.to_string(), x.to_string()))
                .collect(),
            tree: tree_doc(self.host()),
        })
    }

    fn from_json(text: &str) -> Result<Self> {
        let doc: LeafRootDoc = serde_json::from_str(text)?;
        LeafRoot::new(tree_from(doc.tree)?, doc.k, doc.placement)
    }
}

impl JsonFormat for WeightedLeafRoot {
    fn to_json(&self) -> String {
        render(&WeightedLeafRootDoc {
            margin: rational_doc(self.margin()),
            placement: self.placement().clone(),
            tree: tree_doc(self.host()),
            weights: self
                .weights()
                .iter()
                .map(|((u, v), w)| WeightDoc {
                    den: w.denom().to_string(),
                    num: w.numer().to_string(),
                    u: u.clone(),
                    v: v.clone(),
                })
                .collect(),
        })
    }

    fn from_json(text: &str) -> Result<Self> {
        let doc: WeightedLeafRootDoc = serde_json::from_str(text)?;
        let margin = rational_from(&doc.margin.num, &doc.margin.den)?;
        let weights = doc
            .weights
            .into_iter()
            .map(|w| Ok(((w.u, w.v), rational_from(&w.num, &w.den)?)))
            .collect::<Result<Vec<_>>>()?;
        WeightedLeafRoot::new(tree_from(doc.tree)?, weights, doc.placement, margin)
    }
}

/// Audit reports are output only.
pub fn report_to_json(report: &AuditReport) -> String {
    let value = serde_json::to_value(report).expect("plain data serialises");
    render(&value)
}

/// Any document this crate writes, recognised by its keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Artifact {
    Graph(Graph),
    Tree(Tree),
    SubtreeModel(SubtreeModel),
    RSModel(RSModel),
    LeafRoot(LeafRoot),
    WeightedLeafRoot(WeightedLeafRoot),
}

impl Artifact {
    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::Graph(_) => "graph",
            Artifact::Tree(_) => "tree",
            Artifact::SubtreeModel(_) => "subtree-model",
            Artifact::RSModel(_) => "rs-model",
            Artifact::LeafRoot(_) => "leaf-root",
            Artifact::WeightedLeafRoot(_) => "weighted-leaf-root",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        let has = |k: &str| obj.contains_key(k);
        if has("vertices") {
            Ok(Artifact::Graph(Graph::from_json(text)?))
        } else if has("nodes") {
            Ok(Artifact::Tree(Tree::from_json(text)?))
        } else if has("assignment") {
            Ok(Artifact::SubtreeModel(SubtreeModel::from_json(text)?))
        } else if has("centers") {
            Ok(Artifact::RSModel(RSModel::from_json(text)?))
        } else if has("weights") {
            Ok(Artifact::WeightedLeafRoot(WeightedLeafRoot::from_json(text)?))
        } else if has("k") {
            Ok(Artifact::LeafRoot(LeafRoot::from_json(text)?))
        } else {
            Err(Error::Parse("unrecognised document".into()))
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Artifact::Graph(x) => x.to_json(),
            Artifact::Tree(x) => x.to_json(),
            Artifact::SubtreeModel(x) => x.to_json(),
            Artifact::RSModel(x) => x.to_json(),
            Artifact::LeafRoot(x) => x.to_json(),
            Artifact::WeightedLeafRoot(x) => x.to_json(),
        }
    }
}
