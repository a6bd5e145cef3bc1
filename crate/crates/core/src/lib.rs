//! Leaf powers, their tree representations, and machine-checked bounds on
//! the leaf rank of the `R_n` family.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: labelled simple graphs and chordal-graph tools.
//! * [`tree`]: unweighted trees and hop-count metrics (distance, median,
//!   connector, connecting paths).
//! * [`model`]: subtree intersection models and radial subtree (RS) models.
//! * [`rn`]: the `R_n` graphs, their rooted directed path models and an
//!   explicit RS model with exponentially large radii.
//! * [`leafroot`]: k-leaf roots, conversions to and from RS models, and a
//!   brute-force leaf-rank search for tiny graphs.
//! * [`lp`] and [`cert`]: exact rational LP feasibility for weighted leaf
//!   roots and scaling of rational witnesses to integer leaf roots.
//! * [`audit`]: branch-point extraction and the checks that certify
//!   an exponential lower bound on any RS model of `R_n`.
//! * [`io`] and [`dot`]: JSON and Graphviz formats.

pub mod audit;
pub mod cert;
pub mod dot;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod io;
pub mod leafroot;
pub mod lp;
pub mod model;
pub mod rn;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{is_chordal, is_cluster_graph, is_separator, maximal_cliques, Clique, Graph, VertexSet};
pub use leafroot::{brute_force_leaf_rank, find_leaf_root, leafroot_to_rs, rs_to_leafroot, verify_leaf_root, LeafRoot};
pub use model::{RSModel, SubtreeModel};
pub use rn::{build_exponential_rs_model, build_rdp_model, build_rn, RnGraph};
pub use tree::Tree;
