use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use leafpower::audit::lower_bound_certificate;
use leafpower::cert::{certify_leaf_power, scale_to_integer_leafroot, Certification};
use leafpower::dot;
use leafpower::io::{report_to_json, Artifact, JsonFormat};
use leafpower::lp::build_feasibility_system;
use leafpower::rn::MAX_EXPONENTIAL_N;
use leafpower::{
    brute_force_leaf_rank, build_exponential_rs_model, build_rdp_model, build_rn, leafroot_to_rs,
    maximal_cliques, rs_to_leafroot, verify_leaf_root, Graph, RnGraph,
};

#[derive(Parser)]
#[command(name = "leafpower", version, about = "Leaf roots, RS models and the R_n family")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Rs,
    Leafroot,
    Subtree,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build the graph R_n.
    BuildRn {
        #[arg(long)]
        n: usize,
    },
    /// Build the rooted directed path model of R_n.
    RdpModel {
        #[arg(long)]
        n: usize,
    },
    /// Build the exponential-radius RS model of R_n.
    RsModel {
        #[arg(long)]
        n: usize,
    },
    /// Check the lower-bound argument on an RS model of R_n.
    Audit {
        #[arg(long, conflicts_with = "model", required_unless_present = "model")]
        n: Option<usize>,
        /// RS model JSON; its graph must be R_n for some n.
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Exact leaf rank by exhaustive search over small trees.
    Leafrank {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_nodes: u64,
    },
    /// Search for a rational weighted leaf root.
    Certify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_internal: u64,
        /// Print the LP of the witness topology and placement.
        #[arg(long)]
        lp: bool,
        /// Print the integer leaf root obtained by scaling the witness.
        #[arg(long, conflicts_with = "lp")]
        scale: bool,
    },
    /// Convert between representations.
    Convert {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Lower and witnessed upper bounds on the leaf rank of R_n.
    Report {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
}

enum Failure {
    /// Bad arguments or unreadable input.
    Usage(String),
    /// A check, verification or search came back negative.
    Negative(String, Option<String>),
}

impl From<leafpower::Error> for Failure {
    fn from(e: leafpower::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn no_dot(cmd: &str) -> Failure {
    usage(format!("{cmd} has no dot output"))
}

fn rn_text(r: &RnGraph) -> Result<String, Failure> {
    let g = r.graph();
    let mut out = format!("R_{}: {} vertices, {} edges\n", r.n(), g.vertex_count(), g.edge_count());
    for c in maximal_cliques(g)? {
        let members: Vec<&str> = c.members().iter().map(String::as_str).collect();
        let _ = writeln!(out, "  {{{}}}", members.join(", "));
    }
    Ok(out)
}

fn build_rn_cmd(n: usize, format: Format) -> Outcome {
    let r = build_rn(n)?;
    Ok(match format {
        Format::Json => r.graph().to_json(),
        Format::Dot => dot::graph_to_dot(r.graph()),
        Format::Text => rn_text(&r)?,
    })
}

fn rdp_cmd(n: usize, format: Format) -> Outcome {
    let m = build_rdp_model(&build_rn(n)?);
    if !m.verify() {
        return Err(Failure::Negative("RDP model does not verify".into(), None));
    }
    Ok(match format {
        Format::Json => m.to_json(),
        Format::Dot => dot::subtree_model_to_dot(&m),
        Format::Text => {
            let mut out = String::new();
            for (v, nodes) in m.assignments() {
                let _ = writeln!(out, "{v}: {}", nodes.join(" "));
            }
            out
        }
    })
}

fn rs_cmd(n: usize, format: Format) -> Outcome {
    let m = build_exponential_rs_model(&build_rn(n)?)?;
    Ok(match format {
        Format::Json => m.to_json(),
        Format::Dot => dot::rs_model_to_dot(&m),
        Format::Text => {
            let mut out = format!(
                "host: {} nodes, max radius {}\n",
                m.host().node_count(),
                m.max_radius()
            );
            let mut balls: Vec<_> = m.balls().collect();
            balls.sort();
            for (v, c, r) in balls {
                let _ = writeln!(out, "{v}: center {c}, radius {r}");
            }
            out
        }
    })
}

fn audit_cmd(n: Option<usize>, model: Option<&Path>, format: Format) -> Outcome {
    let (r, m) = match (n, model) {
        (Some(n), _) => {
            let r = build_rn(n)?;
            let m = build_exponential_rs_model(&r)?;
            (r, m)
        }
        (None, Some(path)) => match Artifact::parse(&read(path)?)? {
            Artifact::RSModel(m) => (RnGraph::recognize(m.graph())?, m),
            other => return Err(usage(format!("expected an RS model, got a {}", other.kind()))),
        },
        (None, None) => return Err(usage("audit needs --n or --model")),
    };
    let report = match lower_bound_certificate(&r, &m) {
        Ok(rep) => rep,
        Err(e @ leafpower::Error::NotAModelOfRn(_)) => {
            return Err(Failure::Negative(e.to_string(), None))
        }
        Err(e) => return Err(e.into()),
    };
    let text = match format {
        Format::Json => report_to_json(&report),
        Format::Text => report.to_text(),
        Format::Dot => return Err(no_dot("audit")),
    };
    if report.holds {
        Ok(text)
    } else {
        // dump the model so a failing run can be inspected
        let msg = format!(
            "audit failed: {}\nmodel:\n{}",
            report.failing.join(", "),
            m.to_json()
        );
        Err(Failure::Negative(msg, Some(text)))
    }
}

fn leafrank_cmd(path: &Path, max_nodes: u64, format: Format) -> Outcome {
    let g = read_graph(path)?;
    let max_nodes = usize::try_from(max_nodes).map_err(|_| usage("--max-nodes too large"))?;
    match brute_force_leaf_rank(&g, max_nodes) {
        Some(k) => Ok(match format {
            Format::Json => format!("{}\n", json!({ "leaf_rank": k, "max_nodes": max_nodes })),
            Format::Text => format!("{k}\n"),
            Format::Dot => return Err(no_dot("leafrank")),
        }),
        None => Err(Failure::Negative(
            format!("no leaf root on trees with at most {max_nodes} nodes"),
            None,
        )),
    }
}

fn certify_cmd(path: &Path, max_internal: u64, lp: bool, scale: bool, format: Format) -> Outcome {
    let g = read_graph(path)?;
    let max_internal = usize::try_from(max_internal).map_err(|_| usage("--max-internal too large"))?;
    let w = match certify_leaf_power(&g, max_internal)? {
        Certification::Witness(w) => w,
        Certification::NoRootWithinBound => {
            return Err(Failure::Negative(
                format!("no weighted leaf root with at most {max_internal} internal nodes"),
                None,
            ))
        }
    };
    if !w.verify(&g)? {
        return Err(Failure::Negative("witness failed re-verification".into(), None));
    }
    if lp {
        return Ok(build_feasibility_system(&g, w.host(), w.placement())?.to_lp_text());
    }
    if scale {
        let root = scale_to_integer_leafroot(&w)?;
        if !verify_leaf_root(&g, &root)? {
            return Err(Failure::Negative("scaled root failed verification".into(), None));
        }
        return Ok(match format {
            Format::Json => root.to_json(),
            Format::Dot => dot::leafroot_to_dot(&root),
            Format::Text => format!("k = {}, {} nodes\n", root.k(), root.host().node_count()),
        });
    }
    Ok(match format {
        Format::Json => w.to_json(),
        Format::Dot => dot::weighted_leafroot_to_dot(&w),
        Format::Text => {
            let mut out = format!("margin {}\n", w.margin());
            for ((u, v), x) in w.weights() {
                let _ = writeln!(out, "{u} -- {v}: {x}");
            }
            for (v, leaf) in w.placement() {
                let _ = writeln!(out, "{v} at {leaf}");
            }
            out
        }
    })
}

fn render(a: &Artifact, format: Format) -> Outcome {
    Ok(match (format, a) {
        (Format::Dot, Artifact::Graph(g)) => dot::graph_to_dot(g),
        (Format::Dot, Artifact::Tree(t)) => dot::tree_to_dot(t),
        (Format::Dot, Artifact::SubtreeModel(m)) => dot::subtree_model_to_dot(m),
        (Format::Dot, Artifact::RSModel(m)) => dot::rs_model_to_dot(m),
        (Format::Dot, Artifact::LeafRoot(r)) => dot::leafroot_to_dot(r),
        (Format::Dot, Artifact::WeightedLeafRoot(w)) => dot::weighted_leafroot_to_dot(w),
        (Format::Text, _) => return Err(usage("convert writes json or dot")),
        (Format::Json, a) => a.to_json(),
    })
}

fn convert_cmd(path: &Path, to: Target, format: Format) -> Outcome {
    let input = Artifact::parse(&read(path)?)?;
    let invalid = |what: &str| Failure::Negative(format!("input {what} does not verify"), None);
    match &input {
        Artifact::SubtreeModel(m) if !m.verify() => return Err(invalid("subtree model")),
        Artifact::RSModel(m) if !m.verify() => return Err(invalid("RS model")),
        _ => {}
    }
    let out = match (to, input) {
        (Target::Json, a) => a,
        (Target::Rs, Artifact::LeafRoot(r)) => Artifact::RSModel(leafroot_to_rs(&r)),
        (Target::Rs, Artifact::SubtreeModel(m)) => Artifact::RSModel(
            m.to_radial()
                .map_err(|e| Failure::Negative(e.to_string(), None))?,
        ),
        (Target::Rs, a @ Artifact::RSModel(_)) => a,
        (Target::Leafroot, Artifact::RSModel(m)) => Artifact::LeafRoot(rs_to_leafroot(&m)?),
        (Target::Leafroot, Artifact::WeightedLeafRoot(w)) => {
            Artifact::LeafRoot(scale_to_integer_leafroot(&w)?)
        }
        (Target::Leafroot, a @ Artifact::LeafRoot(_)) => a,
        (Target::Subtree, Artifact::RSModel(m)) => Artifact::SubtreeModel(m.expand()),
        (Target::Subtree, Artifact::LeafRoot(r)) => Artifact::SubtreeModel(leafroot_to_rs(&r).expand()),
        (Target::Subtree, a @ Artifact::SubtreeModel(_)) => a,
        (_, a) => return Err(usage(format!("cannot convert a {} that way", a.kind()))),
    };
    render(&out, format)
}

fn report_cmd(n_min: usize, n_max: usize, format: Format) -> Outcome {
    if n_min < 3 || n_min > n_max || n_max > MAX_EXPONENTIAL_N {
        return Err(usage(format!(
            "need 3 <= n-min <= n-max <= {MAX_EXPONENTIAL_N}"
        )));
    }
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let r = build_rn(n)?;
        let m = build_exponential_rs_model(&r)?;
        let audit = lower_bound_certificate(&r, &m)?;
        if !audit.holds {
            return Err(Failure::Negative(
                format!("audit failed for n = {n}: {}", audit.failing.join(", ")),
                None,
            ));
        }
        let root = rs_to_leafroot(&m)?;
        if !verify_leaf_root(r.graph(), &root)? {
            return Err(Failure::Negative(format!("upper-bound root for n = {n} fails"), None));
        }
        rows.push((n, r.graph().vertex_count(), audit.lower_bound, root.k() as u64, m.max_radius()));
    }
    Ok(match format {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|&(n, v, lo, hi, rmax)| {
                    json!({
                        "n": n,
                        "vertices": v,
                        "lower_bound": lo,
                        "lower_bound_in_n": format!("2^({n}-2)"),
                        "lower_bound_in_vertices": format!("2^({v}/4-2)"),
                        "max_radius": rmax,
                        "upper_bound": hi,
                        "upper_bound_formula": "2*max_radius+2",
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&rows).expect("plain data");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = format!(
                "{:>3} {:>8} {:>12} {:>12} {:>12}\n",
                "n", "vertices", "lower", "max_radius", "upper"
            );
            for (n, v, lo, hi, rmax) in rows {
                let _ = writeln!(out, "{n:>3} {v:>8} {lo:>12} {rmax:>12} {hi:>12}");
            }
            out.push_str("lower = 2^(n-2) = 2^(|V|/4-2); upper = 2*max_radius+2\n");
            out
        }
        Format::Dot => return Err(no_dot("report")),
    })
}

fn run(cli: &Cli) -> Outcome {
    let f = cli.format;
    match &cli.command {
        Command::BuildRn { n } => build_rn_cmd(*n, f),
        Command::RdpModel { n } => rdp_cmd(*n, f),
        Command::RsModel { n } => rs_cmd(*n, f),
        Command::Audit { n, model } => audit_cmd(*n, model.as_deref(), f),
        Command::Leafrank { graph, max_nodes } => leafrank_cmd(graph, *max_nodes, f),
        Command::Certify {
            graph,
            max_internal,
            lp,
            scale,
        } => certify_cmd(graph, *max_internal, *lp, *scale, f),
        Command::Convert { input, to } => convert_cmd(input, *to, f),
        Command::Report { n_min, n_max } => report_cmd(*n_min, *n_max, f),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), String> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => match emit(&text, cli.output.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Negative(msg, partial)) => {
            if let Some(text) = partial {
                let _ = emit(&text, cli.output.as_deref());
            }
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}
