//! Command-line front end. Exit codes: 0 success, 2 invalid input, 3 guard
//! exceeded, 4 internal invariant violated.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cuts::{self, Method};
use crate::error::{Error, Result};
use crate::facets::{self, Inequality, Kind, Verdict};
use crate::json::{self, GraphDocument};
use crate::laminar;
use crate::oracle::{self, OracleLimits};
use crate::rational;
use crate::search;
use crate::transforms::{self, TransformKind, TransformRecord};
use crate::treecactus;

#[derive(Parser, Debug)]
#[command(name = "steinercut", version, about = "Facets of Steiner cut dominants, computed exactly")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Lowers the size guards: instances with more edges (or, for the search,
    /// more nodes) than this are rejected.
    #[arg(long, global = true)]
    pub max_size: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CutMethod {
    Enumerate,
    Maxflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FacetMethod {
    Classify,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Subdivide,
    Reduce,
    Glue,
    Split,
    Ydelta,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimum Steiner cut value and a witness side.
    Mincut {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value_t = CutMethod::Maxflow)]
        method: CutMethod,
    },
    /// Non-trivial facets of the Steiner cut dominant.
    Facets {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value_t = FacetMethod::Oracle)]
        method: FacetMethod,
        /// Facets of Steiner degree at most five of the cut dominant (all nodes terminals).
        #[arg(long)]
        degree5: bool,
    },
    /// Certifies that the weights define a facet.
    Verify {
        #[arg(long)]
        input: String,
    },
    /// Applies a facet-preserving operation.
    Transform {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum)]
        op: Op,
        /// Edge index for subdivide.
        #[arg(long)]
        edge: Option<usize>,
        /// Name of the new node for subdivide.
        #[arg(long)]
        new_node: Option<String>,
        /// Node for reduce, split and ydelta; glue node of the first graph.
        #[arg(long)]
        node: Option<String>,
        /// Second graph for glue.
        #[arg(long)]
        second: Option<String>,
        /// Glue node of the second graph.
        #[arg(long)]
        second_node: Option<String>,
        /// Keep the glued node as a terminal.
        #[arg(long)]
        keep_terminal: bool,
    },
    /// A laminar root basis as a list of node-name arrays.
    LaminarBasis {
        #[arg(long)]
        input: String,
    },
    /// Smallest terminal count for which the weights define a facet.
    SteinerDegree {
        #[arg(long)]
        input: String,
    },
    /// Irreducible facet inducing Steiner graphs with the given terminal count.
    SearchIrreducible {
        #[arg(long)]
        terminals: usize,
        #[arg(long)]
        max_nodes: usize,
        #[arg(long)]
        output: Option<String>,
    },
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_guard() {
        3
    } else if matches!(e, Error::Internal(_)) {
        4
    } else {
        2
    }
}

struct Context<'a> {
    stdin: &'a mut dyn Read,
    format: Format,
    max_size: Option<usize>,
}

impl Context<'_> {
    fn read(&mut self, path: &str) -> Result<GraphDocument> {
        let text = if path == "-" {
            let mut buf = String::new();
            self.stdin
                .read_to_string(&mut buf)
                .map_err(|e| Error::Parse {
                    field: "input".into(),
                    message: e.to_string(),
                })?;
            buf
        } else {
            std::fs::read_to_string(path).map_err(|e| Error::Parse {
                field: "input".into(),
                message: format!("{path}: {e}"),
            })?
        };
        let doc = json::parse_graph(&text)?;
        self.guard(doc.graph.edge_count())?;
        Ok(doc)
    }

    fn guard(&self, size: usize) -> Result<()> {
        match self.max_size {
            Some(limit) if size > limit => Err(Error::too_large("instance size", limit, size)),
            _ => Ok(()),
        }
    }

    fn oracle_limits(&self) -> OracleLimits {
        match self.max_size {
            Some(cap) => OracleLimits::default().capped(cap.max(1)),
            None => OracleLimits::default(),
        }
    }
}

/// What a command produces: a JSON value and its text rendering.
struct Output {
    value: Value,
    text: String,
}

fn facets_output(list: &[Inequality], graph: &crate::graph::Graph, method: &str) -> Output {
    let text = list
        .iter()
        .map(|i| json::inequality_to_text(i, graph))
        .collect::<Vec<_>>()
        .join("\n");
    Output {
        value: json!({
            "method": method,
            "count": list.len(),
            "facets": list.iter().map(json::inequality_to_json).collect::<Vec<_>>(),
        }),
        text: format!("{} facets ({method})\n{text}", list.len()),
    }
}

fn execute(cli: &Cli, ctx: &mut Context<'_>) -> Result<Output> {
    match &cli.command {
        Command::Mincut { input, method } => {
            let doc = ctx.read(input)?;
            let wg = doc.weighted_or_unit();
            let (gamma, witness) = match method {
                CutMethod::Maxflow => cuts::min_steiner_cut(&wg)?,
                CutMethod::Enumerate => {
                    let roots = cuts::roots(&wg)?;
                    let first = *roots.roots.first().ok_or_else(|| Error::Internal("no Steiner cut".into()))?;
                    (roots.gamma, first)
                }
            };
            debug_assert_eq!(gamma, cuts::gamma(&wg, Method::MaxFlow)?);
            let names = witness.names(wg.graph());
            Ok(Output {
                value: json!({"gamma": rational::format(&gamma), "witness": names}),
                text: format!("gamma = {}\nwitness = {{{}}}", rational::format(&gamma), names.join(", ")),
            })
        }
        Command::Facets { input, method, degree5 } => {
            let doc = ctx.read(input)?;
            let graph = doc.graph.graph();
            if *degree5 {
                let list = treecactus::cut_dominant_degree5_facets(graph)?;
                return Ok(facets_output(&list, graph, "degree5"));
            }
            match method {
                FacetMethod::Classify => {
                    let list = treecactus::enumerate_facets_le5(&doc.graph)?;
                    Ok(facets_output(&list, graph, "classify"))
                }
                FacetMethod::Oracle => {
                    let list = oracle::oracle_facets_with(&doc.graph, &ctx.oracle_limits())?;
                    Ok(facets_output(&list.nontrivial, graph, "oracle"))
                }
            }
        }
        Command::Verify { input } => {
            let wg = ctx.read(input)?.weighted()?;
            match facets::verify_facet(&wg)? {
                Verdict::Facet(cert) => {
                    let basis: Vec<Vec<String>> = cert.roots.iter().map(|r| r.names(wg.graph())).collect();
                    let lines: Vec<String> = basis.iter().map(|b| format!("  {{{}}}", b.join(", "))).collect();
                    Ok(Output {
                        text: format!(
                            "facet: yes\ngamma = {}\nroot basis:\n{}",
                            rational::format(&cert.gamma),
                            lines.join("\n")
                        ),
                        value: json!({"facet": true, "gamma": rational::format(&cert.gamma), "root_basis": basis}),
                    })
                }
                Verdict::NotFacet(reason) => Ok(Output {
                    text: format!("facet: no ({reason})"),
                    value: json!({"facet": false, "reason": reason.to_string()}),
                }),
            }
        }
        Command::Transform {
            input,
            op,
            edge,
            new_node,
            node,
            second,
            second_node,
            keep_terminal,
        } => {
            let wg = ctx.read(input)?.weighted_or_unit();
            let need = |value: &Option<String>, field: &str| {
                value.clone().ok_or_else(|| Error::Parse {
                    field: field.into(),
                    message: "required for this operation".into(),
                })
            };
            let record = match op {
                Op::Subdivide => {
                    let e = edge.ok_or_else(|| Error::Parse {
                        field: "edge".into(),
                        message: "required for this operation".into(),
                    })?;
                    let w = need(new_node, "new-node")?;
                    TransformRecord {
                        kind: TransformKind::Subdivide,
                        inputs: format!("edge {e}, new node {w}"),
                        outputs: vec![transforms::subdivide(&wg, e, &w)?],
                        renaming: Vec::new(),
                    }
                }
                Op::Reduce => {
                    let w = need(node, "node")?;
                    TransformRecord {
                        kind: TransformKind::Reduce,
                        inputs: format!("node {w}"),
                        outputs: vec![transforms::reduce(&wg, &w)?],
                        renaming: Vec::new(),
                    }
                }
                Op::Glue => {
                    let w1 = need(node, "node")?;
                    let w2 = need(second_node, "second-node")?;
                    let other = ctx.read(&need(second, "second")?)?.weighted_or_unit();
                    let (out, renaming) = transforms::glue(&wg, &other, &w1, &w2, *keep_terminal)?;
                    TransformRecord {
                        kind: TransformKind::Glue,
                        inputs: format!("{w1} with {w2}, keep terminal {keep_terminal}"),
                        outputs: vec![out],
                        renaming,
                    }
                }
                Op::Split => {
                    let w = need(node, "node")?;
                    let (a, b) = transforms::split_at_cut_node(&wg, &w)?;
                    TransformRecord {
                        kind: TransformKind::Split,
                        inputs: format!("cut node {w}"),
                        outputs: vec![a, b],
                        renaming: Vec::new(),
                    }
                }
                Op::Ydelta => {
                    let v = need(node, "node")?;
                    let out = transforms::ydelta(&wg, &v)?;
                    TransformRecord {
                        kind: TransformKind::YDelta,
                        inputs: format!("node {v}; outputs are raw and normalized weights"),
                        outputs: vec![out.raw, out.normalized],
                        renaming: Vec::new(),
                    }
                }
            };
            let value = json::transform_record_to_json(&record);
            let text = serde_json::to_string_pretty(&value).expect("serializable");
            Ok(Output { value, text })
        }
        Command::LaminarBasis { input } => {
            let wg = ctx.read(input)?.weighted()?;
            let family = laminar::laminar_root_basis(&wg)?;
            let sets: Vec<Vec<String>> = family.members().iter().map(|&s| wg.graph().names_of(s)).collect();
            let text = sets.iter().map(|s| format!("{{{}}}", s.join(", "))).collect::<Vec<_>>().join("\n");
            Ok(Output { value: json!(sets), text })
        }
        Command::SteinerDegree { input } => {
            let doc = ctx.read(input)?;
            let weights = doc.weighted()?.weights;
            let all = crate::graph::SteinerGraph::all_terminal(doc.graph.graph().clone())?;
            let ineq = Inequality::normalized(&all, &weights, Kind::Other)?;
            let degree = facets::steiner_degree(all.graph(), &ineq)?;
            Ok(Output {
                value: json!({"steiner_degree": degree, "rhs": rational::format(&ineq.rhs)}),
                text: format!("Steiner degree {degree} (rhs {})", rational::format(&ineq.rhs)),
            })
        }
        Command::SearchIrreducible {
            terminals,
            max_nodes,
            output,
        } => {
            ctx.guard(*max_nodes)?;
            let entries = search::search_irreducible(*terminals, *max_nodes)?;
            let value = Value::Array(entries.iter().map(json::catalogue_entry_to_json).collect());
            let text = entries
                .iter()
                .map(|e| {
                    let g = e.graph.graph();
                    let rhs: Vec<String> = e.facet_weights.iter().map(|(_, r)| rational::format(r)).collect();
                    format!("n={} m={} rhs {}", g.node_count(), g.edge_count(), rhs.join(","))
                })
                .collect::<Vec<_>>()
                .join("\n");
            if let Some(path) = output {
                let body = serde_json::to_string_pretty(&value).expect("serializable");
                std::fs::write(path, body + "\n").map_err(|e| Error::Parse {
                    field: "output".into(),
                    message: format!("{path}: {e}"),
                })?;
                return Ok(Output {
                    value: json!({"entries": entries.len(), "output": path}),
                    text: format!("{} entries written to {path}", entries.len()),
                });
            }
            Ok(Output {
                value,
                text: format!("{} entries\n{text}", entries.len()),
            })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let mut ctx = Context {
        stdin,
        format: cli.format,
        max_size: cli.max_size,
    };
    match execute(&cli, &mut ctx) {
        Ok(out) => {
            let body = match ctx.format {
                Format::Json => serde_json::to_string(&out.value).expect("serializable"),
                Format::Text => out.text,
            };
            let _ = writeln!(stdout, "{body}");
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
