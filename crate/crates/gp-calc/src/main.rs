use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gp_calc::verify::{verify_paper, Config};
use gp_core::coxeter::{self, CoxeterMatrix, CoxeterSolver};
use gp_core::flip::{self, FlipManifold};
use gp_core::fp::{self, Presentation};
use gp_core::graph::{LabeledGraph, VertexOrder};
use gp_core::lampraag::{self, CommensurabilityMap};
use gp_core::median;
use gp_core::structure;
use gp_core::word::{self, ReducedWord};
use gp_core::{Error, Result};
use serde_json::{json, Value};

/// Graph products of cyclic groups, flat braid groups and their certificates.
#[derive(Parser)]
#[command(name = "gp-calc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a graph with its join decomposition and maximal joins.
    Graph(GraphSource),
    /// Word problem operations.
    Word {
        #[command(flatten)]
        source: GraphSource,
        #[command(subcommand)]
        op: WordOp,
    },
    /// Centralizers, virtual centres and thick elements.
    Structure {
        #[command(flatten)]
        source: GraphSource,
        #[command(subcommand)]
        op: StructureOp,
    },
    /// Coxeter groups given by a matrix (defaults to the quotient of FB7).
    Coxeter {
        /// Coxeter matrix as JSON.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[command(subcommand)]
        op: CoxeterOp,
    },
    /// Finitely presented groups.
    Fp {
        /// Presentation as JSON.
        #[arg(long)]
        presentation: PathBuf,
        #[command(subcommand)]
        op: FpOp,
    },
    /// The lampraag over the integers.
    Lampraag {
        #[command(subcommand)]
        op: LampraagOp,
    },
    /// Fundamental groups of flip manifolds.
    Flip {
        /// `m1`, `m2`, or a JSON file.
        manifold: String,
        /// Check the isomorphism with the expected group (m1 and m2 only).
        #[arg(long)]
        certify: bool,
    },
    /// Cayley-graph balls of right-angled groups and their hyperplanes.
    Median {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        /// Print the ball in Graphviz format instead.
        #[arg(long)]
        dot: bool,
    },
    /// Run the certificate suite.
    VerifyPaper {
        /// Comma-separated check ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// List the check ids and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
struct GraphSource {
    /// Flat braid group on this many strands.
    #[arg(long, group = "source")]
    flat_braid: Option<usize>,
    /// Path with this many edges.
    #[arg(long, group = "source")]
    path: Option<usize>,
    /// Vertex order for --path: an integer >= 2 or `inf`.
    #[arg(long, default_value = "inf")]
    order: String,
    /// Graph as JSON.
    #[arg(long, group = "source")]
    graph: Option<PathBuf>,
}

#[derive(Subcommand)]
enum WordOp {
    Reduce { word: String },
    Equals { a: String, b: String },
    Multiply { a: String, b: String },
    Cyclic { word: String },
    Root { word: String },
    /// Permutation image and purity (flat braid groups only).
    Pure { word: String },
}

#[derive(Subcommand)]
enum StructureOp {
    Centralizer { word: String },
    VirtualCentre,
    ThickSupports,
    IsThick { word: String },
}

#[derive(Subcommand)]
enum CoxeterOp {
    NormalForm { word: String },
    Equals { a: String, b: String },
    Order { word: String },
    /// Number of elements of length at most the bound.
    Count {
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
}

#[derive(Subcommand)]
enum FpOp {
    /// Index of the subgroup generated by the given words.
    Index {
        subgroup: Vec<String>,
        #[arg(long)]
        subgroup_presentation: bool,
    },
    Simplify,
}

#[derive(Subcommand)]
enum LampraagOp {
    Eval { word: String },
    Certificate,
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

impl GraphSource {
    fn load(&self) -> Result<LabeledGraph> {
        if let Some(n) = self.flat_braid {
            return LabeledGraph::flat_braid(n);
        }
        if let Some(edges) = self.path {
            let order = match self.order.as_str() {
                "inf" => VertexOrder::Infinite,
                m => VertexOrder::Finite(m.parse().map_err(|_| Error::Invalid(format!("bad order `{m}`")))?),
            };
            return LabeledGraph::path_graph(edges, order);
        }
        match &self.graph {
            Some(path) => LabeledGraph::from_json(&read(path)?),
            None => Err(Error::Invalid("give --flat-braid, --path or --graph".into())),
        }
    }
}

fn reduced(graph: &LabeledGraph, text: &str) -> Result<ReducedWord> {
    word::reduce(graph, &word::parse_word(graph, text)?)
}

fn show(graph: &LabeledGraph, w: &ReducedWord) -> String {
    word::format_word(graph, w.syllables())
}

fn run(command: Command) -> Result<(Value, bool)> {
    let out = match command {
        Command::Graph(source) => {
            let g = source.load()?;
            let factors = g.join_decomposition()?.factors.iter().map(|f| g.set_names(*f)).collect::<Vec<_>>();
            let joins = g
                .maximal_joins()?
                .iter()
                .map(|&s| g.join_factors(s).iter().map(|f| g.set_names(*f)).collect::<Vec<_>>())
                .collect::<Vec<_>>();
            json!({"graph": g.to_json(), "join_factors": factors, "maximal_joins": joins})
        }
        Command::Word { source, op } => {
            let g = source.load()?;
            match op {
                WordOp::Reduce { word } => json!(show(&g, &reduced(&g, &word)?)),
                WordOp::Equals { a, b } => json!(reduced(&g, &a)? == reduced(&g, &b)?),
                WordOp::Multiply { a, b } => json!(show(&g, &word::multiply(&g, &reduced(&g, &a)?, &reduced(&g, &b)?))),
                WordOp::Cyclic { word } => {
                    let (conj, core) = word::cyclic_reduce(&g, &word::parse_word(&g, &word)?)?;
                    json!({"conjugator": show(&g, &conj), "core": show(&g, &core)})
                }
                WordOp::Root { word } => {
                    let (root, k) = word::primitive_root(&g, &word::parse_word(&g, &word)?)?;
                    json!({"root": show(&g, &root), "power": k})
                }
                WordOp::Pure { word } => {
                    let w = word::parse_word(&g, &word)?;
                    let strands = g.len() + 1;
                    json!({
                        "permutation": fp::format_permutation(&fp::perm_image(strands, &w)?),
                        "pure": gp_calc::pure_membership(strands, &w)?,
                    })
                }
            }
        }
        Command::Structure { source, op } => {
            let g = source.load()?;
            match op {
                StructureOp::Centralizer { word } => {
                    let c = structure::centralizer(&g, reduced(&g, &word)?.syllables())?;
                    json!({"centralizer": c.display(&g), "description": c.to_json(&g)})
                }
                StructureOp::VirtualCentre => structure::virtual_centre(&g)?.to_json(&g),
                StructureOp::ThickSupports => {
                    json!(structure::thick_supports(&g)?.iter().map(|s| g.set_names(*s)).collect::<Vec<_>>())
                }
                StructureOp::IsThick { word } => json!(structure::is_thick(&g, reduced(&g, &word)?.syllables())?),
            }
        }
        Command::Coxeter { matrix, op } => {
            let m = match matrix {
                Some(path) => CoxeterMatrix::from_json(&read(&path)?)?,
                None => coxeter::thick_quotient_matrix(),
            };
            let solver = CoxeterSolver::new(&m);
            match op {
                CoxeterOp::NormalForm { word } => {
                    json!(coxeter::format_word(&solver.normal_form(&coxeter::parse_word(&m, &word)?)?))
                }
                CoxeterOp::Equals { a, b } => {
                    json!(solver.equals(&coxeter::parse_word(&m, &a)?, &coxeter::parse_word(&m, &b)?)?)
                }
                CoxeterOp::Order { word } => {
                    let w = coxeter::parse_word(&m, &word)?;
                    let infinite = coxeter::has_infinite_order(&m, &w, coxeter::DEFAULT_ORDER_BOUND)?;
                    json!({"infinite": infinite})
                }
                CoxeterOp::Count { max_len } => json!(coxeter::ElementTable::build(&m, max_len)?.len()),
            }
        }
        Command::Fp { presentation, op } => {
            let p = Presentation::from_json(&read(&presentation)?)?;
            match op {
                FpOp::Index { subgroup, subgroup_presentation } => {
                    let words = subgroup.iter().map(|w| p.parse_word(w)).collect::<Result<Vec<_>>>()?;
                    let table = fp::todd_coxeter(&p, &words, Config::from_env()?.max_cosets)?;
                    let mut out = json!({"index": table.index(), "permutations": table.permutations()});
                    if subgroup_presentation {
                        let sub = fp::reidemeister_schreier(&p, &table)?;
                        out["subgroup"] = fp::tietze_simplify(&sub.presentation).presentation.to_json();
                    }
                    out
                }
                FpOp::Simplify => fp::tietze_simplify(&p).presentation.to_json(),
            }
        }
        Command::Lampraag { op } => match op {
            LampraagOp::Eval { word } => {
                let x = lampraag::lampraag_parse(&word)?;
                json!({"element": x.to_string(), "normal_form": x.to_json()})
            }
            LampraagOp::Certificate => {
                let cert = lampraag::verify_commensurability_certificate(
                    &CommensurabilityMap::default(),
                    Config::from_env()?.max_cosets,
                )?;
                return Ok((cert.to_json(), cert.passed()));
            }
        },
        Command::Flip { manifold, certify } => {
            let m = match manifold.as_str() {
                "m1" => FlipManifold::m1(),
                "m2" => FlipManifold::m2(),
                path => FlipManifold::from_json(&read(&PathBuf::from(path))?)?,
            };
            let group = flip::fundamental_group(&m)?;
            let mut out = json!({
                "unsimplified": group.unsimplified.to_string(),
                "presentation": group.presentation().to_string(),
            });
            if certify {
                let cert = match manifold.as_str() {
                    "m1" => flip::certify_m1()?,
                    "m2" => flip::certify_m2()?,
                    _ => return Err(Error::Invalid("--certify needs m1 or m2".into())),
                };
                out["certified"] = json!(cert.ok());
                return Ok((out, cert.ok()));
            }
            out
        }
        Command::Median { source, radius, dot } => {
            let g = source.load()?;
            let ball = median::cayley_ball(&g, radius)?;
            if dot {
                return Ok((Value::String(ball.to_dot()), true));
            }
            let hyps = median::hyperplanes(&ball)?;
            json!({
                "vertices": ball.len(),
                "edges": ball.edges.len(),
                "hyperplanes": hyps.classes.len(),
                "crossings": hyps.crossing_pairs().len(),
                "label_adjacency": median::check_label_adjacency(&ball, &hyps).to_json(),
            })
        }
        Command::VerifyPaper { only, json, list } => {
            if list {
                let ids = gp_calc::verify::all_checks().iter().map(|c| format!("{}  {}", c.id, c.claim)).collect::<Vec<_>>();
                return Ok((Value::String(ids.join("\n")), true));
            }
            let report = verify_paper(&only, &Config::from_env()?)?;
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report.to_json())?;
                std::fs::write(&path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
            }
            return Ok((Value::String(report.summary().trim_end().to_string()), report.passed()));
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((value, ok)) => {
            let text = match value {
                Value::String(s) => s,
                v => serde_json::to_string_pretty(&v).expect("json values serialize"),
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout(), "{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
