//! The `endscope` command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors
//! (bad flags, unreadable or malformed input).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ends::{closure, enumerate_ends};
use crate::envelope::{check_envelope, envelope};
use crate::epvs::Epvs;
use crate::error::{Error, Result};
use crate::exhaustion::exhaustion;
use crate::export::{self, EndView};
use crate::presentation::{EpgPresentation, VertexId};
use crate::spanning_tree::{build_spanning_tree, SpanningTreePrefix};
use crate::starcomb::star_or_comb;
use crate::text::{emit_presentation, parse_presentation};
use crate::treedecomp::{build_tree_decomposition, TreeDecompositionPrefix};
use crate::upis::Upis;
use crate::verify::{check_display, check_end_faithful, check_td_axioms, check_upwards_disjoint, Report};
use crate::zoo;

/// Environment variable holding the default horizon.
pub const DEPTH_ENV: &str = "ENDSCOPE_DEPTH_DEFAULT";
const FALLBACK_HORIZON: usize = 40;

#[derive(Parser, Debug)]
#[command(name = "endscope", version, about = "Ends, envelopes and end-faithful trees of eventually periodic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    Td,
    Display,
    Tree,
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Presentation file in the line format.
    #[arg(long, conflicts_with = "example")]
    graph: Option<PathBuf>,
    /// Built-in example (see `zoo`).
    #[arg(long)]
    example: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct SetArgs {
    /// Vertex set, e.g. `{c0 0.1=01(10)*}`; drawn at random from `--seed` when absent.
    #[arg(long)]
    set: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summary of a presentation.
    Info(GraphArgs),
    /// The ends, with their dominators.
    Ends(GraphArgs),
    /// Ends in the closure of a vertex set.
    Closure {
        #[command(flatten)]
        g: GraphArgs,
        #[command(flatten)]
        s: SetArgs,
    },
    /// Dominating vertices of every end.
    Dominators(GraphArgs),
    /// A star or comb attached to an infinite set.
    Starcomb {
        #[command(flatten)]
        g: GraphArgs,
        #[command(flatten)]
        s: SetArgs,
        /// Paths shown.
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// A connected envelope of a set, with its verification.
    Envelope {
        #[command(flatten)]
        g: GraphArgs,
        #[command(flatten)]
        s: SetArgs,
    },
    /// Layers of the connected exhaustion.
    Exhaustion {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, default_value_t = 8)]
        layers: usize,
    },
    /// Prefix of the tree-decomposition displaying the topological ends.
    Treedecomp {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Prefix of the end-faithful spanning tree.
    Spanningtree {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Check a saved decomposition or spanning tree.
    Verify {
        #[arg(long, value_enum)]
        what: What,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The finite unfolding up to a copy index.
    Unfold {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// The built-in examples, or one of them in the line format.
    Zoo {
        name: Option<String>,
    },
}

/// Failure kinds, mapped to exit codes.
enum Fail {
    Usage(String),
    Check(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Postcondition(_) => Fail::Check(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

fn default_horizon() -> usize {
    std::env::var(DEPTH_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(FALLBACK_HORIZON)
}

fn load(g: &GraphArgs) -> Result<EpgPresentation> {
    let pres = match (&g.graph, &g.example) {
        (Some(path), _) => parse_presentation(&std::fs::read_to_string(path)?)?,
        (None, Some(name)) => zoo::by_name(name).ok_or_else(|| Error::Malformed(format!("unknown example {name}")))?,
        (None, None) => return Err(Error::Malformed("give --graph FILE or --example NAME".into())),
    };
    pres.ensure_valid()?;
    Ok(pres)
}

/// The given set, or a random one: each core with probability 1/3, each strand
/// with a random index set of threshold and period at most 4.
fn pick_set(pres: &EpgPresentation, s: &SetArgs) -> Result<Epvs> {
    if let Some(text) = &s.set {
        let set: Epvs = text.parse()?;
        pres.check_set(&set)?;
        return Ok(set);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut set = Epvs::empty();
    for c in 0..pres.core_count {
        if rng.gen_bool(1.0 / 3.0) {
            set.insert_core(c);
        }
    }
    for (t, spec) in pres.tails.iter().enumerate() {
        for i in 0..spec.period {
            if rng.gen_bool(0.6) {
                let explicit = (0..rng.gen_range(0..=4)).map(|_| rng.gen_bool(0.5)).collect();
                let pattern = (0..rng.gen_range(1..=4)).map(|_| rng.gen_bool(0.5)).collect();
                set.add_strand(t, i, &Upis::from_parts(explicit, pattern));
            }
        }
    }
    Ok(set)
}

fn json<T: Serialize>(kind: &str, pres: &EpgPresentation, data: &T) -> Result<String> {
    Ok(export::to_json(kind, pres, data)? + "\n")
}

fn no_dot(cmd: &str) -> Fail {
    Fail::Usage(format!("{cmd} has no DOT output"))
}

fn list<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn ends_text(pres: &EpgPresentation, ends: &[crate::ends::End]) -> String {
    let mut out = format!("{}: {} end(s)\n", pres.name, ends.len());
    for e in ends {
        let kind = if e.is_topological() { "topological" } else { "dominated" };
        let doms: Vec<VertexId> = e.dominators.iter().map(|&d| VertexId::Core(d)).collect();
        out += &format!(
            "end {}: tail {} strands [{}] {kind} dominators [{}] lane {}\n",
            e.id,
            e.tail,
            list(&e.strands),
            list(&doms),
            e.lane
        );
    }
    out
}

fn report_out(format: Format, report: &Report) -> std::result::Result<String, Fail> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report).map_err(Error::from)? + "\n"),
        Format::Text => Ok(report.to_string()),
        Format::Dot => Err(no_dot("verify")),
    }
}

fn execute(cmd: Command) -> std::result::Result<(String, bool), Fail> {
    let ok = |s: String| Ok((s, true));
    match cmd {
        Command::Info(g) => {
            let pres = load(&g)?;
            let report = pres.validate();
            let ends = enumerate_ends(&pres)?;
            let hubs: Vec<VertexId> = pres.hubs().into_iter().map(VertexId::Core).collect();
            match g.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Info<'a> {
                        name: &'a str,
                        cores: usize,
                        periods: Vec<usize>,
                        hubs: Vec<VertexId>,
                        connected: Option<bool>,
                        ends: usize,
                        topological_ends: usize,
                    }
                    let info = Info {
                        name: &pres.name,
                        cores: pres.core_count,
                        periods: pres.tails.iter().map(|t| t.period).collect(),
                        hubs,
                        connected: report.connected,
                        ends: ends.len(),
                        topological_ends: ends.iter().filter(|e| e.is_topological()).count(),
                    };
                    ok(json("info", &pres, &info)?)
                }
                Format::Text => ok(format!(
                    "name {}\ncores {}\ntails {} (periods {})\nhubs [{}]\nconnected {}\nends {} ({} topological)\n",
                    pres.name,
                    pres.core_count,
                    pres.tails.len(),
                    list(&pres.tails.iter().map(|t| t.period).collect::<Vec<_>>()),
                    list(&hubs),
                    report.connected.map_or("unknown".to_string(), |c| c.to_string()),
                    ends.len(),
                    ends.iter().filter(|e| e.is_topological()).count()
                )),
                Format::Dot => Err(no_dot("info")),
            }
        }
        Command::Ends(g) => {
            let pres = load(&g)?;
            let ends = enumerate_ends(&pres)?;
            match g.format {
                Format::Json => {
                    let views: Vec<EndView> = ends.iter().map(EndView::from).collect();
                    ok(json("ends", &pres, &views)?)
                }
                Format::Text => ok(ends_text(&pres, &ends)),
                Format::Dot => Err(no_dot("ends")),
            }
        }
        Command::Closure { g, s } => {
            let pres = load(&g)?;
            let set = pick_set(&pres, &s)?;
            let ends = closure(&pres, &set)?;
            match g.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Closure {
                        set: Epvs,
                        ends: Vec<EndView>,
                    }
                    let data = Closure {
                        set,
                        ends: ends.iter().map(EndView::from).collect(),
                    };
                    ok(json("closure", &pres, &data)?)
                }
                Format::Text => ok(format!("set {set}\n{}", ends_text(&pres, &ends))),
                Format::Dot => Err(no_dot("closure")),
            }
        }
        Command::Dominators(g) => {
            let pres = load(&g)?;
            let ends = enumerate_ends(&pres)?;
            let rows: Vec<(usize, Vec<VertexId>)> = ends
                .iter()
                .map(|e| (e.id, e.dominators.iter().map(|&d| VertexId::Core(d)).collect()))
                .collect();
            match g.format {
                Format::Json => ok(json("dominators", &pres, &rows)?),
                Format::Text => ok(rows.iter().map(|(id, d)| format!("end {id}: [{}]\n", list(d))).collect()),
                Format::Dot => Err(no_dot("dominators")),
            }
        }
        Command::Starcomb { g, s, count } => {
            let pres = load(&g)?;
            let set = pick_set(&pres, &s)?;
            let cert = star_or_comb(&pres, &set)?;
            let paths = cert.paths().take(count);
            match g.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out<'a> {
                        set: &'a Epvs,
                        certificate: &'a crate::starcomb::Certificate,
                        paths: &'a [Vec<VertexId>],
                    }
                    ok(json(
                        "starcomb",
                        &pres,
                        &Out {
                            set: &set,
                            certificate: &cert,
                            paths: &paths,
                        },
                    )?)
                }
                Format::Text => {
                    let mut out = format!("set {set}\n{}\n", cert.kind());
                    for p in &paths {
                        out += &format!("  {}\n", list(p));
                    }
                    ok(out)
                }
                Format::Dot => Err(no_dot("starcomb")),
            }
        }
        Command::Envelope { g, s } => {
            let pres = load(&g)?;
            let set = pick_set(&pres, &s)?;
            let u_star = envelope(&pres, &set)?;
            let check = check_envelope(&pres, &set, &u_star);
            let passed = check.passed();
            let out = match g.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out<'a> {
                        set: &'a Epvs,
                        envelope: &'a Epvs,
                        check: &'a crate::envelope::EnvelopeCheck,
                    }
                    json(
                        "envelope",
                        &pres,
                        &Out {
                            set: &set,
                            envelope: &u_star,
                            check: &check,
                        },
                    )?
                }
                Format::Text => format!(
                    "set {set}\nenvelope {u_star}\nsuperset {}\nconnected {}\nfinite_adhesion {}\nclosure_equal {}\n",
                    check.superset, check.connected, check.finite_adhesion, check.closure_equal
                ),
                Format::Dot => return Err(no_dot("envelope")),
            };
            Ok((out, passed))
        }
        Command::Exhaustion { g, layers } => {
            let pres = load(&g)?;
            let ex = exhaustion(&pres, layers)?;
            match g.format {
                Format::Json => ok(json("exhaustion", &pres, &ex)?),
                Format::Text => {
                    let mut out = String::new();
                    for l in &ex.layers {
                        out += &format!(
                            "H{} = {}  components {}  checks {}\n",
                            l.index,
                            l.set,
                            l.components.len(),
                            if l.checks.passed() { "pass" } else { "FAIL" }
                        );
                    }
                    if let Some(m) = ex.fixed_point {
                        out += &format!("H{m} = V(G)\n");
                    }
                    ok(out)
                }
                Format::Dot => Err(no_dot("exhaustion")),
            }
        }
        Command::Treedecomp { g, depth, horizon } => {
            let pres = load(&g)?;
            let td = build_tree_decomposition(&pres, depth, horizon.unwrap_or_else(default_horizon))?;
            match g.format {
                Format::Json => ok(json("tree_decomposition", &pres, &td)?),
                Format::Dot => ok(export::td_dot(&td)),
                Format::Text => {
                    let mut out = format!("{} nodes, {} leaves\n", td.nodes.len(), td.leaf_count());
                    for n in &td.nodes {
                        let up = n.parent.map_or("-".to_string(), |p| p.to_string());
                        out += &format!("node {} parent {up} part {}\n", n.id, n.part);
                    }
                    for d in &td.display_table {
                        out += &format!("end {} <-> ray {}\n", d.end, list(&d.chain));
                    }
                    for o in &td.dominated {
                        let at = o.node.map_or("beyond the prefix".to_string(), |n| format!("node {n}"));
                        out += &format!("end {} (dominated) at {at}\n", o.end);
                    }
                    ok(out)
                }
            }
        }
        Command::Spanningtree { g, depth, horizon } => {
            let pres = load(&g)?;
            let st = build_spanning_tree(&pres, depth, horizon.unwrap_or_else(default_horizon))?;
            match g.format {
                Format::Json => ok(json("spanning_tree", &pres, &st)?),
                Format::Dot => ok(export::tree_dot(&pres.name, &st.tree)),
                Format::Text => {
                    let mut out = format!("{} vertices\n", st.tree.parent.len());
                    for a in &st.attachments {
                        out += &format!("layer {} component {} via {}-{}\n", a.layer, a.component, a.edge.0, a.edge.1);
                    }
                    for r in &st.ray_certificates {
                        out += &format!("end {}: {}\n", r.end, list(&r.path));
                    }
                    ok(out)
                }
            }
        }
        Command::Verify {
            what,
            input,
            horizon,
            format,
        } => {
            let text = std::fs::read_to_string(&input).map_err(Error::from)?;
            let report = match what {
                What::Td | What::Display => {
                    let (pres, td): (_, TreeDecompositionPrefix) = export::read_document(&text, "tree_decomposition")?;
                    if what == What::Td {
                        let mut rep = check_td_axioms(&pres, &td, horizon.unwrap_or(td.horizon))?;
                        rep.checks.extend(check_upwards_disjoint(&td).checks);
                        rep
                    } else {
                        check_display(&pres, &td)
                    }
                }
                What::Tree => {
                    let (pres, st): (_, SpanningTreePrefix) = export::read_document(&text, "spanning_tree")?;
                    check_end_faithful(&pres, &st)
                }
            };
            Ok((report_out(format, &report)?, report.passed()))
        }
        Command::Unfold { g, depth } => {
            let pres = load(&g)?;
            let graph = pres.unfold(depth);
            match g.format {
                Format::Dot => ok(export::unfolding_dot(&pres, depth)),
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out {
                        depth: usize,
                        vertices: Vec<VertexId>,
                        edges: Vec<(VertexId, VertexId)>,
                    }
                    let data = Out {
                        depth,
                        vertices: graph.vertices.clone(),
                        edges: graph.edges(),
                    };
                    ok(json("unfolding", &pres, &data)?)
                }
                Format::Text => ok(format!(
                    "{} vertices, {} edges\n{}",
                    graph.len(),
                    graph.edge_count(),
                    graph
                        .edges()
                        .iter()
                        .map(|(a, b)| format!("{a} {b}\n"))
                        .collect::<String>()
                )),
            }
        }
        Command::Zoo { name } => match name {
            None => ok(zoo::NAMES.iter().map(|n| format!("{n}\n")).collect()),
            Some(n) => {
                let pres = zoo::by_name(&n).ok_or_else(|| Fail::Usage(format!("unknown example {n}")))?;
                ok(emit_presentation(&pres))
            }
        },
    }
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command) {
        Ok((text, passed)) => {
            let _ = write!(out, "{text}");
            if passed {
                0
            } else {
                let _ = writeln!(err, "verification failed");
                1
            }
        }
        Err(Fail::Check(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Fail::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("endscope").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn fan_ends_json() {
        let (code, out, _) = call(&["ends", "--example", "fan", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], 1);
        let ends = v["data"].as_array().unwrap();
        assert_eq!(ends.len(), 1);
        assert_eq!(ends[0]["topological"], false);
        assert_eq!(ends[0]["dominators"], serde_json::json!(["c0"]));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["nonsense"]).0, 2);
        assert_eq!(call(&["ends"]).0, 2);
        assert_eq!(call(&["ends", "--example", "nope"]).0, 2);
        assert_eq!(call(&["info", "--example", "ray", "--format", "dot"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn random_sets_are_seeded() {
        let a = call(&["envelope", "--example", "ladder", "--seed", "7"]);
        let b = call(&["envelope", "--example", "ladder", "--seed", "7"]);
        assert_eq!(a.0, 0, "{}", a.2);
        assert_eq!(a, b);
    }
}
