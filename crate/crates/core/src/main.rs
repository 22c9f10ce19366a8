//! Thin command-line front end over the library. Every subcommand parses its
//! inputs, calls one library entry point, and emits a JSON report (to
//! `--json-out` when given, to stdout otherwise) with a one-line summary.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use corteges::bridge::{Bridge, MaximalChain};
use corteges::colorset::ColorSet;
use corteges::corpus::default_corpus;
use corteges::cortege::PathSystem;
use corteges::cubillage::{cubillage_flip_graph, ziegler_check, Cubillage, Side};
use corteges::digraph::Digraph;
use corteges::emit::{cubillage_graph_dot, flip_graph_dot, tiling_svg, RenderOptions};
use corteges::io::{corteges_from_doc, corteges_to_doc, order_from_doc, CortegeDoc, CubillageDoc};
use corteges::orders::{Extreme, OrderSpace};
use corteges::zonotope::CyclicConfig;
use corteges::{Caps, Error, Result};

#[derive(Parser)]
#[command(name = "corteges", about = "Convex orders on path corteges and cubillage flips")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// Override the enumeration caps (also settable via CFL_CAP).
    #[arg(long, global = true)]
    cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List the nontrivial paths and routes of a digraph.
    Paths {
        #[arg(long)]
        graph: PathBuf,
    },
    /// List the k-corteges in canonical order.
    Corteges {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// The lexicographic minimal convex order (all corteges standard).
    MinOrder {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// The lexicographic maximal convex order (all corteges anti-standard).
    MaxOrder {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Apply a flip to a class given as its set of anti-standard corteges.
    Flip {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        /// File with the anti-standard d-corteges (JSON list of corteges).
        #[arg(long)]
        assignment: PathBuf,
        /// The d-cortege to flip, inline JSON.
        #[arg(long)]
        cortege: String,
    },
    /// Explore the flip graph of convex-order classes.
    FlipGraph {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        /// Emit DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Check the poset structure of the flip graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Build the standard or anti-standard cubillage of Z(n,dim).
    Cubillage {
        /// "std" or "anti".
        which: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        /// Moment-curve parameters, comma separated.
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<i64>>,
    },
    /// Explore the capsid flip graph over all cubillages of Z(n,dim).
    CubillageFlips {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Test a packet set against the prefix/suffix realizability criterion.
    Ziegler {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        /// Inline JSON list of packets, e.g. '[[1,2,3],[1,2,4]]'.
        #[arg(long)]
        packets: String,
    },
    /// Lift a maximal chain to a convex order one degree up.
    Lift {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        /// File with the ordered list of flipped d-corteges.
        #[arg(long)]
        chain: PathBuf,
    },
    /// Represent a convex order on the d-corteges by a maximal chain.
    Descend {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        /// File with the ranked list of d-corteges.
        #[arg(long)]
        order: PathBuf,
    },
    /// Random chain, lift, descend, lift again; compare the classes.
    Roundtrip {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render a 2-dimensional cubillage as SVG.
    Render {
        #[arg(long)]
        tiling: PathBuf,
        #[arg(long)]
        svg_out: Option<PathBuf>,
        /// Bold-stroke the three rhombi of this packet, comma separated.
        #[arg(long, value_delimiter = ',')]
        bold: Option<Vec<u8>>,
        /// Overlay natural-order arrows.
        #[arg(long)]
        arrows: bool,
    },
    /// Run the poset checks over every DAG with at most four vertices plus
    /// the branching example.
    Corpus {
        /// Degrees to check, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3])]
        d: Vec<usize>,
    },
}

fn main() {
    // Die quietly on closed pipes instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let mut caps = Caps::from_env();
    if let Some(cap) = cli.cap {
        caps.max_nodes = cap;
        caps.max_ideals = cap;
        caps.max_chains = cap;
    }
    match run(cli.command, &caps, cli.json_out.as_deref()) {
        Ok(()) => {}
        Err(e) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({"error": e.to_string()})).unwrap()
            );
            std::process::exit(1);
        }
    }
}

fn load_graph(path: &std::path::Path) -> Result<Digraph> {
    Digraph::parse_json(&std::fs::read_to_string(path)?)
}

fn ensure_degree(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidInput(format!(
            "order commands need --d of at least 2, got {d}"
        )));
    }
    Ok(())
}

fn read_corteges(path: &std::path::Path) -> Result<Vec<CortegeDoc>> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

/// Writes the report to the JSON sink and a one-line summary to stdout; with
/// no sink, the pretty JSON is the stdout output.
fn emit(report: &Value, summary: &str, json_out: Option<&std::path::Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(report).unwrap();
    match json_out {
        Some(path) => {
            std::fs::write(path, text + "\n")?;
            println!("{summary}");
        }
        None => println!("{text}"),
    }
    Ok(())
}

/// Writes raw text (DOT/SVG) to a file or stdout.
fn emit_text(text: &str, out: Option<&std::path::Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(command: Command, caps: &Caps, json_out: Option<&std::path::Path>) -> Result<()> {
    match command {
        Command::Paths { graph } => {
            let g = load_graph(&graph)?;
            let paths = g.enumerate_paths(caps)?;
            let routes = g.enumerate_routes(caps)?;
            let report = json!({
                "paths": paths.iter().map(|p| g.path_name(p)).collect::<Vec<_>>(),
                "routes": routes.iter().map(|p| g.path_name(p)).collect::<Vec<_>>(),
            });
            emit(
                &report,
                &format!("{} paths, {} routes", paths.len(), routes.len()),
                json_out,
            )
        }
        Command::Corteges { graph, k } => {
            if k == 0 {
                return Err(Error::InvalidInput("--k must be at least 1".into()));
            }
            let sys = PathSystem::new(load_graph(&graph)?, k, caps)?;
            let ids: Vec<usize> = (0..sys.level(k).count()).collect();
            let report = json!({
                "k": k,
                "corteges": corteges_to_doc(&sys, k, &ids),
            });
            emit(&report, &format!("{} corteges at level {k}", ids.len()), json_out)
        }
        Command::MinOrder { graph, d } => extreme_command(&graph, d, Extreme::Min, caps, json_out),
        Command::MaxOrder { graph, d } => extreme_command(&graph, d, Extreme::Max, caps, json_out),
        Command::Flip {
            graph,
            d,
            assignment,
            cortege,
        } => {
            ensure_degree(d)?;
            let sys = PathSystem::new(load_graph(&graph)?, d, caps)?;
            let space = OrderSpace::new(&sys, d);
            let anti_docs = read_corteges(&assignment)?;
            let anti: BTreeSet<usize> =
                corteges_from_doc(&sys, d, &anti_docs)?.into_iter().collect();
            let sigma = corteges::orders::TypeAssignment { d, anti };
            let doc: CortegeDoc = serde_json::from_str(&cortege)?;
            let ids = corteges_from_doc(&sys, d, std::slice::from_ref(&doc))?;
            let next = space.apply_flip(&sigma, ids[0])?;
            let report = json!({
                "d": d,
                "flipped": doc,
                "direction": if sigma.is_anti(ids[0]) { "lowering" } else { "raising" },
                "anti_standard": corteges_to_doc(&sys, d, &next.inversion_set()),
            });
            emit(&report, &format!("rank {} -> {}", sigma.rank(), next.rank()), json_out)
        }
        Command::FlipGraph { graph, d, dot } => {
            ensure_degree(d)?;
            let sys = PathSystem::new(load_graph(&graph)?, d, caps)?;
            let space = OrderSpace::new(&sys, d);
            let fg = space.flip_graph(caps)?;
            if dot {
                return emit_text(&flip_graph_dot(&sys, &fg), json_out);
            }
            let report = json!({
                "d": d,
                "nodes": fg.nodes.iter()
                    .map(|inv| corteges_to_doc(&sys, d, inv))
                    .collect::<Vec<_>>(),
                "arcs": fg.arcs.iter()
                    .map(|&(a, b, p)| json!({
                        "from": a, "to": b,
                        "cortege": corteges_to_doc(&sys, d, &[p])[0],
                    }))
                    .collect::<Vec<_>>(),
            });
            emit(
                &report,
                &format!("{} classes, {} raising flips", fg.nodes.len(), fg.arcs.len()),
                json_out,
            )
        }
        Command::Verify { graph, d } => {
            ensure_degree(d)?;
            let sys = PathSystem::new(load_graph(&graph)?, d, caps)?;
            let space = OrderSpace::new(&sys, d);
            let fg = space.flip_graph(caps)?;
            let report = space.verify_poset(&fg)?;
            let pass = report.pass();
            emit(
                &serde_json::to_value(&report)?,
                &format!(
                    "{} nodes, rank {}: {}",
                    report.node_count,
                    report.expected_chain_length,
                    if pass { "all checks pass" } else { "violations found" }
                ),
                json_out,
            )?;
            if !pass {
                std::process::exit(2);
            }
            Ok(())
        }
        Command::Cubillage { which, n, dim, t } => {
            let cfg = match t {
                Some(t) => CyclicConfig::veronese(&t, dim)?,
                None => CyclicConfig::standard(n, dim)?,
            };
            if cfg.n() != n {
                return Err(Error::InvalidInput(format!(
                    "{} parameters for n = {n}",
                    cfg.n()
                )));
            }
            let side = match which.as_str() {
                "std" => Side::Front,
                "anti" => Side::Rear,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "expected std or anti, got {other}"
                    )))
                }
            };
            let q = Cubillage::extreme(&cfg, side)?;
            let report = serde_json::to_value(CubillageDoc::from_cubillage(&q))?;
            emit(&report, &format!("{} cubes", q.cube_count()), json_out)
        }
        Command::CubillageFlips { n, dim, dot } => {
            let fg = cubillage_flip_graph(n, dim, caps.max_nodes)?;
            if dot {
                return emit_text(&cubillage_graph_dot(&fg), json_out);
            }
            let report = json!({
                "n": n,
                "d": dim,
                "nodes": fg.nodes.iter()
                    .map(|(inv, _)| inv.iter().map(|p| p.colors()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "arcs": fg.arcs.iter()
                    .map(|&(a, b, p)| json!({"from": a, "to": b, "packet": p.colors()}))
                    .collect::<Vec<_>>(),
            });
            emit(
                &report,
                &format!("{} cubillages, {} flips", fg.nodes.len(), fg.arcs.len()),
                json_out,
            )
        }
        Command::Ziegler { n, dim, packets } => {
            let sets: Vec<Vec<u8>> = serde_json::from_str(&packets)?;
            let inv: BTreeSet<ColorSet> =
                sets.iter().map(|s| ColorSet::from_colors(s)).collect();
            for p in &inv {
                if p.len() != dim + 1 {
                    return Err(Error::InvalidInput(format!(
                        "packet {p} must have d+1 = {} colors",
                        dim + 1
                    )));
                }
            }
            let ok = ziegler_check(&inv, n, dim);
            let report = json!({"n": n, "d": dim, "packets": sets, "realizable": ok});
            emit(&report, &format!("realizable: {ok}"), json_out)
        }
        Command::Lift { graph, d, chain } => {
            ensure_degree(d)?;
            let sys = PathSystem::new(load_graph(&graph)?, d + 1, caps)?;
            let bridge = Bridge::new(&sys, d, *caps);
            let docs = read_corteges(&chain)?;
            let flips = corteges_from_doc(&sys, d, &docs)?;
            let lift = bridge.lift_chain(&MaximalChain { d, flips })?;
            let report = json!({
                "d": d,
                "order": corteges_to_doc(&sys, d, &lift.order.ranking),
                "anti_standard": corteges_to_doc(&sys, d + 1, &lift.assignment.inversion_set()),
            });
            emit(
                &report,
                &format!(
                    "lifted to an order on {} corteges, {} anti-standard",
                    lift.order.ranking.len(),
                    lift.assignment.rank()
                ),
                json_out,
            )
        }
        Command::Descend { graph, d, order } => {
            ensure_degree(d)?;
            let sys = PathSystem::new(load_graph(&graph)?, d + 1, caps)?;
            let bridge = Bridge::new(&sys, d, *caps);
            let docs = read_corteges(&order)?;
            let upper = bridge.upper_space();
            let target = upper.check_convex(&order_from_doc(&sys, d + 1, &docs)?)?;
            let chain = bridge.descend(&target)?;
            let report = json!({
                "d": d,
                "chain": corteges_to_doc(&sys, d, &chain.flips),
            });
            emit(&report, &format!("chain of {} flips", chain.flips.len()), json_out)
        }
        Command::Roundtrip { graph, d, seed } => {
            ensure_degree(d)?;
            let sys = PathSystem::new(load_graph(&graph)?, d + 1, caps)?;
            let bridge = Bridge::new(&sys, d, *caps);
            let chain = bridge.random_chain(seed)?;
            let lift = bridge.lift_chain(&chain)?;
            let back = bridge.descend(&lift.assignment)?;
            let lift2 = bridge.lift_chain(&back)?;
            let ok = lift.assignment == lift2.assignment;
            let report = json!({
                "d": d,
                "seed": seed,
                "chain": corteges_to_doc(&sys, d, &chain.flips),
                "descended_chain": corteges_to_doc(&sys, d, &back.flips),
                "round_trip_ok": ok,
            });
            emit(&report, &format!("round trip ok: {ok}"), json_out)?;
            if !ok {
                std::process::exit(2);
            }
            Ok(())
        }
        Command::Render {
            tiling,
            svg_out,
            bold,
            arrows,
        } => {
            let doc: CubillageDoc = serde_json::from_str(&std::fs::read_to_string(&tiling)?)?;
            let q = doc.to_cubillage()?;
            let report = q.validate();
            if !report.is_valid() {
                return Err(Error::InvalidInput(format!(
                    "tiling is not a valid cubillage: {:?}",
                    report.failures
                )));
            }
            let options = RenderOptions {
                bold_packet: bold.map(|b| ColorSet::from_colors(&b)),
                arrows,
            };
            emit_text(&tiling_svg(&q, &options), svg_out.as_deref())
        }
        Command::Corpus { d } => {
            for &deg in &d {
                ensure_degree(deg)?;
            }
            let mut instances = Vec::new();
            let mut all_pass = true;
            for (i, g) in default_corpus().into_iter().enumerate() {
                for &deg in &d {
                    let sys = PathSystem::new(g.clone(), deg, caps)?;
                    let space = OrderSpace::new(&sys, deg);
                    let fg = space.flip_graph(caps)?;
                    let report = space.verify_poset(&fg)?;
                    all_pass &= report.pass();
                    instances.push(json!({
                        "instance": i,
                        "graph": g.to_doc(),
                        "d": deg,
                        "nodes": report.node_count,
                        "pass": report.pass(),
                        "violations": report.violations,
                    }));
                }
            }
            let report = json!({"instances": instances, "all_pass": all_pass});
            emit(
                &report,
                &format!(
                    "{} instance/degree pairs checked: {}",
                    report["instances"].as_array().unwrap().len(),
                    if all_pass { "all pass" } else { "violations found" }
                ),
                json_out,
            )?;
            if !all_pass {
                std::process::exit(2);
            }
            Ok(())
        }
    }
}

fn extreme_command(
    graph: &std::path::Path,
    d: usize,
    side: Extreme,
    caps: &Caps,
    json_out: Option<&std::path::Path>,
) -> Result<()> {
    ensure_degree(d)?;
    let sys = PathSystem::new(load_graph(graph)?, d, caps)?;
    let space = OrderSpace::new(&sys, d);
    let order = space.extreme_order(side);
    let assignment = space.check_convex(&order)?;
    let report = json!({
        "d": d,
        "order": corteges_to_doc(&sys, d - 1, &order.ranking),
        "anti_standard": corteges_to_doc(&sys, d, &assignment.inversion_set()),
    });
    emit(
        &report,
        &format!(
            "{} corteges ranked, {} anti-standard",
            order.ranking.len(),
            assignment.rank()
        ),
        json_out,
    )
}
