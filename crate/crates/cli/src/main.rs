use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use localds::bench::{emit_report, run_bench, BenchSpec, ReportFormat};
use localds::dynamic::{parse_updates, DynamicState};
use localds::generate;
use localds::oracles::{
    approx_ratio_trial, exact, is_dominating, is_k_dominating, is_total_dominating_non_isolated,
    EXACT_BUDGET,
};
use localds::record::SolutionRecord;
use localds::setcover::{load_set_system, solve_setcover};
use localds::{
    load_graph, solve, solve_kdistance, Graph, GraphFormat, IsolatedPolicy, KConfig, LoadOptions,
    Mode, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "localds",
    version,
    about = "Local marking solver for dominating sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct GraphInput {
    /// Graph file.
    #[arg(long)]
    input: PathBuf,
    /// edgelist, mtx or dimacs; guessed from the extension when omitted.
    #[arg(long)]
    format: Option<GraphFormat>,
    /// Reject arcs whose reverse is missing instead of symmetrizing.
    #[arg(long)]
    strict_symmetric: bool,
}

impl GraphInput {
    fn load(&self) -> Result<Graph> {
        let mut opts = LoadOptions::new(
            self.format
                .unwrap_or_else(|| GraphFormat::from_path(&self.input)),
        );
        opts.treat_directed_as_undirected = !self.strict_symmetric;
        let g = load_graph(&self.input, &opts)?;
        let stats = g.stats();
        if stats.self_loops + stats.duplicate_edges > 0 {
            eprintln!(
                "note: dropped {} self-loops and {} duplicate edges",
                stats.self_loops, stats.duplicate_edges
            );
        }
        Ok(g)
    }

    fn name(&self) -> String {
        self.input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute a dominating set and write it as JSON.
    Solve {
        #[command(flatten)]
        graph: GraphInput,
        /// Refinement rounds.
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Domination distance.
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "seq")]
        mode: Mode,
        /// What to do with degree-0 nodes: error or include.
        #[arg(long, default_value = "error")]
        isolated: IsolatedPolicy,
        /// Build the k-th power graph instead of exploring k-hop
        /// neighborhoods on the fly.
        #[arg(long)]
        materialize: bool,
        /// Include the marked node ids in the output.
        #[arg(long)]
        emit_marked: bool,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a benchmark spec (TOML) and write a report (.csv, .json or .md).
    Bench {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a solution file against its graph. Exits nonzero when invalid.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        format: Option<GraphFormat>,
        #[arg(long)]
        solution: PathBuf,
        /// Require total domination (isolated nodes must be in the set).
        #[arg(long)]
        total: bool,
        /// Distance; defaults to the k stored in the solution.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Exact minimum dominating and total dominating set sizes (small graphs).
    Exact {
        #[command(flatten)]
        graph: GraphInput,
        /// Only compute the total variant.
        #[arg(long)]
        total: bool,
        #[arg(long, default_value_t = EXACT_BUDGET)]
        budget: usize,
    },
    /// Replay an edge update stream (`+ u v` / `- u v`) and print the solution
    /// size after every update as CSV.
    Dynamic {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        updates: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Refinement rounds; anything above 0 re-solves from scratch after
        /// each update.
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value = "include")]
        isolated: IsolatedPolicy,
    },
    /// Compare against exact optima on small triangle-free planar graphs; CSV.
    RatioTrials {
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// First trial seed; trial i uses seed + i.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Set cover on a set-system file (`n s` header, one subset per line,
    /// 1-based elements).
    Setcover {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Write a synthetic graph as an edge list.
    Generate {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        /// Edge count for gnm; fraction of grid edges kept for planar.
        #[arg(long)]
        edges: Option<f64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Gnm,
    Planar,
    Path,
    Cycle,
    Complete,
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn csv_to_stdout<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct DynamicRow<'a> {
    step: usize,
    op: String,
    u: &'a str,
    v: &'a str,
    n: usize,
    edges: usize,
    size: usize,
    changed: usize,
}

#[derive(Serialize)]
struct CoverOutput {
    /// 1-based positions of the chosen subsets in the input file.
    chosen: Vec<u32>,
    size: usize,
    m: usize,
    seed: u64,
    rounds: usize,
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Solve {
            graph,
            m,
            k,
            seed,
            mode,
            isolated,
            materialize,
            emit_marked,
            out,
        } => {
            let g = graph.load()?;
            let base = RunConfig::new(seed, m)
                .with_mode(mode)
                .with_isolated(isolated);
            let s = if k == 1 {
                solve(&g, &base)?
            } else {
                let mut cfg = KConfig::new(k, base);
                cfg.materialize_power_graph = materialize;
                solve_kdistance(&g, &cfg)?
            };
            eprintln!(
                "{}: n={} edges={} size={} rounds={} elapsed={:.3?}",
                graph.name(),
                g.node_count(),
                g.edge_count(),
                s.size(),
                s.rounds,
                s.elapsed
            );
            let record = SolutionRecord::new(graph.name(), &g, &s, emit_marked);
            write_out(out.as_deref(), &(record.to_json()? + "\n"))?;
        }
        Command::Bench { spec, out } => {
            let spec = BenchSpec::load(&spec)?;
            let report = run_bench(&spec)?;
            emit_report(&report, ReportFormat::from_path(&out), &out)?;
            let failed = report.rows.iter().filter(|r| r.error.is_some()).count();
            eprintln!(
                "{} rows written to {}, {failed} failed",
                report.rows.len(),
                out.display()
            );
        }
        Command::Verify {
            graph,
            format,
            solution,
            total,
            k,
        } => {
            let opts = LoadOptions::new(format.unwrap_or_else(|| GraphFormat::from_path(&graph)));
            let g = load_graph(&graph, &opts)?;
            let record = SolutionRecord::load(&solution)?;
            ensure!(
                record.n == g.node_count(),
                "solution is for {} nodes, graph has {}",
                record.n,
                g.node_count()
            );
            let Some(marked) = record.marked else {
                bail!("solution has no marked set; re-run solve with --emit-marked");
            };
            if let Some(&v) = marked.iter().find(|&&v| v as usize >= g.node_count()) {
                bail!("solution contains node {v} outside the graph");
            }
            let k = k.unwrap_or(record.k);
            ensure!(k >= 1, "k must be at least 1");
            let ok = match (k, total) {
                (1, false) => is_dominating(&g, &marked),
                (1, true) => is_total_dominating_non_isolated(&g, &marked),
                (k, total) => is_k_dominating(&g, &marked, k, total),
            };
            let kind = if total { "total " } else { "" };
            println!(
                "{}: {} nodes, {kind}{k}-domination {}",
                solution.display(),
                marked.len(),
                if ok { "ok" } else { "FAILED" }
            );
            return Ok(ok);
        }
        Command::Exact {
            graph,
            total,
            budget,
        } => {
            let g = graph.load()?;
            let r = exact(&g, budget)?;
            let json = if total {
                serde_json::json!({ "gamma_t": r.gamma_t, "total_witness": r.total_witness })
            } else {
                serde_json::to_value(&r)?
            };
            println!("{}", serde_json::to_string_pretty(&json)?);
        }
        Command::Dynamic {
            graph,
            updates,
            seed,
            m,
            isolated,
        } => {
            let g = graph.load()?;
            let text = fs::read_to_string(&updates)
                .with_context(|| format!("reading {}", updates.display()))?;
            let ups = parse_updates(&text)?;
            let mut state = DynamicState::new(&g, seed, isolated)?;
            let size_now = |state: &DynamicState| -> Result<usize> {
                if m == 0 {
                    Ok(state.size())
                } else {
                    let cfg = RunConfig::new(seed, m).with_isolated(isolated);
                    Ok(solve(&state.to_graph(), &cfg)?.size())
                }
            };
            let mut rows = vec![DynamicRow {
                step: 0,
                op: String::new(),
                u: "",
                v: "",
                n: state.node_count(),
                edges: state.edge_count(),
                size: size_now(&state)?,
                changed: 0,
            }];
            for (i, up) in ups.iter().enumerate() {
                let mut id = |label: &str| {
                    state
                        .node_by_label(label)
                        .unwrap_or_else(|| state.add_node(label))
                };
                let (u, v) = (id(&up.u), id(&up.v));
                let out = state
                    .apply_edge(up.op, u, v)
                    .with_context(|| format!("update {} ({} {} {})", i + 1, up.op, up.u, up.v))?;
                rows.push(DynamicRow {
                    step: i + 1,
                    op: up.op.to_string(),
                    u: &up.u,
                    v: &up.v,
                    n: state.node_count(),
                    edges: state.edge_count(),
                    size: size_now(&state)?,
                    changed: out.changed.len(),
                });
            }
            csv_to_stdout(rows)?;
        }
        Command::RatioTrials { trials, m, seed } => {
            let rows = (seed..seed + trials)
                .map(|s| approx_ratio_trial(s, m))
                .collect::<Result<Vec<_>, _>>()?;
            let max = rows.iter().map(|r| r.ratio_mtds).fold(0.0, f64::max);
            eprintln!("{} trials, max size/γt = {max:.3}", rows.len());
            csv_to_stdout(rows)?;
        }
        Command::Setcover { input, m, seed } => {
            let sys = load_set_system(&input)?;
            let s = solve_setcover(&sys, &RunConfig::new(seed, m));
            ensure!(
                sys.is_cover(&s.chosen),
                "internal error: result is not a cover"
            );
            let out = CoverOutput {
                chosen: s.chosen.iter().map(|j| j + 1).collect(),
                size: s.size(),
                m,
                seed,
                rounds: s.rounds,
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Generate {
            kind,
            n,
            edges,
            seed,
            out,
        } => {
            let g = match kind {
                GenKind::Gnm => {
                    let e = edges.context("gnm needs --edges")?;
                    generate::gnm(seed, n, e as usize)
                }
                GenKind::Planar => generate::planar_triangle_free(seed, n, edges.unwrap_or(0.7)),
                GenKind::Path => generate::path(n),
                GenKind::Cycle => generate::cycle(n),
                GenKind::Complete => generate::complete(n),
            };
            let mut text = String::new();
            for v in g.isolated_vertices() {
                text.push_str(&format!("{}\n", g.label(v)));
            }
            for (u, v) in g.edges() {
                text.push_str(&format!("{} {}\n", g.label(u), g.label(v)));
            }
            write_out(out.as_deref(), &text)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
