//! Batch command-line front end for k-set graph reconstruction.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kset_recon::{
    bd_enumerate, bd_skeletons, certify_unique, clear_non_neighbors, connected_ksets,
    fake_neighbor_analysis, io, parse_dimacs, reduce_3sat, solve_partial, tf_enumerate,
    ReconstructionClass, SolveOutcome,
};

#[derive(Parser)]
#[command(
    name = "kset-recon",
    version,
    about = "Reconstruct labeled graphs from the connectivity of their k-vertex subsets"
)]
struct Cli {
    /// Suppress informational notes on stderr.
    #[arg(long, global = true)]
    quiet: bool,

    /// Seed for randomized operations. Reserved: every current subcommand is
    /// fully deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every k-subset of a graph into a complete instance file.
    Gen(GenArgs),
    /// Enumerate consistent graphs from a complete instance.
    #[command(subcommand)]
    Reconstruct(ReconstructCmd),
    /// Decide unique reconstructibility within a class.
    Unique(UniqueArgs),
    /// Structural reports.
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Translate a DIMACS 3-CNF formula into a partial instance.
    Reduce(ReduceArgs),
    /// Search for a graph matching a partial instance.
    Solve(SolveArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ReconstructCmd {
    /// Connected triangle-free graphs.
    Tf(TfArgs),
    /// Connected bounded-degree graphs via skeletons.
    Bd(BdArgs),
}

#[derive(Args)]
struct TfArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BdArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long = "max-degree")]
    max_degree: usize,
    /// Write the skeleton family to this file.
    #[arg(long)]
    skeletons: Option<PathBuf>,
    /// Stream the deduplicated completions (default when --skeletons is
    /// absent).
    #[arg(long)]
    enumerate: bool,
    /// Cap the number of streamed graphs.
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct UniqueArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    /// `tf` or `bd:<max degree>`.
    #[arg(long, value_parser = parse_class)]
    class: ReconstructionClass,
}

#[derive(Subcommand)]
enum AnalyzeCmd {
    /// Clear/fake classification of every non-edge of a graph.
    Pairs(PairsArgs),
}

#[derive(Args)]
struct PairsArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    cnf: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    out: PathBuf,
    /// Sidecar file mapping gadget roles to vertex ids.
    #[arg(long)]
    roles: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Node limit for the backtracking search.
    #[arg(long, default_value_t = 50_000_000)]
    budget: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_class(s: &str) -> Result<ReconstructionClass, String> {
    if s == "tf" {
        return Ok(ReconstructionClass::TriangleFree);
    }
    if let Some(d) = s.strip_prefix("bd:") {
        let d: usize = d
            .parse()
            .map_err(|_| format!("bad max degree in class {s:?}"))?;
        return Ok(ReconstructionClass::BoundedDegree(d));
    }
    Err(format!("expected `tf` or `bd:<max degree>`, got {s:?}"))
}

struct Failure {
    code: u8,
    message: Option<String>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: Some(message.into()),
        }
    }

    fn silent(code: u8) -> Self {
        Failure {
            code,
            message: None,
        }
    }
}

impl From<kset_recon::Error> for Failure {
    fn from(e: kset_recon::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(msg) = f.message {
                eprintln!("error: {msg}");
            }
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, data: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, data).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn note(cli: &Cli, text: String) {
    if !cli.quiet {
        eprintln!("{text}");
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Gen(args) => {
            let g = io::parse_graph(&read(&args.graph)?)?;
            let inst = connected_ksets(&g, args.k)?;
            note(
                cli,
                format!(
                    "{} connected / {} total k-sets",
                    inst.connected_count(),
                    binomial(g.n(), args.k)
                ),
            );
            emit(&args.out, &io::serialize_instance(&inst))
        }
        Command::Reconstruct(ReconstructCmd::Tf(args)) => {
            let inst = io::parse_instance(&read(&args.instance)?)?;
            let graphs = tf_enumerate(&inst)?;
            note(cli, format!("{} graph(s)", graphs.len()));
            emit(&args.out, &io::serialize_graph_stream(&graphs))?;
            if graphs.is_empty() {
                return Err(Failure::silent(1));
            }
            Ok(())
        }
        Command::Reconstruct(ReconstructCmd::Bd(args)) => {
            let inst = io::parse_instance(&read(&args.instance)?)?;
            if let Some(path) = &args.skeletons {
                let family = bd_skeletons(&inst, args.max_degree)?;
                note(cli, format!("{} skeleton(s)", family.len()));
                emit(&Some(path.clone()), &io::serialize_skeleton_family(&family))?;
                if !args.enumerate {
                    if family.is_empty() {
                        return Err(Failure::silent(1));
                    }
                    return Ok(());
                }
            }
            let mut graphs = bd_enumerate(&inst, args.max_degree)?;
            let total = graphs.len();
            if let Some(limit) = args.limit {
                graphs.truncate(limit);
            }
            note(cli, format!("{total} graph(s)"));
            emit(&args.out, &io::serialize_graph_stream(&graphs))?;
            if total == 0 {
                return Err(Failure::silent(1));
            }
            Ok(())
        }
        Command::Unique(args) => {
            let g = io::parse_graph(&read(&args.graph)?)?;
            let report = certify_unique(&g, args.k, args.class)?;
            if report.unique {
                println!("unique");
                Ok(())
            } else {
                println!("not-unique ({} alternatives)", report.others.len());
                Err(Failure::silent(1))
            }
        }
        Command::Analyze(AnalyzeCmd::Pairs(args)) => {
            let g = io::parse_graph(&read(&args.graph)?)?;
            let inst = connected_ksets(&g, args.k)?;
            let mut out = String::new();
            for u in 0..g.n() as u32 {
                for v in u + 1..g.n() as u32 {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    if clear_non_neighbors(&inst, u, v)? {
                        out.push_str(&format!("pair {u} {v}: clear\n"));
                    } else {
                        let report = fake_neighbor_analysis(&g, args.k, u, v)?;
                        out.push_str(&format!(
                            "pair {u} {v}: fake c_u={} c_v={} witness={}\n",
                            ids(&report.c_u),
                            ids(&report.c_v),
                            if report.witness.is_some() { "yes" } else { "no" }
                        ));
                    }
                }
            }
            emit(&None, &out)
        }
        Command::Reduce(args) => {
            let phi = parse_dimacs(&read(&args.cnf)?)?;
            let gadget = reduce_3sat(&phi, args.k)?;
            note(
                cli,
                format!(
                    "{} vertices, {} constrained k-sets",
                    gadget.inst.n(),
                    gadget.inst.connected_sets().len() + gadget.inst.disconnected_sets().len()
                ),
            );
            emit(&Some(args.out.clone()), &io::serialize_instance(&gadget.inst))?;
            if let Some(path) = &args.roles {
                let mut text = String::new();
                for (name, id) in &gadget.roles {
                    text.push_str(&format!("role {name} {id}\n"));
                }
                emit(&Some(path.clone()), &text)?;
            }
            Ok(())
        }
        Command::Solve(args) => {
            let inst = io::parse_instance(&read(&args.instance)?)?;
            match solve_partial(&inst, args.budget)? {
                SolveOutcome::Found(g) => {
                    note(cli, "witness found".into());
                    emit(&args.out, &io::serialize_graph(&g))
                }
                SolveOutcome::Unsatisfiable => {
                    note(cli, "no graph matches the listed k-sets".into());
                    Err(Failure::silent(1))
                }
                SolveOutcome::BudgetExceeded => {
                    note(cli, "search budget exhausted".into());
                    Err(Failure::silent(3))
                }
            }
        }
    }
}

fn ids(s: &kset_recon::VertexSet) -> String {
    s.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}
