use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use heavypath::graph::{
    generate_fig3, generate_random, load_dimacs, load_edge_list, normalize_for_lightest,
    write_edge_list, DuplicatePolicy, LoadOptions, RandomGraphConfig, WeightDistribution,
};
use heavypath::harness::{compare, Algo, SolveConfig, SolveOutput, Solver};
use heavypath::metrics::{write_metrics_csv, write_trace_csv, RunStatus};
use heavypath::sweep::{oracle_sweep, SweepConfig};
use heavypath::WeightedGraph;

#[derive(Parser)]
#[command(
    name = "hpp",
    version,
    about = "Top-k heaviest simple paths of a fixed length"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm and print its ranked paths.
    Solve(SolveArgs),
    /// Run several algorithms and check that the exact ones agree.
    Compare(CompareArgs),
    /// Write a synthetic instance in edge-list format.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Check algorithms against exhaustive search on seeded random graphs.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Dimacs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum OnDuplicate {
    Reject,
    KeepMax,
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: Format,
    #[arg(long, value_enum, default_value = "reject")]
    on_duplicate: OnDuplicate,
    /// Replace each weight w by 1 - w/w_max before solving.
    #[arg(long)]
    normalize_lightest: bool,
    #[arg(long = "length")]
    length: usize,
    #[arg(long = "topk", default_value_t = 1)]
    topk: usize,
    /// Metrics CSV destination.
    #[arg(long)]
    metrics: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_parser = parse_algo)]
    algo: Algo,
    #[command(flatten)]
    instance: InstanceArgs,
    /// heavypath only.
    #[arg(long, value_enum)]
    ra_strategy: Option<Switch>,
    /// heavypath only: total buffered paths before the heuristic takes over.
    #[arg(long)]
    capacity: Option<usize>,
    /// Threshold trace CSV destination.
    #[arg(long)]
    trace_thresholds: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, value_delimiter = ',', value_parser = parse_algo, required = true)]
    algos: Vec<Algo>,
    #[command(flatten)]
    instance: InstanceArgs,
}

#[derive(Subcommand)]
enum GenCommand {
    /// One heavy chain plus `n` light chains fanning out of a shared prefix.
    Fig3 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Seeded random graph.
    Random {
        #[arg(long, default_value_t = 10)]
        nodes: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        distinct_weights: bool,
        /// Draw weights from {1/L, ..., 1} instead of [0, 1).
        #[arg(long)]
        levels: Option<u32>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 200)]
    graphs: usize,
    #[arg(long, default_value_t = 10)]
    max_nodes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', value_parser = parse_algo, default_value = "dp,rankjoin,heavypath")]
    algos: Vec<Algo>,
}

fn parse_algo(s: &str) -> std::result::Result<Algo, String> {
    s.parse().map_err(|e: heavypath::Error| e.to_string())
}

fn load(args: &InstanceArgs) -> Result<WeightedGraph> {
    let file =
        File::open(&args.input).with_context(|| format!("cannot open {}", args.input.display()))?;
    let reader = BufReader::new(file);
    let graph = match args.format {
        Format::Edgelist => {
            let on_duplicate = match args.on_duplicate {
                OnDuplicate::Reject => DuplicatePolicy::Reject,
                OnDuplicate::KeepMax => DuplicatePolicy::KeepMax,
            };
            load_edge_list(reader, LoadOptions { on_duplicate })?
        }
        Format::Dimacs => load_dimacs(reader)?,
    };
    Ok(if args.normalize_lightest {
        normalize_for_lightest(&graph)?
    } else {
        graph
    })
}

fn instance_name(path: &FsPath) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn create(path: &FsPath) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| {
        format!("cannot create {}", path.display())
    })?))
}

fn print_paths(out: &mut impl Write, graph: &WeightedGraph, run: &SolveOutput) -> io::Result<()> {
    for (i, p) in run.paths.iter().enumerate() {
        writeln!(out, "# rank={}", i + 1)?;
        writeln!(out, "{}", p.display(graph))?;
    }
    if let Some(h) = &run.heuristic {
        writeln!(out, "# rho={} u_ell={} j={}", h.rho, h.u_ell, h.j)?;
    }
    Ok(())
}

fn solve(args: SolveArgs) -> Result<ExitCode> {
    let graph = load(&args.instance)?;
    let config = SolveConfig {
        ell: args.instance.length,
        k: args.instance.topk,
        ra_strategy: args.ra_strategy.map(|s| matches!(s, Switch::On)),
        capacity: args.capacity,
        trace: args.trace_thresholds.is_some(),
    };
    if args.trace_thresholds.is_some() && !matches!(args.algo, Algo::RankJoin | Algo::HeavyPath) {
        bail!("threshold traces are only produced by rankjoin and heavypath");
    }
    let run = args.algo.solve(&graph, &config)?;

    let stdout = io::stdout();
    let mut out = stdout.lock();
    print_paths(&mut out, &graph, &run)?;
    out.flush()?;

    if let Some(path) = &args.instance.metrics {
        let record = run.record(&instance_name(&args.instance.input), &config);
        write_metrics_csv(&[record], create(path)?)?;
    }
    if let Some(path) = &args.trace_thresholds {
        write_trace_csv(&run.trace, create(path)?)?;
    }
    Ok(match run.status {
        RunStatus::Exhausted | RunStatus::Failed => ExitCode::from(2),
        RunStatus::Ok | RunStatus::Heuristic => ExitCode::SUCCESS,
    })
}

fn compare_cmd(args: CompareArgs) -> Result<ExitCode> {
    let graph = load(&args.instance)?;
    let config = SolveConfig::new(args.instance.length, args.instance.topk);
    let solvers: Vec<&dyn Solver> = args.algos.iter().map(|a| a as &dyn Solver).collect();
    let report = compare(&graph, &solvers, &config)?;
    let instance = instance_name(&args.instance.input);
    let records: Vec<_> = report
        .outputs
        .iter()
        .map(|o| o.record(&instance, &config))
        .collect();

    let stdout = io::stdout();
    let mut out = stdout.lock();
    if report.matched() {
        writeln!(out, "MATCH")?;
    } else {
        writeln!(out, "MISMATCH")?;
        for m in &report.mismatches {
            writeln!(out, "# {m}")?;
        }
    }
    writeln!(
        out,
        "{:<10} {:>12} {:>10} {:>12} {:>8} {:>8} {:>10} {:>10}",
        "algo", "edge_reads", "joins", "constructed", "dups", "depth", "peak", "status"
    )?;
    for r in &records {
        writeln!(
            out,
            "{:<10} {:>12} {:>10} {:>12} {:>8} {:>8} {:>10} {:>10}",
            r.algo,
            r.edge_reads,
            r.joins,
            r.paths_constructed,
            r.duplicates_discarded,
            r.depth,
            r.peak_stored_paths,
            r.status
        )?;
    }
    out.flush()?;
    if let Some(path) = &args.instance.metrics {
        write_metrics_csv(&records, create(path)?)?;
    }
    Ok(if report.matched() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn gen(cmd: GenCommand) -> Result<ExitCode> {
    let (graph, output) = match cmd {
        GenCommand::Fig3 { n, output } => (generate_fig3(n)?, output),
        GenCommand::Random {
            nodes,
            p,
            seed,
            distinct_weights,
            levels,
            output,
        } => {
            let mut cfg = RandomGraphConfig::new(nodes, p, seed).distinct(distinct_weights);
            if let Some(levels) = levels {
                cfg = cfg.with_distribution(WeightDistribution::Levels(levels));
            }
            (generate_random(&cfg)?, output)
        }
    };
    match output {
        Some(path) => {
            let mut w = create(&path)?;
            write_edge_list(&graph, &mut w)?;
            w.flush()?;
        }
        None => write_edge_list(&graph, io::stdout().lock())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep(args: SweepArgs) -> Result<ExitCode> {
    if args.max_nodes < 4 {
        bail!("--max-nodes must be at least 4");
    }
    let config = SweepConfig {
        graphs: args.graphs,
        max_nodes: args.max_nodes,
        base_seed: args.seed,
        ..Default::default()
    };
    let report = oracle_sweep(&config, &args.algos)?;
    for m in &report.mismatches {
        println!("# {m}");
    }
    println!(
        "{} cases, {} mismatches: {}",
        report.cases,
        report.mismatches.len(),
        if report.mismatches.is_empty() {
            "MATCH"
        } else {
            "MISMATCH"
        }
    );
    Ok(if report.mismatches.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Compare(args) => compare_cmd(args),
        Command::Gen(cmd) => gen(cmd),
        Command::Sweep(args) => sweep(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
