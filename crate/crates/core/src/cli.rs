//! The `k22` command line. [`run`] parses an argument vector, executes one
//! subcommand and returns the process exit code.
//!
//! Reports go to stdout, data files and `manifest.json` to `--out`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::estimate::{
    chebyshev_min_probability, edge_sample_replicates, mc_fork_icc, mc_fork_replicates, mc_required_iterations,
    mc_triangle_cc, measure_overlap, parse_probability, EdgeSampleConfig, EstimateTrace, ForkSampleConfig,
    MinProbability, OverlapProfile, Pattern, ReplicateSummary, TriangleTarget,
};
use crate::exact::{count_k22, local_icc_distribution, GraphCensus};
use crate::generator::{
    feasible_p_interval, generate_with_stats, icc_vs_p_sweep_to, solve_delta, theoretical_exponents, ModelParams,
};
use crate::graph::{
    fit_power_law_with, read_edge_list_or_binary, write_binary, write_edge_list, DirectedGraph, Direction,
    FitOptions, LoadOptions, PowerLawFit, UndirectedGraph, DEFAULT_BINS_PER_DECADE, DEFAULT_MIN_BIN_NODES,
};
use crate::manifest::{content_digest, RunManifest};
use crate::recommend::{cohort_eval, recommend, recommendations_csv, CohortSpec, Method, Panel};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "k22", version, about = "Interest clustering coefficients, K22 estimators and the K22 graph model")]
pub struct Cli {
    /// Worker threads; defaults to the available parallelism. 1 runs sequentially.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse an edge list and write the binary cache.
    Ingest(IngestArgs),
    /// Exact structure counts and clustering coefficients.
    Count(CountArgs),
    /// Approximate icc or a triangle coefficient.
    Estimate(EstimateArgs),
    /// Grow a graph with the K22 model.
    Generate(GenerateArgs),
    /// icc as a function of p against matched Bollobás graphs.
    Sweep(SweepArgs),
    /// Top-k follow recommendations, for one user or a cohort.
    Recommend(RecommendArgs),
    /// Log-binned power-law fit of the degree distribution.
    Fit(FitArgs),
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Keep self-loops instead of dropping them.
    #[arg(long)]
    pub keep_self_loops: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Full,
    /// Reciprocated arcs only, as a symmetric digraph.
    Mutual,
    /// Every arc in both directions.
    Undirected,
    /// Reciprocated pairs removed.
    NoBidir,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Variant::Full)]
    pub variant: Variant,
    /// Also compute the per-node icc distribution.
    #[arg(long)]
    pub per_node: bool,
    /// Histogram bins for --per-node.
    #[arg(long, default_value_t = 20)]
    pub bins: usize,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EstimateMethod {
    EdgeSample,
    McFork,
    McTriangle,
    Chebyshev,
    McIterations,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TriangleVariant {
    Ucc,
    Tcc,
    Ccc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PatternArg {
    K22,
    OpenK22,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Graph file; not needed for `chebyshev --profile` or `mc-iterations`.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub method: EstimateMethod,
    /// Arc sampling probability, "1/1000" or "0.001".
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub replicates: u64,
    #[arg(long, default_value = "1e5", value_parser = parse_count)]
    pub iterations: u64,
    #[arg(long, value_enum, default_value_t = TriangleVariant::Tcc)]
    pub variant: TriangleVariant,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Overlap fractions Δ_1..Δ_l for chebyshev; measured from the input when absent.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub profile: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value_t = PatternArg::K22)]
    pub pattern: PatternArg,
    /// 1/|A| used when the profile is all zero.
    #[arg(long)]
    pub count_inv: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 10.0)]
    pub k: f64,
    /// Expected success fraction for mc-iterations.
    #[arg(long)]
    pub p_hat: Option<f64>,
    #[arg(long, default_value_t = 0.99)]
    pub confidence: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Probability of a K22 event.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0.4)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.4)]
    pub beta: f64,
    #[arg(long, default_value_t = 2.0)]
    pub delta_in: f64,
    #[arg(long, default_value_t = 2.0)]
    pub delta_out: f64,
    #[arg(long, default_value = "1e4", value_parser = parse_count)]
    pub steps: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Initial graph; a single closed K22 when absent.
    #[arg(long)]
    pub seed_graph: Option<PathBuf>,
    /// Solve both deltas for this degree exponent instead of taking them as given.
    #[arg(long, allow_hyphen_values = true)]
    pub target_slope: Option<f64>,
    /// Only print the solved deltas and the feasible p interval.
    #[arg(long, requires = "target_slope")]
    pub solve_delta: bool,
    #[arg(long, default_value_t = 10)]
    pub tail_start: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.4,0.6")]
    pub p_values: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    pub replicates: u64,
    #[arg(long, default_value = "1e6", value_parser = parse_count)]
    pub steps: u64,
    #[arg(long, default_value_t = 0.4)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.4)]
    pub beta: f64,
    #[arg(long, default_value_t = 2.0)]
    pub delta_out: f64,
    #[arg(long, default_value_t = -2.5, allow_hyphen_values = true)]
    pub target_slope: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RecMethod {
    K22,
    Tt,
    Both,
}

impl RecMethod {
    fn methods(self) -> Vec<Method> {
        match self {
            RecMethod::K22 => vec![Method::K22],
            RecMethod::Tt => vec![Method::Tt],
            RecMethod::Both => vec![Method::K22, Method::Tt],
        }
    }
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("who").required(true).args(["user", "cohort"])))]
pub struct RecommendArgs {
    pub input: PathBuf,
    /// External id of the user.
    #[arg(long)]
    pub user: Option<u64>,
    /// Evaluate this many users drawn uniformly among those following someone.
    #[arg(long)]
    pub cohort: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = RecMethod::Both)]
    pub method: RecMethod,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FitDirection {
    In,
    Out,
    Both,
    Undirected,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = FitDirection::Both)]
    pub direction: FitDirection,
    #[arg(long, default_value_t = DEFAULT_BINS_PER_DECADE)]
    pub bins_per_decade: u32,
    #[arg(long, default_value_t = 10)]
    pub tail_start: u64,
    #[arg(long, default_value_t = DEFAULT_MIN_BIN_NODES)]
    pub min_bin_nodes: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Accepts "1000000", "1e6" or "2.5e5"; the value must be a whole number.
pub fn parse_count(s: &str) -> std::result::Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v < u64::MAX as f64 => Ok(v as u64),
        _ => Err(format!("{s:?} is not a non-negative whole number")),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParams(_) => EXIT_USAGE,
        Error::Infeasible { .. } | Error::NoNodeGrowth => EXIT_INFEASIBLE,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let argv: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| execute(cli.command, argv)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command, argv: Vec<String>) -> Result<()> {
    let started = Instant::now();
    let name = match &command {
        Command::Ingest(_) => "ingest",
        Command::Count(_) => "count",
        Command::Estimate(_) => "estimate",
        Command::Generate(_) => "generate",
        Command::Sweep(_) => "sweep",
        Command::Recommend(_) => "recommend",
        Command::Fit(_) => "fit",
    };
    let mut manifest = RunManifest::new(name, argv);
    let out = match command {
        Command::Ingest(a) => cmd_ingest(&a, &mut manifest)?,
        Command::Count(a) => cmd_count(&a, &mut manifest)?,
        Command::Estimate(a) => cmd_estimate(&a, &mut manifest)?,
        Command::Generate(a) => cmd_generate(&a, &mut manifest)?,
        Command::Sweep(a) => cmd_sweep(&a, &mut manifest)?,
        Command::Recommend(a) => cmd_recommend(&a, &mut manifest)?,
        Command::Fit(a) => cmd_fit(&a, &mut manifest)?,
    };
    if let Some(dir) = out {
        manifest.finish(started.elapsed());
        manifest.write(&dir)?;
    }
    Ok(())
}

fn load(path: &Path, options: LoadOptions, manifest: &mut RunManifest) -> Result<DirectedGraph> {
    let bytes = fs::read(path)?;
    manifest.input_digest = Some(content_digest(&bytes));
    read_edge_list_or_binary(&bytes, options)
}

fn out_dir(dir: Option<&PathBuf>) -> Result<Option<PathBuf>> {
    if let Some(d) = dir {
        fs::create_dir_all(d)?;
    }
    Ok(dir.cloned())
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::write(dir.join(name), contents)?;
    Ok(())
}

fn symmetric(ug: &UndirectedGraph) -> DirectedGraph {
    DirectedGraph::from_arcs(ug.node_count(), ug.edges().flat_map(|(u, v)| [(u, v), (v, u)]))
}

fn cmd_ingest(a: &IngestArgs, m: &mut RunManifest) -> Result<Option<PathBuf>> {
    let opts = LoadOptions { drop_self_loops: !a.keep_self_loops, ..Default::default() };
    let g = load(&a.input, opts, m)?;
    let dir = out_dir(Some(&a.out))?.unwrap();
    write_binary(&g, fs::File::create(dir.join("graph.k22g"))?)?;
    println!("nodes = {}", g.node_count());
    println!("arcs = {}", g.arc_count());
    Ok(Some(dir))
}

fn cmd_count(a: &CountArgs, m: &mut RunManifest) -> Result<Option<PathBuf>> {
    let g = load(&a.input, LoadOptions::default(), m)?;
    let g = match a.variant {
        Variant::Full => g,
        Variant::Mutual => symmetric(&g.mutual_graph()),
        Variant::Undirected => symmetric(&g.undirected_projection()),
        Variant::NoBidir => g.strip_bidirectional(),
    };
    let dir = out_dir(a.out.as_ref())?;
    let census = GraphCensus::of(&g);
    let report = census.report()?;
    let local = a.per_node.then(|| {
        let stats = count_k22(&g, true).per_node.expect("per-node stats requested");
        (local_icc_distribution(&stats, a.bins), stats)
    });

    let text = if a.json {
        let mut v = json!({
            "nodes": g.node_count(),
            "arcs": g.arc_count(),
            "counts": census.full.to_json(),
            "mutual_counts": census.mutual.to_json(),
            "coefficients": report.to_json(),
        });
        if let Some((d, _)) = &local {
            v["local_icc"] = json!({ "mean": d.mean, "defined": d.defined, "undefined": d.undefined, "histogram": d.histogram });
        }
        serde_json::to_string_pretty(&v).expect("json") + "\n"
    } else {
        let mut s = format!("nodes = {}\narcs = {}\n", g.node_count(), g.arc_count());
        s += &census.full.render_lines("");
        s += &census.mutual.render_lines("mutual.");
        s += &report.render_lines();
        if let Some((d, _)) = &local {
            let mean = d.mean.map(|v| format!("{v:.9}")).unwrap_or_else(|| "none".into());
            let _ = writeln!(s, "local_icc_mean = {mean}\nlocal_icc_defined = {}\nlocal_icc_undefined = {}", d.defined, d.undefined);
        }
        s
    };
    print!("{text}");

    if let Some(dir) = &dir {
        write(dir, if a.json { "count.json" } else { "count.txt" }, &text)?;
        if let Some((d, stats)) = &local {
            let mut h = String::from("bin_lo,bin_hi,nodes\n");
            let b = d.histogram.len() as f64;
            for (i, c) in d.histogram.iter().enumerate() {
                let _ = writeln!(h, "{},{},{c}", i as f64 / b, (i + 1) as f64 / b);
            }
            write(dir, "local_icc_hist.csv", &h)?;
            let mut nodes = String::from("node,k22,open_k22,local_icc\n");
            for x in g.nodes() {
                let icc = stats.local_icc(x).map(|v| v.to_string()).unwrap_or_else(|| "none".into());
                let i = x as usize;
                let _ = writeln!(nodes, "{},{},{},{icc}", g.external_id(x), stats.k22[i], stats.open_k22[i]);
            }
            write(dir, "local_icc.csv", &nodes)?;
        }
    } else if let (Some((d, _)), false) = (&local, a.json) {
        println!("bin,nodes");
        for (lo, c) in d.bin_edges().iter().zip(&d.histogram) {
            println!("{lo},{c}");
        }
    }
    Ok(dir)
}

fn need_input(a: &EstimateArgs, m: &mut RunManifest) -> Result<DirectedGraph> {
    let path = a.input.as_ref().ok_or_else(|| Error::invalid("this method needs an input graph"))?;
    load(path, LoadOptions::default(), m)
}

fn trace_line(t: &EstimateTrace) -> String {
    let std = t.final_std().map(|s| format!(" std = {s:.6}")).unwrap_or_default();
    format!("estimate = {:.9}{std} y = {:.6} y_open = {:.6} iterations = {}", t.estimate, t.y, t.y_open, t.iterations)
}

fn replicates_csv(results: &[Result<EstimateTrace>]) -> String {
    let mut s = String::from("replicate,estimate,y,y_open\n");
    for (r, t) in results.iter().enumerate() {
        match t {
            Ok(t) => {
                let _ = writeln!(s, "{r},{},{},{}", t.estimate, t.y, t.y_open);
            }
            Err(_) => {
                let _ = writeln!(s, "{r},none,none,none");
            }
        }
    }
    s
}

fn report_replicates(results: Vec<Result<EstimateTrace>>, dir: Option<&Path>) -> Result<()> {
    for (r, t) in results.iter().enumerate() {
        match t {
            Ok(t) => println!("replicate {r}: {}", trace_line(t)),
            Err(e) => println!("replicate {r}: {e}"),
        }
    }
    if results.len() > 1 {
        match ReplicateSummary::of(&results) {
            Some(s) => println!(
                "median = {:.9} iqr = {:.9} min = {:.9} max = {:.9} defined = {} too_sparse = {}",
                s.median,
                s.iqr(),
                s.min,
                s.max,
                s.defined,
                s.too_sparse
            ),
            None => println!("no replicate produced an estimate"),
        }
    }
    if let Some(dir) = dir {
        write(dir, "replicates.csv", &replicates_csv(&results))?;
        if let Some(t) = results.iter().find_map(|t| t.as_ref().ok()) {
            write(dir, "trace.csv", &t.to_csv())?;
        }
    }
    // Without a single estimate the run failed; report the first reason.
    if results.iter().any(|t| t.is_ok()) {
        return Ok(());
    }
    results.into_iter().find_map(|t| t.err()).map_or(Ok(()), Err)
}

fn cmd_estimate(a: &EstimateArgs, m: &mut RunManifest) -> Result<Option<PathBuf>> {
    if a.replicates == 0 {
        return Err(Error::invalid("replicates must be at least 1"));
    }
    m.seeds = vec![a.seed];
    let dir = out_dir(a.out.as_ref())?;
    match a.method {
        EstimateMethod::EdgeSample => {
            let p = parse_probability(a.p.as_deref().ok_or_else(|| Error::invalid("edge-sample needs --p"))?)?;
            let g = need_input(a, m)?;
            let cfg = EdgeSampleConfig::new(p, a.seed, a.replicates as usize)?;
            let results = edge_sample_replicates(&g, &cfg)?;
            report_replicates(results, dir.as_deref())?;
        }
        EstimateMethod::McFork => {
            let cfg = ForkSampleConfig::new(a.iterations, a.seed)?;
            let g = need_input(a, m)?;
            let results = if a.replicates == 1 { vec![mc_fork_icc(&g, &cfg)] } else { mc_fork_replicates(&g, &cfg, a.replicates) };
            report_replicates(results, dir.as_deref())?;
        }
        EstimateMethod::McTriangle => {
            let g = need_input(a, m)?;
            let ug;
            let target = match a.variant {
                TriangleVariant::Ucc => {
                    ug = g.undirected_projection();
                    TriangleTarget::Undirected(&ug)
                }
                TriangleVariant::Tcc => TriangleTarget::Transitive(&g),
                TriangleVariant::Ccc => TriangleTarget::Cyclic(&g),
            };
            let t = mc_triangle_cc(target, a.iterations, a.seed)?;
            report_replicates(vec![Ok(t)], dir.as_deref())?;
        }
        EstimateMethod::Chebyshev => {
            let (profile, count_inv) = match &a.profile {
                Some(d) => (OverlapProfile::new(d.clone())?, a.count_inv.unwrap_or(0.0)),
                None => {
                    let g = need_input(a, m)?;
                    let pattern = match a.pattern {
                        PatternArg::K22 => Pattern::K22,
                        PatternArg::OpenK22 => Pattern::OpenK22,
                    };
                    let mo = measure_overlap(&g, pattern)?;
                    let inv = if mo.pattern_count > 0 { 1.0 / mo.pattern_count as f64 } else { 0.0 };
                    println!("patterns = {}", mo.pattern_count);
                    (mo.profile, a.count_inv.unwrap_or(inv))
                }
            };
            let d: Vec<String> = profile.delta_frac.iter().map(|v| format!("{v:e}")).collect();
            println!("profile = {}", d.join(","));
            match chebyshev_min_probability(&profile, a.epsilon, a.k, count_inv)? {
                MinProbability::At(p) => {
                    println!("min_probability = {p:e}");
                    if let Some(dir) = &dir {
                        write(dir, "chebyshev.json", &(json!({ "profile": profile.delta_frac, "epsilon": a.epsilon, "k": a.k, "min_probability": p }).to_string() + "\n"))?;
                    }
                }
                MinProbability::Infeasible => {
                    return Err(Error::Infeasible { p: 1.0, reason: "the bound fails even with every arc kept".into() })
                }
            }
        }
        EstimateMethod::McIterations => {
            let p_hat = a.p_hat.ok_or_else(|| Error::invalid("mc-iterations needs --p-hat"))?;
            let n = mc_required_iterations(p_hat, a.epsilon, a.confidence)?;
            println!("iterations = {n}");
        }
    }
    Ok(dir)
}

fn fit_line(label: &str, fit: &Result<PowerLawFit>) -> String {
    match fit {
        Ok(f) => format!("fitted_slope_{label} = {:.4} (r2 = {:.4}, {} bins)", f.slope, f.r_squared, f.bins.len()),
        Err(e) => format!("fitted_slope_{label} = none ({e})"),
    }
}

fn cmd_generate(a: &GenerateArgs, m: &mut RunManifest) -> Result<Option<PathBuf>> {
    m.seeds = vec![a.seed];
    let mut params = ModelParams {
        p_k22: a.p,
        alpha: a.alpha,
        beta: a.beta,
        delta_in: a.delta_in,
        delta_out: a.delta_out,
        steps: a.steps,
        seed: a.seed,
        seed_graph: None,
    };
    if let Some(slope) = a.target_slope {
        let show = |d: Direction| match feasible_p_interval(slope, d, a.alpha, a.beta) {
            Some((lo, hi)) => println!("feasible_p_{d} = [{lo:.9}, {hi:.9}]"),
            None => println!("feasible_p_{d} = none"),
        };
        println!("target_slope = {slope}");
        show(Direction::In);
        show(Direction::Out);
        let din = solve_delta(slope, Direction::In, a.p, a.alpha, a.beta)?;
        let dout = solve_delta(slope, Direction::Out, a.p, a.alpha, a.beta)?;
        println!("delta_in = {din:.9}\ndelta_out = {dout:.9}");
        if a.solve_delta {
            return Ok(None);
        }
        if !(din.is_finite() && dout.is_finite()) {
            return Err(Error::Infeasible { p: a.p, reason: "the target needs an unbounded delta".into() });
        }
        params.delta_in = din;
        params.delta_out = dout;
    }
    let dir = a.out.as_ref().ok_or_else(|| Error::invalid("generate needs --out"))?;
    if let Some(path) = &a.seed_graph {
        params.seed_graph = Some(load(path, LoadOptions::default(), m)?);
    }
    params.validate()?;
    let dir = out_dir(Some(dir))?.unwrap();
    let (g, stats) = generate_with_stats(&params)?;
    let mut text = fs::File::create(dir.join("graph.txt"))?;
    write_edge_list(&g, &mut text)?;
    write_binary(&g, fs::File::create(dir.join("graph.k22g"))?)?;

    println!("nodes = {}\narcs = {}", g.node_count(), g.arc_count());
    println!(
        "events: k22 = {} alpha = {} beta = {} gamma = {}",
        stats.k22_events, stats.alpha_events, stats.beta_events, stats.gamma_events
    );
    println!("stripped: self_loops = {} multi_arcs = {}", stats.self_loops_stripped, stats.multi_arcs_stripped);
    let theory = theoretical_exponents(&params).ok();
    if let Some(t) = &theory {
        println!("theory_slope_in = {:.4}\ntheory_slope_out = {:.4}", t.slope_in, t.slope_out);
    }
    let opts = FitOptions::new(DEFAULT_BINS_PER_DECADE, a.tail_start);
    let fit_in = fit_power_law_with(&g.degree_distribution(Direction::In), opts);
    let fit_out = fit_power_law_with(&g.degree_distribution(Direction::Out), opts);
    println!("{}\n{}", fit_line("in", &fit_in), fit_line("out", &fit_out));

    let summary = json!({
        "params": {
            "p": params.p_k22, "alpha": params.alpha, "beta": params.beta,
            "delta_in": params.delta_in, "delta_out": params.delta_out,
            "steps": params.steps, "seed": params.seed,
        },
        "nodes": g.node_count(),
        "arcs": g.arc_count(),
        "events": { "k22": stats.k22_events, "alpha": stats.alpha_events, "beta": stats.beta_events, "gamma": stats.gamma_events },
        "stripped": { "self_loops": stats.self_loops_stripped, "multi_arcs": stats.multi_arcs_stripped },
        "theory_slope_in": theory.map(|t| t.slope_in),
        "theory_slope_out": theory.map(|t| t.slope_out),
        "fitted_slope_in": fit_in.as_ref().ok().map(|f| f.slope),
        "fitted_slope_out": fit_out.as_ref().ok().map(|f| f.slope),
    });
    write(&dir, "generation.json", &(serde_json::to_string_pretty(&summary).expect("json") + "\n"))?;
    Ok(Some(dir))
}

fn cmd_sweep(a: &SweepArgs, m: &mut RunManifest) -> Result<Option<PathBuf>> {
    m.seeds = vec![a.seed];
    let base = ModelParams {
        alpha: a.alpha,
        beta: a.beta,
        delta_out: a.delta_out,
        steps: a.steps,
        seed: a.seed,
        ..Default::default()
    };
    base.validate()?;
    let table = icc_vs_p_sweep_to(&base, &a.p_values, a.replicates, a.target_slope)?;
    let dir = out_dir(Some(&a.out))?.unwrap();
    write(&dir, "sweep.csv", &table.to_csv())?;
    write(&dir, "baseline.csv", &table.baseline_csv())?;
    write(&dir, "summary.csv", &table.summary_csv())?;
    let opt = |v: Option<f64>| v.map(|v| format!("{v:.6}")).unwrap_or_else(|| "none".into());
    println!("p,delta_in,mean_icc,spread,baseline_icc");
    for (pt, b) in table.points.iter().zip(&table.baseline) {
        println!("{},{:.6},{},{},{}", pt.p, pt.params.delta_in, opt(pt.mean_icc), opt(pt.spread), opt(b.mean_icc));
    }
    Ok(Some(dir))
}

fn cmd_recommend(a: &RecommendArgs, m: &mut RunManifest) -> Result<Option<PathBuf>> {
    let g = load(&a.input, LoadOptions::default(), m)?;
    let dir = out_dir(a.out.as_ref())?;
    if let Some(user) = a.user {
        let x = g.dense_id(user).ok_or(Error::NodeOutOfRange { node: user, n: g.node_count() })?;
        let blocks: Vec<(Method, _)> =
            a.method.methods().into_iter().map(|meth| recommend(&g, x, a.k, meth).map(|r| (meth, r))).collect::<Result<_>>()?;
        let csv = recommendations_csv(&g, &blocks);
        print!("{csv}");
        if let Some(dir) = &dir {
            write(dir, "recommendations.csv", &csv)?;
        }
        return Ok(dir);
    }
    let count = a.cohort.expect("clap enforces --user or --cohort");
    m.seeds = vec![a.seed];
    if a.k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let report = cohort_eval(&g, &CohortSpec::Sample { count, seed: a.seed }, a.k)?;
    println!("users = {}", report.users.len());
    for meth in a.method.methods() {
        for (panel, label) in [(Panel::Max, "max"), (Panel::Kth, "kth")] {
            for t in [1, 10, 100] {
                println!("{meth}_{label}_at_least_{t} = {:.4}", report.fraction_at_least(meth, panel, t));
            }
        }
    }
    match &dir {
        Some(dir) => {
            write(dir, "cohort_max.csv", &report.histogram_csv(Panel::Max))?;
            write(dir, "cohort_kth.csv", &report.histogram_csv(Panel::Kth))?;
            write(dir, "cohort_users.csv", &report.users_csv(&g))?;
        }
        None => print!("{}", report.histogram_csv(Panel::Max)),
    }
    Ok(dir)
}

fn cmd_fit(a: &FitArgs, m: &mut RunManifest) -> Result<Option<PathBuf>> {
    let g = load(&a.input, LoadOptions::default(), m)?;
    let dir = out_dir(a.out.as_ref())?;
    let dirs = match a.direction {
        FitDirection::In => vec![Direction::In],
        FitDirection::Out => vec![Direction::Out],
        FitDirection::Both => vec![Direction::In, Direction::Out],
        FitDirection::Undirected => vec![Direction::Undirected],
    };
    let opts = FitOptions { bins_per_decade: a.bins_per_decade, tail_start: a.tail_start, min_bin_nodes: a.min_bin_nodes };
    let mut first_err = None;
    for d in dirs {
        let h = match d {
            Direction::Undirected => g.undirected_projection().degree_distribution(),
            _ => g.degree_distribution(d),
        };
        let fit = fit_power_law_with(&h, opts);
        println!("{}", fit_line(&d.to_string(), &fit));
        match fit {
            Ok(f) => {
                println!("intercept_{d} = {:.4}", f.intercept);
                if let Some(dir) = &dir {
                    let mut s = String::from("lo,hi,nodes,center,mean_frequency\n");
                    for b in &f.bins {
                        let _ = writeln!(s, "{},{},{},{},{}", b.lo, b.hi, b.nodes, b.center, b.mean_frequency);
                    }
                    write(dir, &format!("fit_{d}.csv"), &s)?;
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    match first_err {
        Some(e) => Err(e),
        None => Ok(dir),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_accept_scientific_notation() {
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("250000"), Ok(250_000));
        assert_eq!(parse_count("2.5e5"), Ok(250_000));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }

    #[test]
    fn exit_codes_by_error_kind() {
        assert_eq!(exit_code(&Error::invalid("x")), EXIT_USAGE);
        assert_eq!(exit_code(&Error::NoArcs), EXIT_INPUT);
        assert_eq!(exit_code(&Error::NoEligibleUsers), EXIT_INPUT);
        assert_eq!(exit_code(&Error::Infeasible { p: 0.9, reason: String::new() }), EXIT_INFEASIBLE);
    }

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(run(["k22"]), EXIT_USAGE);
        assert_eq!(run(["k22", "count"]), EXIT_USAGE);
        assert_eq!(run(["k22", "estimate", "--method", "nope"]), EXIT_USAGE);
        assert_eq!(run(["k22", "--help"]), EXIT_OK);
    }
}
