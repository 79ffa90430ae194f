//! Command line interface.
//!
//! Exit codes: 0 success, 1 no route (`simulate`), 2 usage or configuration
//! error, 3 data error (unreadable or malformed input, failed output).
//! The log level comes from the `FLOWROUTE_LOG` environment variable.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use flowroute_core::generate::Family;
use flowroute_core::rng::{StreamRng, STREAM_PICK};
use flowroute_core::routing::{build_tables_dijkstra, FlowMethod, NeighborMetrics};
use flowroute_core::{edgelist, frr, FailureSet, GeneratorSpec, Graph, NodeId, TableSet, Weights};

use crate::experiment::{run_experiment, ExperimentConfig, ExperimentError, TopologySource};
use crate::report;
use crate::topology::{load_topology, LoadError};

#[derive(Debug, Parser)]
#[command(
    name = "flowroute",
    version,
    about = "Max-flow ranked routing tables and fast-reroute simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Print the routing tables of a topology.
    Tables(TablesArgs),
    /// Forward one message under injected failures and print its trace.
    Simulate(SimulateArgs),
    /// Compare max-flow routes with shortest paths over all node pairs.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Er,
    Ba,
    Ws,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    Er,
    Ba,
    Ws,
    /// Use the topology given by --topology.
    File,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Algo {
    #[default]
    Maxflow,
    Dijkstra,
}

#[derive(Debug, Args)]
struct FamilyParams {
    /// Number of nodes.
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability (er).
    #[arg(long)]
    c: Option<f64>,
    /// Edges added per new node (ba).
    #[arg(long)]
    m: Option<usize>,
    /// Ring neighbors, even (ws).
    #[arg(long)]
    k: Option<usize>,
    /// Rewiring probability (ws).
    #[arg(long)]
    p: Option<f64>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[command(flatten)]
    params: FamilyParams,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Independent instance index for the same seed.
    #[arg(long, default_value_t = 0)]
    replica: u64,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TablesArgs {
    /// Bundled topology name (internet2, geant, rnp, wide) or edge-list path.
    #[arg(long)]
    topology: String,
    #[arg(long, value_enum, default_value_t)]
    algo: Algo,
    /// Flow and distance weights as `w1,w2`; ignored by dijkstra.
    #[arg(long, value_parser = parse_weights, allow_hyphen_values = true, default_value = "2,-5")]
    weights: Weights,
    /// Only print this node's table.
    #[arg(long)]
    owner: Option<u32>,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Worker threads; all available cores when omitted.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Bundled topology name (internet2, geant, rnp, wide) or edge-list path.
    #[arg(long)]
    topology: String,
    #[arg(long, value_enum, default_value_t)]
    algo: Algo,
    /// Flow and distance weights as `w1,w2`; ignored by dijkstra.
    #[arg(long, value_parser = parse_weights, allow_hyphen_values = true, default_value = "2,-5")]
    weights: Weights,
    /// Failed link `u,v`. Repeatable.
    #[arg(long = "fail-link", value_parser = parse_link)]
    fail_link: Vec<(u32, u32)>,
    /// Failed node. Repeatable.
    #[arg(long = "fail-node")]
    fail_node: Vec<u32>,
    /// Source node; drawn with --seed when omitted.
    #[arg(long)]
    src: Option<u32>,
    /// Destination node; drawn with --seed when omitted.
    #[arg(long)]
    dst: Option<u32>,
    /// Seed for drawing omitted endpoints among the live nodes.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// Random graph family, or `file` to use --topology.
    #[arg(long, value_enum)]
    family: Option<SourceArg>,
    /// Bundled topology name (internet2, geant, rnp, wide) or edge-list path.
    #[arg(long)]
    topology: Option<String>,
    #[command(flatten)]
    params: FamilyParams,
    /// Weight pair `w1,w2`. Repeatable; defaults to 2,-5 5,-5 5,-1.
    #[arg(long, value_parser = parse_weights, allow_hyphen_values = true)]
    weights: Vec<Weights>,
    /// Comma-separated generator seeds.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
    seeds: Vec<u64>,
    /// Independent instances per seed.
    #[arg(long, default_value_t = 1)]
    repeat: u64,
    /// Output CSV; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write every pair's routes and metrics to this CSV.
    #[arg(long)]
    pairs: Option<PathBuf>,
    /// Worker threads; all available cores when omitted.
    #[arg(long)]
    jobs: Option<usize>,
}

fn parse_weights(s: &str) -> Result<Weights, String> {
    let bad = || format!("expected two integers `w1,w2`, found {s:?}");
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let w1 = a.trim().parse().map_err(|_| bad())?;
    let w2 = b.trim().parse().map_err(|_| bad())?;
    Weights::new(w1, w2).map_err(|e| e.to_string())
}

fn parse_link(s: &str) -> Result<(u32, u32), String> {
    let bad = || format!("expected two node ids `u,v`, found {s:?}");
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

#[derive(Debug)]
enum Failure {
    NoRoute,
    Usage(String),
    Data(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::NoRoute => 1,
            Failure::Usage(_) => 2,
            Failure::Data(_) => 3,
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Unknown(_) => Failure::Usage(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Load(e) => e.into(),
            ExperimentError::Config(m) => Failure::Usage(m),
            ExperimentError::Graph(e) => Failure::Data(e.to_string()),
        }
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn data(e: impl ToString) -> Failure {
    Failure::Data(e.to_string())
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let argv: Vec<String> = std::iter::once(env!("CARGO_PKG_NAME").to_string())
        .chain(args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()))
        .collect();
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Tables(a) => with_jobs(a.jobs, || tables(a)),
        Command::Simulate(a) => simulate(a),
        Command::Experiment(a) => with_jobs(a.jobs, || experiment(a, &argv)),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            match &f {
                Failure::NoRoute => {}
                Failure::Usage(m) => eprintln!("error: {m}\n\nFor more information, try '--help'."),
                Failure::Data(m) => eprintln!("error: {m}"),
            }
            f.code()
        }
    }
}

fn with_jobs<F>(jobs: Option<usize>, f: F) -> Result<(), Failure>
where
    F: FnOnce() -> Result<(), Failure> + Send,
{
    match jobs {
        Some(0) => Err(usage("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(data)?
            .install(f),
        None => f(),
    }
}

/// Writes to `path`, or standard output without one. A file that could not
/// be written completely is removed.
fn emit<F>(path: Option<&Path>, write: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> Result<(), String>,
{
    match path {
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)
                .and_then(|_| lock.flush().map_err(|e| e.to_string()))
                .map_err(Failure::Data)
        }
        Some(p) => {
            let file = File::create(p).map_err(|e| data(format!("{}: {e}", p.display())))?;
            let mut out = BufWriter::new(file);
            let res = write(&mut out).and_then(|_| out.flush().map_err(|e| e.to_string()));
            if let Err(e) = res {
                drop(out);
                let _ = std::fs::remove_file(p);
                return Err(data(format!("{}: {e}", p.display())));
            }
            Ok(())
        }
    }
}

fn family_from(kind: FamilyArg, p: &FamilyParams) -> Result<(Family, usize), Failure> {
    let n = p.n.ok_or_else(|| usage("--n is required for generated graphs"))?;
    let given = [
        ("--c", p.c.is_some()),
        ("--m", p.m.is_some()),
        ("--k", p.k.is_some()),
        ("--p", p.p.is_some()),
    ];
    let (family, own): (Family, &[&str]) = match kind {
        FamilyArg::Er => (
            Family::ErdosRenyi {
                c: p.c.ok_or_else(|| usage("--family er needs --c"))?,
            },
            &["--c"],
        ),
        FamilyArg::Ba => (
            Family::BarabasiAlbert {
                m: p.m.ok_or_else(|| usage("--family ba needs --m"))?,
            },
            &["--m"],
        ),
        FamilyArg::Ws => (
            Family::WattsStrogatz {
                k: p.k.ok_or_else(|| usage("--family ws needs --k"))?,
                p: p.p.ok_or_else(|| usage("--family ws needs --p"))?,
            },
            &["--k", "--p"],
        ),
    };
    if let Some((flag, _)) = given.iter().find(|(flag, set)| *set && !own.contains(flag)) {
        return Err(usage(format!("{flag} does not apply to this family")));
    }
    GeneratorSpec::new(family, n, 0).validate().map_err(usage)?;
    Ok((family, n))
}

fn no_family_params(p: &FamilyParams) -> Result<(), Failure> {
    if p.n.is_some() || p.c.is_some() || p.m.is_some() || p.k.is_some() || p.p.is_some() {
        return Err(usage("generator parameters cannot be combined with --topology"));
    }
    Ok(())
}

fn generate(a: GenerateArgs) -> Result<(), Failure> {
    let (family, n) = family_from(a.family, &a.params)?;
    let spec = GeneratorSpec {
        family,
        n,
        seed: a.seed,
        replica: a.replica,
    };
    let g = spec.generate().map_err(usage)?;
    let mut text = String::new();
    edgelist::write(&g, &mut text).map_err(data)?;
    emit(a.output.as_deref(), |out| {
        out.write_all(text.as_bytes()).map_err(|e| e.to_string())
    })
}

fn node(g: &Graph, v: u32, what: &str) -> Result<NodeId, Failure> {
    let id = NodeId(v);
    if !g.contains(id) {
        return Err(usage(format!("{what} {v} is not a node of the topology")));
    }
    Ok(id)
}

fn maxflow_tables(g: &Graph, w: Weights) -> Result<TableSet, Failure> {
    let nodes: Vec<NodeId> = g.nodes().collect();
    let tables = nodes
        .par_iter()
        .map(|&v| NeighborMetrics::compute(g, v, FlowMethod::FlowTree).map(|m| m.rank(w)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(data)?;
    Ok(TableSet::from_tables(tables, g.node_count()))
}

fn build_tables(g: &Graph, algo: Algo, w: Weights) -> Result<TableSet, Failure> {
    match algo {
        Algo::Maxflow => maxflow_tables(g, w),
        Algo::Dijkstra => Ok(build_tables_dijkstra(g)),
    }
}

fn tables(a: TablesArgs) -> Result<(), Failure> {
    let g = load_topology(&a.topology)?;
    let owner = a.owner.map(|v| node(&g, v, "owner")).transpose()?;
    let tables = build_tables(&g, a.algo, a.weights)?;
    let mut text = String::new();
    match owner {
        Some(v) => tables.get(v).expect("owner checked").dump(&mut text),
        None => tables.dump(&mut text),
    }
    .map_err(data)?;
    emit(a.output.as_deref(), |out| {
        out.write_all(text.as_bytes()).map_err(|e| e.to_string())
    })
}

fn join(vs: &[NodeId]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn simulate(a: SimulateArgs) -> Result<(), Failure> {
    let g = load_topology(&a.topology)?;
    let mut failures = FailureSet::new();
    for &(u, v) in &a.fail_link {
        failures.fail_link(node(&g, u, "link endpoint")?, node(&g, v, "link endpoint")?);
    }
    for &v in &a.fail_node {
        failures.fail_node(node(&g, v, "failed node")?);
    }
    failures.validate(&g).map_err(usage)?;

    let live: Vec<NodeId> = g.nodes().filter(|v| !failures.node_failed(*v)).collect();
    let mut rng = StreamRng::new(a.seed, 0, STREAM_PICK);
    let mut pick = |fixed: Option<u32>, what: &str, exclude: Option<NodeId>| -> Result<NodeId, Failure> {
        if let Some(v) = fixed {
            return node(&g, v, what);
        }
        let pool: Vec<NodeId> = live.iter().copied().filter(|v| Some(*v) != exclude).collect();
        if pool.is_empty() {
            return Err(usage(format!("no live node left to use as {what}")));
        }
        Ok(pool[rng.below(pool.len() as u64) as usize])
    };
    let s = pick(a.src, "source", a.dst.map(NodeId))?;
    let t = pick(a.dst, "destination", Some(s))?;

    let tables = build_tables(&g, a.algo, a.weights)?;
    let out = frr::forward(&g, &tables, &failures, s, t).map_err(usage)?;
    println!("source: {s}");
    println!("destination: {t}");
    println!("trace: {}", join(&out.trace));
    println!("visited: {}", join(&out.visited));
    match &out.final_route {
        Some(route) => {
            println!("route: {}", join(route.vertices()));
            println!("outcome: delivered after {} transmissions", out.hop_count);
            Ok(())
        }
        None => {
            println!("outcome: no route after {} transmissions", out.hop_count);
            Err(Failure::NoRoute)
        }
    }
}

fn experiment(a: ExperimentArgs, argv: &[String]) -> Result<(), Failure> {
    let source = match (a.family, &a.topology) {
        (Some(SourceArg::File) | None, Some(t)) => {
            no_family_params(&a.params)?;
            TopologySource::Named(t.clone())
        }
        (Some(SourceArg::File) | None, None) => return Err(usage("give --family er|ba|ws or --topology")),
        (Some(_), Some(_)) => return Err(usage("--topology only goes with --family file")),
        (Some(f), None) => {
            let kind = match f {
                SourceArg::Er => FamilyArg::Er,
                SourceArg::Ba => FamilyArg::Ba,
                SourceArg::Ws => FamilyArg::Ws,
                SourceArg::File => unreachable!(),
            };
            let (family, n) = family_from(kind, &a.params)?;
            TopologySource::Generated { family, n }
        }
    };
    let mut config = ExperimentConfig::new(source);
    if !a.weights.is_empty() {
        config.weights = a.weights;
    }
    config.seeds = a.seeds;
    config.repeat = a.repeat;
    config.keep_pairs = a.pairs.is_some();
    config.validate()?;

    let result = run_experiment(&config)?;
    let provenance = report::provenance_line(argv);
    emit(a.output.as_deref(), |out| {
        report::write_records(out, &provenance, &result.records).map_err(|e| e.to_string())
    })?;
    if let Some(path) = &a.pairs {
        let res = emit(Some(path), |out| {
            report::write_pairs(out, &provenance, &result.pairs).map_err(|e| e.to_string())
        });
        if res.is_err() {
            if let Some(o) = &a.output {
                let _ = std::fs::remove_file(o);
            }
        }
        res?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_parsing() {
        assert_eq!(parse_weights("2,-5"), Ok(Weights::SHORT));
        assert_eq!(parse_weights(" 5 , -1 "), Ok(Weights::CONNECTED));
        assert!(parse_weights("banana").is_err());
        assert!(parse_weights("1,2,3").is_err());
        assert!(parse_weights("0,0").is_err());
    }

    #[test]
    fn link_parsing() {
        assert_eq!(parse_link("0,3"), Ok((0, 3)));
        assert!(parse_link("0").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
