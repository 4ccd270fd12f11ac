//! Subcommands of the `orbit-codes` binary.
//!
//! Results go to the writer handed to [`run`] (standard output in the
//! binary); progress goes to the log. Exit status follows [`Failure`].

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use orbit_codes::code::Shortened;
use orbit_codes::{
    assemble_code, extend_parity, max_weight_clique_exact, max_weight_clique_heuristic, shorten, shorten_best,
    Budget, Code, Doubleword, DoublewordAction, EnumerateOptions, HeuristicParams, PermutationGroup,
    VerificationReport, VerifyMode,
};

use crate::formats;
use crate::parallel::{build_graph_parallel, verify_parallel, InstantClock};
use crate::pipeline::{collect_orbits, run_search, verify_assembled, PipelineConfig, SeedSource, Solver};

#[derive(Debug, Parser)]
#[command(name = "orbit-codes", version, about = "Binary codes as unions of permutation-group orbits")]
pub struct Cli {
    /// Worker threads for graph building and verification (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Assemble (or read) a code, compute its exact minimum distance and
    /// check the claims.
    Verify(VerifyArgs),
    /// Run the whole pipeline and write the best code found.
    Search(SearchArgs),
    /// Write the orbit list for seeds or for the whole space.
    Orbits(OrbitsArgs),
    /// Build the compatibility graph of an orbit list as DIMACS.
    Graph(GraphArgs),
    /// Maximum-weight clique of a DIMACS graph.
    Clique(CliqueArgs),
    /// Append a parity bit to a code of odd minimum distance.
    Extend(ExtendArgs),
    /// Shorten a code on its best coordinate (or a given one).
    Shorten(ShortenArgs),
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Group file; without it the trivial group of degree 2n is used.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Codeword length; defaults to the group file's `n` or half its degree.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CodeInput {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Orbit representatives whose union is the code.
    #[arg(long, conflicts_with = "code")]
    pub reps: Option<PathBuf>,
    /// Code file.
    #[arg(long)]
    pub code: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Orbit-reduced above 100000 words when generating data is given,
    /// exhaustive otherwise.
    Auto,
    Pairwise,
    Neighbourhood,
    OrbitReduced,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: CodeInput,
    /// Claimed minimum distance of the final code (after `--extend`).
    #[arg(long)]
    pub d: Option<u32>,
    /// Claimed size of the final code; met when the code has at least this
    /// many words.
    #[arg(long)]
    pub size: Option<usize>,
    /// Also extend by a parity bit and verify the extension.
    #[arg(long)]
    pub extend: bool,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Write the final code here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    /// Seed file; without it every orbit is enumerated.
    #[arg(long)]
    pub reps: Option<PathBuf>,
    /// Keep enumerated orbits whose lightest member has at least this weight.
    #[arg(long, default_value_t = 0)]
    pub weight_min: u32,
    /// Keep enumerated orbits whose lightest member has at most this weight.
    #[arg(long)]
    pub weight_max: Option<u32>,
    /// Stop enumerating after this many orbits.
    #[arg(long)]
    pub max_orbits: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Time limit in seconds for the exact solver; 0 disables it.
    #[arg(long, default_value_t = 60.0)]
    pub time_limit: f64,
    /// Node limit for the exact solver.
    #[arg(long)]
    pub node_limit: Option<u64>,
    /// Use the randomized greedy solver.
    #[arg(long)]
    pub heuristic: bool,
    #[arg(long, default_value_t = 10_000)]
    pub iterations: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[command(flatten)]
    pub window: WindowArgs,
    /// Target minimum distance.
    #[arg(long)]
    pub d: u32,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Write the code here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the chosen orbit representatives here.
    #[arg(long)]
    pub reps_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OrbitsArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[command(flatten)]
    pub window: WindowArgs,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Orbit list written by `orbits`.
    #[arg(long)]
    pub orbits: PathBuf,
    #[arg(long)]
    pub d: u32,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CliqueArgs {
    /// DIMACS graph.
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Write the representatives of the chosen nodes here (needs `c rep`
    /// comments in the graph).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    #[command(flatten)]
    pub input: CodeInput,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ShortenArgs {
    #[command(flatten)]
    pub input: CodeInput,
    /// 1-based coordinate to delete instead of the best one.
    #[arg(long)]
    pub coordinate: Option<usize>,
    /// How many times to shorten.
    #[arg(long, default_value_t = 1)]
    pub times: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// The input is fine but does not meet a claim (exit status 1).
    Claim(String),
    /// Unreadable or invalid input (exit status 2).
    Input(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Claim(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Claim(m) => f.write_str(m),
            Failure::Input(e) => write!(f, "{e:#}"),
        }
    }
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

type CmdResult = Result<(), Failure>;

pub fn run(cli: Cli, out: &mut dyn Write) -> CmdResult {
    match cli.command {
        Command::Verify(a) => verify(a, out),
        Command::Search(a) => search(a, out),
        Command::Orbits(a) => orbits(a, out),
        Command::Graph(a) => graph(a, out),
        Command::Clique(a) => clique(a, out),
        Command::Extend(a) => extend(a, out),
        Command::Shorten(a) => shorten_cmd(a, out),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn with_path<T>(path: &Path, r: Result<T, formats::FormatError>) -> anyhow::Result<T> {
    r.map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Writes through `f` into `path`, or into `fallback` when no path is given.
fn emit(
    path: Option<&Path>,
    fallback: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            let file = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
            let mut w = BufWriter::new(file);
            f(&mut w).and_then(|()| w.flush()).with_context(|| format!("cannot write {}", p.display()))
        }
        None => f(fallback).context("cannot write output"),
    }
}

fn write_file(path: &Path, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> anyhow::Result<()> {
    emit(Some(path), &mut io::sink(), f)
}

/// The group and `n` named by the flags.
fn load_group(args: &GroupArgs) -> anyhow::Result<(PermutationGroup, usize)> {
    let Some(path) = &args.group else {
        let n = args.n.ok_or_else(|| anyhow!("--n is required without --group"))?;
        if n == 0 {
            bail!("--n must be positive");
        }
        return Ok((PermutationGroup::trivial(2 * n)?, n));
    };
    let file = with_path(path, formats::parse_group(&read(path)?))?;
    let n = match (args.n, file.n) {
        (Some(a), Some(b)) if a != b => bail!("--n {a} disagrees with n {b} in {}", path.display()),
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => {
            if file.degree % 2 == 1 {
                bail!("{}: odd degree {} cannot act on doublewords", path.display(), file.degree);
            }
            file.degree / 2
        }
    };
    if file.degree != 2 * n {
        bail!("{}: degree {} does not equal 2n = {}", path.display(), file.degree, 2 * n);
    }
    Ok((file.group, n))
}

fn load_reps(path: &Path, n: usize) -> anyhow::Result<Vec<Doubleword>> {
    with_path(path, formats::parse_reps(&read(path)?, n))
}

/// A code together with the data that generated it, when known.
struct Loaded {
    code: Code,
    origin: Option<(DoublewordAction, Vec<Doubleword>)>,
    orbits: Vec<orbit_codes::code::OrbitSummary>,
}

fn load_code(input: &CodeInput) -> anyhow::Result<Loaded> {
    match (&input.reps, &input.code) {
        (Some(reps), None) => {
            let (group, n) = load_group(&input.group)?;
            let action = DoublewordAction::new(&group, n)?;
            let reps = load_reps(reps, n)?;
            let assembly = assemble_code(&action, &reps)?;
            info!("assembled {} orbits into {} words", reps.len(), assembly.code.size());
            Ok(Loaded {
                code: assembly.code,
                orbits: assembly.orbits,
                origin: Some((action, reps)),
            })
        }
        (None, Some(path)) => {
            if input.group.group.is_some() {
                log::warn!("--group is ignored when reading a code file");
            }
            let code = with_path(path, formats::parse_code(&read(path)?))?;
            Ok(Loaded {
                code,
                origin: None,
                orbits: Vec::new(),
            })
        }
        _ => bail!("give exactly one of --reps or --code"),
    }
}

fn verify_loaded(loaded: &Loaded, method: MethodArg) -> anyhow::Result<VerificationReport> {
    let t = std::time::Instant::now();
    let origin = loaded.origin.as_ref();
    let mut report = match (method, origin) {
        (MethodArg::Auto, Some((action, reps))) => verify_assembled(
            &orbit_codes::code::Assembly {
                code: loaded.code.clone(),
                orbits: loaded.orbits.clone(),
            },
            action,
            reps,
        )?,
        (MethodArg::Auto, None) => verify_parallel(&loaded.code, VerifyMode::Exhaustive)?,
        (MethodArg::Pairwise, _) => verify_parallel(&loaded.code, VerifyMode::Pairwise)?,
        (MethodArg::Neighbourhood, _) => verify_parallel(&loaded.code, VerifyMode::Neighbourhood)?,
        (MethodArg::OrbitReduced, Some((action, reps))) => {
            verify_parallel(&loaded.code, VerifyMode::OrbitReduced { action, reps })?
        }
        (MethodArg::OrbitReduced, None) => bail!("orbit-reduced verification needs --group and --reps"),
    };
    if report.orbits.is_empty() {
        report.orbits.clone_from(&loaded.orbits);
    }
    info!("verified in {:.2?}", t.elapsed());
    Ok(report)
}

fn check_claims(report: &VerificationReport, d: Option<u32>, size: Option<usize>) -> CmdResult {
    if let Some(d) = d {
        if !report.meets(d) {
            return Err(Failure::Claim(format!(
                "minimum distance {} is below the claimed {d}",
                report.min_distance
            )));
        }
    }
    if let Some(m) = size {
        if report.size < m {
            return Err(Failure::Claim(format!("size {} is below the claimed {m}", report.size)));
        }
    }
    Ok(())
}

fn extend_verified(code: &Code, report: &VerificationReport) -> anyhow::Result<(Code, VerificationReport)> {
    let ext = extend_parity(code, report)?;
    let ext_report = verify_parallel(&ext, VerifyMode::Exhaustive)?;
    Ok((ext, ext_report))
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let loaded = load_code(&a.input)?;
    let report = verify_loaded(&loaded, a.method)?;
    formats::write_report(out, "code", &report)?;
    let (code, report) = if a.extend {
        let (ext, ext_report) = extend_verified(&loaded.code, &report)?;
        writeln!(out)?;
        formats::write_report(out, "extended code", &ext_report)?;
        (ext, ext_report)
    } else {
        (loaded.code, report)
    };
    if let Some(p) = &a.out {
        write_file(p, |w| formats::write_code(w, &code, report.min_distance))?;
    }
    let claim = a.d.or(if a.extend { None } else { code.claimed_min_distance() });
    check_claims(&report, claim, a.size)
}

fn enumerate_options(w: &WindowArgs) -> EnumerateOptions {
    EnumerateOptions {
        weight_min: w.weight_min,
        weight_max: w.weight_max.unwrap_or(u32::MAX),
        max_orbits: w.max_orbits,
        keep_members: false,
    }
}

fn seed_source(w: &WindowArgs, n: usize) -> anyhow::Result<SeedSource> {
    Ok(match &w.reps {
        Some(p) => SeedSource::Seeds(load_reps(p, n)?),
        None => SeedSource::Enumerate(enumerate_options(w)),
    })
}

fn solver(s: &SolverArgs) -> anyhow::Result<Solver> {
    if s.heuristic {
        return Ok(Solver::Heuristic(HeuristicParams {
            iterations: s.iterations,
            rng_seed: s.seed,
        }));
    }
    if !(s.time_limit >= 0.0 && s.time_limit.is_finite()) {
        bail!("--time-limit must be a non-negative number of seconds");
    }
    Ok(Solver::Exact(Budget {
        time_limit: (s.time_limit > 0.0).then(|| Duration::from_secs_f64(s.time_limit)),
        node_limit: s.node_limit,
    }))
}

fn search(a: SearchArgs, out: &mut dyn Write) -> CmdResult {
    let (group, n) = load_group(&a.group)?;
    let config = PipelineConfig {
        group,
        n,
        d: a.d,
        seeds: seed_source(&a.window, n)?,
        solver: solver(&a.solver)?,
    };
    let result = run_search(&config)?;
    writeln!(out, "orbits={}", result.orbit_count)?;
    writeln!(out, "graph_nodes={}", result.graph.node_count())?;
    writeln!(out, "graph_edges={}", result.graph.graph.edge_count())?;
    writeln!(out, "clique_weight={}", result.clique.weight)?;
    writeln!(out, "optimal={}", result.clique.optimal)?;
    formats::write_report(out, "code", &result.report)?;
    if let Some(p) = &a.out {
        write_file(p, |w| formats::write_code(w, &result.assembly.code, result.report.min_distance))?;
    }
    if let Some(p) = &a.reps_out {
        let comment = format!("{} orbits, {} words, d={}", result.reps.len(), result.clique.weight, a.d);
        write_file(p, |w| formats::write_reps(w, &comment, &result.reps))?;
    }
    Ok(())
}

fn orbits(a: OrbitsArgs, out: &mut dyn Write) -> CmdResult {
    let (group, n) = load_group(&a.group)?;
    let action = DoublewordAction::new(&group, n)?;
    let orbits = collect_orbits(&action, &seed_source(&a.window, n)?)?;
    info!(
        "{} orbits covering {} words",
        orbits.len(),
        orbits.iter().map(|o| o.size).sum::<usize>()
    );
    emit(a.out.as_deref(), out, |w| formats::write_orbits(w, &orbits))?;
    Ok(())
}

fn graph(a: GraphArgs, out: &mut dyn Write) -> CmdResult {
    let (group, n) = load_group(&a.group)?;
    let action = DoublewordAction::new(&group, n)?;
    let records = with_path(&a.orbits, formats::parse_orbits(&read(&a.orbits)?))?;
    let mut orbits = Vec::with_capacity(records.len());
    for r in &records {
        let at = |msg: String| anyhow!("{}: line {}: {msg}", a.orbits.display(), r.line);
        if r.rep.half_len() != n {
            return Err(at(format!("rep has length {}, expected {}", r.rep.len(), 2 * n)).into());
        }
        let o = action.compute_orbit(r.rep, false)?;
        if o.rep != r.rep {
            return Err(at(format!("{} is not the smallest member of its orbit ({} is)", r.rep, o.rep)).into());
        }
        if o.size != r.size || o.intra != r.mindist {
            return Err(at(format!(
                "orbit has size={} mindist={}, file says size={} mindist={}",
                o.size, o.intra, r.size, r.mindist
            ))
            .into());
        }
        orbits.push(o);
    }
    let g = build_graph_parallel(&action, &orbits, a.d)?;
    info!("graph: {} nodes, {} edges", g.node_count(), g.graph.edge_count());
    emit(a.out.as_deref(), out, |w| formats::write_dimacs(w, &g))?;
    Ok(())
}

fn clique(a: CliqueArgs, out: &mut dyn Write) -> CmdResult {
    let input = with_path(&a.graph, formats::parse_dimacs(&read(&a.graph)?))?;
    let r = match solver(&a.solver)? {
        Solver::Exact(budget) => max_weight_clique_exact(&input.graph, budget, &InstantClock::start()),
        Solver::Heuristic(params) => max_weight_clique_heuristic(&input.graph, params),
    };
    info!("{} search nodes in {:.2?}", r.stats.nodes_expanded, r.stats.elapsed);
    writeln!(out, "weight={}", r.weight)?;
    writeln!(out, "optimal={}", r.optimal)?;
    let members: Vec<String> = r.members.iter().map(|i| (i + 1).to_string()).collect();
    writeln!(out, "members={}", members.join(" "))?;
    if let Some(p) = &a.out {
        let reps = r
            .members
            .iter()
            .map(|&i| input.reps[i].ok_or_else(|| anyhow!("node {} has no `c rep` comment", i + 1)))
            .collect::<anyhow::Result<Vec<_>>>()?;
        let comment = format!("clique of weight {} on {} nodes", r.weight, reps.len());
        write_file(p, |w| formats::write_reps(w, &comment, &reps))?;
    }
    Ok(())
}

fn extend(a: ExtendArgs, out: &mut dyn Write) -> CmdResult {
    let loaded = load_code(&a.input)?;
    let report = verify_loaded(&loaded, MethodArg::Auto)?;
    formats::write_report(out, "code", &report)?;
    let (ext, ext_report) = extend_verified(&loaded.code, &report)?;
    writeln!(out)?;
    formats::write_report(out, "extended code", &ext_report)?;
    if let Some(p) = &a.out {
        write_file(p, |w| formats::write_code(w, &ext, ext_report.min_distance))?;
    }
    Ok(())
}

fn shorten_cmd(a: ShortenArgs, out: &mut dyn Write) -> CmdResult {
    let loaded = load_code(&a.input)?;
    let report = verify_loaded(&loaded, MethodArg::Auto)?;
    formats::write_report(out, "code", &report)?;
    let mut code = loaded.code;
    let mut last = report;
    for step in 1..=a.times {
        let s: Shortened = match a.coordinate {
            Some(c) => shorten(&code, c)?,
            None => shorten_best(&code)?,
        };
        let r = verify_parallel(&s.code, VerifyMode::Exhaustive)?;
        writeln!(out)?;
        writeln!(out, "# step {step}: kept {} words with value {} at coordinate {}", s.retained, u8::from(s.value), s.coordinate)?;
        formats::write_report(out, "shortened code", &r)?;
        code = s.code;
        last = r;
    }
    if let Some(p) = &a.out {
        write_file(p, |w| formats::write_code(w, &code, last.min_distance))?;
    }
    Ok(())
}

