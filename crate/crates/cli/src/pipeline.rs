//! The search pipeline: orbits, graph, clique, assembled code, verification.

use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use log::info;

use orbit_codes::code::Assembly;
use orbit_codes::{
    assemble_code, max_weight_clique_exact, max_weight_clique_heuristic, Budget, CliqueResult, CompatibilityGraph,
    Doubleword, DoublewordAction, EnumerateOptions, HeuristicParams, Orbit, PermutationGroup, VerificationReport,
    VerifyMode,
};

use crate::parallel::{build_graph_parallel, verify_parallel, InstantClock};

/// Codes above this size are verified orbit by orbit rather than pairwise.
pub const ORBIT_REDUCED_ABOVE: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedSource {
    /// Orbits of these doublewords; seeds in one orbit count once.
    Seeds(Vec<Doubleword>),
    /// Every orbit, swept in increasing order of the smallest member.
    Enumerate(EnumerateOptions),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Exact(Budget),
    Heuristic(HeuristicParams),
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub group: PermutationGroup,
    pub n: usize,
    pub d: u32,
    pub seeds: SeedSource,
    pub solver: Solver,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub orbit_count: usize,
    pub graph: CompatibilityGraph,
    pub clique: CliqueResult,
    /// Canonical representatives of the chosen orbits, ascending.
    pub reps: Vec<Doubleword>,
    pub assembly: Assembly,
    pub report: VerificationReport,
}

pub fn collect_orbits(action: &DoublewordAction, seeds: &SeedSource) -> Result<Vec<Orbit>> {
    match seeds {
        SeedSource::Enumerate(opts) => Ok(action.enumerate_orbit_reps(opts)?),
        SeedSource::Seeds(seeds) => {
            let mut orbits: Vec<Orbit> = Vec::with_capacity(seeds.len());
            for &x in seeds {
                let o = action.compute_orbit(x, false)?;
                if orbits.iter().any(|p| p.rep == o.rep) {
                    log::warn!("seed {x} lies in an orbit already listed; skipped");
                    continue;
                }
                orbits.push(o);
            }
            Ok(orbits)
        }
    }
}

/// Verification mode for an assembled code: orbit-reduced above
/// [`ORBIT_REDUCED_ABOVE`] words, exhaustive otherwise.
pub fn verify_assembled(
    assembly: &Assembly,
    action: &DoublewordAction,
    reps: &[Doubleword],
) -> Result<VerificationReport> {
    let mode = if assembly.code.size() > ORBIT_REDUCED_ABOVE {
        VerifyMode::OrbitReduced { action, reps }
    } else {
        VerifyMode::Exhaustive
    };
    let mut report = verify_parallel(&assembly.code, mode)?;
    report.orbits.clone_from(&assembly.orbits);
    Ok(report)
}

pub fn run_search(config: &PipelineConfig) -> Result<SearchOutcome> {
    ensure!(config.d >= 1, "target distance must be at least 1");
    let action = DoublewordAction::new(&config.group, config.n)
        .with_context(|| format!("group does not act on doublewords of length {}", 2 * config.n))?;

    let t = Instant::now();
    let orbits = collect_orbits(&action, &config.seeds)?;
    info!("orbits: {} in {:.2?}", orbits.len(), t.elapsed());

    let t = Instant::now();
    let graph = build_graph_parallel(&action, &orbits, config.d)?;
    info!(
        "graph: {} nodes, {} edges in {:.2?}",
        graph.node_count(),
        graph.graph.edge_count(),
        t.elapsed()
    );
    if graph.node_count() == 0 {
        bail!("no orbit has intra-orbit distance at least {}", config.d);
    }

    let clique = match config.solver {
        Solver::Exact(budget) => max_weight_clique_exact(&graph.graph, budget, &InstantClock::start()),
        Solver::Heuristic(params) => max_weight_clique_heuristic(&graph.graph, params),
    };
    info!(
        "clique: weight {} from {} orbits, {} ({} nodes, {:.2?})",
        clique.weight,
        clique.members.len(),
        if clique.optimal { "optimal" } else { "not proven optimal" },
        clique.stats.nodes_expanded,
        clique.stats.elapsed
    );

    let reps: Vec<Doubleword> = clique.members.iter().map(|&i| graph.reps[i]).collect();
    let t = Instant::now();
    let assembly = assemble_code(&action, &reps)?;
    let report = verify_assembled(&assembly, &action, &reps)?;
    info!("verify: minimum distance {} in {:.2?}", report.min_distance, t.elapsed());

    ensure!(
        assembly.code.size() as u64 == clique.weight,
        "assembled code has {} words but the clique weighs {}",
        assembly.code.size(),
        clique.weight
    );
    ensure!(
        report.meets(config.d),
        "assembled code has minimum distance {} below the target {}",
        report.min_distance,
        config.d
    );
    Ok(SearchOutcome {
        orbit_count: orbits.len(),
        graph,
        clique,
        reps,
        assembly,
        report,
    })
}
