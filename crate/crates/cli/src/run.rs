//! Argument parsing and command dispatch.
//!
//! Exit codes: 0 when the command's check passes, 1 when it fails (the
//! payload then carries the counterexample), 2 for usage or input errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};
use simplex_cover_core::bodies::{
    make_body, tetrahedron_facets, verify_constants, verify_union_equals_d, BodyName, Classifier,
    Lemma, LemmaReport, LemmaVerifier, UNION_LEMMA_ID,
};
use simplex_cover_core::covering::{
    covering_check, grid_covering, neighbor_incidence, search_thin_covering, theta_density,
    BoxRegion, CoverageStatus, CoveringConfig,
};
use simplex_cover_core::{Rat, RngStream, Vec3};

use crate::config::{parse_config, serialize_config};
use crate::off::to_off;
use crate::report::{
    bound_payload, constants_payload, coverage_payload, decimal, density_payload,
    incidence_payload, lemma_payload, rat_json, Envelope,
};

/// Worker count for the randomized suites. Results never depend on it.
pub const THREADS_ENV: &str = "SIMPLEX_COVER_THREADS";

/// Trials per work unit. Fixed, so the split is the same for any pool size.
const CHUNK: u64 = 250;

/// Grid refinement used by the `union-d` check.
const UNION_GRID_DEPTH: u32 = 4;

#[derive(Debug, Parser)]
#[command(name = "simplex-cover", version, about = "Exact checks for translative tetrahedron coverings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact volumes and set identities of the named bodies.
    VerifyConstants,
    /// Randomized containment checks for one lemma.
    VerifyLemma {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Randomized checks of the boundary-patch corollary.
    VerifyCorollary {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Covering density of a configuration in P.
    EvalDensity {
        #[arg(long)]
        config: PathBuf,
    },
    /// Certify that a configuration covers P.
    CheckCovering {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_depth: u32,
    },
    /// Neighbor incidence counts around one translate.
    Incidence {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        center: usize,
    },
    /// The lower-bound chain.
    ReportBound,
    /// Write the grid covering of P with the given cell side.
    GridCover {
        #[arg(long)]
        cell_side: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Local search for a thinner covering.
    Search {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        iters: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "1/8")]
        step: String,
    },
    /// Write a body as an OFF mesh.
    ExportBody {
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyConstants => "verify-constants",
            Command::VerifyLemma { .. } => "verify-lemma",
            Command::VerifyCorollary { .. } => "verify-corollary",
            Command::EvalDensity { .. } => "eval-density",
            Command::CheckCovering { .. } => "check-covering",
            Command::Incidence { .. } => "incidence",
            Command::ReportBound => "report-bound",
            Command::GridCover { .. } => "grid-cover",
            Command::Search { .. } => "search",
            Command::ExportBody { .. } => "export-body",
        }
    }
}

/// What a command run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command; `args` excludes the program name.
pub fn run_command<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("simplex-cover")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let start = Instant::now();
    let name = cli.command.name();
    match dispatch(cli.command) {
        Ok(envelope) => Outcome {
            code: if envelope.pass { 0 } else { 1 },
            stdout: envelope.render(),
            stderr: format!("{name}: elapsed {:.3}s\n", start.elapsed().as_secs_f64()),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e:#}\n"),
        },
    }
}

fn dispatch(cmd: Command) -> anyhow::Result<Envelope> {
    let name = cmd.name();
    let (pass, payload) = match cmd {
        Command::VerifyConstants => {
            let checks = verify_constants();
            (checks.iter().all(|c| c.pass), constants_payload(&checks))
        }
        Command::VerifyLemma { name, trials, seed } => {
            let rng = RngStream::new(seed, 0);
            let report = if name == UNION_LEMMA_ID {
                verify_union_equals_d(trials, UNION_GRID_DEPTH, &rng)
            } else {
                let lemma: Lemma = name.parse()?;
                let verifier = LemmaVerifier::new();
                sharded(lemma.id(), trials, |range| verifier.run(lemma, &rng, range))?
            };
            (report.passed(), lemma_payload(&report, seed))
        }
        Command::VerifyCorollary { trials, seed } => {
            let rng = RngStream::new(seed, 0);
            let classifier = Classifier::new();
            let report = sharded("corollary", trials, |range| classifier.run_corollary(&rng, range))?;
            (report.passed(), lemma_payload(&report, seed))
        }
        Command::EvalDensity { config } => {
            let cfg = load_config(&config)?;
            (true, density_payload(&theta_density(&cfg)))
        }
        Command::CheckCovering { config, max_depth } => {
            let cfg = load_config(&config)?;
            let verdict = covering_check(&cfg, &make_body(BodyName::P), max_depth)?;
            let verified = match &verdict.status {
                CoverageStatus::Uncovered(w) => Some(witness_is_gap(&cfg, w)),
                _ => None,
            };
            let pass = verdict.status == CoverageStatus::Covered;
            (pass, coverage_payload(&verdict, max_depth, verified))
        }
        Command::Incidence { config, center } => {
            let cfg = load_config(&config)?;
            let report = neighbor_incidence(&cfg, center)?;
            let pass = report.identity_m && report.identity_t && report.t_le_2m_plus_4;
            (pass, incidence_payload(&report))
        }
        Command::ReportBound => {
            let b = simplex_cover_core::covering::theorem_bound();
            (b.exceeds_claim, bound_payload(&b))
        }
        Command::GridCover { cell_side, out } => {
            let side = parse_rat(&cell_side)?;
            let mut cfg = grid_covering(&BoxRegion::cube_p(), &side)?;
            cfg.label = Some(format!("grid P cell {side}"));
            write_file(&out, &serialize_config(&cfg))?;
            let payload = json!({
                "cell_side": rat_json(&side),
                "translates": cfg.len(),
            });
            (true, payload)
        }
        Command::Search { config, iters, seed, out, step } => {
            let cfg = load_config(&config)?;
            let step = parse_rat(&step)?;
            let found = search_thin_covering(&cfg, iters, &RngStream::new(seed, 0), &step)?;
            write_file(&out, &serialize_config(&found))?;
            let (before, after) = (theta_density(&cfg).theta, theta_density(&found).theta);
            let payload = json!({
                "seed": seed,
                "iterations": iters,
                "step": rat_json(&step),
                "translates_before": cfg.len(),
                "translates_after": found.len(),
                "theta_before": rat_json(&before),
                "theta_after": rat_json(&after),
                "theta_after_decimal": decimal(&after),
            });
            (after <= before, payload)
        }
        Command::ExportBody { name, out } => {
            let body: BodyName = name.parse()?;
            let poly = make_body(body);
            write_file(&out, &to_off(&poly, body.as_str()))?;
            let payload = json!({
                "body": body.as_str(),
                "vertices": poly.vertices().len(),
                "faces": poly.facets().len(),
                "edges": poly.edge_count(),
            });
            (true, payload)
        }
    };
    Ok(Envelope::new(name, pass, payload))
}

/// Runs `trials` trials in fixed chunks on the worker pool and merges the
/// chunk reports. Each trial owns its substream, so the merged report is
/// the same for any number of workers.
fn sharded<F>(id: &str, trials: u64, run: F) -> anyhow::Result<LemmaReport>
where
    F: Fn(std::ops::Range<u64>) -> LemmaReport + Sync,
{
    let chunks: Vec<std::ops::Range<u64>> = (0..trials.div_ceil(CHUNK))
        .map(|k| k * CHUNK..((k + 1) * CHUNK).min(trials))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count()?)
        .build()
        .context("building worker pool")?;
    let parts: Vec<LemmaReport> = pool.install(|| chunks.into_par_iter().map(&run).collect());
    Ok(parts.into_iter().fold(LemmaReport::new(id), LemmaReport::merge))
}

/// 0 lets the pool pick.
fn worker_count() -> anyhow::Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{THREADS_ENV} must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(0),
    }
}

/// Checked without the subdivision code: the point lies in P and violates
/// some facet inequality of every translate.
fn witness_is_gap(cfg: &CoveringConfig, w: &Vec3) -> bool {
    let facets = tetrahedron_facets();
    make_body(BodyName::P).facets().iter().all(|h| h.contains(w))
        && cfg
            .translates()
            .iter()
            .all(|x| facets.iter().any(|h| !h.translated(x).contains(w)))
}

fn parse_rat(s: &str) -> anyhow::Result<Rat> {
    s.parse::<Rat>().map_err(|_| anyhow::anyhow!("bad rational {s:?}"))
}

fn load_config(path: &Path) -> anyhow::Result<CoveringConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_config(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// The payload as JSON, for callers that only want the data.
pub fn payload_of(outcome: &Outcome) -> Option<Value> {
    let v: Value = serde_json::from_str(&outcome.stdout).ok()?;
    v.get("payload").cloned()
}
