//! The `nearoct` command: `build`, `verify <target>` and `export <kind> <path>`
//! over a directory of text caches.
//!
//! Exit status is 0 when every suite passes, 1 on a verification failure and
//! 2 on input or environment errors.

pub mod cache;
pub mod manifest;
pub mod pipeline;
pub mod suites;

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use cache::{io_err, Cache};
use manifest::RunManifest;
use pipeline::{compute_valuations, Run, Settings};
use suites::Suite;

pub const MANIFEST_FILE: &str = "manifest.txt";
pub const REPORTS_DIR: &str = "reports";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{stage}: {message}")]
    Stage { stage: &'static str, message: String },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("no cached {0}; run the command that builds it first")]
    MissingCache(String),
    #[error("cache file {} does not match its recorded digest or format", .0.display())]
    CorruptCache(PathBuf),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("thread pool: {0}")]
    Threads(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nearoct", version, about = "Build and verify the G2(4) near octagon and its tower")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Permutation generators, one per line in cycle notation.
    #[arg(long, global = true, env = "NEAROCT_GENERATORS", default_value = "data/g2_4_2_deg416.gens")]
    pub generators: PathBuf,
    #[arg(long, global = true, env = "NEAROCT_CACHE_DIR", default_value = ".nearoct-cache")]
    pub cache_dir: PathBuf,
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, global = true, env = "NEAROCT_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Node budget for each subgeometry search.
    #[arg(long, global = true, env = "NEAROCT_BUDGET", default_value_t = 10_000_000)]
    pub budget: usize,
    /// Seed of the random word stream used to find a central involution.
    #[arg(long, global = true, env = "NEAROCT_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the class, octagon, quads and spread hexagon, and cache them.
    Build,
    /// Run the check suites for one target and write its report.
    Verify { target: Target },
    /// Copy a cached artifact to a path.
    Export { kind: ExportKind, path: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    NearOctagon,
    Suborbits,
    Quads,
    Hexagon,
    Suboctagons,
    Tower,
    Valuations,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Octagon,
    Spread,
    Quads,
    Hexagon,
    Suboctagons,
    Valuations,
    #[value(name = "g2-4-graph")]
    G24Graph,
    SuzukiGraph,
    HallJankoGraph,
    #[value(name = "u3-3-graph")]
    U33Graph,
    CoHeawoodGraph,
    ThinOctagonsHjGraph,
    ThinOctagonsGprimeGraph,
    ThinOctagonsExtendedGraph,
}

impl ExportKind {
    fn file(self) -> String {
        use pipeline::*;
        let graph = |i: usize| graph_file(suites::GRAPH_NAMES[i]);
        match self {
            ExportKind::Octagon => OCTAGON_FILE.into(),
            ExportKind::Spread => SPREAD_FILE.into(),
            ExportKind::Quads => QUADS_FILE.into(),
            ExportKind::Hexagon => HEXAGON_FILE.into(),
            ExportKind::Suboctagons => SUBOCTAGONS_FILE.into(),
            ExportKind::Valuations => VALUATIONS_FILE.into(),
            ExportKind::G24Graph => graph(0),
            ExportKind::SuzukiGraph => graph(1),
            ExportKind::HallJankoGraph => graph(2),
            ExportKind::U33Graph => graph(3),
            ExportKind::CoHeawoodGraph => graph(4),
            ExportKind::ThinOctagonsHjGraph => graph(5),
            ExportKind::ThinOctagonsGprimeGraph => graph(6),
            ExportKind::ThinOctagonsExtendedGraph => graph(7),
        }
    }
}

/// What a successful or failed-verification run leaves behind.
pub struct Outcome {
    pub manifest: RunManifest,
    pub summary: String,
    pub suites: Vec<Suite>,
}

impl Cli {
    fn settings(&self) -> Settings {
        Settings {
            generators: self.generators.clone(),
            seed: self.seed,
            budget: self.budget,
        }
    }

    fn command_line(&self) -> String {
        match &self.command {
            Command::Build => "build".into(),
            Command::Verify { target } => format!("verify {}", target.to_possible_value().expect("named").get_name()),
            Command::Export { kind, path } => format!(
                "export {} {}",
                kind.to_possible_value().expect("named").get_name(),
                path.display()
            ),
        }
    }
}

/// Runs one command inside a pool of the requested size. A verification
/// failure still writes reports and the manifest before returning the error.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| CliError::Threads(e.to_string()))?;
    pool.install(|| run_in_pool(cli))
}

fn run_in_pool(cli: &Cli) -> Result<Outcome, CliError> {
    let settings = cli.settings();
    let mut cache = Cache::open(&cli.cache_dir)?;
    let mut manifest = RunManifest::new(cli.command_line());
    manifest.settings = vec![
        ("seed".into(), settings.seed.to_string()),
        ("budget".into(), settings.budget.to_string()),
    ];
    let (summary, suites) = match &cli.command {
        Command::Build => (build(&settings, &mut cache, &mut manifest)?, Vec::new()),
        Command::Verify { target } => verify(*target, &settings, &mut cache, &mut manifest)?,
        Command::Export { kind, path } => {
            let file = kind.file();
            let text = cache.read(&file)?.ok_or_else(|| CliError::MissingCache(file.clone()))?;
            fs::write(path, &text).map_err(io_err(path))?;
            (format!("wrote {} ({} bytes)", path.display(), text.len()), Vec::new())
        }
    };
    if !matches!(cli.command, Command::Export { .. }) {
        let path = cache.dir().join(MANIFEST_FILE);
        fs::write(&path, manifest.to_text()).map_err(io_err(&path))?;
    }
    let outcome = Outcome {
        manifest,
        summary,
        suites,
    };
    if outcome.manifest.passed() {
        Ok(outcome)
    } else {
        let failed: Vec<&str> = outcome
            .manifest
            .verdicts
            .iter()
            .filter(|v| !v.1)
            .map(|v| v.0.as_str())
            .collect();
        let witness = outcome
            .suites
            .iter()
            .flat_map(|s| &s.reports)
            .find(|r| !r.passed())
            .map(|r| r.to_string())
            .unwrap_or_default();
        Err(CliError::Verification(format!("{}; first failure: {witness}", failed.join(", "))))
    }
}

fn build(settings: &Settings, cache: &mut Cache, manifest: &mut RunManifest) -> Result<String, CliError> {
    let mut run = Run {
        settings,
        cache,
        manifest,
    };
    let base = run.base()?;
    let g = base.oct.geometry();
    Ok(format!(
        "points={} lines={} spread={} quads={} hexagon={}+{}",
        g.n_points(),
        g.n_lines(),
        base.oct.spread_lines().len(),
        base.quads.len(),
        base.hex.geometry().n_points(),
        base.hex.geometry().n_lines()
    ))
}

fn verify(
    target: Target,
    settings: &Settings,
    cache: &mut Cache,
    manifest: &mut RunManifest,
) -> Result<(String, Vec<Suite>), CliError> {
    use Target::*;
    let wants = |t: Target| target == t || target == All;
    let mut run = Run {
        settings,
        cache,
        manifest,
    };
    let base = run.base()?;
    let mut suites = Vec::new();
    if wants(NearOctagon) {
        suites.push(suites::near_octagon(&base));
    }
    if wants(Suborbits) {
        suites.push(suites::suborbits(&base));
    }
    if wants(Quads) {
        suites.push(suites::quads(&base));
    }
    if wants(Hexagon) {
        suites.push(suites::hexagon(&base));
    }
    if wants(Suboctagons) || wants(Tower) || wants(Valuations) {
        let hjs = run.suboctagons(&base)?;
        let needs_thin = wants(Suboctagons) || wants(Tower);
        let thin = if needs_thin {
            Some(suites::thin_data(&base, &hjs, settings.budget)?)
        } else {
            None
        };
        if let (true, Some(thin)) = (wants(Suboctagons), &thin) {
            suites.push(suites::suboctagons(&base, &hjs, thin));
        }
        let cached = if wants(Valuations) { run.cached_valuations()? } else { None };
        // the two remaining stages only read shared data; run them side by side
        let (tower, vals) = rayon::join(
            || match (&thin, wants(Tower)) {
                (Some(thin), true) => suites::tower(&base, &hjs, thin).map(Some),
                _ => Ok(None),
            },
            || {
                if !wants(Valuations) {
                    return Ok(None);
                }
                let fresh = cached.is_none();
                let vals = match cached {
                    Some(v) => v,
                    None => compute_valuations(&hjs[0])?,
                };
                let suite = suites::valuations(&base, &hjs[0], &vals)?;
                Ok::<_, CliError>(Some((vals, fresh, suite)))
            },
        );
        if let Some((suite, exports)) = tower? {
            for (name, text) in &exports {
                run.store_graph(name, text)?;
            }
            suites.push(suite);
        }
        if let Some((vals, fresh, suite)) = vals? {
            if fresh {
                run.store_valuations(&vals)?;
            }
            suites.push(suite);
        }
    }

    let reports = run.cache.dir().join(REPORTS_DIR);
    fs::create_dir_all(&reports).map_err(io_err(&reports))?;
    let mut summary = String::new();
    for s in &suites {
        let path = reports.join(format!("{}.txt", s.target));
        fs::write(&path, s.to_text()).map_err(io_err(&path))?;
        run.manifest.verdicts.push((s.target.to_string(), s.passed()));
        summary.push_str(&format!(
            "{} {} ({})\n",
            s.target,
            if s.passed() { "PASS" } else { "FAIL" },
            path.display()
        ));
    }
    Ok((summary, suites))
}
