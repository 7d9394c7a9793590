//! The `arbor` command line: argument parsing, dispatch and run manifests.
//!
//! Results go to `--out` or stdout; one manifest per run goes to
//! `--manifest` or, as a single JSON line, to stderr. Exit codes: `0` all
//! checks pass, `1` some verification failed, `2` malformed input or usage.

mod commands;

pub use commands::{mb_seeds, MAX_ENUMERATE_VERTICES};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "arbor", version, about = "Exact and numerical tools for positive arboreal skeleta")]
pub struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Write the run manifest here instead of stderr.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    /// Machine-readable JSON output (the default for every subcommand except `front render`).
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Signed rooted trees and their orientation structures.
    #[command(subcommand)]
    Trees(TreesCmd),
    /// Positivity of Lagrangian planes.
    #[command(subcommand)]
    Pos(PosCmd),
    /// Building probes and positive distributions.
    #[command(subcommand)]
    Building(BuildingCmd),
    /// Model fronts as SVG or JSON.
    #[command(subcommand)]
    Front(FrontCmd),
    /// Morse-Bott Liouville dynamics.
    #[command(subcommand)]
    Flow(FlowCmd),
    /// Earthquake isotopies.
    #[command(subcommand)]
    Quake(QuakeCmd),
}

#[derive(Debug, Subcommand)]
pub enum TreesCmd {
    /// All signed rooted trees up to isomorphism.
    Enumerate {
        #[arg(long)]
        max_vertices: usize,
        /// Plain-text table instead of JSON.
        #[arg(long, conflicts_with = "json")]
        table: bool,
    },
    /// Orientation-structure counts for a tree file.
    Orient { file: String },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Dir {
    Succ,
    Prec,
}

#[derive(Debug, Subcommand)]
pub enum PosCmd {
    /// Decide `L ≻_ν τ`, `L ≺_ν τ` or neither.
    Compare {
        /// Space JSON (file path or inline).
        #[arg(long)]
        space: Option<String>,
        #[arg(long = "L", alias = "l")]
        l: String,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        nu: String,
    },
    /// Check cyclic order of a tuple of planes.
    Cycle {
        #[arg(long)]
        tuple: String,
        #[arg(long, value_enum)]
        dir: Dir,
    },
}

#[derive(Debug, Subcommand)]
pub enum BuildingCmd {
    /// Verify every probe of a building file.
    Verify {
        file: String,
        /// Also construct and verify a positive distribution.
        #[arg(long)]
        find_distribution: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum FrontCmd {
    Render {
        /// One of a2, a2_times_interval, a3, ridge1, ridge2.
        #[arg(long)]
        model: String,
        /// Coorientation flip bits.
        #[arg(long, default_value_t = 0)]
        orientation: u32,
        #[arg(long, default_value_t = 65)]
        samples: usize,
        #[arg(long, default_value_t = 400.0)]
        size: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum FlowCmd {
    /// Lyapunov check, skeleton estimate and sample trajectories.
    Mb(MbArgs),
}

#[derive(Debug, Args)]
pub struct MbArgs {
    /// Factor indices, e.g. `1` or `1,0` for a product.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub index: Vec<u8>,
    #[arg(long, default_value_t = 0.2)]
    pub eps: f64,
    /// Grid size `NQxNP` per factor.
    #[arg(long, default_value = "200x200")]
    pub grid: String,
    /// Half-width of the square window per factor.
    #[arg(long, default_value_t = 1.0)]
    pub window: f64,
    /// Band excluded around the critical set.
    #[arg(long, default_value_t = 1e-3)]
    pub band: f64,
    #[arg(long, default_value_t = 20.0)]
    pub horizon: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    /// Seeds per side of the seed grid on `[0, 1] × [-1, 1]`.
    #[arg(long, default_value_t = 10)]
    pub seeds: usize,
}

#[derive(Debug, Subcommand)]
pub enum QuakeCmd {
    /// Sections, tectonic jump checks and an optional transversality scan.
    Run(QuakeArgs),
}

#[derive(Debug, Args)]
pub struct QuakeArgs {
    #[arg(long)]
    pub spec: String,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Lagrangian field JSON, e.g. `{"shear":{"kappa":1}}`.
    #[arg(long)]
    pub scan_eta: Option<String>,
    /// Scan points per axis.
    #[arg(long, default_value_t = 201)]
    pub scan_points: usize,
    /// Samples per fault for the jump check.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Also write an SVG of the section and faults.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

/// One record per run. `wall_time_ms` is not part of any digest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub subcommand: String,
    pub version: String,
    /// SHA-256 of each input's bytes, keyed by argument name.
    pub input_digests: BTreeMap<String, String>,
    pub exit_code: i32,
    pub result_digest: String,
    pub wall_time_ms: f64,
}

/// Everything a run produced, before any of it is written out.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    /// The result document (JSON, SVG or a table).
    pub result: Vec<u8>,
    /// Extra files to write, such as an SVG beside a JSON report.
    pub side_files: Vec<(PathBuf, Vec<u8>)>,
    pub diagnostics: String,
    pub manifest: RunManifest,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Inputs may be file paths or inline JSON.
pub(crate) struct Inputs {
    digests: BTreeMap<String, String>,
}

impl Inputs {
    fn new() -> Self {
        Inputs { digests: BTreeMap::new() }
    }

    pub(crate) fn read(&mut self, name: &str, arg: &str) -> Result<String, Failure> {
        let trimmed = arg.trim_start();
        let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
            arg.to_string()
        } else {
            std::fs::read_to_string(arg).map_err(|e| Failure::malformed(format!("{name}: cannot read {arg:?}: {e}")))?
        };
        self.digests.insert(name.to_string(), sha256_hex(text.as_bytes()));
        Ok(text)
    }
}

/// A run that ends early with an exit code and message.
#[derive(Debug)]
pub(crate) struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    pub(crate) fn malformed(message: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_MALFORMED, message: message.to_string() }
    }
}

/// A successful dispatch: result bytes, exit code and side files.
pub(crate) struct Produced {
    pub code: i32,
    pub result: Vec<u8>,
    pub side_files: Vec<(PathBuf, Vec<u8>)>,
}

impl Produced {
    pub(crate) fn json<T: Serialize>(value: &T, ok: bool) -> Self {
        let mut result = serde_json::to_vec_pretty(value).expect("results serialize");
        result.push(b'\n');
        Produced { code: if ok { EXIT_OK } else { EXIT_FAILED }, result, side_files: Vec::new() }
    }
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Trees(TreesCmd::Enumerate { .. }) => "trees enumerate",
        Command::Trees(TreesCmd::Orient { .. }) => "trees orient",
        Command::Pos(PosCmd::Compare { .. }) => "pos compare",
        Command::Pos(PosCmd::Cycle { .. }) => "pos cycle",
        Command::Building(BuildingCmd::Verify { .. }) => "building verify",
        Command::Front(FrontCmd::Render { .. }) => "front render",
        Command::Flow(FlowCmd::Mb(_)) => "flow mb",
        Command::Quake(QuakeCmd::Run(_)) => "quake run",
    }
}

fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var("ARBOR_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

/// Parses and runs without touching the filesystem except to read inputs.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let start = Instant::now();
    let version = env!("CARGO_PKG_VERSION").to_string();
    let finish = |subcommand: String, code: i32, result: Vec<u8>, side_files, diagnostics: String, inputs: BTreeMap<String, String>| {
        let manifest = RunManifest {
            schema_version: crate::io::SCHEMA_VERSION,
            subcommand,
            version: version.clone(),
            input_digests: inputs,
            exit_code: code,
            result_digest: sha256_hex(&result),
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        };
        Outcome { code, result, side_files, diagnostics, manifest }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                finish("help".into(), code, text.into_bytes(), Vec::new(), String::new(), BTreeMap::new())
            } else {
                finish("usage".into(), code, Vec::new(), Vec::new(), text, BTreeMap::new())
            };
        }
    };
    let name = subcommand_name(&cli.command).to_string();
    let mut inputs = Inputs::new();
    let produced = thread_pool().install(|| commands::dispatch(&cli, &mut inputs));
    match produced {
        Ok(p) => finish(name, p.code, p.result, p.side_files, String::new(), inputs.digests),
        Err(f) => finish(name, f.code, Vec::new(), Vec::new(), format!("error: {}\n", f.message), inputs.digests),
    }
}

/// Runs and performs all output: result, side files, manifest.
pub fn main_with_args<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<S> = argv.into_iter().collect();
    let parsed = Cli::try_parse_from(argv.clone()).ok();
    let outcome = run(argv);
    let out = parsed.as_ref().and_then(|c| c.out.clone());
    let manifest_path = parsed.as_ref().and_then(|c| c.manifest.clone());
    let mut code = outcome.code;
    let write = |path: &PathBuf, bytes: &[u8]| std::fs::write(path, bytes).map_err(|e| format!("cannot write {}: {e}", path.display()));
    let mut errors = Vec::new();
    match &out {
        Some(path) if !outcome.result.is_empty() => {
            if let Err(e) = write(path, &outcome.result) {
                errors.push(e);
            }
        }
        _ => {
            use std::io::Write;
            let _ = std::io::stdout().write_all(&outcome.result);
        }
    }
    for (path, bytes) in &outcome.side_files {
        if let Err(e) = write(path, bytes) {
            errors.push(e);
        }
    }
    eprint!("{}", outcome.diagnostics);
    let manifest = serde_json::to_string(&outcome.manifest).expect("manifest serializes");
    match manifest_path {
        Some(p) => {
            if let Err(e) = write(&p, manifest.as_bytes()) {
                errors.push(e);
            }
        }
        None if parsed.is_some() => eprintln!("{manifest}"),
        None => {}
    }
    for e in &errors {
        eprintln!("error: {e}");
    }
    if !errors.is_empty() && code == EXIT_OK {
        code = EXIT_MALFORMED;
    }
    code
}
