mod commands;
mod input;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vizing_core::error::Error;
use vizing_core::graph::DEFAULT_MAX_VERTICES;

/// Hard ceiling for --max-vertices even with --allow-large.
const ABSOLUTE_MAX_VERTICES: usize = 1 << 16;

#[derive(Parser)]
#[command(name = "vizing", version, about = "Exact domination checks for Cartesian products and regular bipartite graphs")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Opts {
    /// Report format
    #[arg(long, global = true, env = "VIZING_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Graph file format; `auto` guesses from the contents
    #[arg(long, global = true, env = "VIZING_INPUT_FORMAT", value_enum, default_value_t = InputFormat::Auto)]
    pub input_format: InputFormat,
    /// Persistent gamma cache file
    #[arg(long, global = true, env = "VIZING_CACHE")]
    pub cache: Option<PathBuf>,
    /// Worker threads for scans
    #[arg(long, global = true, env = "VIZING_JOBS")]
    pub jobs: Option<usize>,
    /// Largest graph (or product) the tool will build
    #[arg(long, global = true, env = "VIZING_MAX_VERTICES", default_value_t = DEFAULT_MAX_VERTICES)]
    pub max_vertices: usize,
    /// Lift the default size caps (n = 8 scans, --max-vertices above the default)
    #[arg(long, global = true, env = "VIZING_ALLOW_LARGE")]
    pub allow_large: bool,
    /// Print published reference values alongside computed ones
    #[arg(long, global = true, env = "VIZING_PAPER_TABLE")]
    pub paper_table: bool,
    /// Write the report here instead of stdout
    #[arg(long, short, global = true, env = "VIZING_OUTPUT")]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Graph6,
    EdgeList,
    Matrix,
}

#[derive(Subcommand)]
enum Command {
    /// Domination number of one graph, with a minimum dominating set
    Gamma {
        /// graph6, edge list or 0/1 biadjacency matrix ("-" for stdin)
        graph: PathBuf,
    },
    /// Vizing's inequality for G□H plus every applicable criterion
    CheckVizing { g: PathBuf, h: PathBuf },
    /// All k-regular n×n biadjacency classes, as JSON lines
    Scan {
        n: usize,
        k: usize,
        /// Skip classes whose key already appears in this JSON-lines file
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Also identify a matrix with its transpose
        #[arg(long)]
        transpose: bool,
    },
    /// N(k) for 3 ≤ k ≤ kmax
    Thresholds {
        #[arg(long, default_value_t = 12)]
        kmax: usize,
    },
    /// Leaf-attachment trace toward the imbalance regime
    Transform {
        /// bipartite graph G
        g: PathBuf,
        /// domination density of H as p/q (taken from --h when omitted)
        #[arg(long)]
        rho: Option<String>,
        /// maximum degree of H (taken from --h when omitted)
        #[arg(long)]
        delta_h: Option<usize>,
        /// graph H; enables the product checks
        #[arg(long)]
        h: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        max_rounds: usize,
    },
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Capacity(String),
    Finding(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => Failure::Capacity(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Capacity(m) => write!(f, "capacity: {m}"),
            Failure::Finding(m) => write!(f, "finding: {m}"),
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Capacity(_) => 3,
            Failure::Finding(_) => 4,
        }
    }
}

fn check_caps(opts: &Opts) -> Result<(), Failure> {
    let limit = if opts.allow_large { ABSOLUTE_MAX_VERTICES } else { DEFAULT_MAX_VERTICES };
    if opts.max_vertices > limit {
        return Err(Failure::Capacity(format!(
            "--max-vertices {} exceeds {limit}{}",
            opts.max_vertices,
            if opts.allow_large { "" } else { " (pass --allow-large)" }
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let opts = cli.opts;
    check_caps(&opts)?;
    if let Some(jobs) = opts.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Failure::Input(format!("thread pool: {e}")))?;
    }
    let mut out = output::Emitter::open(&opts)?;
    let result = match cli.command {
        Command::Gamma { graph } => commands::gamma(&opts, &mut out, &graph),
        Command::CheckVizing { g, h } => commands::check_vizing(&opts, &mut out, &g, &h),
        Command::Scan { n, k, resume, transpose } => {
            commands::scan(&opts, &mut out, n, k, resume.as_deref(), transpose)
        }
        Command::Thresholds { kmax } => commands::thresholds(&opts, &mut out, kmax),
        Command::Transform {
            g,
            rho,
            delta_h,
            h,
            max_rounds,
        } => commands::transform(&opts, &mut out, &g, rho.as_deref(), delta_h, h.as_deref(), max_rounds),
    };
    out.finish()?;
    result
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("vizing: {f}");
            ExitCode::from(f.code())
        }
    }
}
