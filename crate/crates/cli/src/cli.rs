use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::config::{
    Command, Format, MethodChoice, RunConfig, DEFAULT_CONFIGS, DEFAULT_INSTANCES, DEFAULT_NODES, DEFAULT_PAIRS,
    DEFAULT_PROBES, DEFAULT_SAMPLES, DEFAULT_TRANSFORMS, DEFAULT_TRIPLES, DEFAULT_T_MAX,
};
use crate::exec::Rayon;
use crate::report::write_atomic;
use crate::suites::run_suite;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

#[derive(Parser)]
#[command(name = "wallspace", version)]
#[command(about = "Verify the Crofton formula and the conditionally negative kernel on hyperbolic space")]
#[command(after_help = "Exit status: 0 all checks pass, 1 usage or I/O error, 2 statistical failure.")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Fit F(o, a_t o) = c·t and report c(n)
    EstimateC(Flags),
    /// Linearity, additivity and isometry invariance of the wall measure
    VerifyCrofton(Flags),
    /// Set-level defects, left invariance, embedding identity and unboundedness
    Cnk(Flags),
    /// K(a_t, e) against |t| up to --t-max
    SweepUnbounded(Flags),
}

#[derive(Args)]
struct Flags {
    /// Dimension of hyperbolic space [default: 3 for cnk, 2 otherwise]
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo samples per estimate
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: u64,
    /// Angular quadrature nodes
    #[arg(long, default_value_t = DEFAULT_NODES)]
    nodes: usize,
    /// Comma-separated t values for the linear fit
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    t_grid: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Report path; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Dead zone of the side predicate
    #[arg(long)]
    eps_side: Option<f64>,
    /// Extra radius added to the wall domain
    #[arg(long)]
    r_margin: Option<f64>,
    /// Integration method for the linear fit
    #[arg(long, value_enum, default_value_t = MethodChoice::Auto)]
    method: MethodChoice,
    #[arg(long, default_value_t = DEFAULT_PAIRS)]
    pairs: usize,
    #[arg(long, default_value_t = DEFAULT_TRANSFORMS)]
    transforms: usize,
    /// Additivity instances (verify-crofton) or embedding instances (cnk)
    #[arg(long, default_value_t = DEFAULT_INSTANCES)]
    instances: usize,
    /// Random point configurations for the set-level check
    #[arg(long, default_value_t = DEFAULT_CONFIGS)]
    configs: usize,
    /// Points per configuration [default: random in 2..=64, and 5 for the embedding]
    #[arg(long)]
    points: Option<usize>,
    /// Random sum-zero probes per configuration
    #[arg(long, default_value_t = DEFAULT_PROBES)]
    probes: usize,
    /// Random triples for left invariance
    #[arg(long, default_value_t = DEFAULT_TRIPLES)]
    triples: usize,
    /// Largest t of the unboundedness sweep
    #[arg(long, default_value_t = DEFAULT_T_MAX)]
    t_max: f64,
    /// Worker threads [default: all cores]
    #[arg(long)]
    threads: Option<usize>,
    /// Record the wall-clock duration in the report (reports then differ run to run)
    #[arg(long)]
    embed_duration: bool,
}

fn to_config(command: Command, f: Flags) -> RunConfig {
    let default_n = if command == Command::Cnk { 3 } else { 2 };
    let mut cfg = RunConfig::new(command, f.n.unwrap_or(default_n));
    cfg.seed = f.seed;
    cfg.method = f.method;
    cfg.samples = f.samples;
    cfg.nodes = f.nodes;
    if let Some(t) = f.t_grid {
        cfg.t_grid = t;
    }
    if let Some(e) = f.eps_side {
        cfg.eps_side = e;
    }
    if let Some(r) = f.r_margin {
        cfg.r_margin = r;
    }
    cfg.pairs = f.pairs;
    cfg.transforms = f.transforms;
    cfg.instances = f.instances;
    cfg.configs = f.configs;
    cfg.points = f.points;
    cfg.probes = f.probes;
    cfg.triples = f.triples;
    cfg.t_max = f.t_max;
    cfg.format = f.format;
    cfg.out = f.out;
    cfg.threads = f.threads;
    cfg.embed_duration = f.embed_duration;
    cfg
}

/// Parse `args` (program name first), run, and return the exit status.
/// Reports go to `--out` or `out`; diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let cfg = match cli.command {
        Sub::EstimateC(f) => to_config(Command::EstimateC, f),
        Sub::VerifyCrofton(f) => to_config(Command::VerifyCrofton, f),
        Sub::Cnk(f) => to_config(Command::Cnk, f),
        Sub::SweepUnbounded(f) => to_config(Command::SweepUnbounded, f),
    };
    execute(&cfg, out, err)
}

/// Validate and run a configuration, then emit its report.
pub fn execute(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Err(msg) = cfg.validate() {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_USAGE;
    }
    let exec = match cfg.threads {
        Some(k) => match Rayon::with_threads(k) {
            Ok(exec) => exec,
            Err(e) => {
                let _ = writeln!(err, "error: cannot start {k} threads: {e}");
                return EXIT_USAGE;
            }
        },
        None => Rayon::global(),
    };
    let start = Instant::now();
    let mut report = match run_suite(cfg, &exec) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let elapsed = start.elapsed().as_secs_f64();
    if cfg.embed_duration {
        report.summary.duration_seconds = Some(elapsed);
    }
    let text = match report.render(cfg.format) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot render report: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cfg.out {
        Some(path) => write_atomic(path, text.as_bytes()).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| format!("cannot write report: {e}"))
        }
    };
    if let Err(msg) = written {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_USAGE;
    }
    let s = &report.summary;
    let _ = writeln!(
        err,
        "{}: {} ({} rows, {} failed) in {elapsed:.2} s",
        cfg.command.as_str(),
        if s.pass { "pass" } else { "FAIL" },
        s.rows,
        s.failed_rows
    );
    for w in &s.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    if s.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
