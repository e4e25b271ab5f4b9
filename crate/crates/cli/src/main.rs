mod commands;
mod render;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qlidstone::qcore::{parse_rational, rat, QContext};
use serde_json::json;

use render::{Format, PolyBasis};

/// Tables, identity suites, Lidstone expansions, zeros and the q-Guichard solver.
#[derive(Debug, Parser)]
#[command(name = "qlidstone", version)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Config {
    /// Fourth root of q, a rational in (0, 1).
    #[arg(long, global = true, default_value = "1/2")]
    s: String,
    /// q itself; accepted only when it is the fourth power of a rational. Overrides --s.
    #[arg(long, global = true)]
    q: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Highest index computed (n for tables and identities, k for bases).
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    order: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number sequences beta, suslov_B, im_B, suslov_E.
    Numbers {
        #[arg(long, default_value = "beta")]
        kind: String,
    },
    /// Polynomial families suslov_B, new_beta, suslov_E, new_E.
    Polys {
        #[arg(long, default_value = "new_beta")]
        family: String,
        #[arg(long, value_enum, default_value_t = PolyBasis::Monomial)]
        basis: PolyBasis,
    },
    /// Lidstone basis polynomials A, B, M, Mtilde for k = 0..=order.
    LidstoneBasis {
        #[arg(long, default_value = "A")]
        basis: String,
        #[arg(long, value_enum, default_value_t = PolyBasis::Monomial)]
        poly_basis: PolyBasis,
    },
    /// Exact identity suite.
    Identities {
        #[arg(long, conflicts_with = "name")]
        all: bool,
        #[arg(long, required_unless_present = "all")]
        name: Option<String>,
        /// Basis used for polynomial sides of failure records.
        #[arg(long, value_enum, default_value_t = PolyBasis::Monomial)]
        poly_basis: PolyBasis,
    },
    /// Positive zeros of S_q(eta; w), C_q(eta; w) or Sin_q.
    Zeros {
        #[arg(long, default_value = "Sq_eta")]
        kind: String,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Two-point Lidstone expansion of rho:n, mono:n, phi:n:a or stream:@file.
    Expand {
        #[arg(long, default_value = "bernoulli")]
        kind: String,
        #[arg(long = "fn")]
        function: String,
        /// Largest k used.
        #[arg(long = "K", default_value_t = 4)]
        k: usize,
    },
    /// Solve T_p g - g = f for polynomial f.
    Guichard {
        /// Base p; defaults to 1/q.
        #[arg(long)]
        p: Option<String>,
        #[arg(long, default_value = "alsalam_half")]
        preset: String,
        /// Custom delta sequence (comma separated, delta_0 = 1); implies preset custom.
        #[arg(long)]
        delta: Option<String>,
        /// Coefficients of f, lowest first, comma separated.
        #[arg(long, conflicts_with_all = ["gaussian", "growth"])]
        f: Option<String>,
        /// Use f = sum_{n <= order} Q^{n^2} z^n.
        #[arg(long, conflicts_with = "growth")]
        gaussian: Option<String>,
        /// Report the growth ratios |B_n(q)/[n]_q!| (2 xi_1)^n for n <= order instead, with q = 1/p.
        #[arg(long)]
        growth: bool,
    },
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    /// A check ran and did not pass; the report is still written.
    Check,
    /// Bad input or configuration.
    Usage(String),
    Io(io::Error),
}

impl From<qlidstone::Error> for Failure {
    fn from(e: qlidstone::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn context(cfg: &Config) -> Result<QContext, Failure> {
    let ctx = match &cfg.q {
        Some(q) => QContext::from_q(parse_rational(q)?)?,
        None => QContext::new(parse_rational(&cfg.s)?)?,
    };
    Ok(ctx)
}

fn init_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("QLIDSTONE_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| Failure::Usage(format!("QLIDSTONE_THREADS = `{v}` is not a positive integer")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    init_threads()?;
    let cfg = &cli.config;
    let ctx = context(cfg)?;
    let order = cfg.order as usize;
    let exact = cfg.mode == Mode::Exact;
    let (report, ok) = match &cli.command {
        Command::Numbers { kind } => (commands::numbers(&ctx, kind, order, exact)?, true),
        Command::Polys { family, basis } => (commands::polys(&ctx, family, order, *basis, exact)?, true),
        Command::LidstoneBasis { basis, poly_basis } => {
            (commands::lidstone_basis(&ctx, basis, order, *poly_basis, exact)?, true)
        }
        Command::Identities { all, name, poly_basis } => {
            commands::identities(&ctx, if *all { None } else { name.as_deref() }, order, *poly_basis)?
        }
        Command::Zeros { kind, count } => (commands::zeros(&ctx, kind, *count)?, true),
        Command::Expand { kind, function, k } => (commands::expand(&ctx, kind, function, *k, exact)?, true),
        Command::Guichard { p, preset, delta, f, gaussian, growth } => {
            let p = match p {
                Some(p) => parse_rational(p)?,
                None => rat(1, 1) / ctx.q(),
            };
            if *growth {
                (commands::growth(&(rat(1, 1) / &p), order)?, true)
            } else {
                let opts = commands::GuichardArgs { p, preset, delta: delta.as_deref(), f: f.as_deref(), gaussian: gaussian.as_deref() };
                commands::guichard(&opts, order)?
            }
        }
    };
    let config = json!({
        "s": render::rational(ctx.s()),
        "q": render::rational(ctx.q()),
        "mode": if exact { "exact" } else { "float" },
        "order": order,
    });
    let mut out: Box<dyn Write> = match &cfg.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    report.write(cfg.format, config, &mut out)?;
    out.flush()?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
