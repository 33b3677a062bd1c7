use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lmov_cli::commands::{self, QStyle, Report};
use lmov_cli::range::IntRange;
use lmov_cli::suites::{self, Scale, Status};
use lmov_cli::CliError;
use lmov_core::Partition;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Exact LMOV/BPS invariants of the framed unknot, GW/DT factorizations and
/// twist-knot extremal invariants.
#[derive(Debug, Parser)]
#[command(name = "lmov", version)]
struct Cli {
    /// Output format for tables.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, env = "LMOV_THREADS", default_value_t = 0, global = true)]
    threads: usize,
    /// Seed for randomly sampled property checks.
    #[arg(long, default_value_t = 0x5eed, global = true)]
    seed: u64,
    /// Write Q as a half-integer string ("3/2") instead of the doubled integer two_q.
    #[arg(long, global = true)]
    half_q: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Disc invariants n_{m,l}(tau).
    Disc {
        #[arg(long, allow_hyphen_values = true)]
        tau: IntRange,
        #[arg(long, default_value_t = 10)]
        max_m: u32,
    },
    /// Annulus invariants n_{(m1,m2),l}(tau) with m1 + m2 <= max-m.
    Annulus {
        #[arg(long, allow_hyphen_values = true)]
        tau: IntRange,
        #[arg(long, default_value_t = 8)]
        max_m: u32,
    },
    /// Genus-zero invariants with three or more holes, |mu| <= max-m.
    Multihole {
        #[arg(long, allow_hyphen_values = true)]
        tau: IntRange,
        #[arg(long, default_value_t = 8)]
        max_m: u32,
    },
    /// All-genus one-hole invariants n_{m,g,Q}(tau), or a general partition with --mu.
    Onehole {
        #[arg(long, allow_hyphen_values = true)]
        tau: IntRange,
        #[arg(long, default_value_t = 4)]
        max_m: u32,
        /// Comma-separated parts, e.g. 2,2,1.
        #[arg(long)]
        mu: Option<String>,
    },
    /// Ooguri-Vafa invariants N_{m,k}(tau).
    Ov {
        #[arg(long, allow_hyphen_values = true)]
        tau: IntRange,
        #[arg(long, default_value_t = 6)]
        max_m: u32,
    },
    /// DT invariants c_{n,k} of the m-loop quiver.
    Dt {
        #[arg(long)]
        loops: IntRange,
        #[arg(long, default_value_t = 6)]
        order: u32,
    },
    /// Checks Z_tau(q, x) = P_{-tau}(q, (-1)^(tau-1) x q^(1/2)) for tau <= -1.
    GwdtCheck {
        #[arg(long, allow_hyphen_values = true)]
        tau: IntRange,
        #[arg(long, default_value_t = 12)]
        order: u32,
    },
    /// Extremal BPS invariants b^-, b^+ of twist knots.
    Twist {
        #[arg(long, allow_hyphen_values = true)]
        p: IntRange,
        #[arg(long, default_value_t = 10)]
        max_r: u32,
    },
    /// Runs every verification suite.
    VerifyAll {
        /// Reduced bounds.
        #[arg(long)]
        quick: bool,
    },
}

fn parse_mu(s: &str) -> Result<Partition, CliError> {
    let parts = s
        .split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("malformed partition {s:?}")))?;
    if parts.contains(&0) || parts.is_empty() {
        return Err(CliError::Usage(format!("partition parts must be positive: {s:?}")));
    }
    Ok(Partition::new(parts)?)
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn render(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv()?,
    };
    emit(cli, &text)
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let q = if cli.half_q { QStyle::Half } else { QStyle::Doubled };
    let report = match &cli.command {
        Command::Disc { tau, max_m } => commands::disc(*tau, *max_m)?,
        Command::Annulus { tau, max_m } => commands::annulus(*tau, *max_m)?,
        Command::Multihole { tau, max_m } => commands::multihole(*tau, *max_m)?,
        Command::Onehole { tau, max_m, mu } => match mu {
            Some(s) => commands::onehole_general(*tau, &parse_mu(s)?, q)?,
            None => commands::onehole(*tau, *max_m, q)?,
        },
        Command::Ov { tau, max_m } => commands::ov(*tau, *max_m)?,
        Command::Dt { loops, order } => commands::dt(*loops, *order)?,
        Command::Twist { p, max_r } => commands::twist(*p, *max_r)?,
        Command::GwdtCheck { tau, order } => {
            let (ok, line) = commands::gwdt(*tau, *order)?;
            emit(cli, &format!("{line}\n"))?;
            return Ok(if ok { 0 } else { 2 });
        }
        Command::VerifyAll { quick } => {
            let scale = if *quick { Scale::quick() } else { Scale::full() };
            let outcomes = suites::all(&scale, cli.seed);
            let text: String = outcomes.iter().map(|o| o.line() + "\n").collect();
            emit(cli, &text)?;
            for o in &outcomes {
                eprintln!("[{:>2}] {:.1}s", o.id, o.seconds);
            }
            let broken = outcomes
                .iter()
                .any(|o| matches!(o.status, Status::Fail | Status::Violation));
            return Ok(if broken { 2 } else { 0 });
        }
    };
    render(cli, &report)?;
    Ok(0)
}

fn main() -> ExitCode {
    // clap exits with 2 on bad arguments; 2 is reserved for theorem violations here
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("lmov: cannot configure thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("lmov: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
