mod cache;
mod commands;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use narayana_core::dyck::Statistic;

use cache::Cache;
use commands::VerifyArgs;
use report::{Output, Verdict};

/// Narayana statistics on Dyck paths, q-Narayana polynomials and the
/// pre-shelling Omega_n.
#[derive(Parser)]
#[command(name = "narayana", version, about)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Directory for cached distribution tables
    #[arg(long, global = true, env = "NARAYANA_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Include wall-clock time in the output
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Narayana numbers N(n, k) for k = 0..n-1 and their sum
    Narayana {
        #[arg(long)]
        n: usize,
    },
    /// The q-Narayana polynomial N_q(n, k)
    Qnarayana {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Route::Closed)]
        route: Route,
    },
    /// Distribution of a statistic over Dyck paths of semilength n
    Dist {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        stat: StatName,
        /// Per-value generating polynomial of the paired co-statistic
        #[arg(long)]
        q: bool,
        /// Reference path W for descents D_W (with --stat des)
        #[arg(long)]
        ref_path: Option<String>,
    },
    /// Verify one of the identities and print a pass/fail report
    Verify {
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long)]
        n: usize,
        /// A vh-word, "random" or "all"
        #[arg(long)]
        ref_path: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random reference paths
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
    /// Hasse diagram of Omega_n
    Omega {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Closed,
    SchurSsyt,
    SchurHook,
    Enumerate,
    All,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Closed => "closed",
            Route::SchurSsyt => "schur-ssyt",
            Route::SchurHook => "schur-hook",
            Route::Enumerate => "enumerate",
            Route::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StatName {
    Des,
    Hp,
    Ea,
    Lnfs,
    Da,
}

impl StatName {
    pub fn statistic(self) -> Statistic {
        match self {
            StatName::Des => Statistic::Des,
            StatName::Hp => Statistic::Hp,
            StatName::Ea => Statistic::Ea,
            StatName::Lnfs => Statistic::Lnfs,
            StatName::Da => Statistic::Da,
        }
    }

    pub fn name(self) -> &'static str {
        self.statistic().name()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    MainTheorem,
    Ssyt,
    Preshelling,
    QIdentity,
    Parth,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::MainTheorem => "main-theorem",
            Check::Ssyt => "ssyt",
            Check::Preshelling => "preshelling",
            Check::QIdentity => "q-identity",
            Check::Parth => "parth",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] narayana_core::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let cache = cli.cache_dir.as_deref().map(Cache::new);
    match &cli.command {
        Command::Narayana { n } => commands::narayana_row(*n),
        Command::Qnarayana { n, k, route } => commands::qnarayana(*n, *k, *route),
        Command::Dist { n, stat, q, ref_path } => commands::dist(*n, *stat, *q, ref_path.as_deref(), cache.as_ref()),
        Command::Verify {
            check,
            n,
            ref_path,
            seed,
            samples,
        } => commands::verify(&VerifyArgs {
            check: *check,
            n: *n,
            ref_path: ref_path.as_deref(),
            seed: *seed,
            samples: *samples,
        }),
        Command::Omega { n } => commands::omega(*n),
    }
}

fn emit(cli: &Cli, out: &Output, out_stream: &mut impl Write) -> Result<(), CliError> {
    match cli.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out_stream, &out.report)?;
            writeln!(out_stream)?;
        }
        Format::Text => {
            out_stream.write_all(out.text.as_bytes())?;
            if let Some(ms) = out.report.timing_ms {
                writeln!(out_stream, "time: {ms:.3} ms")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out_stream);
            for r in &out.table {
                w.write_record(r)?;
            }
            w.flush()?;
        }
        Format::Dot => match &out.dot {
            Some(dot) => out_stream.write_all(dot.as_bytes())?,
            None => return Err(CliError::Usage("--format dot is only available for omega".into())),
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli).and_then(|mut out| {
        if cli.timing {
            out.report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        if cli.format == Format::Dot && out.dot.is_none() {
            return Err(CliError::Usage("--format dot is only available for omega".into()));
        }
        let mut buf = Vec::new();
        emit(&cli, &out, &mut buf)?;
        io::stdout().lock().write_all(&buf)?;
        Ok(out.report.verdict)
    });
    match result {
        Ok(Verdict::Fail) => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
