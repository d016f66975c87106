//! `jobsphere` command line: every pipeline without the service, plus
//! `serve` to start it.

pub mod commands;
pub mod config;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use chrono::{DateTime, Utc};
use clap::{Parser, Subcommand};
use thiserror::Error;

pub use config::{CliConfig, Overrides};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable input files, bad config.
    #[error("{0}")]
    Usage(String),
    /// The module rejected the input or failed.
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn usage(flag: &str, msg: impl std::fmt::Display) -> Self {
        CliError::Usage(format!("{flag}: {msg}"))
    }

    pub fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain(_) => "domain",
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Domain(format!("{e:#}"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "jobsphere", version, about = "Career-copilot pipelines: ingest, index, query, recommend, parse, testgen, serve")]
pub struct Cli {
    /// TOML config file; flags win over it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Data directory (default: $DATA_DIR or ./data).
    #[arg(long, global = true, value_name = "DIR")]
    pub data_dir: Option<PathBuf>,
    /// Ranking weights JSON (default: <data-dir>/rank_weights.json).
    #[arg(long, global = true, value_name = "FILE")]
    pub weights: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Pin the clock, RFC 3339.
    #[arg(long, global = true, value_name = "TIME")]
    pub now: Option<DateTime<Utc>>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Upsert every *.json source document under a directory.
    Ingest {
        #[arg(long, value_name = "DIR")]
        source: PathBuf,
        /// Wait the 2-10 s politeness delay between fetches.
        #[arg(long)]
        polite: bool,
    },
    /// Build or inspect the knowledge index.
    Index {
        #[command(subcommand)]
        action: IndexAction,
    },
    /// Grounded answer with citations.
    Query {
        text: String,
        #[arg(long, default_value = "auto", value_parser = ["auto", "en", "hi", "pa"])]
        lang: String,
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    /// Top jobs for a profile JSON file.
    Recommend {
        #[arg(long, value_name = "FILE")]
        profile: PathBuf,
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[arg(long)]
        explain: bool,
    },
    /// Resume tools.
    Resume {
        #[command(subcommand)]
        action: ResumeAction,
    },
    /// Assemble a mock test from a blueprint JSON file.
    Testgen {
        #[arg(long, value_name = "FILE")]
        blueprint: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Include keys and explanations.
        #[arg(long)]
        answer_key: bool,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long)]
        port: Option<u16>,
        #[arg(long, value_name = "DIR")]
        static_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum IndexAction {
    /// Rebuild from the bundled corpus plus the ingested record store.
    Build {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        ef_construction: Option<usize>,
        #[arg(long)]
        ef_search: Option<usize>,
    },
    Stats,
}

#[derive(Debug, Subcommand)]
pub enum ResumeAction {
    Parse { file: PathBuf },
}

/// What a command produced: the JSON value and its table rendering.
#[derive(Debug)]
pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
}

impl Cli {
    fn overrides(&self) -> Overrides {
        let mut o = Overrides {
            data_dir: self.data_dir.clone(),
            weights: self.weights.clone(),
            ..Default::default()
        };
        match &self.command {
            Command::Index {
                action: IndexAction::Build { m, ef_construction, ef_search },
            } => {
                o.m = *m;
                o.ef_construction = *ef_construction;
                o.ef_search = *ef_search;
            }
            Command::Testgen { seed, .. } => o.seed = *seed,
            _ => {}
        }
        o
    }
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let cfg = CliConfig::load(cli.config.as_deref(), &cli.overrides())?;
    let clock = commands::clock(cli.now);
    match &cli.command {
        Command::Ingest { source, polite } => commands::ingest(&cfg, clock, source, *polite),
        Command::Index { action: IndexAction::Build { .. } } => commands::index_build(&cfg, clock),
        Command::Index { action: IndexAction::Stats } => commands::index_stats(&cfg),
        Command::Query { text, lang, k } => commands::query(&cfg, clock, text, lang, *k),
        Command::Recommend { profile, top, explain } => commands::recommend(&cfg, clock, profile, *top, *explain),
        Command::Resume { action: ResumeAction::Parse { file } } => commands::resume_parse(clock, file),
        Command::Testgen { blueprint, answer_key, .. } => commands::testgen(&cfg, blueprint, *answer_key),
        Command::Serve { port, static_dir } => {
            if cli.now.is_some() {
                return Err(CliError::usage("--now", "serve always runs on the system clock"));
            }
            commands::serve(&cfg, *port, static_dir.clone())
        }
    }
}

/// Parses `args`, runs, prints, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = if cli.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("json value"))
            } else {
                write!(stdout, "{}", out.text)
            };
            EXIT_OK
        }
        Err(e) => {
            if cli.json {
                eprintln!("{}", serde_json::json!({"error": {"kind": e.kind(), "message": e.to_string()}}));
            } else {
                eprintln!("error: {e}");
            }
            e.exit_code()
        }
    }
}
