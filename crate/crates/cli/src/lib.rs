//! `vbranch` command-line front end: argument parsing, config files, result
//! envelopes and the on-disk cache.

pub mod cache;
pub mod commands;
pub mod config;
pub mod envelope;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use vbranch_core::Exec;

use cache::{Cache, Lookup};
use config::{parse_config_file, CommandKind, Format, RawOptions, RunConfig, UsageError};
use envelope::ResultEnvelope;

#[derive(Parser, Debug)]
#[command(name = "vbranch", version, about = "Exact branching laws of generalized Verma modules for symmetric pairs")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Result cache directory.
    #[arg(long, global = true, env = "VBRANCH_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// `key = value` file supplying defaults for any option.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for randomized cross-checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Report wall-clock time.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Disable the thread pool.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Write the result to this file (atomically) instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Target {
    /// Catalog pair id, e.g. sl_s_glgl:p=2,q=2.
    #[arg(long)]
    pub pair: Option<String>,
    /// borel | full | heisenberg | siegel | maximal:k | subset:i,j | h:a,b,...
    #[arg(long)]
    pub parabolic: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List catalog pairs up to a rank.
    Pairs {
        #[arg(long)]
        max_rank: Option<usize>,
    },
    /// Compatibility, closedness and GK dimension of one parabolic.
    Analyze {
        #[command(flatten)]
        target: Target,
    },
    /// Closed-orbit census over the Weyl translates of a parabolic.
    Census {
        #[command(flatten)]
        target: Target,
    },
    /// Branching multiplicities up to a degree bound.
    Branch {
        #[command(flatten)]
        target: Target,
        /// generic | generic:a,b,... | a,b,...
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Character identity check for a pair, or a closed-form law (--law).
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        level: Option<usize>,
        /// AA | BD | DB
        #[arg(long)]
        law: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Pairs satisfying dim g − dim g^τ ≤ rank g + rank g^τ.
    MfScan {
        #[arg(long)]
        max_rank: Option<usize>,
    },
}

impl Cli {
    fn options(&self) -> (CommandKind, RawOptions) {
        let mut o = RawOptions {
            seed: self.seed,
            format: self.format,
            cache_dir: self.cache_dir.as_ref().map(|p| p.display().to_string()),
            ..Default::default()
        };
        let target = |o: &mut RawOptions, t: &Target| {
            o.pair = t.pair.clone();
            o.parabolic = t.parabolic.clone();
        };
        let kind = match &self.command {
            Command::Pairs { max_rank } => {
                o.max_rank = *max_rank;
                CommandKind::Pairs
            }
            Command::Analyze { target: t } => {
                target(&mut o, t);
                CommandKind::Analyze
            }
            Command::Census { target: t } => {
                target(&mut o, t);
                CommandKind::Census
            }
            Command::Branch { target: t, lambda, degree } => {
                target(&mut o, t);
                o.lambda = lambda.clone();
                o.degree = *degree;
                CommandKind::Branch
            }
            Command::Verify { target: t, lambda, level, law, n, l, degree } => {
                target(&mut o, t);
                o.lambda = lambda.clone();
                o.level = *level;
                o.law = law.clone();
                o.n = *n;
                o.l = *l;
                o.degree = *degree;
                CommandKind::Verify
            }
            Command::MfScan { max_rank } => {
                o.max_rank = *max_rank;
                CommandKind::MfScan
            }
        };
        (kind, o)
    }
}

/// 2 for caller errors (bad input, incompatible triple), 1 otherwise.
pub fn error_exit_code(e: &anyhow::Error) -> i32 {
    if e.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match e.downcast_ref::<vbranch_core::Error>() {
        Some(c) if c.is_precondition() => 2,
        _ => 1,
    }
}

/// Resolved run: what to compute and how to present it.
pub struct Plan {
    pub config: RunConfig,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
}

pub fn plan(cli: &Cli) -> anyhow::Result<Plan> {
    let (kind, flags) = cli.options();
    let merged = match &cli.config {
        Some(path) => flags.or(parse_config_file(path)?),
        None => flags,
    };
    Ok(Plan {
        config: RunConfig::resolve(kind, &merged)?,
        format: merged.format.unwrap_or_default(),
        cache_dir: merged.cache_dir.map(PathBuf::from),
    })
}

/// Cache lookup, execution and storage. Timing is attached after caching so
/// cached envelopes stay byte-identical.
pub fn produce(plan: &Plan, exec: Exec, timing: bool) -> anyhow::Result<ResultEnvelope> {
    let start = std::time::Instant::now();
    let cache = plan.cache_dir.as_ref().map(Cache::new);
    let cached = match &cache {
        Some(c) => match c.lookup(&plan.config) {
            Lookup::Hit(env) => Some(*env),
            Lookup::Miss => None,
        },
        None => None,
    };
    let mut env = match cached {
        Some(env) => env,
        None => {
            let env = commands::execute(&plan.config, exec)?;
            if let Some(c) = &cache {
                if let Err(e) = c.store(&env) {
                    log::warn!("cache store failed: {e}");
                }
            }
            env
        }
    };
    if timing {
        env.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(env)
}

pub fn render(env: &ResultEnvelope, format: Format) -> String {
    match format {
        Format::Json => env.to_json(),
        Format::Text => commands::render_text(env),
    }
}

/// Full CLI run; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = plan(cli).and_then(|p| {
        let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
        let env = produce(&p, exec, cli.timing)?;
        Ok((render(&env, p.format), commands::exit_code(&env)))
    });
    match result {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(path) => cache::write_atomic(path, text.as_bytes()),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return 1;
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}
