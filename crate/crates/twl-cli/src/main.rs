//! `twl`: evaluate words, factor them, and run the randomized audits.
//!
//! Exit codes: 0 when every check passes, 2 when an audit or verification fails,
//! 1 for usage, configuration and parse errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twl::cli::{self, Output, RunConfig};
use twl::symbols::Presentation;
use twl::Result;

#[derive(Parser)]
#[command(name = "twl", version, about = "Twisted Laurent rings, Steinberg groups and symbol audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Ring spec file (TOML), or a bundled spec name: f4, f5, f7, f9, f9-id, hamilton
    #[arg(long)]
    ring: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest |t-exponent| in sampled payloads
    #[arg(long, default_value_t = 3)]
    degree_cap: i64,
    /// Also write the output to this file
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig::new(cli::load_ring(&self.ring)?, self.n)?;
        cfg.samples = self.samples;
        cfg.seed = self.seed;
        cfg.degree_cap = self.degree_cap;
        cfg.output = self.output.clone();
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Matrix of a word; with --steinberg, the image of a Steinberg word
    Eval {
        word: String,
        #[arg(long)]
        steinberg: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Affine Bruhat factorization u·w·v of a word, with a verification bit
    Factor {
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// Monomial part of the factorization only
    Rho {
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// Symbol words: image in the unit group, or kernel membership
    Symbol {
        #[arg(value_enum)]
        action: SymbolAction,
        word: String,
        #[arg(long, value_enum, default_value_t = Kind::P)]
        kind: Kind,
        #[command(flatten)]
        common: Common,
    },
    /// Kernel membership plus tame value of a symbol word
    K2Witness {
        word: String,
        #[arg(long, value_enum, default_value_t = Kind::P)]
        kind: Kind,
        #[command(flatten)]
        common: Common,
    },
    /// R, R1..R6, ST, T, TT, a Steinberg family, P, Q, all-symbols, a symbol family, K, corpus, rho
    Audit {
        which: String,
        /// Longest word in the corpus audit
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Checks on the permutation-group construction of the central extension
    Extension {
        #[arg(value_enum)]
        action: ExtensionAction,
        /// commute, case3, transitive, central, lemmas, compat or all
        #[arg(long, default_value = "all")]
        family: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SymbolAction {
    Eval,
    Witness,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtensionAction {
    Check,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    P,
    Q,
}

impl From<Kind> for Presentation {
    fn from(k: Kind) -> Presentation {
        match k {
            Kind::P => Presentation::P,
            Kind::Q => Presentation::Q,
        }
    }
}

fn run(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Eval { word, steinberg, common } => cli::eval(&common.config()?, word, *steinberg),
        Command::Factor { word, common } => cli::factor(&common.config()?, word),
        Command::Rho { word, common } => cli::rho(&common.config()?, word),
        Command::Symbol { action, word, kind, common } => {
            let ring = cli::load_ring(&common.ring)?;
            match action {
                SymbolAction::Eval => cli::symbol_eval(&ring, (*kind).into(), word),
                SymbolAction::Witness => cli::symbol_witness(&ring, (*kind).into(), word),
            }
        }
        Command::K2Witness { word, kind, common } => cli::k2_witness(&cli::load_ring(&common.ring)?, (*kind).into(), word),
        Command::Audit { which, max_len, common } => {
            Ok(cli::audit(which, *max_len, &common.config()?.audit_config())?.into())
        }
        Command::Extension { action: ExtensionAction::Check, family, common } => {
            cli::extension_check(&common.config()?, family)
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Eval { common, .. }
        | Command::Factor { common, .. }
        | Command::Rho { common, .. }
        | Command::Symbol { common, .. }
        | Command::K2Witness { common, .. }
        | Command::Audit { common, .. }
        | Command::Extension { common, .. } => common,
    }
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let start = Instant::now();
    let result = run(&parsed.command);
    match &result {
        Ok(out) => {
            print!("{}", out.text);
            if let Some(path) = &common(&parsed.command).output {
                if let Err(e) = std::fs::write(path, &out.text) {
                    eprintln!("twl: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
        }
        Err(e) => eprintln!("twl: {e}"),
    }
    eprintln!("elapsed: {:.2?}", start.elapsed());
    ExitCode::from(cli::exit_code(&result))
}
