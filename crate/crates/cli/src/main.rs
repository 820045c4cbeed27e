use std::io::Read as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use tangle::format::{parse_any, LinkFile};
use tangle::report::{digest, RunReport};
use tangle::suites::{self, SuiteConfig};
use tangle_core::homfly::{homfly_polynomial, substitution_check};
use tangle_core::skein::{invariant_of, Engine};
use tangle_core::Error;

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_EVAL: u8 = 3;

#[derive(Parser)]
#[command(name = "tangle", version, about = "Exact invariants of colored classical and singular links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    StateSum,
    Recursive,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Axioms,
    Relations,
    Moves,
    Oracles,
    TRange,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the invariant of a diagram file (`-` reads stdin).
    Compute {
        file: String,
        #[arg(long, value_enum, default_value = "state-sum")]
        engine: EngineArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// HOMFLY-PT polynomial of a classical diagram, in l and m.
    Homfly {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare the specialized HOMFLY-PT polynomial with the one-color invariant.
    CheckHomfly { file: String },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        max_crossings: usize,
        #[arg(long, env = "TANGLE_SEED", default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Bundled diagrams.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Name, crossings and vertices of every entry.
    List,
}

fn read_input(path: &str) -> Result<(String, LinkFile), ExitCode> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| {
        eprintln!("error: {path}: {e}");
        ExitCode::from(EXIT_INPUT)
    })?;
    let file = parse_any(&text).map_err(|e| {
        eprintln!("error: {path}: {e}");
        ExitCode::from(EXIT_INPUT)
    })?;
    Ok((text, file))
}

fn eval_error(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::EngineDisagreement { .. } => ExitCode::from(EXIT_FAILED),
        _ => ExitCode::from(EXIT_EVAL),
    }
}

fn compute(path: &str, engine: EngineArg, format: Format) -> Result<ExitCode, ExitCode> {
    let (text, file) = read_input(path)?;
    let (engine, names) = match engine {
        EngineArg::StateSum => (Engine::StateSum, vec!["state-sum"]),
        EngineArg::Recursive => (Engine::Recursive, vec!["recursive"]),
        EngineArg::Both => (Engine::Both, vec!["state-sum", "recursive"]),
    };
    let start = Instant::now();
    let value = invariant_of(&file.colored(), engine).map_err(eval_error)?;
    eprintln!("evaluated in {:?}", start.elapsed());
    match format {
        Format::Text => println!("{value}"),
        Format::Json => {
            let mut r = RunReport::new("compute");
            r.input_digest = Some(digest(&text));
            r.engines = names.into_iter().map(String::from).collect();
            r.value = Some(value.to_string());
            println!("{}", r.to_json());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn homfly(path: &str, format: Format) -> Result<ExitCode, ExitCode> {
    let (text, file) = read_input(path)?;
    let p = homfly_polynomial(&file.diagram).map_err(eval_error)?;
    match format {
        Format::Text => println!("{p}"),
        Format::Json => {
            let mut r = RunReport::new("homfly");
            r.input_digest = Some(digest(&text));
            r.value = Some(p.to_string());
            println!("{}", r.to_json());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn check_homfly(path: &str) -> Result<ExitCode, ExitCode> {
    let (_, file) = read_input(path)?;
    if !file.is_single_colored() {
        eprintln!("error: {path}: the comparison needs a single-colored diagram");
        return Err(ExitCode::from(EXIT_INPUT));
    }
    if substitution_check(&file.colored()).map_err(eval_error)? {
        println!("agree");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("disagree");
        Ok(ExitCode::from(EXIT_FAILED))
    }
}

fn verify(suite: Suite, max_crossings: usize, seed: u64, format: Format) -> ExitCode {
    let cfg = SuiteConfig { seed, max_crossings, ..SuiteConfig::default() };
    let start = Instant::now();
    let results = match suite {
        Suite::Axioms => vec![suites::axioms(&cfg)],
        Suite::Relations => vec![suites::relations(&cfg)],
        Suite::Moves => vec![suites::moves(&cfg)],
        Suite::Oracles => suites::oracles(&cfg),
        Suite::TRange => vec![suites::t_range(&cfg)],
        Suite::All => suites::all(&cfg),
    };
    eprintln!("verified in {:?}", start.elapsed());
    let mut r = RunReport::new("verify").with_suites(results);
    r.seed = Some(seed);
    match format {
        Format::Text => print!("{}", r.to_text()),
        Format::Json => println!("{}", r.to_json()),
    }
    if r.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Compute { file, engine, format } => compute(&file, engine, format),
        Command::Homfly { file, format } => homfly(&file, format),
        Command::CheckHomfly { file } => check_homfly(&file),
        Command::Verify { suite, max_crossings, seed, format } => Ok(verify(suite, max_crossings, seed, format)),
        Command::Corpus { action: CorpusAction::List } => {
            for e in tangle::corpus::all() {
                println!("{}\t{}\t{}", e.name, e.crossings(), e.vertices());
            }
            Ok(ExitCode::SUCCESS)
        }
    };
    out.unwrap_or_else(|code| code)
}
