use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use greenlimit::analysis::{preset_config, run_analyze, run_search_stabilization, AnalysisConfig, OutputMode};
use greenlimit::family::membership_in_limit;
use greenlimit::ideal::Ideal;
use greenlimit::multiplicity::{hs_multiplicity_with, MultiplicityOptions};
use greenlimit::poly::parse_poly;
use serde::Deserialize;

/// Environment variable holding the worker thread count.
const THREADS_VAR: &str = "GREENLIMIT_THREADS";

#[derive(Parser)]
#[command(name = "greenlimit", version, about = "Limits of Green functions of colliding points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the family described by a JSON config.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Analyze a built-in example family.
    Preset {
        name: String,
        #[arg(long)]
        p_max: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Length and multiplicity of the ideal in a JSON generator file.
    Mult {
        #[arg(long)]
        generators: PathBuf,
    },
    /// Whether a polynomial lies in the limit of the p-th powers.
    Member {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        p: u32,
    },
    /// First p with e(I_(p)) = p^n N.
    Search {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        p_max: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorFile {
    variables: usize,
    generators: Vec<String>,
}

enum Failure {
    User(String),
    Internal(String),
}

impl From<greenlimit::Error> for Failure {
    fn from(e: greenlimit::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::User(e.to_string())
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::User(_) => 1,
            Failure::Internal(_) => 2,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::User(format!("{}: {e}", path.display())))
}

fn load_config(path: &Path) -> Result<AnalysisConfig, Failure> {
    AnalysisConfig::from_json(&read(path)?)
        .map_err(|e| Failure::User(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Analyze { config, json } => {
            let cfg = load_config(&config)?;
            let report = run_analyze(&cfg)?;
            Ok(if json || cfg.output == OutputMode::Json {
                report.to_json()
            } else {
                report.to_text()
            })
        }
        Command::Preset { name, p_max, json } => {
            let report = run_analyze(&preset_config(&name, p_max)?)?;
            Ok(if json { report.to_json() } else { report.to_text() })
        }
        Command::Mult { generators } => {
            let text = read(&generators)?;
            let file: GeneratorFile = serde_json::from_str(&text)
                .map_err(|e| Failure::User(format!("{}: {e}", generators.display())))?;
            let gens = file
                .generators
                .iter()
                .map(|g| parse_poly(g, file.variables))
                .collect::<greenlimit::Result<Vec<_>>>()?;
            let ideal = Ideal::new(file.variables, gens)?;
            let r = hs_multiplicity_with(&ideal, &MultiplicityOptions::default())?;
            Ok(format!(
                "length: {}\nmultiplicity: {}\nmethod: {}\ncomplete-intersection: {}\n",
                r.length, r.multiplicity, r.method, r.complete_intersection
            ))
        }
        Command::Member { poly, config, p } => {
            let cfg = load_config(&config)?;
            let (fam, _) = cfg.family()?;
            let f = parse_poly(&poly, cfg.variables)?;
            Ok(format!("{}\n", membership_in_limit(&f, &fam, p)?))
        }
        Command::Search { config, p_max, json } => {
            let mut cfg = load_config(&config)?;
            cfg.p_max = p_max;
            let report = run_search_stabilization(&cfg)?;
            Ok(if json || cfg.output == OutputMode::Json {
                report.to_json()
            } else {
                report.to_text()
            })
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .map_err(|_| Failure::User(format!("{THREADS_VAR} must be a positive integer, got `{value}`")))?;
    if threads == 0 {
        return Err(Failure::User(format!("{THREADS_VAR} must be at least 1")));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match &failure {
                Failure::User(msg) => eprintln!("error: {msg}"),
                Failure::Internal(msg) => eprintln!("internal error: {msg}"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
