use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bbk_core::verify::{
    descriptor_schema, embedded_descriptor, run_descriptor, run_example, Report, RunConfig, Suite, SystemDescriptor, EXAMPLES,
};
use clap::{Args, Parser, Subcommand};
use serde_json::Value;

/// Exact-rational verification of bulk-boundary BV systems.
#[derive(Parser)]
#[command(name = "bbk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites on a system descriptor.
    Verify {
        /// Path to the system descriptor (JSON).
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        caps: Caps,
    },
    /// Built-in examples.
    Examples {
        #[command(subcommand)]
        command: ExamplesCommand,
    },
    /// Print the JSON schema of system descriptors.
    Schema,
}

#[derive(Subcommand)]
enum ExamplesCommand {
    /// List the registered examples.
    List,
    /// Print the descriptor shipped with an example.
    Show { name: String },
    /// Run an example and emit its report.
    Run {
        name: String,
        #[command(flatten)]
        caps: Caps,
    },
}

#[derive(Args)]
struct Caps {
    /// bv | lagrangian | factorization | p0 | examples | all
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: Suite,
    /// Symmetric-power truncation of observables.
    #[arg(long, default_value_t = 2, value_parser = positive)]
    sym_trunc: usize,
    /// Largest arity of the identities checked.
    #[arg(long, default_value_t = bbk_core::linf::DEFAULT_ARITY_BUDGET, value_parser = positive)]
    arity_budget: usize,
    /// Polynomial-degree cap of interval forms; defaults to the descriptor's.
    #[arg(long, value_parser = positive)]
    poly_cap: Option<usize>,
    /// Largest B-weight computed by the half-plane examples.
    #[arg(long, default_value_t = 1, value_parser = positive)]
    weight_cap: usize,
    /// Write the report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
}

impl Caps {
    fn config(&self, input: Option<PathBuf>) -> RunConfig {
        RunConfig {
            input,
            suite: self.suite,
            sym_trunc: self.sym_trunc,
            arity_budget: self.arity_budget,
            poly_cap: self.poly_cap,
            weight_cap: self.weight_cap,
            report: self.report.clone(),
        }
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: bbk_core::Error| e.to_string())
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Invalid input: reported on standard error, exit status 2.
struct InputError(String);

fn configure_threads() -> Result<(), InputError> {
    let Some(raw) = std::env::var_os("BBK_THREADS") else { return Ok(()) };
    let n = raw
        .to_str()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|n| *n > 0)
        .ok_or_else(|| InputError(format!("BBK_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| InputError(e.to_string()))
}

/// Reads a descriptor and checks it against the schema, reporting every offending location.
fn load_descriptor(path: &Path) -> Result<SystemDescriptor, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let validator = jsonschema::validator_for(&descriptor_schema()).expect("the descriptor schema is valid");
    let errors: Vec<String> = validator
        .iter_errors(&value)
        .map(|e| {
            let at = e.instance_path().as_str().to_string();
            format!("{}: {e}", if at.is_empty() { "/" } else { &at })
        })
        .collect();
    if !errors.is_empty() {
        return Err(InputError(format!("{} does not match the descriptor schema:\n  {}", path.display(), errors.join("\n  "))));
    }
    serde_json::from_value(value).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn emit(report: &Report, config: &RunConfig) -> Result<(), InputError> {
    let text = report.to_json_pretty();
    match &config.report {
        Some(path) => fs::write(path, text + "\n").map_err(|e| InputError(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    let s = report.summary;
    eprintln!("{}: {} passed, {} failed, {} skipped", report.subject, s.passed, s.failed, s.skipped);
    Ok(())
}

fn run(cli: Cli) -> Result<i32, InputError> {
    let invalid = |e: bbk_core::Error| InputError(e.to_string());
    match cli.command {
        Command::Verify { input, caps } => {
            configure_threads()?;
            let config = caps.config(Some(input.clone()));
            let desc = load_descriptor(&input)?;
            let report = run_descriptor(&desc, &config).map_err(invalid)?;
            emit(&report, &config)?;
            Ok(report.exit_code())
        }
        Command::Examples { command: ExamplesCommand::List } => {
            for e in EXAMPLES {
                println!("{:<24} {}", e.name, e.summary);
            }
            Ok(0)
        }
        Command::Examples { command: ExamplesCommand::Show { name } } => {
            let text = embedded_descriptor(&name)
                .ok_or_else(|| InputError(format!("example {name:?} has no descriptor")))?;
            print!("{text}");
            Ok(0)
        }
        Command::Examples { command: ExamplesCommand::Run { name, caps } } => {
            configure_threads()?;
            let config = caps.config(None);
            let report = run_example(&name, &config).map_err(invalid)?;
            emit(&report, &config)?;
            Ok(report.exit_code())
        }
        Command::Schema => {
            println!("{}", serde_json::to_string_pretty(&descriptor_schema()).expect("schema serializes"));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
