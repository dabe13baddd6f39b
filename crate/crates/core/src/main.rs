use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qmeasure::scenario::{
    emit_report, load_scenario, run_checks, stock_scenario, ReportFormat, Scenario, ScenarioError,
    STOCK_SCENARIOS,
};

#[derive(Parser)]
#[command(
    name = "qmeasure",
    version,
    about = "Run quantum measurement scenarios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks listed in a scenario file.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Parse and validate a scenario file without running it.
    Validate {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Run a shipped scenario.
    Demo {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(STOCK_SCENARIOS))]
        name: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the scenario's Monte Carlo seed.
    #[arg(long)]
    seed: Option<u64>,
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: ScenarioError| e.to_string())
}

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { scenario } => match load_scenario(&scenario) {
            Ok(_) => {
                println!("{}: ok", scenario.display());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_FAIL)
            }
        },
        Command::Run { scenario, output } => execute(load_scenario(&scenario), output),
        Command::Demo { name, output } => execute(stock_scenario(&name), output),
    }
}

fn execute(scenario: Result<Scenario, ScenarioError>, output: OutputArgs) -> ExitCode {
    match run(scenario, &output) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(
    scenario: Result<Scenario, ScenarioError>,
    output: &OutputArgs,
) -> Result<bool, ScenarioError> {
    let mut scenario = scenario?;
    if let Some(seed) = output.seed {
        scenario.monte_carlo.seed = seed;
    }
    let report = run_checks(&scenario)?;
    let bytes = emit_report(&report, output.format)?;
    let written = match &output.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| (path.display().to_string(), e)),
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| ("<stdout>".to_owned(), e)),
    };
    written.map_err(|(path, e)| ScenarioError::Io {
        path,
        message: e.to_string(),
    })?;
    Ok(report.all_passed())
}
