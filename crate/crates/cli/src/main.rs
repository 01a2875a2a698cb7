//! Scenario runner: parse a config, drive the pipeline, emit CSV
//! trajectories plus a structured report, and exit meaningfully.
//!
//! Exit codes: 0 = all expectations met, 1 = a hypothesis or verdict
//! expectation violated (or a runtime abort), 2 = inconclusive results
//! present, 3 = usage or config error.

mod emit;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use decaycheck::error::Error;
use decaycheck::scenario::{run_config, ScenarioConfig, ScenarioKind};
use decaycheck::verdict::{catalog_case, catalog_ids};

#[derive(Parser)]
#[command(
    name = "decaycheck",
    about = "Numerical decay certificates for nonlinear differential and integral inequalities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct RunArgs {
    /// Scenario config file (JSON).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for CSVs and report.json.
    #[arg(long, default_value = "decaycheck-out")]
    out_dir: PathBuf,
    /// Override the integration horizon.
    #[arg(long)]
    t_end: Option<f64>,
    /// Override the decay threshold ε.
    #[arg(long)]
    tol: Option<f64>,
    /// Override the sampling seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a scalar surrogate scenario and judge its decay.
    Simulate(RunArgs),
    /// Simulate the 1D semilinear heat scenario on a Dirichlet interval.
    Pde(RunArgs),
    /// Advance delayed iterates and compare them to the reference solution.
    Peano(RunArgs),
    /// Run the hypothesis checkers without integrating anything.
    Check(RunArgs),
    /// Run a built-in catalog case by its stable id.
    Catalog {
        /// Case id (see list-catalog); optional when the config names one.
        id: Option<String>,
        #[command(flatten)]
        args: RunArgs,
    },
    /// List the built-in catalog case ids.
    ListCatalog,
}

fn load_config(args: &RunArgs, expected_kind: Option<ScenarioKind>) -> Result<ScenarioConfig, Error> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Config(format!("cannot read {}: {e}", path.display()))
            })?;
            ScenarioConfig::from_json(&text)?
        }
        None => match expected_kind {
            Some(kind) => ScenarioConfig::new(kind, ""),
            None => return Err(Error::Config("this subcommand requires --config".into())),
        },
    };
    if let Some(kind) = expected_kind {
        if config.kind != kind {
            return Err(Error::Config(format!(
                "config kind is {} but the subcommand expects {}",
                config.kind.as_str(),
                kind.as_str()
            )));
        }
    }
    if let Some(t_end) = args.t_end {
        config.solver.t_end = Some(t_end);
        config.peano.t_end = Some(t_end);
    }
    if let Some(tol) = args.tol {
        config.verdict.epsilon = Some(tol);
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    Ok(config)
}

fn execute(config: &ScenarioConfig, args: &RunArgs) -> Result<i32, Error> {
    let result = run_config(config)?;
    let artifacts = emit::emit_outputs(&result, &args.out_dir)?;
    let doc = report::build_report(config, &result, artifacts);
    let path = args.out_dir.join("report.json");
    std::fs::write(&path, doc.to_json())
        .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;

    for r in &result.reports {
        println!("theorem {}: {}", r.theorem, r.status);
    }
    if let Some(v) = &result.verdict {
        println!("verdict (t-clock): {}", v.status.as_str());
    }
    if let Some(v) = &result.s_verdict {
        println!("verdict (s-clock): {}", v.status.as_str());
    }
    for o in &result.expectation_outcomes {
        let mark = if o.met { "ok" } else { "VIOLATED" };
        println!("expect {}: wanted {}, got {} [{mark}]", o.target, o.expected, o.actual);
    }
    println!("report: {}", path.display());
    Ok(report::exit_code_for(&result))
}

fn dispatch(command: Command) -> Result<i32, Error> {
    match command {
        Command::Simulate(args) => {
            let config = load_config(&args, Some(ScenarioKind::Surrogate))?;
            execute(&config, &args)
        }
        Command::Pde(args) => {
            let config = load_config(&args, Some(ScenarioKind::Pde))?;
            execute(&config, &args)
        }
        Command::Peano(args) => {
            let config = load_config(&args, Some(ScenarioKind::Peano))?;
            execute(&config, &args)
        }
        Command::Check(args) => {
            let config = load_config(&args, Some(ScenarioKind::CheckOnly))?;
            execute(&config, &args)
        }
        Command::Catalog { id, args } => {
            let mut config = load_config(&args, Some(ScenarioKind::Catalog))?;
            if let Some(id) = id {
                config.catalog_id = Some(id);
            }
            let id = config
                .catalog_id
                .clone()
                .ok_or_else(|| Error::Config("catalog needs an id or a config naming one".into()))?;
            catalog_case(&id)?; // surface unknown ids as usage errors
            execute(&config, &args)
        }
        Command::ListCatalog => {
            for id in catalog_ids() {
                let case = catalog_case(id).expect("listed ids resolve");
                println!("{id}: {}", case.summary);
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Config(_)
                | Error::Parse(_)
                | Error::Validation(_)
                | Error::UnknownCatalog(_) => 3,
                Error::Numeric(_) | Error::Domain(_) => 1,
            };
            ExitCode::from(code)
        }
    }
}
