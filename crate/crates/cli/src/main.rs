use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lpow_cli::config::{self, optimizer_config};
use lpow_cli::{plot, report, sweep, CliError, Grid, Quantity, StateSpec, SweepSpec};
use lpow_core::optimize::OptimizerConfig;

#[derive(Parser)]
#[command(name = "lpow", version, about = "LPO witnesses, Bell values and parameter sweeps for qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print quantities for one state.
    Report {
        /// State, e.g. `werner:p=0.4`, `cg:theta=0.3`, `product:kets=00`.
        #[arg(long)]
        state: String,
        /// Comma-separated quantity names.
        #[arg(long, default_value = "s_chsh,s_chsh_lpo")]
        quantities: String,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
    /// Sweep one state parameter over a grid and write a CSV.
    Sweep(SweepArgs),
    /// Render CSV columns as an SVG line chart.
    Plot {
        #[arg(long)]
        csv: PathBuf,
        /// Comma-separated column names.
        #[arg(long)]
        columns: String,
        /// Horizontal reference line; repeat for several.
        #[arg(long = "bound")]
        bounds: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct OptimizerArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    max_iterations: Option<usize>,
    #[arg(long)]
    step_tolerance: Option<f64>,
    #[arg(long)]
    value_tolerance: Option<f64>,
}

impl OptimizerArgs {
    fn config(&self) -> OptimizerConfig {
        optimizer_config(
            self.seed,
            self.restarts,
            self.max_iterations,
            self.step_tolerance,
            self.value_tolerance,
        )
    }
}

#[derive(Args)]
struct SweepArgs {
    /// TOML file with one section per sweep; the other sweep flags are then ignored.
    #[arg(long, conflicts_with_all = ["state", "param", "grid", "quantities", "out"])]
    config: Option<PathBuf>,
    /// Run only this section of the config file.
    #[arg(long, requires = "config")]
    section: Option<String>,
    #[arg(long)]
    state: Option<String>,
    #[arg(long)]
    param: Option<String>,
    /// `start:stop:count`.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    quantities: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add a column for every bound a quantity reports.
    #[arg(long)]
    with_bounds: bool,
    #[command(flatten)]
    opt: OptimizerArgs,
}

fn required<T>(v: Option<T>, flag: &str) -> lpow_cli::Result<T> {
    v.ok_or_else(|| CliError::usage(format!("--{flag} is required without --config")))
}

fn run_sweep(args: SweepArgs) -> lpow_cli::Result<()> {
    let specs = match &args.config {
        Some(path) => {
            let all = config::load(path)?;
            match &args.section {
                Some(name) => {
                    let found: Vec<_> = all.into_iter().filter(|(n, _)| n == name).collect();
                    if found.is_empty() {
                        return Err(CliError::usage(format!("no section `[{name}]` in {}", path.display())));
                    }
                    found
                }
                None => all,
            }
        }
        None => {
            let spec = SweepSpec {
                state: required(args.state, "state")?.parse::<StateSpec>()?,
                param: required(args.param, "param")?,
                grid: required(args.grid, "grid")?.parse::<Grid>()?,
                quantities: Quantity::parse_list(&required(args.quantities, "quantities")?)?,
                optimizer: args.opt.config(),
                output: required(args.out, "out")?,
                with_bounds: args.with_bounds,
            };
            vec![("sweep".to_string(), spec)]
        }
    };
    for (_, spec) in &specs {
        sweep::run_to_file(spec)?;
    }
    Ok(())
}

fn run(cli: Cli) -> lpow_cli::Result<()> {
    match cli.command {
        Command::Report { state, quantities, opt } => {
            let state: StateSpec = state.parse()?;
            let quantities = Quantity::parse_list(&quantities)?;
            print!("{}", report::render(&state, &quantities, &opt.config())?);
            Ok(())
        }
        Command::Sweep(args) => run_sweep(args),
        Command::Plot { csv, columns, bounds, out } => {
            let columns: Vec<String> = columns
                .split(',')
                .map(|c| c.trim().to_string())
                .filter(|c| !c.is_empty())
                .collect();
            plot::plot(&csv, &columns, &bounds, &out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
