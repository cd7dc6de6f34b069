use std::process::ExitCode;

use approxsym_cli::commands::{self, EquationChoice, TableChoice};
use approxsym_cli::grid::{GridSpec, SolutionKind, DEFAULT_RESIDUAL_ORDER};
use approxsym_cli::report::Report;
use approxsym_cli::{list_arg, params_arg, range_arg, rational_arg, CliError};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "approxsym",
    version,
    about = "Approximate symmetries of the Gardner equation"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum EquationArg {
    Kdv,
    Gardner,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    Commutator,
    Adjoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolutionArg {
    GalileanUnperturbed,
    GalileanApproximate,
    Linear,
}

impl From<SolutionArg> for SolutionKind {
    fn from(s: SolutionArg) -> Self {
        match s {
            SolutionArg::GalileanUnperturbed => SolutionKind::GalileanUnperturbed,
            SolutionArg::GalileanApproximate => SolutionKind::GalileanApproximate,
            SolutionArg::Linear => SolutionKind::Linear,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Point symmetries of KdV, or first-order approximate symmetries of Gardner.
    Symmetries {
        #[arg(value_enum)]
        equation: EquationArg,
        /// Maximal polynomial degree of the coefficient ansatz.
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Commutator or adjoint table, compared with the reference table.
    Tables {
        #[arg(value_enum)]
        which: TableArg,
        /// Corrupt reference cell ROW,COL (1-based) to exercise mismatch reporting.
        #[arg(long, hide = true, value_name = "ROW,COL")]
        inject_mismatch: Option<String>,
    },
    /// Replay of the optimal-system normalizations.
    Optimal,
    /// Audit of the approximate invariants and reduced solutions.
    Invariants,
    /// Approximately Galilean-invariant solution.
    Galilean,
    /// Sample a closed-form solution on a grid.
    Grid {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = SolutionArg::GalileanApproximate)]
        solution: SolutionArg,
    },
    /// Sup-norm of the residual for a decreasing list of eps values.
    ResidualScaling {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = SolutionArg::GalileanApproximate)]
        solution: SolutionArg,
        #[arg(long, default_value = "0.1,0.05,0.025", allow_hyphen_values = true)]
        eps_list: String,
        /// Highest eps power kept in the residual.
        #[arg(long, default_value_t = DEFAULT_RESIDUAL_ORDER)]
        order: usize,
    },
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value = "-3,3", allow_hyphen_values = true)]
    x_range: String,
    #[arg(long, default_value = "0.1,3", allow_hyphen_values = true)]
    t_range: String,
    #[arg(long, default_value_t = 61)]
    nx: usize,
    #[arg(long, default_value_t = 30)]
    nt: usize,
    #[arg(long, default_value = "0.1")]
    eps: String,
    /// Parameter values, e.g. `c=1,C=1,k1=1,k2=1,k4=1`.
    #[arg(
        long,
        default_value = "c=1,C=1,k1=1,k2=1,k4=1",
        allow_hyphen_values = true
    )]
    params: String,
}

impl GridArgs {
    fn spec(&self) -> Result<GridSpec, CliError> {
        let mut spec = GridSpec::standard();
        spec.x_range = range_arg(&self.x_range)?;
        spec.t_range = range_arg(&self.t_range)?;
        spec.nx = self.nx;
        spec.nt = self.nt;
        spec.eps = rational_arg(&self.eps)?;
        spec.params.extend(params_arg(&self.params)?);
        spec.validate()?;
        Ok(spec)
    }
}

fn cell_arg(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("expected ROW,COL, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Symmetries { equation, degree } => {
            let eq = match equation {
                EquationArg::Kdv => EquationChoice::Kdv,
                EquationArg::Gardner => EquationChoice::Gardner,
            };
            commands::symmetries(eq, *degree)
        }
        Command::Tables {
            which,
            inject_mismatch,
        } => {
            let which = match which {
                TableArg::Commutator => TableChoice::Commutator,
                TableArg::Adjoint => TableChoice::Adjoint,
            };
            let inject = inject_mismatch.as_deref().map(cell_arg).transpose()?;
            commands::tables(which, inject)
        }
        Command::Optimal => commands::optimal(),
        Command::Invariants => commands::invariants(),
        Command::Galilean => commands::galilean(),
        Command::Grid { grid, solution } => {
            let (report, csv) = commands::grid(&grid.spec()?, (*solution).into())?;
            if cli.format == Format::Csv {
                print!("{csv}");
            }
            Ok(report)
        }
        Command::ResidualScaling {
            grid,
            solution,
            eps_list,
            order,
        } => {
            let eps = list_arg(eps_list)?;
            commands::scaling(&grid.spec()?, (*solution).into(), &eps, *order)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
                Format::Csv => {
                    if !matches!(cli.command, Command::Grid { .. }) {
                        eprintln!("csv output is only available for grid; showing text");
                        print!("{}", report.to_text());
                    }
                }
            }
            ExitCode::from(report.status().exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
