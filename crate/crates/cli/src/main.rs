use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dkforms::monopole::Grid;
use dkforms::verify::Suite;
use dkforms::{Constants, HalfInt};

mod render;

use render::{Format, Rendered};

#[derive(Parser, Debug)]
#[command(
    name = "dkforms",
    version,
    about = "Verification suites and data emitters for Dirac-Kahler calculus on frames"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tolerance override for numeric checks.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = positive_f64)]
    tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite; exit 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
    /// Wigner basis of a spin-j representation with eigenvalue reports.
    Rep {
        #[arg(long, allow_hyphen_values = true)]
        j: HalfInt,
    },
    /// Spinor ideal, generator matrices and the reduced Dirac operator for a projector parameter.
    Clifford {
        /// Exact value: integer, decimal or p/q.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        xi: String,
    },
    /// Wigner elements of spin j with fiber charge n, plus matching vector harmonics.
    Harmonics {
        #[arg(long, allow_hyphen_values = true)]
        j: HalfInt,
        #[arg(long, allow_hyphen_values = true)]
        n: HalfInt,
    },
    /// Finite-difference residuals of the radial Bessel solution.
    Spectrum {
        #[arg(long, allow_hyphen_values = true)]
        l: HalfInt,
        #[arg(long, allow_hyphen_values = true)]
        n: HalfInt,
        /// Wave number.
        #[arg(long)]
        k: Option<f64>,
        /// START:STOP:STEP
        #[arg(long)]
        grid: Option<Grid>,
        #[arg(long)]
        mass: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Clifford,
    Hodge,
    Harmonics,
    Spectrum,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Clifford => Suite::Clifford,
            SuiteArg::Hodge => Suite::Hodge,
            SuiteArg::Harmonics => Suite::Harmonics,
            SuiteArg::Spectrum => Suite::Spectrum,
            SuiteArg::All => Suite::All,
        }
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(format!("expected a positive number, got {s}"))
    }
}

fn run(cli: &Cli, constants: &Constants) -> dkforms::Result<Rendered> {
    match &cli.command {
        Command::Verify { suite } => {
            render::verify((*suite).into(), constants, cli.tol, cli.format)
        }
        Command::Rep { j } => render::rep(*j, cli.format),
        Command::Clifford { xi } => render::clifford(xi, cli.format),
        Command::Harmonics { j, n } => render::harmonics(*j, *n, cli.format),
        Command::Spectrum {
            l,
            n,
            k,
            grid,
            mass,
        } => {
            let grid = match grid {
                Some(g) => *g,
                None => constants.grid()?,
            };
            let params = render::SpectrumParams {
                l: *l,
                n: *n,
                k_wave: k.unwrap_or(constants.k_wave),
                mass: mass.unwrap_or(constants.mass),
                grid,
                tol: cli.tol.unwrap_or(constants.fd_tolerance),
            };
            render::spectrum(&params, cli.format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let constants = match Constants::load() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = match run(&cli, &constants) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &rendered.text),
        None => std::io::stdout().lock().write_all(rendered.text.as_bytes()),
    };
    if let Err(e) = written.or_else(|e| {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            Ok(())
        } else {
            Err(e)
        }
    }) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if rendered.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
