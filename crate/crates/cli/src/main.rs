use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use incgamma_cli::{
    cmd_eval, cmd_func_eq, cmd_interp_check, cmd_psi_tilde, parse_poly, parse_r, CliError, RunReport, Side,
    DEFAULT_PREC,
};

#[derive(Parser)]
#[command(name = "incgamma", version, about = "p-adic and complex incomplete gamma functions")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for randomized sample points.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Padic,
    Complex,
}

#[derive(Subcommand)]
enum Command {
    /// Exact table of Ψ̃(0..=M).
    PsiTilde {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long, default_value_t = 10)]
        m_max: u64,
    },
    /// Evaluate Ψ at one point on either side.
    Eval {
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, env = "INCGAMMA_PREC", default_value_t = DEFAULT_PREC)]
        prec: i64,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        s: String,
    },
    /// Compare both constructions with the rational sequence.
    InterpCheck {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 20)]
        m_max: u64,
        #[arg(long, env = "INCGAMMA_PREC", default_value_t = DEFAULT_PREC)]
        prec: i64,
        /// Also check the complex quadrature.
        #[arg(long)]
        complex: bool,
    },
    /// Hypothesis report and residuals of the functional equation.
    FuncEq {
        /// Coefficients a0,a1,…,an of f.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, env = "INCGAMMA_PREC", default_value_t = DEFAULT_PREC)]
        prec: i64,
        /// Also check the complex side.
        #[arg(long)]
        complex: bool,
    },
}

/// Report plus whether the run is a domain failure rather than a
/// verification one.
fn run(cli: &Cli) -> Result<(RunReport, bool), CliError> {
    Ok(match &cli.command {
        Command::PsiTilde { r, m_max } => (cmd_psi_tilde(&parse_r(r)?, *m_max)?, false),
        Command::Eval { side, r, p, prec, s } => {
            let side = match side {
                SideArg::Padic => Side::Padic,
                SideArg::Complex => Side::Complex,
            };
            (cmd_eval(side, &parse_r(r)?, *p, *prec, s)?, false)
        }
        Command::InterpCheck { r, p, m_max, prec, complex } => {
            (cmd_interp_check(&parse_r(r)?, *p, *m_max, *prec, *complex)?, false)
        }
        Command::FuncEq { poly, p, samples, prec, complex } => {
            let out = cmd_func_eq(&parse_poly(poly)?, *p, *samples, *prec, cli.seed, *complex)?;
            (out.report, out.incompatible)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, incompatible)) => {
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Csv => print!("{}", report.to_csv()),
            }
            if incompatible {
                eprintln!("error: f is not compatible with p");
                ExitCode::from(2)
            } else if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
