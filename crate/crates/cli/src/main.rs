//! `vanishlab` command-line front end.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact checks around the vanishing conjecture.
///
/// Polynomial arguments accept `-` to read the expression from stdin.
/// Exit status: 0 confirmed or consistent, 1 hypothesis or check failed,
/// 2 inconclusive at the horizon, 3 usage, parse or precondition error.
#[derive(Debug, Parser)]
#[command(name = "vanishlab", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Comma-separated variable names.
    #[arg(long, global = true)]
    pub vars: Option<String>,
    /// Horizon M: the largest power checked.
    #[arg(short = 'M', long = "horizon", env = "VANISHLAB_HORIZON", default_value_t = 8, global = true)]
    pub horizon: u32,
    /// Series precision D in y for the counterexamples.
    #[arg(short = 'D', long = "precision", default_value_t = 12, global = true)]
    pub precision: i64,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate Λ^m(P^m) and Λ^m(P^m g).
    Vanish {
        #[arg(long)]
        op: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        g: Option<String>,
        /// Differentiate negative powers too.
        #[arg(long)]
        laurent: bool,
    },
    /// Orthant meet of a V-polytope, with move-away bound or membership.
    Polytope {
        /// Generators, e.g. "(-2,1);(1,-2)".
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        beta: Option<String>,
        /// Decide membership of this point instead.
        #[arg(long, conflicts_with = "beta")]
        point: Option<String>,
    },
    /// Support points of P^m on the ray through u.
    Density {
        #[arg(long)]
        p: String,
        #[arg(long)]
        u: String,
        /// Require P homogeneous and report the m with m·u ∈ Supp(P^m).
        #[arg(long)]
        homogeneous: bool,
    },
    /// Constant terms of f^m against 0 ∈ Poly(f).
    Dk {
        #[arg(long)]
        f: String,
    },
    /// Proved cases with explicit bounds.
    #[command(subcommand)]
    Case(CaseCommand),
    /// The two power-series counterexamples.
    Counterexample {
        #[arg(value_enum)]
        which: Counterexample,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Counterexample {
    Ddv,
    Dk,
}

/// Which input carries the special shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Operator,
    Polynomial,
}

#[derive(Debug, Subcommand)]
pub enum CaseCommand {
    /// One variable.
    OneVar {
        #[arg(long)]
        op: String,
        #[arg(long)]
        p: String,
        #[arg(long, default_value = "1")]
        g: String,
    },
    /// Λ = ∂_x − Φ(∂_y) with P = e^{xΦ(∂_y)} f. Φ and f are written in the
    /// second variable.
    Phi {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "1")]
        g: String,
    },
    /// P a monomial, or Λ a monomial operator.
    Monomial {
        #[arg(long)]
        op: String,
        #[arg(long)]
        p: String,
        #[arg(long, default_value = "1")]
        g: String,
        /// Which of Λ and P is the monomial; by default P when possible.
        #[arg(long, value_enum)]
        side: Option<Side>,
    },
    /// Λ or P a sum of two monomials of different degrees.
    TwoMonomial {
        #[arg(long)]
        op: String,
        #[arg(long)]
        p: String,
        #[arg(long, default_value = "1")]
        g: String,
        /// Which of Λ and P has two terms; by default Λ when possible.
        #[arg(long, value_enum)]
        side: Option<Side>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
