//! `twp`: exact twisted period polynomials, trace values, eigenform ratios
//! and numeric checks from the command line.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Format;

#[derive(Parser)]
#[command(name = "twp", version, about = "Twisted period polynomials and L-value traces on Gamma_0(N)")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

/// `N`, modular weight `w + 2` and a primitive character.
#[derive(Args, Clone)]
struct FormArgs {
    /// Level N of Gamma_0(N).
    #[arg(long, default_value_t = 1)]
    level: u64,
    /// Modular weight, w + 2.
    #[arg(long)]
    weight: i64,
    /// `kronecker:D` or `table:D:v0,...,v(D-1)`.
    #[arg(long)]
    character: String,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetrized twisted period polynomial of R_n, or one of its periods.
    Theorem1 {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        n: i64,
        /// Print only the twisted period r_{m,chi}(R_n).
        #[arg(long)]
        m: Option<i64>,
        /// Recompute by summing the six matrix-class contributions instead.
        #[arg(long)]
        oracle: bool,
    },
    /// Trace of twisted times untwisted L-values over an orthogonal basis.
    Trace {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum, default_value_t = TracePath::Direct)]
        via: TracePath,
    },
    /// Compares the closed forms against the residue-class sums on a grid.
    Crosscheck {
        #[arg(long, value_enum, default_value_t = Grid::Default)]
        grid: Grid,
    },
    /// Characteristic polynomial and eigenvectors of a fixture Hecke matrix.
    Eigen {
        #[arg(long)]
        fixture: String,
    },
    /// Lambda(f, chi, m1 + 1) / Lambda(f, chi, m2 + 1) for a fixture form.
    Ratio {
        /// Name of a form table.
        #[arg(long)]
        fixture: String,
        /// Which form of the table, counted from 0.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        character: String,
        #[arg(long)]
        m1: u32,
        #[arg(long)]
        m2: u32,
    },
    /// Floating-point checks for Delta at level 1.
    VerifyNumeric {
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long, default_value_t = 1)]
        n: i64,
        #[arg(long, default_value = "kronecker:-3")]
        character: String,
        /// Number of q-expansion terms.
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Lists the embedded fixtures, or writes them out.
    Fixtures {
        /// Write the fixture JSON to this path, or to stdout when no path is given.
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        dump: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum TracePath {
    Direct,
    Theorem1,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Grid {
    /// N in 1..=4, D in {3,4,5,7,8,12}, w in {10,12,14}.
    Default,
    /// N in 1..=2, D in {3,4,5}, w = 10.
    Quick,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Check {
    Lambda,
    Petersson,
    Twisted,
    Trace,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
