use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use liaison::Error;

mod commands;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    SkipCovered,
    Literal,
}

#[derive(Parser, Debug)]
#[command(name = "liaison", version, about = "Exact liaison computations over prime fields")]
pub struct Cli {
    /// Coefficient prime; overrides the one in the input file.
    #[arg(long, global = true)]
    pub prime: Option<u32>,
    /// Seed for all general choices.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Degree bound for Hilbert function comparisons (default 2 * max generator degree + 4).
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// h-vector, degree, dimension and Cohen-Macaulay test of an ideal file.
    Hvector { input: PathBuf },
    /// A direct link: by a given complete intersection, by the key identity
    /// `(I + f J) : (I, f) = J`, or by a general complete intersection.
    Link { input: PathBuf },
    /// Links a union of fat points in P^3 to a reduced set of points.
    Fatpoints {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "skip-covered")]
        policy: Policy,
        /// Run only the double link at the first non-reduced point.
        #[arg(long)]
        single: bool,
        /// Refuse arrangements needing more pair checks than this.
        #[arg(long, default_value_t = 50_000_000)]
        max_pairs: u128,
    },
    /// Lifts a monomial ideal and checks the lifting.
    Lift { input: PathBuf },
    /// Adds a variable t and links (I, t) through I + t J.
    Embed { input: PathBuf },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Genericity { .. } => 3,
        Error::Parse { .. }
        | Error::Json(_)
        | Error::Io(_)
        | Error::InvalidInput(_)
        | Error::InvalidPrime(_)
        | Error::UnknownVariable(_)
        | Error::DuplicateVariable(_)
        | Error::TooManyVariables { .. }
        | Error::ExponentOverflow
        | Error::NotHomogeneous(_)
        | Error::UnitIdeal => 4,
        Error::Verification { .. }
        | Error::Precondition(_)
        | Error::Containment(_)
        | Error::CodimMismatch { .. }
        | Error::LemmaIdentityViolated(_)
        | Error::GorensteinWitnessRequired(_)
        | Error::WrongDimension { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => out.json,
                Format::Text => out.text,
            };
            let written = match &cli.out {
                Some(p) => std::fs::write(p, &body).map_err(Error::from),
                None => {
                    print!("{body}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(4);
            }
            ExitCode::from(if out.ok { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let g = Error::Genericity {
            what: "planes".into(),
            attempts: 3,
            seeds: vec![1, 2, 3],
        };
        assert_eq!(exit_code(&g), 3);
        assert_eq!(exit_code(&Error::Containment("x".into())), 2);
        assert_eq!(exit_code(&Error::UnitIdeal), 4);
        assert_eq!(exit_code(&Error::ResourceLimit("pairs".into())), 1);
    }
}
