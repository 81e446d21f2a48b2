//! `uea`: load L∞-algebras, compute A∞ products and run the verification
//! suites. Exit codes: 0 all checks pass, 1 a check failed, 2 bad input,
//! 3 internal invariant violated.

mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use uea_core::io::{read_input, Input};
use uea_core::tableaux::GradedDim;
use uea_core::uea::{compute_products, Caps};

use report::{error_code, run, Config, Report, Verdict};
use suites::Limits;

#[derive(Parser, Debug)]
#[command(
    name = "uea",
    version,
    about = "Exact A-infinity enveloping algebras of L-infinity algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON file describing the algebra (and optionally a module or morphism).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Largest arity of products and bar words.
    #[arg(long, global = true, default_value_t = 3, value_parser = positive)]
    arity_cap: usize,
    /// Largest total weight of inputs.
    #[arg(long, global = true, default_value_t = 3, value_parser = positive)]
    weight_cap: usize,
    /// Largest n for the permutahedron, tableaux and h_V checks.
    #[arg(long, global = true, default_value_t = 4, value_parser = positive)]
    n_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Stasheff,
    Pbw,
    Alt,
    Involution,
    Coproduct,
    Morphism,
    Truncation,
    Theorem1,
    Permutahedron,
    Tableaux,
    Bgg,
    Perturbation,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the L∞ identities of the input (and of its module or morphism).
    Validate,
    /// Compute and print the products m_n within the caps.
    Products,
    /// Run a verification suite.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Face counts, homology and contraction identities of P_n.
    Permutahedron {
        /// Defaults to --n-cap.
        #[arg(long, value_parser = positive)]
        n: Option<usize>,
    },
    /// Tableau bijection, the complexes C_T and dimension tables.
    Tableaux {
        /// Defaults to --n-cap.
        #[arg(long, value_parser = positive)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        dim_even: usize,
        #[arg(long, default_value_t = 0)]
        dim_odd: usize,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

fn suite_name(s: Suite) -> String {
    format!("{s:?}").to_lowercase()
}

fn needs_input(s: Suite) -> bool {
    !matches!(
        s,
        Suite::Theorem1 | Suite::Permutahedron | Suite::Tableaux | Suite::All
    )
}

/// Exits with code 2 and a message on stderr.
fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn load(path: &Option<PathBuf>) -> Result<Option<Input>, ExitCode> {
    match path {
        None => Ok(None),
        Some(p) => read_input(p).map(Some).map_err(|e| {
            eprintln!("error: {}: {e}", p.display());
            ExitCode::from(error_code(&e) as u8)
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let lim = Limits {
        arity_cap: cli.arity_cap,
        weight_cap: cli.weight_cap,
        n_cap: cli.n_cap,
    };
    let mut config = Config {
        input: cli.input.as_ref().map(|p| p.display().to_string()),
        arity_cap: cli.arity_cap,
        weight_cap: cli.weight_cap,
        n_cap: cli.n_cap,
        suite: None,
        n: None,
        dim_even: None,
        dim_odd: None,
    };
    let input = match load(&cli.input) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let report = match &cli.command {
        Command::Validate => {
            let Some(input) = &input else {
                return input_error("validate needs --input");
            };
            Report::new("validate", config, suites::validate(input, lim))
        }
        Command::Products => {
            let Some(input) = &input else {
                return input_error("products needs --input");
            };
            let mut tables = None;
            let rec = run("products", || {
                let a =
                    compute_products(&input.algebra, Caps::new(lim.arity_cap, lim.weight_cap)?)?;
                tables = Some(
                    (1..=lim.arity_cap)
                        .map(|n| a.export(n))
                        .collect::<uea_core::Result<Vec<_>>>()?,
                );
                Ok(Verdict::Pass(None))
            });
            let mut r = Report::new("products", config, vec![rec]);
            r.products = tables;
            r
        }
        Command::Check { suite } => {
            let suite = *suite;
            config.suite = Some(suite_name(suite));
            if needs_input(suite) && input.is_none() {
                return input_error(format!("suite {} needs --input", suite_name(suite)));
            }
            let checks = match (suite, &input) {
                (Suite::Theorem1, _) => suites::theorem1(lim),
                (Suite::Permutahedron, _) => suites::permutahedron(lim),
                (Suite::Tableaux, _) => suites::tableaux(lim),
                (Suite::All, i) => suites::all(i.as_ref(), lim),
                (s, Some(i)) => {
                    let l = &i.algebra;
                    match s {
                        Suite::Stasheff => suites::stasheff(l, lim),
                        Suite::Pbw => suites::pbw(l, lim),
                        Suite::Alt => suites::alt(l, lim),
                        Suite::Involution => suites::involution(l, lim),
                        Suite::Coproduct => suites::coproduct(l, lim),
                        Suite::Morphism => suites::morphism(i, lim),
                        Suite::Truncation => suites::truncation(l, lim),
                        Suite::Perturbation => suites::perturbation(l, lim),
                        _ => suites::bgg(i, lim),
                    }
                }
                (_, None) => unreachable!("checked above"),
            };
            Report::new("check", config, checks)
        }
        Command::Permutahedron { n } => {
            let n = n.unwrap_or(cli.n_cap);
            config.n = Some(n);
            Report::new("permutahedron", config, vec![suites::permutahedron_n(n)])
        }
        Command::Tableaux {
            n,
            dim_even,
            dim_odd,
        } => {
            let n = n.unwrap_or(cli.n_cap);
            config.n = Some(n);
            config.dim_even = Some(*dim_even);
            config.dim_odd = Some(*dim_odd);
            Report::new(
                "tableaux",
                config,
                suites::tableaux_n(n, &[GradedDim::new(*dim_even, *dim_odd)]),
            )
        }
    };
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        Format::Text => print!("{}", report.text()),
    }
    ExitCode::from(report.exit_status as u8)
}
