//! Command-line surface.
//!
//! Exit status: `0` on success (an empty solution list is a success), `1`
//! when the input is well formed but rejected (invalid angle pair, singular
//! curve, rejected seed, non-squarefree `n`) or on I/O failure, `2` on usage
//! errors including unparsable expressions.

use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use bitri_core::{
    build_quartic, generate_solutions, parametrize_single_angle, quartic_to_weierstrass, tunnell_test, verify_triangle,
    AnglePair, Rational, TrianglePair,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use crate::expr::{CosineExpr, ExprError};
use crate::format::{
    solutions_csv, tunnell_csv, CurveDoc, GenerateDoc, PairDoc, ParametrizeDoc, SearchDoc, SolutionDoc, TunnellDoc,
    VerdictDoc, VerifyDoc,
};
use crate::search::{default_threads, parallel_search};

#[derive(Debug, Parser)]
#[command(name = "bitri", version, about = "Triangle pairs with two common integral sides", long_about = None)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Add decimal `approx` fields accurate to this many bits.
    #[arg(long, global = true)]
    pub approx_bits: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Cosine of the first angle, e.g. `1/2`, `(1+sqrt(5))/4`, `pi/3`.
    #[arg(long, allow_hyphen_values = true)]
    pub phi1: CosineExpr,
    /// Cosine of the second angle.
    #[arg(long, allow_hyphen_values = true)]
    pub phi2: CosineExpr,
}

impl PairArgs {
    fn pair(&self) -> Result<AnglePair, CliError> {
        AnglePair::new(self.phi1.value.clone(), self.phi2.value.clone()).map_err(CliError::domain)
    }
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Quartic, Weierstrass model and j-invariant of an angle pair.
    Curve(PairArgs),
    /// Exhaustive search for primitive solutions with x <= y <= bound.
    Search {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        bound: u64,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Solutions from the multiples of a seed point plus 2-torsion.
    ///
    /// This enumerates; it does not prove that no other solutions exist,
    /// and over quadratic fields it may miss solutions entirely.
    Generate {
        #[command(flatten)]
        pair: PairArgs,
        /// Rational abscissa x/y of a known solution (negative for the
        /// supplementary orientation).
        #[arg(long, allow_hyphen_values = true)]
        seed_x: Rational,
        #[arg(long, default_value_t = 5)]
        count: u32,
    },
    /// Check a proposed triangle pair exactly.
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        x: BigInt,
        #[arg(long)]
        y: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        z_alpha: CosineExpr,
        #[arg(long, allow_hyphen_values = true)]
        z_beta: CosineExpr,
        /// The angles are the supplements of the given pair.
        #[arg(long)]
        supplementary: bool,
        /// Claim gcd(x, y) = 1.
        #[arg(long)]
        primitive: bool,
    },
    /// Tunnell's congruent-number test for one n or a range.
    Tunnell {
        #[arg(long, conflicts_with = "range", required_unless_present = "range")]
        n: Option<u64>,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        range: Option<Vec<u64>>,
    },
    /// Integer triangle with one angle of rational cosine from a parameter.
    Parametrize {
        #[arg(long = "cos", allow_hyphen_values = true)]
        cosine: CosineExpr,
        #[arg(long, allow_hyphen_values = true)]
        t: Rational,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Io(io::Error),
}

impl CliError {
    fn domain(e: impl fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn json_only(format: Format, name: &str) -> Result<(), CliError> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Usage(format!("`{name}` has no CSV form"))),
    }
}

/// Runs a parsed command and returns the text to emit.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let bits = cli.approx_bits;
    match &cli.command {
        Command::Curve(args) => {
            json_only(cli.format, "curve")?;
            let pair = args.pair()?;
            let quartic = build_quartic(&pair).map_err(CliError::domain)?;
            let (w, map) = quartic_to_weierstrass(&quartic).map_err(CliError::domain)?;
            Ok(json(&CurveDoc::new(&pair, &quartic, &w, map.base_image(), bits)))
        }
        Command::Search { pair, bound, threads } => {
            let pair = pair.pair()?;
            if *bound < 1 {
                return Err(CliError::Usage("--bound must be at least 1".into()));
            }
            let report =
                parallel_search(&pair, *bound, threads.unwrap_or_else(default_threads)).map_err(CliError::domain)?;
            Ok(match cli.format {
                Format::Json => json(&SearchDoc::new(&report, bits)),
                Format::Csv => solutions_csv(&report.solutions),
            })
        }
        Command::Generate { pair, seed_x, count } => {
            let pair = pair.pair()?;
            if *count < 1 {
                return Err(CliError::Usage("--count must be at least 1".into()));
            }
            let sols = generate_solutions(&pair, seed_x, *count).map_err(CliError::domain)?;
            Ok(match cli.format {
                Format::Json => json(&GenerateDoc {
                    pair: PairDoc::new(&pair, bits),
                    seed_x: seed_x.to_string(),
                    count: *count,
                    solutions: sols.iter().map(|t| SolutionDoc::new(t, bits)).collect(),
                }),
                Format::Csv => solutions_csv(&sols),
            })
        }
        Command::Verify {
            pair,
            x,
            y,
            z_alpha,
            z_beta,
            supplementary,
            primitive,
        } => {
            json_only(cli.format, "verify")?;
            let pair = pair.pair()?;
            let t = TrianglePair {
                x: x.clone(),
                y: y.clone(),
                z_alpha: z_alpha.value.clone(),
                z_beta: z_beta.value.clone(),
                supplementary: *supplementary,
                primitive: *primitive,
            };
            let valid = verify_triangle(&pair, &t);
            Ok(json(&VerifyDoc {
                pair: PairDoc::new(&pair, bits),
                solution: SolutionDoc::new(&t, bits),
                valid,
            }))
        }
        Command::Tunnell { n, range } => {
            let (lo, hi) = match (n, range.as_deref()) {
                (Some(n), _) => (*n, *n),
                (None, Some([a, b])) => (*a, *b),
                _ => return Err(CliError::Usage("give --n or --range A B".into())),
            };
            if lo < 1 || hi < lo {
                return Err(CliError::Usage("range must satisfy 1 <= A <= B".into()));
            }
            let verdicts = if n.is_some() {
                vec![tunnell_test(lo).map_err(CliError::domain)?]
            } else {
                // non-squarefree members of a range are skipped
                (lo..=hi).filter_map(|k| tunnell_test(k).ok()).collect()
            };
            Ok(match cli.format {
                Format::Json => json(&TunnellDoc {
                    verdicts: verdicts.iter().map(VerdictDoc::new).collect(),
                }),
                Format::Csv => tunnell_csv(&verdicts),
            })
        }
        Command::Parametrize { cosine, t } => {
            json_only(cli.format, "parametrize")?;
            let phi = cosine
                .value
                .as_rational()
                .ok_or_else(|| CliError::Usage("--cos must be rational".into()))?;
            let point = parametrize_single_angle(phi, t).map_err(CliError::domain)?;
            Ok(json(&ParametrizeDoc::new(phi, t, &point)))
        }
    }
}

/// Runs a parsed command, writing to `--output` or to `stdout`.
pub fn run_cli(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = execute(cli)?;
    match &cli.output {
        Some(path) => File::create(path)?.write_all(text.as_bytes())?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` (program name first) and runs them. Argument errors,
/// including `--help`, come back as [`CliError::Usage`].
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    run_cli(&cli, stdout)
}
