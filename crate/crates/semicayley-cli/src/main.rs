//! Command line front end: spectra, degrees, integrality, character tables,
//! censuses and oracle verification for quasi-abelian semi-Cayley digraphs.
//!
//! Exit codes: 0 success, 2 invalid input, 3 undetermined square-class
//! verdict, 4 oracle mismatch.

mod census;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use semicayley::chartable::CharacterTable;
use semicayley::cyclotomic::SqrtConfig;
use semicayley::digraph::SemiCayleyDigraph;
use semicayley::multiset::GMultiset;
use semicayley::oracle;
use semicayley::splitting::{algebraic_degree, DegreeConfig};

const EXIT_OK: u8 = 0;
const EXIT_INVALID_INPUT: u8 = 2;
const EXIT_UNDETERMINED: u8 = 3;
const EXIT_ORACLE_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(name = "semicayley", version, about = "Exact spectra and algebraic degrees of quasi-abelian semi-Cayley digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
struct CommonArgs {
    /// Input document (TOML; see the book's CLI chapter for the schema).
    #[arg(long)]
    input: PathBuf,
    /// `text` for humans, `structured` for JSON.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Also run the brute-force oracle cross-checks.
    #[arg(long)]
    verify: bool,
    /// Prime embeddings inspected before a squareness verdict is abandoned.
    #[arg(long, default_value_t = 64)]
    probabilistic_primes: usize,
    /// p-adic precision cap, in bits, for square-root reconstruction.
    #[arg(long, default_value_t = 4096)]
    height_cap: u64,
}

impl CommonArgs {
    fn degree_config(&self) -> DegreeConfig {
        DegreeConfig {
            sqrt: SqrtConfig {
                max_primes: self.probabilistic_primes,
                height_cap_bits: self.height_cap,
            },
            ..DegreeConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact eigenvalues with multiplicities and float approximations.
    Spectrum(CommonArgs),
    /// Full report: T, K, square classes, splitting field, degree.
    Degree(CommonArgs),
    /// Integrality verdict only.
    Integral(CommonArgs),
    /// Character table of the input's group.
    Chartable(CommonArgs),
    /// Enumerate digraphs over the group and tabulate degrees.
    Census(CensusArgs),
    /// Brute-force verification of the given digraph (or a random suite).
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CensusArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Each connection set is a union of at most this many classes.
    #[arg(long, default_value_t = 1)]
    max_classes: usize,
    /// Keep only undirected digraphs.
    #[arg(long)]
    undirected_only: bool,
    /// Keep only integral digraphs.
    #[arg(long)]
    integral_only: bool,
    /// Refuse to enumerate more candidates than this.
    #[arg(long, default_value_t = 100_000)]
    max_rows: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Numeric tolerance for the eigenvalue pairing check.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Verify this many pseudorandom digraphs over the input's group
    /// instead of the input digraph itself.
    #[arg(long)]
    suite: Option<usize>,
    /// Seed for the randomized suite.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(classify_error(&e))
        }
    }
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Pipeline(semicayley::Error),
    Census(census::CensusError),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Pipeline(e) => write!(f, "{e}"),
            CliError::Census(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

fn classify_error(e: &CliError) -> u8 {
    match e {
        CliError::Pipeline(semicayley::Error::UndeterminedSquareness { .. }) => EXIT_UNDETERMINED,
        CliError::Census(census::CensusError::Pipeline(
            semicayley::Error::UndeterminedSquareness { .. },
        )) => EXIT_UNDETERMINED,
        _ => EXIT_INVALID_INPUT,
    }
}

fn load_job(common: &CommonArgs) -> Result<input::Job, CliError> {
    let text = std::fs::read_to_string(&common.input).map_err(CliError::Io)?;
    let document = input::parse_document(&text).map_err(|e| CliError::Input(e.0))?;
    input::resolve(document).map_err(|e| CliError::Input(e.0))
}

fn emit<T: serde::Serialize>(format: Format, value: &T, text: String) {
    match format {
        Format::Text => print!("{text}"),
        Format::Structured => {
            println!(
                "{}",
                serde_json::to_string_pretty(value).expect("reports serialize")
            );
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Spectrum(common) | Command::Degree(common) => {
            let job = load_job(&common)?;
            let table = CharacterTable::for_group(&job.group).map_err(CliError::Pipeline)?;
            let config = common.degree_config();
            let degree_report =
                algebraic_degree(&job.digraph, &table, &config).map_err(CliError::Pipeline)?;
            let with_oracle = common.verify || job.document.options.verify;
            let doc = report::build_report(&job, &table, &degree_report, with_oracle)
                .map_err(CliError::Pipeline)?;
            emit(common.format, &doc, report::render_text(&doc));
            if let Some(oracle) = &doc.oracle {
                if !oracle.all_ok() {
                    return Ok(EXIT_ORACLE_MISMATCH);
                }
            }
            Ok(EXIT_OK)
        }
        Command::Integral(common) => {
            let job = load_job(&common)?;
            let table = CharacterTable::for_group(&job.group).map_err(CliError::Pipeline)?;
            let config = common.degree_config();
            let report =
                algebraic_degree(&job.digraph, &table, &config).map_err(CliError::Pipeline)?;
            #[derive(serde::Serialize)]
            struct IntegralDoc {
                integral: bool,
                degree: u64,
            }
            let doc = IntegralDoc {
                integral: report.integral,
                degree: report.degree,
            };
            emit(
                common.format,
                &doc,
                format!("integral: {} (deg = {})\n", doc.integral, doc.degree),
            );
            Ok(EXIT_OK)
        }
        Command::Chartable(common) => {
            let job = load_job(&common)?;
            let table = CharacterTable::for_group(&job.group).map_err(CliError::Pipeline)?;
            let doc = report::build_table_document(&job, &table);
            emit(common.format, &doc, report::render_table_text(&doc));
            Ok(EXIT_OK)
        }
        Command::Census(args) => {
            let job = load_job(&args.common)?;
            let table = CharacterTable::for_group(&job.group).map_err(CliError::Pipeline)?;
            let options = census::CensusOptions {
                max_classes: args.max_classes,
                undirected_only: args.undirected_only,
                integral_only: args.integral_only,
                max_rows: args.max_rows,
                with_oracle: args.common.verify || job.document.options.verify,
                config: args.common.degree_config(),
            };
            let doc = census::run_census(&job.group, &table, &options)
                .map_err(CliError::Census)?;
            let mismatches = doc.oracle_mismatches;
            emit(args.common.format, &doc, census::render_census_text(&doc));
            if mismatches > 0 {
                return Ok(EXIT_ORACLE_MISMATCH);
            }
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let job = load_job(&args.common)?;
            let table = CharacterTable::for_group(&job.group).map_err(CliError::Pipeline)?;
            let config = args.common.degree_config();
            match args.suite {
                None => {
                    let ok = verify_one(&job.digraph, &table, &config, args.tol)?;
                    println!(
                        "verify: {}",
                        if ok { "all checks passed" } else { "MISMATCH" }
                    );
                    Ok(if ok { EXIT_OK } else { EXIT_ORACLE_MISMATCH })
                }
                Some(count) => {
                    let mut state = args.seed ^ 0x9e3779b97f4a7c15;
                    let mut next = move || {
                        state ^= state << 13;
                        state ^= state >> 7;
                        state ^= state << 17;
                        state
                    };
                    let cc = job.group.conjugacy_classes();
                    let mut failures = 0usize;
                    for i in 0..count {
                        let mut pick = || {
                            let classes: Vec<usize> = (0..cc.count())
                                .filter(|_| next() % 3 == 0)
                                .collect();
                            GMultiset::from_classes(&job.group, &classes)
                        };
                        let digraph = SemiCayleyDigraph::new(
                            &job.group,
                            pick(),
                            pick(),
                            pick(),
                            pick(),
                        )
                        .expect("class unions validate");
                        if !verify_one(&digraph, &table, &config, args.tol)? {
                            failures += 1;
                            println!("suite digraph {i}: MISMATCH");
                        }
                    }
                    println!(
                        "suite: {count} digraphs over group of order {}, {failures} failures",
                        job.group.order()
                    );
                    Ok(if failures == 0 {
                        EXIT_OK
                    } else {
                        EXIT_ORACLE_MISMATCH
                    })
                }
            }
        }
    }
}

fn verify_one(
    digraph: &SemiCayleyDigraph,
    table: &CharacterTable,
    config: &DegreeConfig,
    tol: f64,
) -> Result<bool, CliError> {
    let report = algebraic_degree(digraph, table, config).map_err(CliError::Pipeline)?;
    let spectrum = oracle::spectrum_identity_check(digraph, table).map_err(CliError::Pipeline)?;
    let brute = oracle::integrality_bruteforce(digraph).map_err(CliError::Pipeline)?;
    let numeric =
        oracle::numeric_spectrum_check(digraph, table, tol).map_err(CliError::Pipeline)?;
    let ok = spectrum.matches && brute == report.integral && numeric.pass;
    if !ok {
        if let Some((i, lhs, rhs)) = &spectrum.first_mismatch {
            eprintln!("spectrum identity broke at coefficient {i}: {lhs} vs {rhs}");
        }
        if brute != report.integral {
            eprintln!(
                "integrality mismatch: pipeline {} vs brute force {brute}",
                report.integral
            );
        }
        if !numeric.pass {
            eprintln!(
                "numeric check failed: pairing {:.3e}, discriminant {:.3e}",
                numeric.worst_pairing, numeric.worst_discriminant
            );
        }
    }
    Ok(ok)
}
