//! `fracdec` command line.
//!
//! Exit codes: 0 on success, 1 when a decoder gives up (or returns the wrong
//! message under `--expect`), 2 for usage, configuration and I/O errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fracdec::bounds::{emit_figure, figure_csv, radius_report};
use fracdec::codeword::{ArrayCodeword, DownloadBundle, ErrorPattern};
use fracdec::harness::io::{
    read_json, to_json, write_json, write_text, CodewordFile, DownloadFile, FieldDescription, MessageFile,
    SchemeConfigFile,
};
use fracdec::harness::naive::compare_naive;
use fracdec::harness::oracle::{collision_search, list_decode, nearest};
use fracdec::harness::simulate::{simulate, ExperimentSpec, SupportMode};
use fracdec::harness::{HarnessError, Scheme, SchemeError, FORMAT_VERSION};
use fracdec::rational::{parse_rational, Rational};
use fracdec::enumeration_budget;

#[derive(Parser)]
#[command(name = "fracdec", version, about = "Fractional decoding of MDS array codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Naive and optimal decoding radii for given n, k and alpha.
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_parser = rational_arg)]
        alpha: Rational,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Normalized radius curves as CSV.
    Figure {
        #[arg(long, value_parser = rational_arg, default_value = "2/5")]
        rate: Rational,
        #[arg(long, default_value_t = 61)]
        steps: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace-projection scheme over GF(q^l).
    Ts {
        #[command(subcommand)]
        stage: Stage,
    },
    /// Folded Reed-Solomon scheme with prefix downloads.
    Frs {
        #[command(subcommand)]
        stage: Stage,
    },
    /// Seeded decoding sweep over error weights.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SupportMode::Sampled)]
        mode: SupportMode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare with decoding alpha*n whole columns.
    CompareNaive {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force oracles.
    Oracle {
        #[command(subcommand)]
        kind: OracleCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Args)]
struct ConfigArg {
    /// Scheme configuration (JSON).
    #[arg(long)]
    config: PathBuf,
}

#[derive(Subcommand)]
enum Stage {
    /// Encode a message given explicitly or drawn from a seed.
    Encode {
        #[command(flatten)]
        cfg: ConfigArg,
        /// Comma-separated canonical message symbols.
        #[arg(long, value_delimiter = ',', conflicts_with = "seed")]
        message: Option<Vec<u64>>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        /// Also write the message.
        #[arg(long)]
        message_out: Option<PathBuf>,
    },
    /// Add random nonzero errors to chosen or random columns.
    Corrupt {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long = "in")]
        input: PathBuf,
        /// 0-based column indices.
        #[arg(long, value_delimiter = ',', conflicts_with = "weight", required_unless_present = "weight")]
        positions: Option<Vec<usize>>,
        #[arg(long)]
        weight: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute the per-column downloads of a stored word.
    Download {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decode downloaded symbols back to the message.
    Decode {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Message file to compare against.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Codewords of RS(n, k) over GF(q^l) near a received word.
    Nearest {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        received: Vec<u64>,
        #[arg(long)]
        radius: usize,
    },
    /// Two codewords whose corrupted downloads coincide.
    Collision {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Folded RS messages within a column radius of a word.
    List {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        radius: usize,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), HarnessError> {
    match out {
        Some(p) => write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_scheme(path: &Path, expected: Option<&str>) -> Result<Scheme, HarnessError> {
    let file: SchemeConfigFile = read_json(path)?;
    if let Some(name) = expected {
        if file.scheme_name() != name {
            return Err(HarnessError::Config(format!(
                "{} describes a {} scheme, not {name}",
                path.display(),
                file.scheme_name()
            )));
        }
    }
    Scheme::from_file(&file)
}

fn check_scheme(found: &str, scheme: &Scheme, path: &Path) -> Result<(), HarnessError> {
    if found != scheme.name() {
        return Err(HarnessError::Config(format!("{} was produced by the {found} scheme", path.display())));
    }
    Ok(())
}

fn read_word(scheme: &Scheme, path: &Path) -> Result<ArrayCodeword, HarnessError> {
    let file: CodewordFile = read_json(path)?;
    check_scheme(&file.scheme, scheme, path)?;
    let word = ArrayCodeword::new(file.columns);
    word.validate(scheme.n(), scheme.l(), scheme.q())
        .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
    Ok(word)
}

fn word_file(scheme: &Scheme, word: ArrayCodeword) -> CodewordFile {
    CodewordFile { format: FORMAT_VERSION, scheme: scheme.name().into(), columns: word.into_columns() }
}

fn message_file(scheme: &Scheme, message: Vec<u64>) -> MessageFile {
    MessageFile { format: FORMAT_VERSION, scheme: scheme.name().into(), message }
}

fn run_stage(name: &str, stage: Stage) -> Result<(), HarnessError> {
    match stage {
        Stage::Encode { cfg, message, seed, out, message_out } => {
            let scheme = load_scheme(&cfg.config, Some(name))?;
            let message = match message {
                Some(m) => m,
                None => scheme.random_message(&mut ChaCha8Rng::seed_from_u64(seed.unwrap_or(0))),
            };
            let word = scheme.encode(&message)?;
            write_json(&out, &word_file(&scheme, word))?;
            if let Some(path) = message_out {
                write_json(&path, &message_file(&scheme, message))?;
            }
            Ok(())
        }
        Stage::Corrupt { cfg, input, positions, weight, seed, out } => {
            let scheme = load_scheme(&cfg.config, Some(name))?;
            let word = read_word(&scheme, &input)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (n, l, q) = (scheme.n(), scheme.l(), scheme.q());
            let errors = match (positions, weight) {
                (Some(mut pos), _) => {
                    pos.sort_unstable();
                    pos.dedup();
                    if let Some(&bad) = pos.iter().find(|&&i| i >= n) {
                        return Err(HarnessError::Config(format!("column {bad} out of range for n = {n}")));
                    }
                    ErrorPattern::random_on_support(&mut rng, &pos, l, q)
                }
                (None, Some(w)) => ErrorPattern::random(&mut rng, n, w, l, q).map_err(|e| HarnessError::Config(e.to_string()))?,
                (None, None) => return Err(HarnessError::Config("give --positions or --weight".into())),
            };
            let corrupted = errors.apply(&word, q).map_err(|e| HarnessError::Config(e.to_string()))?;
            write_json(&out, &word_file(&scheme, corrupted))
        }
        Stage::Download { cfg, input, out } => {
            let scheme = load_scheme(&cfg.config, Some(name))?;
            let word = read_word(&scheme, &input)?;
            let bundle = scheme.download(&word)?;
            let file = DownloadFile {
                format: FORMAT_VERSION,
                scheme: scheme.name().into(),
                per_column: bundle.per_column,
                downloaded: bundle.downloaded,
                accessed: bundle.accessed,
            };
            write_json(&out, &file)
        }
        Stage::Decode { cfg, input, out, expect } => {
            let scheme = load_scheme(&cfg.config, Some(name))?;
            let file: DownloadFile = read_json(&input)?;
            check_scheme(&file.scheme, &scheme, &input)?;
            let bundle = DownloadBundle { per_column: file.per_column, accessed: file.accessed, downloaded: file.downloaded };
            let message = scheme.decode(&bundle, enumeration_budget())?;
            let text = to_json(&message_file(&scheme, message.clone()));
            emit(out.as_deref(), &text)?;
            if let Some(path) = expect {
                let expected: MessageFile = read_json(&path)?;
                if expected.message != message {
                    return Err(SchemeError::DecodeFailure("decoded message differs from the expected one".into()).into());
                }
            }
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    let budget = enumeration_budget();
    match cli.command {
        Command::Bounds { n, k, alpha, format } => {
            let report = radius_report(n, k, alpha)?;
            let text = match format {
                Format::Text => report.to_text(),
                Format::Csv => report.to_csv(),
            };
            emit(None, &text)
        }
        Command::Figure { rate, steps, out } => {
            let rows = emit_figure(rate, steps)?;
            emit(out.as_deref(), &figure_csv(&rows))
        }
        Command::Ts { stage } => run_stage("ts", stage),
        Command::Frs { stage } => run_stage("frs", stage),
        Command::Simulate { config, weights, trials, seed, mode, out } => {
            let scheme = load_scheme(&config, None)?;
            let spec = ExperimentSpec { error_weights: weights, trials_per_weight: trials, seed, support_mode: mode };
            let report = simulate(&scheme, &spec, budget)?;
            emit(out.as_deref(), &to_json(&report))
        }
        Command::CompareNaive { config, t, seed, out } => {
            let scheme = load_scheme(&config, None)?;
            let record = compare_naive(&scheme, t, seed, budget)?;
            emit(out.as_deref(), &to_json(&record))
        }
        Command::Oracle { kind } => match kind {
            OracleCmd::Nearest { q, l, k, points, received, radius } => {
                let field = FieldDescription { q, l, modulus: None };
                let report = nearest(&field, k, &points, &received, radius, budget)?;
                emit(None, &to_json(&report))
            }
            OracleCmd::Collision { config, t } => {
                let scheme = load_scheme(&config, None)?;
                let (report, _) = collision_search(&scheme, t, budget)?;
                emit(None, &to_json(&report))
            }
            OracleCmd::List { config, input, radius } => {
                let scheme = load_scheme(&config, Some("frs"))?;
                let file: CodewordFile = read_json(&input)?;
                check_scheme(&file.scheme, &scheme, &input)?;
                let report = list_decode(&scheme, &ArrayCodeword::new(file.columns), radius, budget)?;
                emit(None, &to_json(&report))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_decode_failure() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
