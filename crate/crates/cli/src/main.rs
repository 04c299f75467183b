//! `officers`: run the proof steps and the exhaustive search from the shell.
//!
//! Exit status is 0 when the report passes, 1 when a check fails and 2 for
//! usage or input errors. Reports go to stdout, progress to stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use officers::affine::{bruck_ryser, AffineError, IncidencePlane};
use officers::designs::{
    format_graeco_pair, orthogonality_defect, pair_from_squares, parse_graeco_pair, parse_latin_square,
    parse_net_json, DesignError, GraecoPair, NetFile,
};
use officers::mols_search::{OracleOptions, Progress};
use officers::netcode::{build_code, lemma_bound};
use officers::parallax::enumeration_certificate;
use officers::report::{Certificate, ProofReport};
use officers::verify::{self, Fault, VerifyOptions, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "officers", version, about = "Machine-checked proofs about orthogonal Latin squares of order 6")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Suppress progress output on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    /// Seed for the randomized replays.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Corrupt the weight formula (for testing the failure path).
    #[arg(long, hide = true, global = true)]
    inject_fault: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Officers,
    Affine,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Run a proof pipeline.
    Verify {
        #[arg(value_enum)]
        target: Target,
        /// Worker threads for the order-6 search in `verify all`.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Search every reduced Latin square of one order for an orthogonal mate.
    Oracle {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write found (square, mate) pairs to this file.
        #[arg(long)]
        dump_mates: Option<PathBuf>,
        /// How many pairs to keep for --dump-mates.
        #[arg(long, default_value_t = 100)]
        max_mates: usize,
    },
    /// Parallax calculus.
    Parallax {
        #[command(subcommand)]
        action: ParallaxAction,
    },
    /// Latin square files.
    Latin {
        #[command(subcommand)]
        action: FileAction,
    },
    /// Graeco-Latin pairs.
    Pair {
        #[command(subcommand)]
        action: PairAction,
    },
    /// Net files.
    Net {
        #[command(subcommand)]
        action: FileAction,
    },
    /// Binary codes of nets.
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Affine plane files.
    Plane {
        #[command(subcommand)]
        action: PlaneAction,
    },
    /// Whether the Bruck-Ryser test rules out a plane of order N.
    BruckRyser { n: u64 },
}

#[derive(Subcommand)]
enum ParallaxAction {
    /// Enumerate parallaxes of possible zero-weight line sets.
    Enumerate,
}

#[derive(Subcommand)]
enum FileAction {
    Validate { file: PathBuf },
}

#[derive(Subcommand)]
enum PairAction {
    /// Report repeated and missing symbol pairs. With one file, cells are
    /// `Xy` tokens; with two, each file is one square.
    Defect { file: PathBuf, file2: Option<PathBuf> },
}

#[derive(Subcommand)]
enum CodeAction {
    Report { file: PathBuf },
}

#[derive(Subcommand)]
enum PlaneAction {
    Check { file: PathBuf },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Turns axiom violations into a failing certificate and malformed input
/// into an error.
fn design_result<T>(
    id: &str,
    claim: &str,
    res: Result<T, DesignError>,
    ok: impl FnOnce(T, Certificate) -> Certificate,
) -> Result<Certificate, CliError> {
    let cert = Certificate::new(id, claim);
    match res {
        Ok(v) => Ok(ok(v, cert)),
        Err(e) if e.is_violation() => Ok(cert.with_check(e.to_string(), false)),
        Err(e) => Err(input(e)),
    }
}

fn progress_printer(quiet: bool) -> Option<Box<dyn Fn(Progress) + Sync>> {
    if quiet {
        return None;
    }
    Some(Box::new(|p: Progress| {
        let step = p.tasks_total.div_ceil(20).max(1);
        if p.tasks_done % step == 0 || p.tasks_done == p.tasks_total {
            eprintln!("  {}/{} tasks, {} squares", p.tasks_done, p.tasks_total, p.squares_done);
        }
    }))
}

fn run(cli: &Cli) -> Result<ProofReport, CliError> {
    let verify_opts = VerifyOptions {
        seed: cli.seed,
        fault: cli.inject_fault.then_some(Fault::WeightFormula),
        ..Default::default()
    };
    let single = |command: &str, cert: Certificate| ProofReport::new(command, vec![cert]);
    let report = match &cli.command {
        Command::Verify { target, jobs } => match target {
            Target::Officers => verify::verify_officers(&verify_opts),
            Target::Affine => verify::verify_affine(),
            Target::All => {
                let printer = progress_printer(cli.quiet);
                let opts = OracleOptions {
                    jobs: (*jobs).max(1),
                    keep_mates: 1,
                    progress: printer.as_deref(),
                };
                verify::verify_all(&verify_opts, &opts)
            }
        },
        Command::Oracle {
            order,
            jobs,
            dump_mates,
            max_mates,
        } => {
            let printer = progress_printer(cli.quiet);
            let opts = OracleOptions {
                jobs: (*jobs).max(1),
                keep_mates: if dump_mates.is_some() { *max_mates } else { 1 },
                progress: printer.as_deref(),
            };
            let report = verify::run_oracle(*order, &opts).map_err(input)?;
            if let Some(path) = dump_mates {
                dump(path, &report)?;
            }
            report
        }
        Command::Parallax {
            action: ParallaxAction::Enumerate,
        } => single("parallax enumerate", enumeration_certificate()),
        Command::Latin {
            action: FileAction::Validate { file },
        } => {
            let text = read(file)?;
            let cert = design_result(
                "latin.validate",
                "the file holds a Latin square",
                parse_latin_square(&text),
                |sq, c| {
                    let n = sq.square.order();
                    c.with_check(format!("order {n}, every row and column a permutation"), true)
                        .payload(json!({"order": n, "reduced": sq.square.is_reduced(), "symbols": sq.alphabet.tokens()}))
                },
            )?;
            single("latin validate", cert)
        }
        Command::Pair {
            action: PairAction::Defect { file, file2 },
        } => {
            let loaded = match file2 {
                None => parse_graeco_pair(&read(file)?),
                Some(f2) => {
                    let (a, b) = (read(file)?, read(f2)?);
                    parse_latin_square(&a)
                        .and_then(|a| Ok((a, parse_latin_square(&b)?)))
                        .and_then(|(a, b)| pair_from_squares(a, b))
                }
            };
            let cert = design_result("pair.defect", "the two squares are orthogonal", loaded, |p, c| {
                let defect = orthogonality_defect(&p.pair);
                let names = |v: Vec<(u8, u8)>| v.into_iter().map(|q| p.name(q)).collect::<Vec<_>>();
                let duplicated = names(defect.duplicated.iter().map(|d| d.pair).collect());
                let missing = names(defect.missing.clone());
                let mut c = c.with_check(
                    format!("duplicated [{}], missing [{}]", duplicated.join(" "), missing.join(" ")),
                    defect.is_empty(),
                );
                c.check(
                    "surplus over duplicated pairs equals the number of missing pairs",
                    defect.excess() == defect.missing.len(),
                );
                c.payload(json!({"order": p.pair.order(), "duplicated": duplicated, "missing": missing}))
            })?;
            single("pair defect", cert)
        }
        Command::Net {
            action: FileAction::Validate { file },
        } => {
            let cert = design_result("net.validate", "the file holds a net", parse_net_json(&read(file)?), |net, c| {
                c.with_check(
                    format!(
                        "({}, {}) net: every class partitions the points, lines of different classes meet once",
                        net.order(),
                        net.num_classes()
                    ),
                    true,
                )
                .payload(json!({"n": net.order(), "k": net.num_classes()}))
            })?;
            single("net validate", cert)
        }
        Command::Code {
            action: CodeAction::Report { file },
        } => {
            let cert = design_result("code.report", "code and hull dimensions", parse_net_json(&read(file)?), |net, c| {
                let code = build_code(&net);
                let r = code.report();
                let mut c = c.with_check(
                    format!("dim C = {} ≤ nk − (k − 1) = {}", r.code_dim, r.n * r.k - r.k.saturating_sub(1)),
                    r.code_dim + r.k.saturating_sub(1) <= r.n * r.k,
                );
                c.check(format!("dim H = {} ≤ dim C", r.hull_dim), r.hull_dim <= r.code_dim);
                if let Ok(bound) = lemma_bound(r.n, r.k) {
                    c.check(format!("dim C ≤ (n² + 4)/2 = {bound}"), r.code_dim <= bound);
                    c.check("dim C = dim H + 4", r.code_dim == r.hull_dim + 4);
                }
                c.payload(json!(r))
            })?;
            single("code report", cert)
        }
        Command::Plane {
            action: PlaneAction::Check { file },
        } => {
            let text = read(file)?;
            let parsed: NetFile = serde_json::from_str(&text).map_err(input)?;
            let cert = Certificate::new("plane.check", "the file holds an affine plane");
            let cert = match IncidencePlane::from_classes(parsed.n, parsed.classes) {
                Ok(p) => cert
                    .with_check(
                        format!(
                            "order {}: {} points, {} lines in {} classes, two points on exactly one line",
                            p.order(),
                            p.num_points(),
                            p.num_lines(),
                            p.num_classes()
                        ),
                        p.check_two_points_one_line(),
                    )
                    .payload(json!({"n": p.order(), "classes": p.num_classes()})),
                Err(AffineError::Design(e)) if !e.is_violation() => return Err(input(e)),
                Err(e) => cert.with_check(e.to_string(), false),
            };
            single("plane check", cert)
        }
        Command::BruckRyser { n } => {
            if *n < 2 {
                return Err(CliError::Input("order must be at least 2".into()));
            }
            let br = bruck_ryser(*n);
            let mut c = Certificate::new("bruck-ryser", format!("Bruck-Ryser test for order {n}")).inputs(n);
            let reason = match (br.residue_mod_4, br.two_squares) {
                (r, _) if !matches!(r, 1 | 2) => format!("{n} ≡ {r} (mod 4): test does not apply"),
                (_, Some((a, b))) => format!("{n} = {a}² + {b}²: not excluded"),
                (r, None) => format!("{n} ≡ {r} (mod 4) and is not a sum of two squares: excluded"),
            };
            let replay = br.two_squares.is_none_or(|(a, b)| a * a + b * b == *n);
            c.check(reason, replay);
            single("bruck-ryser", c.payload(json!(br)))
        }
    };
    Ok(report)
}

fn dump(path: &Path, report: &ProofReport) -> Result<(), CliError> {
    let mut out = String::new();
    let pairs = report.steps[0].payload["sample_mates"].as_array().cloned().unwrap_or_default();
    for p in pairs {
        let square = serde_json::from_value(p["square"].clone()).map_err(input)?;
        let mate = serde_json::from_value(p["mate"].clone()).map_err(input)?;
        let pair = GraecoPair::new(square, mate).map_err(input)?;
        out.push_str(&format!("# square {}\n", p["index"]));
        out.push_str(&format_graeco_pair(&pair));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if report.passed() {
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
