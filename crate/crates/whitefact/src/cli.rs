//! The `whitefact` command line.
//!
//! Exit codes: 0 on success, 1 when the input is well formed but violates a
//! precondition (or `verify`/`selftest` fails), 2 when it cannot be parsed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use whitefact_core::{AlphaLabel, FactorSystem, Factorization};

use crate::formats::{self, FormatError};
use crate::selftest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "whitefact", version, about = "Free products, their Bass-Serre tree and Whitehead factorization")]
pub struct Cli {
    /// Factor system JSON file; defaults to Z/2 * Z/2 * Z/2
    #[arg(long, global = true)]
    pub system: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for the randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// Arguments holding JSON may be given inline or as a file path.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a word to normal form
    Normalize { word: String },
    /// Tree distance between two vertices such as "U:[[1,1]]" or "C2:[]"
    Distance { from: String, to: String },
    /// Vertices on the geodesic between two vertices
    Geodesic { from: String, to: String },
    /// Volume of an α-label
    Volume {
        alpha: String,
        /// Centre word (defaults to the identity)
        #[arg(long)]
        at: Option<String>,
    },
    /// Reduce an α-label to the base and print the move trace
    Reduce { alpha: String },
    /// Factor a pure symmetric automorphism
    Factorize { auto: String },
    /// Check a factorization against an automorphism
    Verify { auto: String, factorization: String },
    /// Enumerate the ball of α- and A-classes up to a volume bound
    Explore {
        #[arg(long)]
        max_volume: usize,
    },
    /// Breadth-first ball of the tree
    Ball {
        #[arg(long)]
        radius: usize,
        /// Centre vertex (defaults to U:[])
        #[arg(long)]
        center: Option<String>,
    },
    /// Run the acceptance suite
    Selftest {
        /// Run only these criteria
        #[arg(long)]
        only: Vec<u8>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    /// Domain error, or a check that ran and failed; carries the output
    /// to print before exiting.
    Domain(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) | CliError::Failed(_) => 1,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        if e.is_parse() {
            CliError::Parse(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<whitefact_core::Error> for CliError {
    fn from(e: whitefact_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn read_source(arg: &str) -> Result<String, CliError> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg)
        .map_err(|source| FormatError::Io { path: arg.to_string(), source }.into())
}

fn load_system(path: Option<&PathBuf>) -> Result<FactorSystem, CliError> {
    match path {
        None => Ok(formats::default_system()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|source| FormatError::Io { path: p.display().to_string(), source })?;
            Ok(formats::parse_system(&text)?)
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn factorization_text(f: &Factorization) -> String {
    let mut out = String::new();
    for w in &f.whitehead {
        let targets: Vec<String> = w.targets().iter().map(|t| format!("G{}", t + 1)).collect();
        let _ = write!(out, "({{{}}}, {}) ∘ ", targets.join(","), w.x());
    }
    let phi: Vec<String> = f.factor.iter().map(|p| format!("{:?}", p.map)).collect();
    let _ = write!(out, "Φ({}) ∘ ι_{}", phi.join(", "), f.inner);
    out
}

fn explore(sys: &FactorSystem, bound: usize) -> Result<whitefact_core::SnBall, CliError> {
    let candidates = sys.ball_candidates(bound)?;
    let splitting: Vec<AlphaLabel> = candidates.into_par_iter().filter(|l| sys.is_splitting(l)).collect();
    Ok(sys.assemble_ball(bound, splitting))
}

fn no_dot(format: Format) -> Result<(), CliError> {
    if format == Format::Dot {
        return Err(CliError::Parse("--format dot applies only to explore and ball".into()));
    }
    Ok(())
}

/// Runs one command and returns its standard output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let fmt = cli.format;
    if let Command::Selftest { only } = &cli.command {
        no_dot(fmt)?;
        let outcomes: Vec<_> = if only.is_empty() {
            selftest::run_all(cli.seed)
        } else {
            let mut v = Vec::new();
            for &id in only {
                v.push(selftest::run(id, cli.seed).ok_or_else(|| CliError::Parse(format!("no criterion {id}")))?);
            }
            v
        };
        let text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
        return if outcomes.iter().all(selftest::Outcome::passed) { Ok(text) } else { Err(CliError::Failed(text)) };
    }
    let sys = load_system(cli.system.as_ref())?;
    let out = match &cli.command {
        Command::Normalize { word } => {
            no_dot(fmt)?;
            let w = formats::parse_word(&sys, &read_source(word)?)?;
            match fmt {
                Format::Text => w.to_string(),
                _ => formats::word_string(&w),
            }
        }
        Command::Distance { from, to } => {
            no_dot(fmt)?;
            let (p, q) = (formats::parse_vertex(&sys, from)?, formats::parse_vertex(&sys, to)?);
            sys.distance(&p, &q).to_string()
        }
        Command::Geodesic { from, to } => {
            no_dot(fmt)?;
            let (p, q) = (formats::parse_vertex(&sys, from)?, formats::parse_vertex(&sys, to)?);
            let names: Vec<String> = sys.geodesic(&p, &q).iter().map(formats::vertex_name).collect();
            match fmt {
                Format::Text => names.join(" - "),
                _ => json(&names),
            }
        }
        Command::Volume { alpha, at } => {
            no_dot(fmt)?;
            let l = formats::parse_alpha(&sys, &read_source(alpha)?)?;
            let x = match at {
                Some(w) => formats::parse_word(&sys, &read_source(w)?)?,
                None => sys.one(),
            };
            sys.volume(&l, &x).to_string()
        }
        Command::Reduce { alpha } => {
            no_dot(fmt)?;
            let l = formats::parse_alpha(&sys, &read_source(alpha)?)?;
            let r = sys.reduce_to_base(&l)?;
            match fmt {
                Format::Text => {
                    let mut s = String::new();
                    for (m, next) in r.moves.iter().zip(&r.labels[1..]) {
                        let _ = writeln!(
                            s,
                            "G{} folds slot {} by {}: volume {} -> {}, now {next}",
                            m.i + 1,
                            m.j + 1,
                            m.a,
                            m.vol_before,
                            m.vol_after
                        );
                    }
                    let _ = write!(s, "{} moves", r.moves.len());
                    s
                }
                _ => json(&formats::moves_to_json(&r.moves)),
            }
        }
        Command::Factorize { auto } => {
            no_dot(fmt)?;
            let psi = formats::parse_auto(&sys, &read_source(auto)?)?;
            let f = sys.factorize(&psi)?;
            match fmt {
                Format::Text => factorization_text(&f),
                _ => json(&formats::factorization_to_json(&f)),
            }
        }
        Command::Verify { auto, factorization } => {
            no_dot(fmt)?;
            let psi = formats::parse_auto(&sys, &read_source(auto)?)?;
            let f = formats::parse_factorization(&sys, &read_source(factorization)?)?;
            if sys.verify_factorization(&psi, &f) {
                "OK".to_string()
            } else {
                return Err(CliError::Failed("FAIL".into()));
            }
        }
        Command::Explore { max_volume } => {
            let ball = explore(&sys, *max_volume)?;
            match fmt {
                Format::Json => json(&formats::sn_ball_to_json(&ball)),
                Format::Dot => formats::sn_ball_to_dot(&ball).trim_end().to_string(),
                Format::Text => {
                    let report = sys.check_ball(&ball);
                    let mut s = format!(
                        "volume <= {}: {} α-classes, {} A-classes, {} edges, check {}",
                        max_volume,
                        report.alpha_classes,
                        report.a_classes,
                        report.edges,
                        if report.passed() { "passed" } else { "FAILED" }
                    );
                    for f in &report.failures {
                        let _ = write!(s, "\n  {f:?}");
                    }
                    s
                }
            }
        }
        Command::Ball { radius, center } => {
            let c = match center {
                Some(v) => formats::parse_vertex(&sys, v)?,
                None => sys.u_vertex(sys.one()),
            };
            let ball = sys.bfs_ball(&c, *radius)?;
            match fmt {
                Format::Json => json(&formats::tree_ball_to_json(&ball)),
                Format::Dot => formats::tree_ball_to_dot(&ball).trim_end().to_string(),
                Format::Text => format!(
                    "radius {} around {}: {} vertices, {} edges",
                    radius,
                    formats::vertex_name(&c),
                    ball.vertices.len(),
                    ball.edge_count()
                ),
            }
        }
        Command::Selftest { .. } => unreachable!("handled above"),
    };
    Ok(out)
}

/// Parses `args`, runs the command, prints its output and returns the exit
/// code.
pub fn main<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Err(msg) = crate::configure_threads() {
        eprintln!("error: {msg}");
        return 2;
    }
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            0
        }
        Err(e) => {
            match &e {
                CliError::Parse(m) | CliError::Domain(m) => eprintln!("error: {m}"),
                CliError::Failed(out) => println!("{}", out.trim_end()),
            }
            e.exit_code()
        }
    }
}
