//! Command-line front end for `starsurg`.

pub mod commands;
pub mod input;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use starsurg::mcg::relations::RelationParams;
use starsurg::Error;

use commands::{HomeoArgs, Outcome, RelationArgs, Settings};
use input::InputDocument;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "starsurg", version, about = "Exact checks for star-shaped rational blowdowns")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for the search (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Coset budget for fundamental group enumeration.
    #[arg(long, global = true, default_value_t = starsurg::handlebody::DEFAULT_MAX_COSETS)]
    pub max_cosets: usize,
    /// Compile twists with the opposite gathering.
    #[arg(long, global = true)]
    pub mirror_convention: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a named relation or a pair of twist words.
    VerifyRelation(VerifyRelation),
    /// Homology, fundamental group and boundary of a Lefschetz filling.
    AnalyzeFilling { file: PathBuf },
    /// Invariants, monodromy word and characteristic orbits of a star plumbing.
    AnalyzePlumbing { file: PathBuf },
    /// Check a sphere configuration, or the components of a singular fiber.
    VerifyEmbedding { file: PathBuf },
    /// Kodaira dimension of the surgered manifold.
    Kodaira { file: PathBuf },
    /// Run the Seiberg-Witten basic class search.
    SwSearch {
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Checks for the knot surgery family.
    KnotSurgery {
        #[arg(long, default_value_t = 2)]
        n: u64,
    },
    /// Euler characteristic and signature after a surgery.
    HomeoType(HomeoType),
}

#[derive(Debug, Args)]
pub struct VerifyRelation {
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Blocks such as `1,2/3/4,5`.
    #[arg(long)]
    pub blocks: Option<String>,
    #[arg(long)]
    pub holes: Option<usize>,
    /// Run every relation in the suite.
    #[arg(long)]
    pub all: bool,
    /// Also check that every single-hole perturbation breaks the relation.
    #[arg(long)]
    pub perturbations: bool,
    /// A twistword document to check instead of a named relation.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HomeoType {
    /// Blowups of the ambient rational surface.
    #[arg(long, default_value_t = 11)]
    pub blowups: usize,
    /// Ambient `chi,sigma`, overriding `--blowups`.
    #[arg(long, value_parser = parse_pair)]
    pub ambient: Option<(i64, i64)>,
    /// One of s1..s4, q, u, k.
    #[arg(long)]
    pub surgery: Option<String>,
    #[arg(long, value_parser = parse_pair)]
    pub plumbing: Option<(i64, i64)>,
    #[arg(long, value_parser = parse_pair)]
    pub filling: Option<(i64, i64)>,
    /// Expected `chi,sigma` of the result.
    #[arg(long, value_parser = parse_pair)]
    pub expect: Option<(i64, i64)>,
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected `a,b`")?;
    let num = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(a)?, num(b)?))
}

fn parse_blocks(s: &str) -> Result<Vec<Vec<usize>>, Error> {
    s.split('/')
        .map(|b| {
            b.split(',')
                .map(|h| {
                    h.trim().parse().map_err(|_| Error::SchemaError {
                        field: "--blocks".into(),
                        reason: format!("`{h}` is not a hole label"),
                    })
                })
                .collect()
        })
        .collect()
}

fn wrong_kind(doc: &InputDocument, want: &str) -> Error {
    Error::SchemaError {
        field: "kind".into(),
        reason: format!("expected {want}, found `{}`", doc.kind()),
    }
}

/// Runs one command, returning its outcome or the error that stopped it.
pub fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let settings = Settings {
        workers: cli.workers,
        max_cosets: cli.max_cosets,
        mirror: cli.mirror_convention,
    };
    match &cli.command {
        Command::VerifyRelation(a) => {
            if let Some(path) = &a.file {
                return match input::read(path)? {
                    InputDocument::TwistWord(d) => commands::compare_words(&d, &settings),
                    other => Err(wrong_kind(&other, "`twistword`")),
                };
            }
            let params = RelationParams {
                i: a.i,
                m: a.m,
                blocks: a.blocks.as_deref().map(parse_blocks).transpose()?,
                holes: a.holes,
            };
            commands::verify_relation(
                &RelationArgs {
                    name: a.name.clone(),
                    params,
                    perturbations: a.perturbations,
                    all: a.all,
                },
                &settings,
            )
        }
        Command::AnalyzeFilling { file } => match input::read(file)? {
            InputDocument::Handlebody(d) => commands::analyze_filling(&d, &settings),
            other => Err(wrong_kind(&other, "`handlebody`")),
        },
        Command::AnalyzePlumbing { file } => match input::read(file)? {
            InputDocument::Plumbing(d) => commands::analyze_plumbing(&d),
            other => Err(wrong_kind(&other, "`plumbing`")),
        },
        Command::VerifyEmbedding { file } => match input::read(file)? {
            InputDocument::Configuration(d) => commands::verify_embedding(&d),
            InputDocument::ClassList(d) => commands::fiber_check(&d),
            other => Err(wrong_kind(&other, "`configuration` or `class_list`")),
        },
        Command::Kodaira { file } => match input::read(file)? {
            InputDocument::Configuration(d) => commands::kodaira(&d),
            other => Err(wrong_kind(&other, "`configuration`")),
        },
        Command::SwSearch { config } => {
            let doc = match config {
                None => input::SearchConfigDoc::default(),
                Some(p) => match input::read(p)? {
                    InputDocument::SearchConfig(d) => d,
                    other => return Err(wrong_kind(&other, "`search_config`")),
                },
            };
            commands::sw_search(&doc, &settings)
        }
        Command::KnotSurgery { n } => commands::knot_surgery(*n),
        Command::HomeoType(a) => {
            let ambient = a.ambient.unwrap_or_else(|| starsurg::catalog::rational_surface(a.blowups));
            let (plumbing, filling) = match (&a.surgery, a.plumbing, a.filling) {
                (Some(s), None, None) => commands::surgery_pieces(s)?,
                (None, Some(p), Some(f)) => (p, f),
                _ => {
                    return Err(Error::SchemaError {
                        field: "--surgery".into(),
                        reason: "give `--surgery` or both `--plumbing` and `--filling`".into(),
                    })
                }
            };
            commands::homeo_type(&HomeoArgs {
                ambient,
                plumbing,
                filling,
                expect: a.expect,
            })
        }
    }
}

/// Whether an error means a check could not be completed rather than bad input.
pub fn is_check_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::WallAmbiguity(..) | Error::EnumerationBudgetExceeded(..) | Error::NotNegativeDefinite | Error::KodairaUndefined { .. }
    )
}

/// Runs the command and prints its report; returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(o) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&o.report).expect("reports serialize"));
            } else {
                print!("{}", o.table);
                println!("{}", if o.pass { "PASS" } else { "FAIL" });
            }
            if o.pass {
                EXIT_PASS
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            let code = if is_check_failure(&e) { EXIT_CHECK_FAILED } else { EXIT_INPUT_ERROR };
            if cli.json {
                let v = serde_json::json!({"error": e.to_string(), "pass": false});
                println!("{}", serde_json::to_string_pretty(&v).expect("errors serialize"));
            }
            eprintln!("error: {e}");
            code
        }
    }
}
