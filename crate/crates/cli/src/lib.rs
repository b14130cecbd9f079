//! The `chowkit` command line: presentations, weight tables, verification
//! reports, and the golden-file corpus.
//!
//! Exit status is 0 on success, 1 on any error (bad flags included), and 2
//! when a verification finds a degree where the two ideals differ.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use chowkit_core::equivariant::{self, Parity};
use chowkit_core::hyperelliptic::{self, VerificationReport, CHAR_HYPOTHESIS};
use chowkit_core::{PolyRing, Presentation};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod text;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Genera covered by the golden corpus.
pub const GOLDEN_GENERA: std::ops::RangeInclusive<u32> = 2..=10;

pub const STATUS_OK: i32 = 0;
pub const STATUS_ERROR: i32 = 1;
pub const STATUS_DISCREPANCY: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "chowkit", version, about = "Integral Chow-ring presentations and their verification")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form presentation of the pointed hyperelliptic Chow ring.
    Present {
        #[arg(long)]
        g: u32,
    },
    /// Compare the pulled-back relation ideal with the closed form, degree by degree.
    Verify {
        #[arg(long)]
        g: u32,
        #[arg(long, env = "CHOWKIT_MAX_DEGREE", default_value_t = 10)]
        max_degree: u32,
    },
    /// Torus characters of the coefficients a_0..a_N and of s.
    Weights {
        #[arg(long)]
        g: u32,
    },
    /// Free presentation of the Chow ring of BT for a rank-r torus.
    ChowBt {
        #[arg(long)]
        rank: usize,
    },
    /// Check the even-genus pullback identity for every even g up to g-max.
    IdentityCheck {
        #[arg(long)]
        g_max: u32,
    },
    /// Check (or with --bless, rewrite) the verification golden files.
    Golden {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        bless: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { status: STATUS_OK, stdout, stderr: String::new() }
    }

    fn error(msg: impl std::fmt::Display) -> Self {
        Outcome { status: STATUS_ERROR, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

#[derive(Serialize)]
struct VariableInfo<'a> {
    name: &'a str,
    degree: u32,
}

fn ring_info(ring: &PolyRing) -> Vec<VariableInfo<'_>> {
    ring.variables().iter().map(|v| VariableInfo { name: &v.name, degree: v.degree }).collect()
}

/// ASCII names used in output, mapped to the usual symbols.
pub fn aliases(parity: Parity) -> BTreeMap<&'static str, &'static str> {
    match parity {
        Parity::Even => BTreeMap::from([("T0", "T₀"), ("T1", "T₁")]),
        Parity::Odd => BTreeMap::from([("t", "τ"), ("r", "ρ")]),
    }
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    tool_version: &'static str,
    aliases: BTreeMap<&'static str, &'static str>,
    #[serde(flatten)]
    report: &'a VerificationReport,
}

#[derive(Serialize)]
struct PresentDoc<'a> {
    tool_version: &'static str,
    g: u32,
    parity: Parity,
    char_hypothesis: &'static str,
    aliases: BTreeMap<&'static str, &'static str>,
    ring: Vec<VariableInfo<'a>>,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct WeightsDoc<'a> {
    g: u32,
    parity: Parity,
    rows: &'a [equivariant::WeightRow],
    consistency_check: bool,
}

#[derive(Serialize)]
struct ChowBtDoc<'a> {
    tool_version: &'static str,
    rank: usize,
    ring: Vec<VariableInfo<'a>>,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct IdentityEntry {
    g: u32,
    holds: bool,
}

#[derive(Serialize)]
struct IdentityDoc {
    tool_version: &'static str,
    g_max: u32,
    results: Vec<IdentityEntry>,
    holds: bool,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable document");
    s.push('\n');
    s
}

/// The JSON verification report exactly as `verify --format json` prints it.
pub fn verify_json(report: &VerificationReport) -> String {
    to_json(&VerifyDoc { tool_version: TOOL_VERSION, aliases: aliases(report.parity), report })
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(rendered),
                _ => Outcome { status: STATUS_ERROR, stdout: String::new(), stderr: rendered },
            }
        }
    }
}

pub fn run(cfg: &RunConfig) -> Outcome {
    let out = match &cfg.command {
        Command::Present { g } => present(*g, cfg.format),
        Command::Verify { g, max_degree } => verify(*g, *max_degree, cfg.format),
        Command::Weights { g } => weights(*g, cfg.format),
        Command::ChowBt { rank } => chow_bt(*rank, cfg.format),
        Command::IdentityCheck { g_max } => identity_check(*g_max, cfg.format),
        Command::Golden { dir, bless } => golden(dir, *bless),
    };
    match (out, &cfg.output) {
        (Ok(o), Some(path)) if o.status != STATUS_ERROR => match fs::write(path, &o.stdout) {
            Ok(()) => Outcome { stdout: String::new(), ..o },
            Err(e) => Outcome::error(format!("writing {}: {e}", path.display())),
        },
        (Ok(o), _) => o,
        (Err(e), _) => Outcome::error(e),
    }
}

type CmdResult = Result<Outcome, String>;

fn present(g: u32, format: Format) -> CmdResult {
    let pres = hyperelliptic::stated_presentation(g).map_err(|e| e.to_string())?;
    let parity = Parity::of(g);
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&PresentDoc {
            tool_version: TOOL_VERSION,
            g,
            parity,
            char_hypothesis: CHAR_HYPOTHESIS,
            aliases: aliases(parity),
            ring: ring_info(&pres.ring),
            generators: pres.relation_strings(),
        }),
        Format::Text => text::presentation(g, parity, &pres),
    }))
}

fn verify(g: u32, max_degree: u32, format: Format) -> CmdResult {
    let report = hyperelliptic::verify(g, max_degree).map_err(|e| e.to_string())?;
    let stdout = match format {
        Format::Json => verify_json(&report),
        Format::Text => text::report(&report),
    };
    let status = if report.all_equal() { STATUS_OK } else { STATUS_DISCREPANCY };
    Ok(Outcome { status, stdout, stderr: String::new() })
}

fn weights(g: u32, format: Format) -> CmdResult {
    let table = equivariant::action_weights(g).map_err(|e| e.to_string())?;
    let consistent = equivariant::weights_consistent(&table);
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&WeightsDoc {
            g,
            parity: Parity::of(g),
            rows: table.rows(),
            consistency_check: consistent,
        }),
        Format::Text => text::weights(g, &table, consistent),
    }))
}

fn chow_bt(rank: usize, format: Format) -> CmdResult {
    let pres: Presentation = equivariant::chow_bt(rank).map_err(|e| e.to_string())?;
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&ChowBtDoc {
            tool_version: TOOL_VERSION,
            rank,
            ring: ring_info(&pres.ring),
            generators: pres.relation_strings(),
        }),
        Format::Text => format!("{pres}\n"),
    }))
}

fn identity_check(g_max: u32, format: Format) -> CmdResult {
    let results = hyperelliptic::even_identity_results(g_max).map_err(|e| e.to_string())?;
    let holds = results.iter().all(|&(_, ok)| ok);
    let stdout = match format {
        Format::Json => to_json(&IdentityDoc {
            tool_version: TOOL_VERSION,
            g_max,
            results: results.iter().map(|&(g, holds)| IdentityEntry { g, holds }).collect(),
            holds,
        }),
        Format::Text => text::identity(&results),
    };
    Ok(Outcome { status: if holds { STATUS_OK } else { STATUS_DISCREPANCY }, stdout, stderr: String::new() })
}

pub fn golden_path(dir: &Path, g: u32) -> PathBuf {
    dir.join(format!("verify_g{g}.json"))
}

fn golden(dir: &Path, bless: bool) -> CmdResult {
    let mut lines = String::new();
    let mut stale = Vec::new();
    if bless {
        fs::create_dir_all(dir).map_err(|e| format!("creating {}: {e}", dir.display()))?;
    }
    for g in GOLDEN_GENERA {
        let report = hyperelliptic::verify(g, 10).map_err(|e| e.to_string())?;
        let expected = verify_json(&report);
        let path = golden_path(dir, g);
        if bless {
            fs::write(&path, &expected).map_err(|e| format!("writing {}: {e}", path.display()))?;
            lines.push_str(&format!("blessed {}\n", path.display()));
        } else {
            let ok = fs::read_to_string(&path).is_ok_and(|s| s == expected);
            lines.push_str(&format!("{} {}\n", if ok { "ok" } else { "MISMATCH" }, path.display()));
            if !ok {
                stale.push(path.display().to_string());
            }
        }
    }
    if stale.is_empty() {
        Ok(Outcome::ok(lines))
    } else {
        Ok(Outcome {
            status: STATUS_ERROR,
            stdout: lines,
            stderr: format!("error: golden files out of date: {}\n", stale.join(", ")),
        })
    }
}
