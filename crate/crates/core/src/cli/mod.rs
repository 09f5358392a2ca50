//! The `spdet` command line: `check`, `fuzz`, `dot` and `print`.
//!
//! Exit codes: 0 the property holds, 1 it fails, 2 usage or input error,
//! 3 the observer budget ran out before an answer was found.

pub mod dot;
pub mod format;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::automaton::SpecPairs;
use crate::constructions::{
    build_detector, build_epsilon_composition, build_observer, build_self_composition,
    ConstructionError, Observer, DEFAULT_MAX_OBSERVER_NODES,
};
use crate::fuzz::{self, FuzzConfig};
use crate::verify::{self, Verdict};
use dot::{export_dot, DotOptions, Structure};
use format::{parse_fsa, parse_spec_arg, FsaDocument};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "spdet",
    version,
    about = "Strong periodic (D-)detectability checker"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide a property and print a JSON report.
    Check(CheckArgs),
    /// Cross-check all procedures on random automata.
    Fuzz(FuzzArgs),
    /// Print a construction in Graphviz format.
    Dot(DotArgs),
    /// Print a file in canonical form.
    Print { file: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PropertyArg {
    Spd,
    Spdd,
    Sd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Observer,
    Detector,
    Cc,
    All,
    LegacyDetector,
    LegacyObserver,
}

#[derive(Debug, Args)]
struct CheckArgs {
    property: PropertyArg,
    file: PathBuf,
    /// Defaults to detector for spd, observer for spdd, legacy-detector for sd.
    #[arg(long)]
    method: Option<MethodArg>,
    /// Pairs to tell apart, e.g. "(x0,x2)"; replaces the file's `spec` lines.
    #[arg(long)]
    spec: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_OBSERVER_NODES)]
    max_observer_nodes: usize,
    /// Single-line JSON.
    #[arg(long)]
    compact: bool,
}

#[derive(Debug, Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    max_states: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructionArg {
    Observer,
    Detector,
    Cc,
    CcEpsilon,
}

#[derive(Debug, Args)]
struct DotArgs {
    construction: ConstructionArg,
    file: PathBuf,
    #[arg(long, default_value_t = DEFAULT_MAX_OBSERVER_NODES)]
    max_observer_nodes: usize,
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_HOLDS
            };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Check(a) => check(a, out, err),
        Command::Fuzz(a) => run_fuzz(a, out),
        Command::Dot(a) => run_dot(a, out),
        Command::Print { file } => load(&file).map(|doc| {
            let _ = write!(out, "{doc}");
            EXIT_HOLDS
        }),
    };
    result.unwrap_or_else(|(code, msg)| {
        let _ = writeln!(err, "spdet: {msg}");
        code
    })
}

type Outcome = Result<i32, (i32, String)>;

fn usage(msg: impl Into<String>) -> (i32, String) {
    (EXIT_USAGE, msg.into())
}

pub fn load(path: &Path) -> Result<FsaDocument, (i32, String)> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let mut doc = parse_fsa(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    doc.path = Some(path.to_path_buf());
    Ok(doc)
}

fn check(a: CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let doc = load(&a.file)?;
    let fsa = &doc.fsa;
    let budget = a.max_observer_nodes;

    let spec = if a.spec.is_empty() {
        doc.spec.clone()
    } else {
        let mut spec = SpecPairs::new();
        for s in &a.spec {
            for p in parse_spec_arg(fsa, s).map_err(usage)?.iter() {
                spec.insert(p.0, p.1);
            }
        }
        Some(spec)
    };

    use MethodArg as M;
    let verdicts: Vec<Verdict> = match a.property {
        PropertyArg::Spd => match a.method.unwrap_or(M::Detector) {
            M::Observer => vec![verify::check_spd_observer(fsa, budget)],
            M::Detector => vec![verify::check_spd_detector(fsa)],
            M::Cc => vec![verify::check_spd_cc(fsa)],
            M::All => vec![
                verify::check_spd_observer(fsa, budget),
                verify::check_spd_detector(fsa),
                verify::check_spd_cc(fsa),
            ],
            M::LegacyDetector => vec![verify::legacy_check_spd_detector(fsa)],
            M::LegacyObserver => return Err(usage("legacy-observer applies to spdd only")),
        },
        PropertyArg::Spdd => {
            let spec = spec
                .as_ref()
                .ok_or_else(|| usage("spdd needs --spec or `spec` lines in the file"))?;
            match a.method.unwrap_or(M::Observer) {
                M::Observer | M::All => vec![verify::check_spdd_observer(fsa, spec, budget)],
                M::LegacyObserver => vec![verify::legacy_check_spdd_observer(fsa, spec, budget)],
                m => {
                    return Err(usage(format!(
                        "spdd is decided on the observer; {m:?} is not available"
                    )))
                }
            }
        }
        PropertyArg::Sd => match a.method.unwrap_or(M::LegacyDetector) {
            M::LegacyDetector => vec![verify::legacy_check_sd_detector(fsa)],
            _ => return Err(usage("sd is only available as legacy-detector")),
        },
    };

    let known: Vec<bool> = verdicts.iter().filter_map(|v| v.holds).collect();
    let holds = known.first().copied();
    let methods_agree = known.iter().all(|&h| Some(h) == holds);
    let exit_code = match holds {
        None => EXIT_UNKNOWN,
        Some(true) if methods_agree => EXIT_HOLDS,
        Some(_) => EXIT_FAILS,
    };

    let assumption1 = fsa.check_assumption1();
    let legacy = verdicts.iter().any(|v| v.assumption1.is_some());
    if legacy && !assumption1.satisfied() {
        let _ = writeln!(
            err,
            "spdet: warning: {} is not deadlock-free and divergence-free; the legacy verdict may be wrong",
            a.file.display()
        );
    }

    let report = json!({
        "property": match a.property {
            PropertyArg::Spd => "spd",
            PropertyArg::Spdd => "spdd",
            PropertyArg::Sd => "sd-legacy",
        },
        "file": a.file.display().to_string(),
        "holds": holds,
        "exit_code": exit_code,
        "methods_agree": methods_agree,
        "spec": spec.as_ref().map(|s| report::spec_json(fsa, s)),
        "assumption1": report::assumption1_json(fsa, &assumption1),
        "assumption1_violated": !assumption1.satisfied(),
        "verdicts": verdicts.iter().map(|v| report::verdict_json(fsa, v)).collect::<Vec<_>>(),
    });
    let text = if a.compact {
        serde_json::to_string(&report)
    } else {
        serde_json::to_string_pretty(&report)
    }
    .expect("json values serialize");
    let _ = writeln!(out, "{text}");
    Ok(exit_code)
}

fn run_fuzz(a: FuzzArgs, out: &mut dyn Write) -> Outcome {
    let cfg = FuzzConfig {
        count: a.count,
        seed: a.seed,
        max_states: a.max_states,
    };
    let report = fuzz::run(&cfg).map_err(|e| usage(e.to_string()))?;
    let text = serde_json::to_string_pretty(&report).expect("json values serialize");
    let _ = writeln!(out, "{text}");
    Ok(if report.is_clean() {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    })
}

fn run_dot(a: DotArgs, out: &mut dyn Write) -> Outcome {
    let doc = load(&a.file)?;
    let fsa = &doc.fsa;
    let name = |n: &str| DotOptions {
        name: n.into(),
        ..Default::default()
    };
    let text = match a.construction {
        ConstructionArg::Observer => {
            let obs = match build_observer(fsa, a.max_observer_nodes) {
                Ok(o) => o,
                Err(ConstructionError::EmptyInitial) => Observer::default(),
                Err(e) => return Err((EXIT_UNKNOWN, e.to_string())),
            };
            export_dot(fsa, Structure::Observer(&obs), &name("observer"))
        }
        ConstructionArg::Detector => export_dot(
            fsa,
            Structure::Detector(&build_detector(fsa)),
            &name("detector"),
        ),
        ConstructionArg::Cc => export_dot(
            fsa,
            Structure::Composition(&build_self_composition(fsa)),
            &name("cc"),
        ),
        ConstructionArg::CcEpsilon => export_dot(
            fsa,
            Structure::Composition(&build_epsilon_composition(fsa)),
            &name("cc_epsilon"),
        ),
    };
    let _ = write!(out, "{text}");
    Ok(EXIT_HOLDS)
}
