//! Command-line front end. Vertices are numbered from 1 on the command line
//! and in every report.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use mutfin_core::unfolding;
use mutfin_core::{
    classify, decide_admissible, enumerate_class, fast_admissible, is_mutation_finite_mutable, standard_triangulation,
    unfold_extended, CoefficientVector, Error as CoreError, ExchangeMatrix, FastVerdict, Finiteness, MutationSequence,
    SearchConfig, SurfaceSpec, Verdict, Violation,
};

pub mod dot;
pub mod matrix_file;

pub use matrix_file::ParseError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CAPS: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mutfin", version, about = "Mutation classes and admissible coefficient vectors")]
pub struct Cli {
    /// Seed for the exploration order of the canonical labeling search.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cap on the number of class members (overrides MUTFIN_MAX_MEMBERS).
    #[arg(long, global = true)]
    max_members: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply a mutation sequence and print the resulting matrix file.
    Mutate {
        input: Input,
        /// Vertices to mutate at, applied left to right (`-k 1,3` or `-k 1 -k 3`).
        #[arg(short = 'k', value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Size of the mutation class of the whole matrix.
    Class { input: Input },
    /// Mutation-finiteness of the principal part.
    Finite { input: Input },
    /// Type label of the mutation class of the principal part.
    Classify { input: Input },
    /// Decide whether the frozen rows keep the class finite.
    Admissible {
        input: Input,
        /// Use only the closed-form shortcuts.
        #[arg(long)]
        fast: bool,
    },
    /// Quiver of the standard triangulation of a surface.
    Standard(StandardArgs),
    /// Show a named unfolding, or unfold a coefficient vector through it.
    Unfold {
        /// Fixture name; omit with --list.
        name: Option<String>,
        /// Base coefficients, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Option<Vec<i64>>,
        #[arg(long)]
        list: bool,
    },
    /// Graphviz rendering of the matrix.
    ExportDot { input: Input },
}

#[derive(Debug, Args)]
struct StandardArgs {
    #[arg(long, default_value_t = 0)]
    genus: usize,
    /// Marked points on each boundary component, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    boundary: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    punctures: usize,
    /// Also write the quiver as a matrix file.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// A matrix file path, or `-` for standard input.
#[derive(Clone, Debug)]
struct Input(PathBuf);

impl From<&str> for Input {
    fn from(s: &str) -> Self {
        Input(PathBuf::from(s))
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{}: {0}", .0.name())]
    Domain(CoreError),
    #[error("UnknownFixture: no unfolding named {0:?}")]
    UnknownFixture(String),
    #[error("FrozenIndex: vertex {0} is not among the mutable vertices 1..={1}")]
    Vertex(usize, usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => EXIT_PARSE,
            CliError::Domain(CoreError::CapsExceeded) => EXIT_CAPS,
            CliError::Domain(_) | CliError::UnknownFixture(_) | CliError::Vertex(..) => EXIT_DOMAIN,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Domain(e)
    }
}

/// Output of a successful command: text for stdout and the exit status.
struct Report {
    text: String,
    code: i32,
}

impl Report {
    fn json(value: Value, capped: bool) -> Self {
        Report { text: format!("{value}\n"), code: if capped { EXIT_CAPS } else { EXIT_OK } }
    }
}

/// Runs the tool on `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match execute(&cli, stdin) {
        Ok(r) => {
            let _ = stdout.write_all(r.text.as_bytes());
            r.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn config(cli: &Cli) -> SearchConfig {
    let mut c = SearchConfig::default();
    if let Some(m) = cli.max_members {
        c.max_members = m;
    }
    c.seed = cli.seed;
    c
}

fn load(input: &Input, stdin: &mut dyn Read) -> Result<ExchangeMatrix, CliError> {
    let path = input.0.display().to_string();
    let mut text = String::new();
    let read = if path == "-" {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(&input.0).map(|t| text = t)
    };
    read.map_err(|source| CliError::Io { path: path.clone(), source })?;
    matrix_file::parse(&text).map_err(|source| CliError::Parse { path, source })
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn one_based(seq: &MutationSequence) -> Vec<usize> {
    seq.iter().map(|k| k + 1).collect()
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Report, CliError> {
    let cfg = config(cli);
    match &cli.command {
        Command::Mutate { input, k, output } => {
            let m = load(input, stdin)?;
            let seq = k
                .iter()
                .map(|&v| if v >= 1 && v <= m.n() { Ok(v - 1) } else { Err(CliError::Vertex(v, m.n())) })
                .collect::<Result<Vec<_>, _>>()?;
            let text = matrix_file::print(&m.apply(&MutationSequence::new(seq))?);
            match output {
                Some(path) => {
                    write_file(path, &text)?;
                    Ok(Report { text: String::new(), code: EXIT_OK })
                }
                None => Ok(Report { text, code: EXIT_OK }),
            }
        }
        Command::Class { input } => {
            let class = enumerate_class(&load(input, stdin)?, &cfg)?;
            let capped = !class.is_complete();
            Ok(Report::json(json!({ "members": class.len(), "caps_hit": capped }), capped))
        }
        Command::Finite { input } => {
            let m = load(input, stdin)?;
            Ok(match is_mutation_finite_mutable(&m.principal(), &cfg)? {
                Finiteness::Finite(c) => {
                    Report::json(json!({ "finite": true, "caps_hit": false, "members": c.len() }), false)
                }
                Finiteness::Infinite { witness, arrow, weight } => Report::json(
                    json!({
                        "finite": false,
                        "caps_hit": false,
                        "witness": one_based(&witness),
                        "arrow": [arrow.0 + 1, arrow.1 + 1],
                        "weight": weight,
                    }),
                    false,
                ),
                Finiteness::Undecided(c) => {
                    Report::json(json!({ "finite": null, "caps_hit": true, "explored": c.len() }), true)
                }
            })
        }
        Command::Classify { input } => {
            let label = classify(&load(input, stdin)?, &cfg)?;
            Ok(Report::json(json!({ "label": label.to_string() }), false))
        }
        Command::Admissible { input, fast } => {
            let m = load(input, stdin)?;
            if *fast {
                let v = match fast_admissible(&m, &cfg)? {
                    FastVerdict::Admissible => "admissible",
                    FastVerdict::NotAdmissible => "not_admissible",
                    FastVerdict::Unknown => "unknown",
                };
                return Ok(Report::json(json!({ "verdict": v }), false));
            }
            let v = decide_admissible(&m, &cfg)?;
            let capped = matches!(v, Verdict::Undecided { .. });
            Ok(Report::json(verdict_json(&v, m.n()), capped))
        }
        Command::Standard(args) => standard(args),
        Command::Unfold { name, b, list } => {
            if *list {
                let names: Vec<String> = unfolding::fixtures().iter().map(|u| u.name().to_string()).collect();
                return Ok(Report::json(json!({ "fixtures": names }), false));
            }
            let name = name.clone().unwrap_or_default();
            let u = unfolding::fixture(&name).ok_or(CliError::UnknownFixture(name))?;
            Ok(match b {
                Some(b) => Report {
                    text: matrix_file::print(&unfold_extended(&u, &CoefficientVector::new(b.clone()))?),
                    code: EXIT_OK,
                },
                None => Report { text: format!("{}\n", u.to_json()), code: EXIT_OK },
            })
        }
        Command::ExportDot { input } => Ok(Report { text: dot::to_dot(&load(input, stdin)?), code: EXIT_OK }),
    }
}

fn standard(args: &StandardArgs) -> Result<Report, CliError> {
    let spec = SurfaceSpec { genus: args.genus, boundary: args.boundary.clone(), punctures: args.punctures };
    let (t, meta) = standard_triangulation(&spec)?;
    if let Some(path) = &args.output {
        write_file(path, &matrix_file::print(&meta.quiver))?;
    }
    let plus = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
    let rows: Vec<&[i64]> = meta.quiver.rows().collect();
    let value = json!({
        "surface": spec,
        "n": meta.quiver.n(),
        "matrix": rows,
        "names": meta.names,
        "interior": plus(&meta.interior),
        "inner": plus(&meta.inner),
        "outer": plus(&meta.outer),
        "v1": meta.v1 + 1,
        "v2": meta.v2 + 1,
        "triangulation": t.to_text(),
    });
    Ok(Report::json(value, false))
}

fn verdict_json(v: &Verdict, n: usize) -> Value {
    match v {
        Verdict::Admissible { .. } => json!({ "verdict": "admissible" }),
        Verdict::Undecided { explored } => json!({ "verdict": "undecided", "explored": explored }),
        Verdict::NotAdmissible { witness, violation } => json!({
            "verdict": "not_admissible",
            "witness": one_based(witness),
            "violation": violation_json(violation, n),
        }),
    }
}

fn violation_json(v: &Violation, n: usize) -> Value {
    match v {
        Violation::Annulus(a) => json!({
            "kind": "annulus",
            "frozen_row": a.frozen_row + 1,
            "tail": a.tail + 1,
            "head": a.head + 1,
            "relation": a.relation,
            "observed": [a.observed.0, a.observed.1],
        }),
        Violation::MutableGrowth { arrow, weight } => json!({
            "kind": "mutable_growth",
            "arrow": [arrow.0 + 1, arrow.1 + 1],
            "weight": weight,
        }),
        Violation::CoefficientGrowth { frozen_row, component, magnitudes } => json!({
            "kind": "coefficient_growth",
            "frozen_row": frozen_row + 1,
            "component": [component.0 + 1, component.1 + 1],
            "magnitudes": magnitudes,
        }),
        Violation::Rank3 { vertices } => {
            let names: Vec<String> = vertices
                .iter()
                .map(|&v| if v < n { format!("{}", v + 1) } else { format!("f{}", v - n + 1) })
                .collect();
            json!({ "kind": "rank3", "vertices": names })
        }
    }
}
