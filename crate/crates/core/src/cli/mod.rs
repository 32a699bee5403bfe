//! Command line front end: spec-file and element parsing, the command
//! drivers, and machine-readable output.
//!
//! Exit codes: 0 success, 1 usage error, 2 computational error
//! (singularity, level violation), 3 parse error.

mod element;
mod identities;
mod specfile;

pub use element::{parse_element, ElementParseError};
pub use identities::{classes_for_identities, identity_suite, IdentityOutcome};
pub use specfile::{parse_spec, SpecParseError};

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::nichols::{
    derivation, is_primitive_graded, nichols_dimensions, relation_sweep, serre_element,
    GradedElement, LevelVerdict, NicholsError, Relation, Side, DEFAULT_SERRE_BOUND,
};
use crate::scalar::Rational;
use crate::tensorspace::{multidegree_string, BraidingSpec, TensorError};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Computational(String),
    Parse(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Computational(_) => 2,
            CliError::Parse(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Computational(m) | CliError::Parse(m) => m,
        }
    }
}

impl From<SpecParseError> for CliError {
    fn from(e: SpecParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<ElementParseError> for CliError {
    fn from(e: ElementParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<NicholsError> for CliError {
    fn from(e: NicholsError) -> Self {
        CliError::Computational(e.to_string())
    }
}

impl From<TensorError> for CliError {
    fn from(e: TensorError) -> Self {
        CliError::Computational(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "qnichols",
    about = "Exact defining relations of Nichols algebras of diagonal type",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Command {
    /// Scan anagram classes, classify levels, and construct certified relations
    Relations {
        /// Braiding spec file
        #[arg(long)]
        spec: PathBuf,
        /// Largest total degree to scan
        #[arg(long = "max-degree")]
        max_degree: usize,
        /// Emit machine-readable JSON
        #[arg(long)]
        json: bool,
    },
    /// Verify the braid group algebra operator identities on sample classes
    Identities {
        #[arg(long)]
        spec: PathBuf,
        /// Number of strands
        #[arg(long)]
        n: usize,
        /// Random rational evaluation points for q (ignored with --symbolic)
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Compare matrices over Q(q) instead of evaluating q
        #[arg(long)]
        symbolic: bool,
    },
    /// Graded dimensions of the Nichols algebra
    Hilbert {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long = "max-degree")]
        max_degree: usize,
    },
    /// Decide whether an element is primitive
    Primitive {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        element: String,
    },
    /// Apply a letter skew-derivation to an element
    Derive {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        side: SideArg,
        /// 1-based generator index
        #[arg(long)]
        index: usize,
        #[arg(long)]
        element: String,
    },
    /// Construct the quantized Serre relation for a generator pair
    Serre {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
}

/// Run a command line (without the program name); returns the exit code and
/// the full output text.
pub fn run_command<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<OsString>,
{
    let mut full: Vec<OsString> = vec!["qnichols".into()];
    full.extend(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(full) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return (0, e.to_string());
        }
        Err(e) => return (1, e.to_string()),
    };
    match dispatch(cli.command) {
        Ok(out) => (0, out),
        Err(e) => (e.exit_code(), format!("error: {}\n", e.message())),
    }
}

fn dispatch(cmd: Command) -> Result<String, CliError> {
    match cmd {
        Command::Relations {
            spec,
            max_degree,
            json,
        } => {
            if max_degree < 2 {
                return Err(CliError::Usage("--max-degree must be at least 2".into()));
            }
            let spec = load_spec(&spec)?;
            cmd_relations(&spec, max_degree, json)
        }
        Command::Identities {
            spec,
            n,
            trials,
            seed,
            symbolic,
        } => {
            if n < 2 {
                return Err(CliError::Usage("--n must be at least 2".into()));
            }
            let spec = load_spec(&spec)?;
            cmd_identities(&spec, n, trials, seed, symbolic)
        }
        Command::Hilbert { spec, max_degree } => {
            let spec = load_spec(&spec)?;
            let mut out = String::new();
            for (degree, dim) in nichols_dimensions(&spec, max_degree) {
                writeln!(out, "degree {degree}: {dim}").unwrap();
            }
            Ok(out)
        }
        Command::Primitive { spec, element } => {
            let spec = load_spec(&spec)?;
            let parsed = parse_element(&element, &spec)?;
            if parsed.is_zero() || parsed.component(0).is_some() {
                return Err(CliError::Usage(
                    "primitivity is decided for elements of degree >= 1".into(),
                ));
            }
            Ok(format!("{}\n", is_primitive_graded(&parsed, &spec)))
        }
        Command::Derive {
            spec,
            side,
            index,
            element,
        } => {
            let spec = load_spec(&spec)?;
            if index < 1 || index > spec.dim() {
                return Err(CliError::Usage(format!(
                    "--index must be in 1..={}",
                    spec.dim()
                )));
            }
            let parsed = parse_element(&element, &spec)?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let mut result = GradedElement::zero();
            for (_, v) in parsed.components() {
                result.add_vector(&derivation(side, index as u8, v, &spec));
            }
            Ok(format!("{}\n", graded_string(&result, &spec)))
        }
        Command::Serre { spec, i, j } => {
            let spec = load_spec(&spec)?;
            let dim = spec.dim();
            if i < 1 || i > dim || j < 1 || j > dim || i == j {
                return Err(CliError::Usage(format!(
                    "--i and --j must be distinct indices in 1..={dim}"
                )));
            }
            let rel = serre_element(i as u8, j as u8, &spec, DEFAULT_SERRE_BOUND)?;
            let mut out = String::new();
            writeln!(
                out,
                "class {}: {}",
                multidegree_string(&rel.multidegree),
                rel.vector.element_string(&spec)
            )
            .unwrap();
            writeln!(
                out,
                "certificates: in_ker_sn={} in_im_pn={} primitive={}",
                rel.certificates.in_ker_sn, rel.certificates.in_im_pn, rel.certificates.primitive
            )
            .unwrap();
            Ok(out)
        }
    }
}

fn load_spec(path: &PathBuf) -> Result<BraidingSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_spec(&text)?)
}

fn graded_string(x: &GradedElement, spec: &BraidingSpec) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.components()
        .map(|(_, v)| v.element_string(spec))
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Serialize)]
struct RelationsJson {
    classes: Vec<ClassJson>,
}

#[derive(Serialize)]
struct ClassJson {
    multidegree: Vec<usize>,
    verdict: LevelVerdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    violating_subsets: Vec<Vec<String>>,
    relations: Vec<RelationJson>,
}

#[derive(Serialize)]
struct RelationJson {
    terms: Vec<TermJson>,
}

#[derive(Serialize)]
struct TermJson {
    word: Vec<String>,
    coeff: String,
}

fn relation_json(rel: &Relation, spec: &BraidingSpec) -> RelationJson {
    RelationJson {
        terms: rel
            .vector
            .iter()
            .map(|(w, c)| TermJson {
                word: w
                    .letters()
                    .iter()
                    .map(|&a| spec.names()[a as usize - 1].clone())
                    .collect(),
                coeff: c.to_string(),
            })
            .collect(),
    }
}

fn cmd_relations(
    spec: &BraidingSpec,
    max_degree: usize,
    json: bool,
) -> Result<String, CliError> {
    let outcomes = relation_sweep(spec, max_degree)?;
    if json {
        let classes = outcomes
            .iter()
            .map(|o| ClassJson {
                multidegree: o.report.multidegree.clone(),
                verdict: o.report.verdict,
                violating_subsets: o
                    .report
                    .violating_subsets
                    .iter()
                    .map(|(_, letters)| {
                        letters
                            .iter()
                            .map(|&a| spec.names()[a as usize - 1].clone())
                            .collect()
                    })
                    .collect(),
                relations: o.relations.iter().map(|r| relation_json(r, spec)).collect(),
            })
            .collect();
        let doc = RelationsJson { classes };
        return Ok(format!(
            "{}\n",
            serde_json::to_string_pretty(&doc).expect("serializable")
        ));
    }

    let mut out = String::new();
    let mut degree = 0usize;
    let mut hidden = 0usize;
    for o in &outcomes {
        let d: usize = o.report.multidegree.iter().sum();
        if d != degree {
            flush_hidden(&mut out, &mut hidden);
            degree = d;
            writeln!(out, "degree {degree}:").unwrap();
        }
        match o.report.verdict {
            LevelVerdict::NotThetaFixed => hidden += 1,
            LevelVerdict::ThetaFixedOnly => {
                let (s, letters) = &o.report.violating_subsets[0];
                let names: Vec<&str> = letters
                    .iter()
                    .map(|&a| spec.names()[a as usize - 1].as_str())
                    .collect();
                writeln!(
                    out,
                    "  {} THETA_FIXED_ONLY  (twist scalar 1 on the {s}-letter subset {{{}}})",
                    multidegree_string(&o.report.multidegree),
                    names.join(","),
                )
                .unwrap();
            }
            LevelVerdict::LevelN => {
                writeln!(
                    out,
                    "  {} LEVEL_N",
                    multidegree_string(&o.report.multidegree)
                )
                .unwrap();
                for rel in &o.relations {
                    writeln!(out, "    relation: {}", rel.vector.element_string(spec)).unwrap();
                }
            }
        }
    }
    flush_hidden(&mut out, &mut hidden);
    Ok(out)
}

fn flush_hidden(out: &mut String, hidden: &mut usize) {
    if *hidden > 0 {
        writeln!(out, "  ({hidden} classes not fixed by the full twist)").unwrap();
        *hidden = 0;
    }
}

fn spec_is_constant(spec: &BraidingSpec) -> bool {
    spec.q_matrix()
        .iter()
        .flatten()
        .all(|s| s.as_rational().is_some())
}

fn cmd_identities(
    spec: &BraidingSpec,
    n: usize,
    trials: usize,
    seed: u64,
    symbolic: bool,
) -> Result<String, CliError> {
    let mut out = String::new();
    let mut all_passed = true;

    if symbolic || spec_is_constant(spec) || trials == 0 {
        let outcomes = identity_suite(spec, n)?;
        for o in &outcomes {
            all_passed &= o.passed;
            writeln!(out, "{}: {}", o.name, if o.passed { "PASS" } else { "FAIL" }).unwrap();
        }
        writeln!(out, "mode: symbolic, n = {n}").unwrap();
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut merged: Option<Vec<IdentityOutcome>> = None;
        let mut points = Vec::new();
        let mut attempts = 0;
        while points.len() < trials {
            attempts += 1;
            if attempts > 100 * trials {
                return Err(CliError::Computational(
                    "could not sample enough pole-free evaluation points".into(),
                ));
            }
            let num: i64 = rng.random_range(2..=12);
            let den: i64 = rng.random_range(1..=7);
            if num == den {
                continue; // q = 1 trivializes every Cartan-type braiding
            }
            let point = Rational::new(num.into(), den.into());
            let Ok(evaluated) = spec.eval_at(&point) else {
                continue;
            };
            let outcomes = identity_suite(&evaluated, n)?;
            merged = Some(match merged {
                None => outcomes,
                Some(mut acc) => {
                    for (a, b) in acc.iter_mut().zip(outcomes) {
                        a.passed &= b.passed;
                    }
                    acc
                }
            });
            points.push(point);
        }
        for o in merged.expect("at least one trial") {
            all_passed &= o.passed;
            writeln!(out, "{}: {}", o.name, if o.passed { "PASS" } else { "FAIL" }).unwrap();
        }
        let rendered: Vec<String> = points.iter().map(|p| p.to_string()).collect();
        writeln!(
            out,
            "mode: evaluated at q in {{{}}} (seed {seed}), n = {n}",
            rendered.join(", ")
        )
        .unwrap();
    }
    if all_passed {
        Ok(out)
    } else {
        Err(CliError::Computational(format!(
            "operator identity check failed\n{out}"
        )))
    }
}
