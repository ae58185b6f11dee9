//! The `markov-dyck` command line: argument parsing, reports, exit codes.
//!
//! Exit codes: 0 success, 1 verification failure, 2 word or argument parse
//! error, 3 matrix file error, 4 resource cap exceeded.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dyck::{self, BracketSymbol, DyckWord};
use crate::horizon::{BuildOptions, ExportFormat, GraphError, LambdaGraphSystem, DEFAULT_VERTEX_CAP};
use crate::ktheory::{KTheoryError, KTheoryReport, ReportMode};
use crate::markov::{self, Irreducibility, MatrixFile, TransitionMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MATRIX: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "markov-dyck", version, about = "Markov-Dyck shifts and their Cantor horizon lambda-graph systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormulationArg {
    Matrix,
    Cylinder,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a bracket word such as "a1 b1 b2" is admissible.
    Word {
        #[arg(long)]
        matrix: PathBuf,
        /// Whitespace-separated tokens a<i> and b<i>; may be empty.
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build the system up to a level, export it and print per-level counts.
    Graph {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        level: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "cap-vertices", default_value_t = DEFAULT_VERTEX_CAP)]
        cap_vertices: usize,
    },
    /// Run the structural identities and the language checks.
    Verify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "cap-vertices", default_value_t = DEFAULT_VERTEX_CAP)]
        cap_vertices: usize,
        /// Removes one β-edge below the top level before verifying.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// K-group approximants for levels below the given one, as JSON.
    Ktheory {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        level: usize,
        #[arg(long, value_enum, default_value = "matrix")]
        formulation: FormulationArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "cap-vertices", default_value_t = DEFAULT_VERTEX_CAP)]
        cap_vertices: usize,
    },
    /// Matrix validation, irreducibility, condition (I) and entropy as JSON.
    Analyze {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure that ends the run with a specific exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let code = match e {
            GraphError::LevelTooLarge { .. } => EXIT_CAP,
            _ => EXIT_PARSE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<KTheoryError> for Failure {
    fn from(e: KTheoryError) -> Self {
        match e {
            KTheoryError::Graph(g) => g.into(),
            KTheoryError::IdentityViolation(_) => Failure::new(EXIT_VERIFY, e.to_string()),
            KTheoryError::OutOfRange { .. } => Failure::new(EXIT_PARSE, e.to_string()),
        }
    }
}

/// Parses `args` (program name first) and runs the command, writing the
/// report to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

pub fn load_matrix(path: &Path) -> Result<TransitionMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_MATRIX, format!("cannot read {}: {e}", path.display())))?;
    TransitionMatrix::from_json(&text).map_err(|e| Failure::new(EXIT_MATRIX, e.to_string()))
}

fn build(a: &TransitionMatrix, level: usize, cap: usize) -> Result<LambdaGraphSystem, Failure> {
    let options = BuildOptions {
        max_total_vertices: cap,
    };
    Ok(LambdaGraphSystem::build_with(a, level, options)?)
}

fn emit(stdout: &mut dyn Write, out: Option<&Path>, body: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|e| Failure::new(EXIT_PARSE, e.to_string())),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn execute(command: &Command, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Word {
            matrix,
            word,
            format,
        } => {
            let a = load_matrix(matrix)?;
            let w = DyckWord::parse(word, a.size()).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
            let outcome = dyck::reduce(&w, &a).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
            let verdict = if outcome.is_alive() {
                "admissible"
            } else {
                "inadmissible"
            };
            let body = match format {
                Format::Json => json(&serde_json::json!({
                    "word": w.to_string(),
                    "verdict": verdict,
                    "state": outcome.to_string(),
                })),
                _ => format!("{verdict}\n{outcome}\n"),
            };
            emit(stdout, None, &body)?;
            Ok(EXIT_OK)
        }
        Command::Graph {
            matrix,
            level,
            format,
            out,
            cap_vertices,
        } => {
            let a = load_matrix(matrix)?;
            let g = build(&a, *level, *cap_vertices)?;
            let counts = count_report(&g);
            match (format, out) {
                (Format::Text, _) => emit(stdout, out.as_deref(), &counts)?,
                (f, Some(path)) => {
                    emit(stdout, Some(path), &g.export(export_format(*f)))?;
                    emit(stdout, None, &counts)?;
                }
                (f, None) => emit(stdout, None, &g.export(export_format(*f)))?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            matrix,
            level,
            bound,
            format,
            out,
            cap_vertices,
            corrupt,
        } => {
            if *level < 2 {
                return Err(Failure::new(EXIT_PARSE, "verify needs --level 2 or more"));
            }
            let a = load_matrix(matrix)?;
            let mut g = build(&a, *level, *cap_vertices)?;
            if *corrupt {
                g = corrupted(&g);
            }
            let report = verify_report(&g, *bound);
            let body = match format {
                Format::Json => json(&report),
                _ => report.to_text(),
            };
            emit(stdout, out.as_deref(), &body)?;
            Ok(if report.passed { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Ktheory {
            matrix,
            level,
            formulation,
            out,
            cap_vertices,
        } => {
            if *level < 1 {
                return Err(Failure::new(EXIT_PARSE, "ktheory needs --level 1 or more"));
            }
            let a = load_matrix(matrix)?;
            let g = build(&a, *level, *cap_vertices)?;
            let mode = match formulation {
                FormulationArg::Matrix => ReportMode::Matrix,
                FormulationArg::Cylinder => ReportMode::Cylinder,
                FormulationArg::Both => ReportMode::Both,
            };
            let report = KTheoryReport::compute(&g, level - 1, mode)?;
            emit(stdout, out.as_deref(), &report.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Analyze { matrix, out } => {
            let a = load_matrix(matrix)?;
            emit(stdout, out.as_deref(), &json(&analyze(&a)))?;
            Ok(EXIT_OK)
        }
    }
}

fn export_format(f: Format) -> ExportFormat {
    match f {
        Format::Dot => ExportFormat::Dot,
        _ => ExportFormat::Json,
    }
}

fn count_report(g: &LambdaGraphSystem) -> String {
    let mut s = String::new();
    let edges = g.edge_counts();
    for (l, m) in g.vertex_counts().iter().enumerate() {
        match edges.get(l) {
            Some(e) if l < g.max_level() => {
                writeln!(s, "level {l}: {m} vertices, {e} edges to level {}", l + 1).unwrap()
            }
            _ => writeln!(s, "level {l}: {m} vertices").unwrap(),
        }
    }
    let list: Vec<String> = g.vertex_counts().iter().map(usize::to_string).collect();
    writeln!(s, "m = [{}]", list.join(", ")).unwrap();
    s
}

/// Removes the first β-edge leaving the level just below the top, which
/// breaks the intertwining identity one level further down.
pub fn corrupted(g: &LambdaGraphSystem) -> LambdaGraphSystem {
    let level = g.max_level() - 1;
    match g.edges(level).iter().find(|e| !e.label.is_alpha()) {
        Some(victim) => g.without_edge(level, &victim.clone()),
        None => g.clone(),
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LanguageCheck {
    pub k: usize,
    pub passed: bool,
    pub words: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PredecessorCheck {
    pub level: usize,
    pub passed: bool,
    /// First mismatch as `(k, 1-based rank)`.
    pub mismatch: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundedSummary {
    pub level: usize,
    pub bound: usize,
    pub found: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub level: usize,
    pub axioms: crate::horizon::AxiomReport,
    pub language: Vec<LanguageCheck>,
    pub predecessor_sets: Vec<PredecessorCheck>,
    pub lambda_condition_i: Option<BoundedSummary>,
    pub lambda_irreducibility: Option<BoundedSummary>,
    /// Hard identities only; bounded searches never fail the run.
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut s = format!("{}", self.axioms);
        for c in &self.language {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            writeln!(s, "language k={}: {verdict} ({} words)", c.k, c.words).unwrap();
        }
        for c in &self.predecessor_sets {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            writeln!(s, "predecessor sets level {}: {verdict}", c.level).unwrap();
        }
        for (name, b) in [
            ("lambda condition (I)", &self.lambda_condition_i),
            ("lambda irreducibility", &self.lambda_irreducibility),
        ] {
            if let Some(b) = b {
                writeln!(
                    s,
                    "{name} level {} bound {}: {} found, {} inconclusive",
                    b.level, b.bound, b.found, b.inconclusive
                )
                .unwrap();
            }
        }
        writeln!(s, "result: {}", if self.passed { "pass" } else { "FAIL" }).unwrap();
        s
    }
}

/// Admissible words of length `k`, grown leftwards from the recognizer alone.
pub fn admissible_words(a: &TransitionMatrix, k: usize) -> BTreeSet<DyckWord> {
    let alphabet = BracketSymbol::alphabet(a.size());
    let mut layer = vec![DyckWord::empty()];
    for _ in 0..k {
        let mut next = Vec::new();
        for w in &layer {
            for &s in &alphabet {
                let cand = DyckWord(vec![s]).concat(w);
                if dyck::admissible(&cand, a).expect("in range") {
                    next.push(cand);
                }
            }
        }
        layer = next;
    }
    layer.into_iter().collect()
}

pub fn verify_report(g: &LambdaGraphSystem, bound: usize) -> VerifyReport {
    let a = g.matrix();
    let top = g.max_level();
    let axioms = g.verify_axioms();
    let language: Vec<LanguageCheck> = (0..=top)
        .map(|k| {
            let words = admissible_words(a, k);
            let paths = g.path_language(k).expect("level in range");
            LanguageCheck {
                k,
                passed: words == paths,
                words: words.len(),
            }
        })
        .collect();
    let predecessor_sets = (0..=top)
        .map(|l| {
            let mut mismatch = None;
            'outer: for (r, mu) in g.table(l).words().iter().enumerate() {
                for k in 0..=l {
                    let graph = g.predecessor_set(k, l, r + 1).expect("in range");
                    let semantic = dyck::predecessor_set(k, mu, a).expect("admissible");
                    if graph != semantic.members {
                        mismatch = Some((k, r + 1));
                        break 'outer;
                    }
                }
            }
            PredecessorCheck {
                level: l,
                passed: mismatch.is_none(),
                mismatch,
            }
        })
        .collect::<Vec<_>>();
    let b = bound.min(top - 1);
    let lambda_condition_i = (b > 0).then(|| {
        let r = g.verify_lambda_condition_i(1, b).expect("in range");
        let found = r.iter().filter(|x| x.is_witness()).count();
        BoundedSummary {
            level: 1,
            bound: b,
            found,
            inconclusive: r.len() - found,
        }
    });
    let lambda_irreducibility = (b > 0).then(|| {
        let t = g.verify_lambda_irreducibility(1, b).expect("in range");
        let found = t
            .entries
            .iter()
            .filter(|e| matches!(e.result, crate::horizon::PairReach::Found { .. }))
            .count();
        BoundedSummary {
            level: 1,
            bound: b,
            found,
            inconclusive: t.entries.len() - found,
        }
    });
    let passed = axioms.all_passed()
        && language.iter().all(|c| c.passed)
        && predecessor_sets.iter().all(|c| c.passed);
    VerifyReport {
        level: top,
        axioms,
        language,
        predecessor_sets,
        lambda_condition_i,
        lambda_irreducibility,
        passed,
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionISummary {
    pub holds: bool,
    /// Per 1-based symbol: the two words, or `null`.
    pub witnesses: Vec<Option<[String; 2]>>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IrreducibilitySummary {
    pub irreducible: bool,
    /// First unreachable ordered pair, 1-based.
    pub disconnected: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Analysis {
    pub matrix: MatrixFile,
    pub valid: bool,
    pub permutation: bool,
    pub irreducibility: IrreducibilitySummary,
    pub condition_i: ConditionISummary,
    /// `null` for reducible matrices.
    pub entropy: Option<f64>,
}

pub fn analyze(a: &TransitionMatrix) -> Analysis {
    let irr = markov::is_irreducible(a);
    let ci = markov::condition_i(a);
    Analysis {
        matrix: MatrixFile {
            n: a.size(),
            rows: a.rows(),
        },
        valid: true,
        permutation: a.is_permutation(),
        irreducibility: IrreducibilitySummary {
            irreducible: irr.is_irreducible(),
            disconnected: match irr {
                Irreducibility::Disconnected(i, j) => Some((i, j)),
                Irreducibility::Irreducible(_) => None,
            },
        },
        condition_i: ConditionISummary {
            holds: ci.holds(),
            witnesses: ci
                .witnesses
                .iter()
                .map(|w| w.as_ref().map(|w| [w.first.to_string(), w.second.to_string()]))
                .collect(),
        },
        entropy: markov::entropy(a).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn missing_subcommand_is_a_parse_error() {
        assert_eq!(run_str(&["markov-dyck"]).0, EXIT_PARSE);
        assert_eq!(run_str(&["markov-dyck", "--help"]).0, EXIT_OK);
    }

    #[test]
    fn unreadable_matrix() {
        let (code, _) = run_str(&["markov-dyck", "analyze", "--matrix", "/nonexistent/m.json"]);
        assert_eq!(code, EXIT_MATRIX);
    }

    #[test]
    fn admissible_word_layers() {
        let f = TransitionMatrix::fibonacci();
        let one: Vec<String> = admissible_words(&f, 1).iter().map(|w| w.to_string()).collect();
        assert_eq!(one, ["a1", "a2", "b1", "b2"]);
        assert!(!admissible_words(&f, 2).contains(&DyckWord::parse("a1 b2", 2).unwrap()));
    }
}
