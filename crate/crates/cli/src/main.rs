//! `pspan`: command-line front end for parity spans.
//!
//! Entities are addressed as `FILE#name`. Exit codes: 1 for invalid input or
//! an unmet precondition, 2 for usage errors, 3 when a budget is exceeded.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use pspan::cardinality::{matrix_by_components, matrix_of_span, vector_of_state};
use pspan::determinant::{
    classical_det, det_cardinality, det_fiber_blocks, fiber_table, leibniz_scalar, leibniz_terms, DetError,
};
use pspan::document::{ActionEntry, Document, DocumentError};
use pspan::exterior::{exterior_power_span, ExteriorError, DEFAULT_BUDGET};
use pspan::random::Generator;
use pspan::rational;
use pspan::span::PSpan;

#[derive(Parser)]
#[command(name = "pspan", version, about = "Parity spans, their cardinalities and determinants")]
struct Cli {
    /// Cap on `|Ob|^k · k!` for power constructions.
    #[arg(long, global = true, env = "PSPAN_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every groupoid, span and action in a document.
    Validate { file: String },
    /// Homotopy cardinality of a groupoid, a scalar, a state or the weak quotient of an action.
    Card { target: String },
    /// Connected components with automorphism orders and orientability.
    Pi0 { target: String },
    /// Number of orientations of a parity groupoid.
    Orientations { target: String },
    /// Cardinality matrix of a span.
    Matrix { target: String },
    /// Compose two spans and print the result as a document.
    Compose {
        first: String,
        second: String,
        /// Print the matrix of the composite instead.
        #[arg(long)]
        matrix: bool,
    },
    /// k-th exterior power of a span.
    Extpow {
        #[arg(short)]
        k: usize,
        target: String,
        /// Print the power span as a document instead of its matrix.
        #[arg(long)]
        json: bool,
    },
    /// Determinant of an endo-span, as the cardinality of its top exterior power.
    Det {
        target: String,
        /// Also print the determinant of the cardinality matrix.
        #[arg(long)]
        check: bool,
    },
    /// Leibniz expansion of the determinant, one line per permutation.
    Leibniz { target: String },
    /// Fiber table of the k-th exterior power of an endo-span.
    Report {
        #[arg(short)]
        k: usize,
        target: String,
    },
    /// Print a random document.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Kind::Endo)]
        kind: Kind,
        /// Number of components or points in the foot.
        #[arg(long, default_value_t = 2)]
        size: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Endo,
    Digraph,
    Scalar,
    Action,
}

enum Failure {
    Invalid(String),
    Usage(String),
    Budget(String),
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Failure {
        match e {
            DocumentError::Missing { .. } => Failure::Usage(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<DetError> for Failure {
    fn from(e: DetError) -> Failure {
        match e {
            DetError::Budget(b) => Failure::Budget(b.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<ExteriorError> for Failure {
    fn from(e: ExteriorError) -> Failure {
        Failure::Budget(e.to_string())
    }
}

fn split_target(target: &str) -> Result<(&str, &str), Failure> {
    target
        .rsplit_once('#')
        .filter(|(f, n)| !f.is_empty() && !n.is_empty())
        .ok_or_else(|| Failure::Usage(format!("expected FILE#name, got `{target}`")))
}

fn load(target: &str) -> Result<(Document, String), Failure> {
    let (file, name) = split_target(target)?;
    Ok((Document::load(file)?, name.to_string()))
}

fn load_span(target: &str) -> Result<(Document, String, PSpan), Failure> {
    let (doc, name) = load(target)?;
    let span = doc.span(&name)?.clone();
    Ok((doc, name, span))
}

fn run(cli: Cli) -> Result<String, Failure> {
    let budget = cli.budget;
    let out = match cli.command {
        Command::Validate { file } => {
            let doc = Document::load(&file)?;
            format!(
                "ok: {} groupoids, {} spans, {} actions\n",
                doc.groupoids.len(),
                doc.spans.len(),
                doc.actions.len()
            )
        }
        Command::Card { target } => {
            let (doc, name) = load(&target)?;
            if let Some(g) = doc.groupoids.get(&name) {
                format!("{}\n", rational::format(&g.homotopy_cardinality()))
            } else if let Some(entry) = doc.spans.get(&name) {
                let sp = &entry.span;
                if let Ok(sc) = sp.to_scalar() {
                    format!("{}\n", rational::format(&sc.cardinality()))
                } else if sp.is_state() {
                    format!("{}\n", vector_of_state(sp).map_err(|e| Failure::Invalid(e.to_string()))?)
                } else {
                    return Err(Failure::Invalid(format!("span `{name}` is neither a scalar nor a state; use `matrix`")));
                }
            } else {
                let action = doc.action(&name)?;
                let q = action.weak_quotient().map_err(|r| Failure::Invalid(r.to_string()))?;
                format!("{}\n", rational::format(&q.homotopy_cardinality()))
            }
        }
        Command::Pi0 { target } => {
            let (doc, name) = load(&target)?;
            let g = doc.groupoid(&name)?;
            let mut out = String::new();
            for c in g.pi0() {
                let members: Vec<&str> = c.members.iter().map(|&x| g.object_id(x)).collect();
                out.push_str(&format!(
                    "{}\t|Aut|={}\t{}\t{}\n",
                    g.object_id(c.representative),
                    c.aut_order,
                    if c.orientable { "orientable" } else { "odd" },
                    members.join(" ")
                ));
            }
            out
        }
        Command::Orientations { target } => {
            let (doc, name) = load(&target)?;
            match doc.groupoid(&name)?.enumerate_orientations() {
                Some(o) => format!("{}\n", o.count),
                None => "0 (some object has an odd automorphism)\n".to_string(),
            }
        }
        Command::Matrix { target } => {
            let (_, _, sp) = load_span(&target)?;
            format!("{}\n", matrix_of_span(&sp))
        }
        Command::Compose { first, second, matrix } => {
            let (doc_a, name_a, a) = load_span(&first)?;
            let (doc_b, name_b, b) = load_span(&second)?;
            let c = a.compose(&b).map_err(|e| Failure::Invalid(e.to_string()))?;
            if matrix {
                format!("{}\n", matrix_of_span(&c))
            } else {
                let left = doc_a.spans[&name_a].left.clone();
                let mut right = doc_b.spans[&name_b].right.clone();
                if right == left && **a.left() != **b.right() {
                    right.push('\'');
                }
                let mut out = Document::default();
                out.insert_span("composite", &left, &right, c);
                out.to_json()
            }
        }
        Command::Extpow { k, target, json } => {
            let (doc, name, sp) = load_span(&target)?;
            let ext = exterior_power_span(&sp, k, budget)?;
            if json {
                let entry = &doc.spans[&name];
                let mut out = Document::default();
                let left = format!("L{k}{}", entry.left);
                let right = if sp.is_endo() { left.clone() } else { format!("L{k}{}", entry.right) };
                out.insert_span(&format!("L{k}{name}"), &left, &right, ext.span);
                out.to_json()
            } else {
                format!("{}\n", matrix_of_span(&ext.span))
            }
        }
        Command::Det { target, check } => {
            let (_, _, sp) = load_span(&target)?;
            let d = det_cardinality(&sp, budget)?;
            let mut out = format!("{}\n", rational::format(&d));
            if check {
                let classical = classical_det(&matrix_by_components(&sp))?;
                out.push_str(&format!("classical {}\n", rational::format(&classical)));
            }
            out
        }
        Command::Leibniz { target } => {
            let (_, _, sp) = load_span(&target)?;
            let mut out = String::new();
            for (sigma, term) in leibniz_terms(&sp)? {
                out.push_str(&format!(
                    "{}\t{}\t{}\n",
                    sigma,
                    term.fingerprint(),
                    rational::format(&term.cardinality())
                ));
            }
            let total = leibniz_scalar(&sp)?;
            out.push_str(&format!("total\t{}\t{}\n", total.fingerprint(), rational::format(&total.cardinality())));
            match det_fiber_blocks(&sp, budget) {
                Ok(blocks) => {
                    for (sigma, fp) in blocks {
                        out.push_str(&format!("fiber {sigma}\t{fp}\n"));
                    }
                }
                Err(e) => return Err(Failure::Invalid(e)),
            }
            out
        }
        Command::Report { k, target } => {
            let (_, _, sp) = load_span(&target)?;
            let table = fiber_table(&sp, k, budget)?;
            format!("{table}\n{}", table.listing())
        }
        Command::Gen { seed, kind, size } => {
            let mut gen = Generator::new(seed);
            let mut doc = Document::default();
            match kind {
                Kind::Endo => {
                    let foot = Arc::new(gen.parity_groupoid("x", size, 2, 2));
                    let sp = gen.endo_span(foot, size + 1, 2, 2);
                    doc.insert_span("A", "X", "X", sp);
                }
                Kind::Digraph => {
                    let sp = gen.digraph_span(size, 2 * size + 2);
                    doc.insert_span("A", "X", "X", sp);
                }
                Kind::Scalar => {
                    let sc = gen.scalar(size, 2, 6);
                    doc.insert_span("s", "pt", "pt", PSpan::from_scalar(&sc));
                }
                Kind::Action => {
                    let action = gen.action(size);
                    doc.groupoids.insert("X".into(), Arc::new(action.target.clone()));
                    doc.actions.insert("act".into(), ActionEntry { target: "X".into(), action });
                }
            }
            doc.to_json()
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}
