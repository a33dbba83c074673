//! The `folp` command.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use folp_core::checker::{check_proof, CheckError, Rejection};
use folp_core::search::{prove_with_clock, Budget, Outcome};
use folp_core::{match_axiom, parse_formula, ConstantSpec, Formula};
use serde_json::{json, Value};

use crate::{parse_cs, parse_model, parse_proof, ProofFile, StdClock};

#[derive(Debug, Parser)]
#[command(
    name = "folp",
    version,
    about = "Tableau prover, proof checker and model checker for the first-order logic of proofs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical form of a formula.
    Parse {
        formula: String,
        /// Constant specification supplying constant declarations.
        #[arg(long)]
        cs: Option<PathBuf>,
    },
    /// Search for a closed tableau for a sentence.
    Prove {
        goal: String,
        #[arg(long)]
        cs: PathBuf,
        #[arg(long)]
        max_nodes: Option<usize>,
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long)]
        max_params: Option<usize>,
        #[arg(long)]
        max_cuts: Option<usize>,
        /// Time limit in seconds.
        #[arg(long)]
        timeout: Option<f64>,
        /// Extra cut formula for F·, tried first. Repeatable.
        #[arg(long = "hint")]
        hints: Vec<String>,
        /// Where to write the proof JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a proof file.
    Check {
        proof: PathBuf,
        #[arg(long)]
        cs: PathBuf,
        /// Require the tree to refute exactly this goal.
        #[arg(long)]
        goal: Option<String>,
    },
    /// Validate a model and evaluate a sentence in it.
    ModelCheck {
        model: PathBuf,
        #[arg(long)]
        cs: PathBuf,
        #[arg(long, required_unless_present = "validate_only")]
        formula: Option<String>,
        /// Only check the admissibility conditions.
        #[arg(long)]
        validate_only: bool,
    },
    /// Name the axiom scheme a formula instantiates.
    AxiomMatch {
        formula: String,
        #[arg(long)]
        cs: Option<PathBuf>,
    },
}

/// A failure that is not a verdict: exit status 2.
#[derive(Debug)]
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    format: Format,
}

impl Io<'_> {
    /// Emits `text` or `value` depending on the format.
    fn emit(&mut self, text: &str, value: Value) -> Result<(), Fatal> {
        match self.format {
            Format::Text => writeln!(self.out, "{}", text.trim_end())?,
            Format::Json => writeln!(self.out, "{}", serde_json::to_string_pretty(&value)?)?,
        }
        Ok(())
    }
}

/// Runs one invocation; returns the exit status.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let mut io = Io {
        out,
        format: cli.format,
    };
    let r = match cli.command {
        Command::Parse { formula, cs } => parse(&mut io, &formula, cs.as_deref()),
        Command::Prove {
            goal,
            cs,
            max_nodes,
            max_depth,
            max_params,
            max_cuts,
            timeout,
            hints,
            out,
        } => {
            let d = Budget::default();
            let budget = Budget {
                max_nodes: max_nodes.unwrap_or(d.max_nodes),
                max_depth: max_depth.unwrap_or(d.max_depth),
                max_params: max_params.unwrap_or(d.max_params),
                max_cuts: max_cuts.unwrap_or(d.max_cuts),
                time_limit: match timeout.map(Duration::try_from_secs_f64) {
                    None => d.time_limit,
                    Some(Ok(t)) => t,
                    Some(Err(e)) => {
                        let _ = writeln!(err, "error: --timeout: {e}");
                        return 2;
                    }
                },
            };
            prove(&mut io, &goal, &cs, budget, &hints, out.as_deref())
        }
        Command::Check { proof, cs, goal } => check(&mut io, &proof, &cs, goal.as_deref()),
        Command::ModelCheck {
            model,
            cs,
            formula,
            validate_only,
        } => model_check(
            &mut io,
            &model,
            &cs,
            formula.as_deref().filter(|_| !validate_only),
        ),
        Command::AxiomMatch { formula, cs } => axiom_match(&mut io, &formula, cs.as_deref()),
    };
    match r {
        Ok(code) => code,
        Err(Fatal(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    std::fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn load_cs(path: &Path) -> Result<ConstantSpec, Fatal> {
    parse_cs(&read(path)?).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn decls_of(cs: Option<&Path>) -> Result<BTreeSet<String>, Fatal> {
    Ok(match cs {
        Some(p) => load_cs(p)?.constants().clone(),
        None => BTreeSet::new(),
    })
}

fn formula_arg(what: &str, src: &str, decls: &BTreeSet<String>) -> Result<Formula, Fatal> {
    parse_formula(src, decls).map_err(|e| Fatal(format!("{what}: {e}")))
}

fn parse(io: &mut Io, src: &str, cs: Option<&Path>) -> Result<u8, Fatal> {
    let decls = decls_of(cs)?;
    match parse_formula(src, &decls) {
        Ok(f) => {
            io.emit(
                &f.to_string(),
                json!({"status": "ok", "formula": f.to_string()}),
            )?;
            Ok(0)
        }
        Err(e) => {
            io.emit(
                &format!("syntax error: {e}"),
                json!({"status": "error", "line": e.line, "col": e.col, "message": e.to_string()}),
            )?;
            Ok(1)
        }
    }
}

fn prove(
    io: &mut Io,
    goal: &str,
    cs_path: &Path,
    budget: Budget,
    hints: &[String],
    out: Option<&Path>,
) -> Result<u8, Fatal> {
    let cs = load_cs(cs_path)?;
    let decls = cs.constants().clone();
    let goal = formula_arg("goal", goal, &decls)?;
    let hints = hints
        .iter()
        .map(|h| formula_arg("hint", h, &decls))
        .collect::<Result<Vec<_>, _>>()?;
    let clock = StdClock::start();
    match prove_with_clock(&goal, &cs, &budget, &hints, &clock)? {
        Outcome::Proved(t) => {
            if let Err(r) = check_proof(&t, &cs, Some(&goal)) {
                return Err(Fatal(format!(
                    "internal error: the checker rejects the prover's proof: {r}"
                )));
            }
            let file = ProofFile::from_tree(&t);
            if let Some(p) = out {
                std::fs::write(p, serde_json::to_string_pretty(&file)? + "\n")
                    .map_err(|e| Fatal(format!("{}: {e}", p.display())))?;
            }
            let mut v = json!({"status": "proved", "nodes": t.len(), "checked": true});
            if out.is_none() {
                v["proof"] = serde_json::to_value(&file)?;
            }
            io.emit(&format!("{t}proved ({} nodes, checked)", t.len()), v)?;
            Ok(0)
        }
        Outcome::Open {
            branch,
            diagnostics,
        } => {
            let mut text = String::from("open branch:\n");
            for f in &branch {
                text += &format!("  {f}\n");
            }
            for d in &diagnostics {
                text += &format!("note: {d}\n");
            }
            let branch: Vec<String> = branch.iter().map(ToString::to_string).collect();
            io.emit(
                &text,
                json!({"status": "open", "branch": branch, "diagnostics": diagnostics}),
            )?;
            Ok(1)
        }
        Outcome::Exhausted(d) => {
            io.emit(
                &format!("budget exhausted: {d}"),
                json!({"status": "exhausted", "dimension": d.to_string()}),
            )?;
            Ok(1)
        }
    }
}

/// Variant name of a check error, for machine-readable reports.
pub fn error_code(e: &CheckError) -> String {
    let debug = match e {
        CheckError::Structure(s) => format!("{s:?}"),
        CheckError::Rule(r) => format!("{r:?}"),
        other => format!("{other:?}"),
    };
    debug
        .split(['(', ' ', '{'])
        .next()
        .unwrap_or_default()
        .to_string()
}

pub fn rejection_json(r: &Rejection) -> Value {
    json!({
        "verdict": "reject",
        "node": r.node,
        "structural": r.is_structural(),
        "code": error_code(&r.error),
        "message": r.error.to_string(),
    })
}

fn check(io: &mut Io, proof: &Path, cs_path: &Path, goal: Option<&str>) -> Result<u8, Fatal> {
    let cs = load_cs(cs_path)?;
    let decls = cs.constants().clone();
    let goal = goal.map(|g| formula_arg("goal", g, &decls)).transpose()?;
    let t = parse_proof(&read(proof)?, &decls)
        .map_err(|e| Fatal(format!("{}: {e}", proof.display())))?;
    match check_proof(&t, &cs, goal.as_ref()) {
        Ok(a) => {
            io.emit(
                &format!("accepted ({} nodes, {} branches)", a.nodes, a.branches),
                json!({"verdict": "accept", "nodes": a.nodes, "branches": a.branches}),
            )?;
            Ok(0)
        }
        Err(r) => {
            io.emit(&format!("rejected: {r}"), rejection_json(&r))?;
            Ok(1)
        }
    }
}

fn model_check(
    io: &mut Io,
    model: &Path,
    cs_path: &Path,
    formula: Option<&str>,
) -> Result<u8, Fatal> {
    let cs = load_cs(cs_path)?;
    let decls = cs.constants().clone();
    let f = formula
        .map(|s| formula_arg("formula", s, &decls))
        .transpose()?;
    let m = parse_model(&read(model)?, &decls, &f.iter().collect::<Vec<_>>())
        .map_err(|e| Fatal(format!("{}: {e}", model.display())))?;
    let violations = m.validate(&cs)?;
    let truth = f.as_ref().map(|f| m.satisfies(f)).transpose()?;
    let mut text = String::new();
    for v in &violations {
        text += &format!("violation {}: {v}\n", v.condition());
    }
    text += if violations.is_empty() {
        "model is admissible\n"
    } else {
        "model is not admissible\n"
    };
    if let Some(b) = truth {
        text += if b { "true\n" } else { "false\n" };
    }
    let vs: Vec<Value> = violations
        .iter()
        .map(|v| json!({"condition": v.condition(), "message": v.to_string()}))
        .collect();
    io.emit(
        &text,
        json!({"valid": violations.is_empty(), "violations": vs, "satisfied": truth}),
    )?;
    Ok(if violations.is_empty() && truth != Some(false) {
        0
    } else {
        1
    })
}

fn axiom_match(io: &mut Io, src: &str, cs: Option<&Path>) -> Result<u8, Fatal> {
    let decls = decls_of(cs)?;
    let f = formula_arg("formula", src, &decls)?;
    let name = match_axiom(&f).map_or("none", |s| s.name());
    io.emit(name, json!({"scheme": name}))?;
    Ok(0)
}
