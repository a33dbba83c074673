//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use folp::{parse_cs, StdClock};
use folp_core::checker::{check_proof, CheckError};
use folp_core::countermodel::find_countermodel;
use folp_core::model::{MkrtychevModel, Violation};
use folp_core::proof::{Closure, ProofNode, ProofTree};
use folp_core::rules::{NodeId, RuleError, RuleName};
use folp_core::search::{prove_with_clock, Budget, Outcome};
use folp_core::text::print_formula;
use folp_core::{match_axiom, parse_formula, Atom, ConstantSpec, Formula, Scheme, Term, Window};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

const SINGLE_CS: &str = "# one axiom instance\nconst c.\nc : forall x. A(x) -> A(x).\n";
const TOTAL_CS: &str = "const c.\ntotal.\n";
const GOLDEN_GOAL: &str = "p : forall x. A(x) -> forall x. (c*p):[x] A(x)";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CsKind {
    Empty,
    Single,
    Total,
}

fn cs(spec: CsKind) -> ConstantSpec {
    match spec {
        CsKind::Empty => ConstantSpec::new(),
        CsKind::Single => parse_cs(SINGLE_CS).unwrap(),
        CsKind::Total => parse_cs(TOTAL_CS).unwrap(),
    }
}

fn decls() -> BTreeSet<String> {
    ["c".to_string()].into()
}

fn f(src: &str) -> Formula {
    parse_formula(src, &decls()).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn prove_timed(goal: &Formula, cs: &ConstantSpec) -> (Outcome, Duration) {
    let clock = StdClock::start();
    let start = Instant::now();
    let out =
        prove_with_clock(goal, cs, &Budget::default(), &[], &clock).expect("goal is a sentence");
    (out, start.elapsed())
}

// ---------------------------------------------------------------- corpus

/// Theorems with finite specifications; these also feed the soundness check.
const FINITE_CORPUS: &[(&str, CsKind)] = &[
    ("Q0 -> Q0", CsKind::Empty),
    ("Q0 -> Q1 -> Q0", CsKind::Empty),
    ("(Q0 -> Q1) -> (Q1 -> Q2) -> Q0 -> Q2", CsKind::Empty),
    ("~~Q0 -> Q0", CsKind::Empty),
    ("Q0 -> ~~Q0", CsKind::Empty),
    ("(~Q0 -> Q0) -> Q0", CsKind::Empty),
    ("(Q0 -> Q1) -> ~Q1 -> ~Q0", CsKind::Empty),
    ("((Q0 -> Q1) -> Q0) -> Q0", CsKind::Empty),
    ("~Q0 -> Q0 -> Q1", CsKind::Empty),
    ("(Q0 -> Q1 -> Q2) -> (Q0 -> Q1) -> Q0 -> Q2", CsKind::Empty),
    ("(~Q0 -> ~Q1) -> Q1 -> Q0", CsKind::Empty),
    ("Q0 -> (Q0 -> Q1) -> Q1", CsKind::Empty),
    ("(Q0 -> ~Q0) -> ~Q0", CsKind::Empty),
    ("~(Q0 -> Q1) -> Q0", CsKind::Empty),
    ("~(Q0 -> Q1) -> ~Q1", CsKind::Empty),
    ("forall x. (A(x) -> A(x))", CsKind::Empty),
    ("(forall x. A(x)) -> exists x. A(x)", CsKind::Empty),
    ("forall y. ((forall x. A(x)) -> A(y))", CsKind::Empty),
    (
        "(exists x. forall y. R(x, y)) -> forall y. exists x. R(x, y)",
        CsKind::Empty,
    ),
    (
        "(forall x. (A(x) -> B(x))) -> (forall x. A(x)) -> forall x. B(x)",
        CsKind::Empty,
    ),
    (
        "(forall x. A(x)) -> (forall x. B(x)) -> forall x. (A(x) -> B(x))",
        CsKind::Empty,
    ),
    ("~(exists x. A(x)) -> forall x. ~A(x)", CsKind::Empty),
    ("(forall x. ~A(x)) -> ~exists x. A(x)", CsKind::Empty),
    (
        "(forall x. forall y. R(x, y)) -> forall y. forall x. R(x, y)",
        CsKind::Empty,
    ),
    (
        "(exists x. exists y. R(x, y)) -> exists y. exists x. R(x, y)",
        CsKind::Empty,
    ),
    (
        "(forall x. R(x, x)) -> forall x. exists y. R(x, y)",
        CsKind::Empty,
    ),
    (
        "(Q0 -> forall x. A(x)) -> forall x. (Q0 -> A(x))",
        CsKind::Empty,
    ),
    ("(exists x. A(x)) -> ~forall x. ~A(x)", CsKind::Empty),
    ("forall x. exists y. (A(x) -> A(y))", CsKind::Empty),
    ("forall x. (t:[x] A(x) -> A(x))", CsKind::Empty),
    ("t:Q0 -> Q0", CsKind::Empty),
    ("s:(Q0 -> Q1) -> t:Q0 -> (s*t):Q1", CsKind::Empty),
    ("t:Q0 -> (t+s):Q0", CsKind::Empty),
    ("t:Q0 -> (s+t):Q0", CsKind::Empty),
    ("t:Q0 -> !t:t:Q0", CsKind::Empty),
    ("forall x. (t:[x] A(x) -> !t:[x] t:[x] A(x))", CsKind::Empty),
    ("t : A(x) -> gen<x>(t) : forall x. A(x)", CsKind::Empty),
    (
        "forall x. forall y. (t:[x, y] A(x) -> t:[x] A(x))",
        CsKind::Empty,
    ),
    (
        "forall x. forall y. (t:[x] A(x) -> t:[x, y] A(x))",
        CsKind::Empty,
    ),
    ("t:Q0 -> ~~Q0", CsKind::Empty),
    ("forall x. (t:[x] A(x) -> exists y. A(y))", CsKind::Empty),
    ("t:(Q0 -> Q1) -> t:Q0 -> Q1", CsKind::Empty),
    ("t : forall x. A(x) -> forall y. A(y)", CsKind::Empty),
    (
        "forall x. (s:[x] (A(x) -> B(x)) -> t:[x] A(x) -> (s*t):[x] B(x))",
        CsKind::Empty,
    ),
    ("q:Q0 -> (p+q):Q0", CsKind::Empty),
    ("(t:Q0 -> Q1) -> (t:Q0 -> ~Q1) -> ~t:Q0", CsKind::Empty),
    ("t:Q0 -> s:Q1 -> Q0", CsKind::Empty),
    ("forall x. (t:[x] A(x) -> (t+s):[x] A(x))", CsKind::Empty),
    (GOLDEN_GOAL, CsKind::Single),
    (
        "p : forall x. A(x) -> forall y. (c*p):[y] A(y)",
        CsKind::Single,
    ),
    ("forall x. c:[x] (forall x. A(x) -> A(x))", CsKind::Single),
    ("c : (forall x. A(x) -> A(x))", CsKind::Single),
    ("p : forall x. A(x) -> forall x. A(x)", CsKind::Single),
];

/// Three instances of every scheme (before universal closure).
const AXIOM_SUITE: &[(Scheme, [&str; 3])] = &[
    (
        Scheme::P1,
        [
            "Q0 -> Q1 -> Q0",
            "A(x) -> B(y) -> A(x)",
            "t:[x] A(x) -> Q0 -> t:[x] A(x)",
        ],
    ),
    (
        Scheme::P2,
        [
            "(Q0 -> Q1 -> Q2) -> (Q0 -> Q1) -> Q0 -> Q2",
            "(A(x) -> B(x) -> C(x)) -> (A(x) -> B(x)) -> A(x) -> C(x)",
            "(t:Q0 -> Q1 -> s:Q1) -> (t:Q0 -> Q1) -> t:Q0 -> s:Q1",
        ],
    ),
    (
        Scheme::P3,
        [
            "(~Q0 -> ~Q1) -> Q1 -> Q0",
            "(~A(x) -> ~B(x)) -> B(x) -> A(x)",
            "(~t:Q0 -> ~Q1) -> Q1 -> t:Q0",
        ],
    ),
    (
        Scheme::Q1,
        [
            "forall x. A(x) -> A(y)",
            "forall x. R(x, x) -> R(z, z)",
            "forall x. (Q0 -> A(x)) -> Q0 -> A(y)",
        ],
    ),
    (
        Scheme::Q2,
        [
            "forall x. (A(x) -> B(x)) -> forall x. A(x) -> forall x. B(x)",
            "forall x. (Q0 -> A(x)) -> forall x. Q0 -> forall x. A(x)",
            "forall x. (R(x, y) -> B(x)) -> forall x. R(x, y) -> forall x. B(x)",
        ],
    ),
    (
        Scheme::Q3,
        [
            "Q0 -> forall x. Q0",
            "A(y) -> forall x. A(y)",
            "t:[y] A(y) -> forall x. t:[y] A(y)",
        ],
    ),
    (
        Scheme::Q4,
        [
            "A(y) -> exists x. A(x)",
            "forall x. (A(x) -> Q0) -> exists x. A(x) -> Q0",
            "R(y, y) -> exists x. R(x, y)",
        ],
    ),
    (
        Scheme::Ctr,
        [
            "t:[x, y] A(x) -> t:[x] A(x)",
            "t:[y] Q0 -> t:Q0",
            "s:[x, z] B(x) -> s:[x] B(x)",
        ],
    ),
    (
        Scheme::Exp,
        [
            "t:[x] A(x) -> t:[x, y] A(x)",
            "t:Q0 -> t:[y] Q0",
            "s:[y] R(x, y) -> s:[x, y] R(x, y)",
        ],
    ),
    (
        Scheme::Sum1,
        [
            "s:Q0 -> (s+t):Q0",
            "s:[x] A(x) -> (s+t):[x] A(x)",
            "p:A(x) -> (p+q):A(x)",
        ],
    ),
    (
        Scheme::Sum2,
        [
            "s:Q0 -> (t+s):Q0",
            "s:[x] A(x) -> (t+s):[x] A(x)",
            "p:A(x) -> (q+p):A(x)",
        ],
    ),
    (
        Scheme::Jk,
        [
            "s:(Q0 -> Q1) -> t:Q0 -> (s*t):Q1",
            "s:[x] (A(x) -> B(x)) -> t:[x] A(x) -> (s*t):[x] B(x)",
            "s:(A(x) -> Q0) -> t:A(x) -> (s*t):Q0",
        ],
    ),
    (
        Scheme::Jt,
        ["t:Q0 -> Q0", "t:[x] A(x) -> A(x)", "t:A(x) -> A(x)"],
    ),
    (
        Scheme::J4,
        [
            "t:Q0 -> !t:t:Q0",
            "t:[x] A(x) -> !t:[x] t:[x] A(x)",
            "s:A(x) -> !s:s:A(x)",
        ],
    ),
    (
        Scheme::Gen,
        [
            "t:A(x) -> gen<x>(t):forall x. A(x)",
            "t:[y] R(x, y) -> gen<x>(t):[y] forall x. R(x, y)",
            "t:Q0 -> gen<x>(t):forall x. Q0",
        ],
    ),
];

struct Proved {
    goal: Formula,
    spec: CsKind,
    proof: ProofTree,
}

/// Every corpus goal with its proof, or the reason it was not proved.
fn corpus() -> &'static Vec<Result<Proved, String>> {
    static CORPUS: OnceLock<Vec<Result<Proved, String>>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let finite = FINITE_CORPUS.iter().map(|&(g, s)| (f(g), s));
        let axioms = AXIOM_SUITE
            .iter()
            .flat_map(|(_, xs)| xs.iter().map(|a| (f(a).universal_closure(), CsKind::Total)));
        finite
            .chain(axioms)
            .map(|(goal, spec)| match prove_timed(&goal, &cs(spec)).0 {
                Outcome::Proved(proof) => Ok(Proved { goal, spec, proof }),
                other => Err(format!("{goal}: {}", describe(&other))),
            })
            .collect()
    })
}

fn describe(o: &Outcome) -> String {
    match o {
        Outcome::Proved(t) => format!("proved ({} nodes)", t.len()),
        Outcome::Open { branch, .. } => format!("open branch of {} formulas", branch.len()),
        Outcome::Exhausted(d) => format!("budget {d} exhausted"),
    }
}

// ---------------------------------------------------------------- 1

fn golden_proof() -> Verdict {
    let goal = f(GOLDEN_GOAL);
    let cs = cs(CsKind::Single);
    let (out, took) = prove_timed(&goal, &cs);
    let Outcome::Proved(t) = out else {
        return Err(describe(&out));
    };
    if took >= Duration::from_secs(5) {
        return Err(format!("took {took:?}"));
    }
    let used: BTreeSet<RuleName> = t.rules_used().into_iter().collect();
    for r in [
        RuleName::FImp,
        RuleName::FForall,
        RuleName::FDot,
        RuleName::Ins,
        RuleName::Exp,
    ] {
        if !used.contains(&r) {
            return Err(format!("no {r} application"));
        }
    }
    // the F-forall parameter must be new where it is introduced
    let fforall = t
        .nodes()
        .into_iter()
        .find(|n| n.rule().is_some_and(|r| r.name == RuleName::FForall))
        .unwrap();
    let u = fforall.rule().unwrap().param.clone().unwrap();
    if path_to(&t.tree, fforall.id)
        .unwrap()
        .iter()
        .rev()
        .skip(1)
        .any(|n| n.formula.params().contains(&u))
    {
        return Err(format!("@{u} is not fresh"));
    }
    let closures: Vec<&Closure> = t.closures().into_iter().map(|(_, c)| c).collect();
    let contra = closures
        .iter()
        .filter(|c| matches!(c, Closure::Contradiction { .. }))
        .count();
    let by_cs = closures
        .iter()
        .filter(|c| matches!(c, Closure::Cs { constant } if constant == "c"))
        .count();
    if (contra, by_cs) != (1, 1) {
        return Err(format!(
            "closures: {contra} contradiction, {by_cs} by specification"
        ));
    }
    let a = check_proof(&t, &cs, Some(&goal)).map_err(|r| r.to_string())?;
    Ok(format!(
        "{} nodes, {} branches, checker accepts, {took:.2?}",
        a.nodes, a.branches
    ))
}

// ---------------------------------------------------------------- 2

fn axiom_suite() -> Verdict {
    let cs = cs(CsKind::Total);
    let mut slowest = Duration::ZERO;
    let mut n = 0;
    for (scheme, instances) in AXIOM_SUITE {
        for src in instances {
            let a = f(src);
            if match_axiom(&a) != Some(*scheme) {
                return Err(format!("{src} is not recognised as {scheme}"));
            }
            let goal = a.universal_closure();
            let (out, took) = prove_timed(&goal, &cs);
            let Outcome::Proved(t) = out else {
                return Err(format!("{scheme}: {goal}: {}", describe(&out)));
            };
            check_proof(&t, &cs, Some(&goal)).map_err(|r| format!("{goal}: {r}"))?;
            if took >= Duration::from_secs(5) {
                return Err(format!("{goal} took {took:?}"));
            }
            slowest = slowest.max(took);
            n += 1;
        }
    }
    Ok(format!(
        "{n}/45 instances of 15 schemes proved, slowest {slowest:.2?}"
    ))
}

// ---------------------------------------------------------------- 3

fn agreement() -> Verdict {
    let mut accepted = 0;
    for entry in corpus() {
        let p = entry.as_ref().map_err(Clone::clone)?;
        check_proof(&p.proof, &cs(p.spec), Some(&p.goal))
            .map_err(|r| format!("{}: {r}", p.goal))?;
        accepted += 1;
    }
    if accepted < 50 {
        return Err(format!("only {accepted} proved goals"));
    }
    Ok(format!("{accepted}/{accepted} proofs accepted"))
}

// ---------------------------------------------------------------- 4

fn path_to(n: &ProofNode, id: NodeId) -> Option<Vec<&ProofNode>> {
    if n.id == id {
        return Some(vec![n]);
    }
    n.children.iter().find_map(|c| {
        let mut p = path_to(c, id)?;
        p.insert(0, n);
        Some(p)
    })
}

/// Test-side statement of each rule's premise shape.
fn fits(rule: RuleName, g: &Formula) -> bool {
    use Formula::*;
    let neg = g.negated();
    match rule {
        RuleName::FNeg => matches!(neg, Some(Not(_))),
        RuleName::TImp => matches!(g, Imp(..)),
        RuleName::FImp => matches!(neg, Some(Imp(..))),
        RuleName::TForall => matches!(g, Forall(..)),
        RuleName::TExists => matches!(g, Exists(..)),
        RuleName::FExists => matches!(neg, Some(Exists(..))),
        RuleName::FForall => matches!(neg, Some(Forall(..))),
        RuleName::TColon => matches!(g, Just(..)),
        RuleName::FPlus => matches!(neg, Some(Just(Term::Sum(..), ..))),
        RuleName::FDot => matches!(neg, Some(Just(Term::App(..), ..))),
        RuleName::FBang => matches!(neg, Some(Just(Term::Bang(..), ..))),
        RuleName::GenX => matches!(neg, Some(Just(Term::Gen(..), ..))),
        RuleName::Ctr | RuleName::Exp | RuleName::Ins => matches!(neg, Some(Just(..))),
    }
}

struct Mutant {
    tree: ProofTree,
    node: NodeId,
    expect: fn(&RuleError, &str) -> bool,
    what: String,
}

/// A single-edit mutant of the first node in `t` that uses `rule`.
fn mutate(t: &ProofTree, rule: RuleName) -> Option<Mutant> {
    let users: Vec<&ProofNode> = t
        .nodes()
        .into_iter()
        .filter(|n| n.rule().is_some_and(|r| r.name == rule))
        .collect();
    for n in users {
        let path = path_to(&t.tree, n.id)?;
        let above = &path[..path.len() - 1];
        let r = n.rule()?.clone();
        let premise = above.iter().find(|a| a.id == r.premises[0])?;
        let mut edited = r.clone();
        let (expect, what): (fn(&RuleError, &str) -> bool, String) = match rule {
            RuleName::TExists | RuleName::FForall => {
                let Some(old) = above.iter().flat_map(|a| a.formula.params()).next() else {
                    continue;
                };
                edited.param = Some(old.clone());
                (|e, u| matches!(e, RuleError::NotFresh(v) if v == u), old)
            }
            RuleName::Ctr => {
                let Some(Formula::Just(_, w, _)) = premise.formula.negated() else {
                    continue;
                };
                let Some(Atom::Param(u)) = w.iter().next() else {
                    continue;
                };
                edited.param = Some(u.clone());
                (
                    |e, u| matches!(e, RuleError::CtrAlreadyInWindow(v) if v == u),
                    u.clone(),
                )
            }
            RuleName::Exp => {
                // point at an earlier assertion whose body still mentions a window parameter
                let hit = above.iter().find_map(|a| match a.formula.negated() {
                    Some(Formula::Just(_, w, body)) => w
                        .iter()
                        .filter_map(|x| match x {
                            Atom::Param(u) if body.params().contains(u) => Some((a.id, u.clone())),
                            _ => None,
                        })
                        .next(),
                    _ => None,
                });
                let Some((id, u)) = hit else { continue };
                edited.premises = vec![id];
                edited.param = Some(u.clone());
                (
                    |e, u| matches!(e, RuleError::ExpParamInBody(v) if v == u),
                    u,
                )
            }
            RuleName::Ins => {
                edited.param = Some("zz".into());
                (
                    |e, u| matches!(e, RuleError::InsParamNotInBody(v) if v == u),
                    "zz".into(),
                )
            }
            RuleName::FDot => {
                edited.cut = Some(Formula::pred("A", [Atom::param("zz")]));
                (
                    |e, _| matches!(e, RuleError::CutOutsideWindow),
                    String::new(),
                )
            }
            _ => {
                let Some(wrong) = above.iter().find(|a| !fits(rule, &a.formula)) else {
                    continue;
                };
                edited.premises = vec![wrong.id];
                (
                    |e, _| matches!(e, RuleError::PremiseShape { .. }),
                    String::new(),
                )
            }
        };
        let mut tree = t.clone();
        let parent = path[path.len() - 2].id;
        let siblings = &mut tree.find_mut(parent)?.children;
        // both children of a split carry the same instance
        let targets: Vec<usize> = if rule.is_branching() {
            (0..siblings.len()).collect()
        } else {
            vec![0]
        };
        for i in targets {
            siblings[i].origin = folp_core::proof::Origin::Rule(edited.clone());
        }
        let node = if rule.is_branching() {
            siblings[0].id
        } else {
            n.id
        };
        return Some(Mutant {
            tree,
            node,
            expect,
            what,
        });
    }
    None
}

fn mutation_rejection() -> Verdict {
    let mut caught = Vec::new();
    for rule in RuleName::ALL {
        let found = corpus()
            .iter()
            .flatten()
            .find_map(|p| mutate(&p.proof, rule).map(|m| (p, m)));
        let Some((p, m)) = found else {
            return Err(format!("no corpus proof to mutate for {rule}"));
        };
        match check_proof(&m.tree, &cs(p.spec), Some(&p.goal)) {
            Ok(_) => return Err(format!("{rule} mutant accepted")),
            Err(r) => match &r.error {
                CheckError::Rule(e) if (m.expect)(e, &m.what) && r.node == Some(m.node) => {
                    caught.push(rule)
                }
                _ => return Err(format!("{rule} mutant rejected for the wrong reason: {r}")),
            },
        }
    }
    Ok(format!(
        "{}/15 rule mutants rejected with the planted violation",
        caught.len()
    ))
}

// ---------------------------------------------------------------- 5, 7

/// Adds every formula the validator reports missing until none is.
fn close(m: &mut MkrtychevModel, cs: &ConstantSpec) -> Result<(), String> {
    for _ in 0..64 {
        let vs = m.validate(cs).map_err(|e| e.to_string())?;
        if vs.is_empty() {
            return Ok(());
        }
        for v in vs {
            let (t, g) = match v {
                Violation::E1 { constant, formula } => (Term::Const(constant), formula),
                Violation::E2 { term, formula }
                | Violation::E3 { term, formula }
                | Violation::E4 { term, formula }
                | Violation::E5 { term, formula }
                | Violation::E6 { term, formula } => (term, formula),
            };
            m.add_evidence(t, g);
        }
    }
    Err("evidence closure did not settle".into())
}

struct ModelSpec {
    domain: &'static [&'static str],
    facts: &'static [(&'static str, &'static [&'static str])],
    evidence: &'static [(&'static str, &'static [&'static str])],
}

const MODELS: &[ModelSpec] = &[
    ModelSpec {
        domain: &["a"],
        facts: &[],
        evidence: &[],
    },
    ModelSpec {
        domain: &["a"],
        facts: &[("A", &["a"]), ("Q0", &[])],
        evidence: &[("p", &["forall x. A(x)"])],
    },
    ModelSpec {
        domain: &["a", "b"],
        facts: &[("A", &["a"]), ("A", &["b"]), ("B", &["a"]), ("Q1", &[])],
        evidence: &[("p", &["forall x. A(x)"]), ("t", &["A(x)", "Q1"])],
    },
    ModelSpec {
        domain: &["a", "b"],
        facts: &[("A", &["a"]), ("R", &["a", "b"]), ("Q0", &[])],
        evidence: &[("t", &["Q0", "A(x)"]), ("s", &["Q0 -> Q1"])],
    },
    ModelSpec {
        domain: &["a", "b", "d"],
        facts: &[
            ("A", &["a"]),
            ("A", &["b"]),
            ("A", &["d"]),
            ("B", &["b"]),
            ("R", &["a", "a"]),
            ("R", &["b", "d"]),
        ],
        evidence: &[("t", &["A(x)"]), ("s", &["A(x) -> B(x)"]), ("q", &["Q0"])],
    },
    ModelSpec {
        domain: &["a"],
        facts: &[
            ("Q0", &[]),
            ("Q1", &[]),
            ("Q2", &[]),
            ("A", &["a"]),
            ("B", &["a"]),
            ("R", &["a", "a"]),
        ],
        evidence: &[
            ("t", &["Q0", "Q0 -> Q1", "A(x)"]),
            ("s", &["Q0 -> Q1", "Q1"]),
            ("p", &["forall x. A(x)"]),
        ],
    },
    ModelSpec {
        domain: &["a", "b"],
        facts: &[("B", &["a"]), ("B", &["b"]), ("Q2", &[])],
        evidence: &[("t", &["Q2"]), ("p", &["Q1"]), ("q", &["B(x)"])],
    },
    ModelSpec {
        domain: &["a", "b"],
        facts: &[
            ("A", &["b"]),
            ("R", &["a", "b"]),
            ("R", &["b", "a"]),
            ("Q1", &[]),
        ],
        evidence: &[
            ("t", &["R(x, y)", "forall x. A(x)"]),
            ("s", &["forall x. (A(x) -> B(x))"]),
        ],
    },
    ModelSpec {
        domain: &["a", "b", "d"],
        facts: &[("Q0", &[]), ("A", &["d"]), ("C", &["a"])],
        evidence: &[
            ("t", &["Q0"]),
            ("s", &["Q0 -> Q0"]),
            ("q", &["Q0", "C(x)"]),
            ("p", &["A(x)"]),
        ],
    },
    ModelSpec {
        domain: &["a", "b"],
        facts: &[
            ("A", &["a"]),
            ("A", &["b"]),
            ("B", &["a"]),
            ("B", &["b"]),
            ("Q0", &[]),
            ("Q1", &[]),
        ],
        evidence: &[
            ("t", &["A(x)", "Q0"]),
            ("s", &["A(x) -> B(x)", "Q0 -> Q1"]),
            ("p", &["forall x. A(x)", "forall x. B(x)"]),
        ],
    },
    ModelSpec {
        domain: &["a"],
        facts: &[("Q1", &[])],
        evidence: &[("t", &["~Q0"]), ("s", &["Q1 -> Q0"]), ("q", &["~A(x)"])],
    },
    ModelSpec {
        domain: &["a", "b"],
        facts: &[
            ("A", &["a"]),
            ("R", &["a", "a"]),
            ("R", &["b", "b"]),
            ("Q0", &[]),
            ("Q2", &[]),
        ],
        evidence: &[
            ("t", &["forall x. A(x)", "Q0"]),
            ("s", &["Q0 -> Q1", "Q2"]),
            ("p", &["forall x. A(x)"]),
        ],
    },
];

/// Builds and closes a model; every term of `goals` gets an evidence entry.
fn build(
    spec: &ModelSpec,
    goals: &[&Formula],
    cs: &ConstantSpec,
) -> Result<MkrtychevModel, String> {
    let mut m = MkrtychevModel::new(spec.domain.iter().copied());
    let mut preds: BTreeMap<String, usize> = BTreeMap::new();
    for g in goals {
        preds.extend(g.predicates());
    }
    for (_, g) in cs.concrete() {
        preds.extend(g.predicates());
    }
    for (q, args) in spec.facts {
        preds.insert(q.to_string(), args.len());
    }
    for (q, k) in &preds {
        m.declare_predicate(q.clone(), *k);
    }
    for (q, args) in spec.facts {
        m.add_fact(q, args.iter().map(|s| s.to_string()).collect())
            .map_err(|e| e.to_string())?;
    }
    for g in goals {
        for t in g.terms() {
            m.declare_term(t);
        }
    }
    for (c, _) in cs.concrete() {
        m.declare_term(&Term::Const(c.clone()));
    }
    for (t, fs) in spec.evidence {
        for g in *fs {
            m.add_evidence(Term::var(*t), f(g));
        }
    }
    close(&mut m, cs)?;
    Ok(m)
}

fn soundness() -> Verdict {
    let cs = cs(CsKind::Single);
    let proved: Vec<&Proved> = corpus()
        .iter()
        .flatten()
        .filter(|p| p.spec != CsKind::Total)
        .collect();
    let goals: Vec<&Formula> = proved.iter().map(|p| &p.goal).collect();
    let mut checks = 0;
    for (i, spec) in MODELS.iter().enumerate() {
        let m = build(spec, &goals, &cs)?;
        let vs = m.validate(&cs).map_err(|e| e.to_string())?;
        if !vs.is_empty() {
            return Err(format!("model {i} is not admissible: {}", vs[0]));
        }
        for (c, a) in cs.concrete() {
            let entry = Formula::just(Term::Const(c.clone()), Window::empty(), a.clone());
            if m.satisfies(&entry) != Ok(true) {
                return Err(format!("model {i} does not respect {entry}"));
            }
        }
        for g in &goals {
            match m.satisfies(g) {
                Ok(true) => checks += 1,
                other => return Err(format!("model {i} falsifies proved {g}: {other:?}")),
            }
        }
    }
    Ok(format!(
        "{} models x {} theorems, {checks} true, 0 counterexamples",
        MODELS.len(),
        goals.len()
    ))
}

fn planted_violations() -> Verdict {
    let cs = cs(CsKind::Single);
    let goal = f("c:(forall x. A(x) -> A(x)) -> (s*t):B(x) -> (s+t):A(x) -> !t:t:A(x) -> gen<x>(t):forall x. A(x)");
    let spec = ModelSpec {
        domain: &["a", "b"],
        facts: &[("A", &["a"]), ("B", &["b"])],
        evidence: &[("s", &["A(x) -> B(x)"]), ("t", &["A(x)"])],
    };
    let clean = build(&spec, &[&goal], &cs)?;
    let vs = clean.validate(&cs).map_err(|e| e.to_string())?;
    if !vs.is_empty() {
        return Err(format!("clean model has {} violations", vs.len()));
    }
    let term = |s: &str| folp_core::parse_term(s, &decls()).unwrap();
    let defects: [(&str, &str, &str); 6] = [
        ("E1", "c", "forall x. A(x) -> A(x)"),
        ("E2", "s*t", "B(x)"),
        ("E3", "s+t", "A(x)"),
        ("E4", "!t", "t:A(x)"),
        ("E5", "gen<x>(t)", "forall x. A(x)"),
        ("E6", "t", "A($a)"),
    ];
    for (cond, key, missing) in defects {
        let (key, missing) = (term(key), f(missing));
        let mut m = clean.clone();
        if !m.remove_evidence(&key, &missing) {
            return Err(format!("{missing} was not in E({key})"));
        }
        let vs = m.validate(&cs).map_err(|e| e.to_string())?;
        let planted = |v: &Violation| {
            let (t, g) = match v {
                Violation::E1 { constant, formula } => (Term::Const(constant.clone()), formula),
                Violation::E2 { term, formula }
                | Violation::E3 { term, formula }
                | Violation::E4 { term, formula }
                | Violation::E5 { term, formula }
                | Violation::E6 { term, formula } => (term.clone(), formula),
            };
            v.condition() == cond && t == key && g.alpha_eq(&missing)
        };
        if vs.len() != 1 || !planted(&vs[0]) {
            let got: Vec<String> = vs
                .iter()
                .map(|v| format!("{} {v}", v.condition()))
                .collect();
            return Err(format!("{cond} mutant reported {got:?}"));
        }
    }
    Ok("clean model: 0 violations; E1-E6 mutants: exactly the planted violation".into())
}

// ---------------------------------------------------------------- 6

const NON_THEOREMS: &[&str] = &[
    "Q0 -> p:Q0",
    "p:Q(x)",
    "(forall x. A(x)) -> t:forall x. A(x)",
    "t:Q0 -> s:Q0",
    "t:Q0 -> (t*s):Q0",
    "(exists x. A(x)) -> forall x. A(x)",
    "t:(Q0 -> Q1) -> t:Q0 -> t:Q1",
];

fn countermodels() -> Verdict {
    let cs = ConstantSpec::new();
    let mut slowest = Duration::ZERO;
    for src in NON_THEOREMS {
        let goal = f(src);
        let start = Instant::now();
        let m = find_countermodel(&goal, &cs, 2, 3).map_err(|e| format!("{src}: {e}"))?;
        let took = start.elapsed();
        let m = m.ok_or_else(|| format!("{src}: no countermodel found"))?;
        let vs = m.validate(&cs).map_err(|e| e.to_string())?;
        if !vs.is_empty() || m.satisfies(&goal) != Ok(false) || m.domain().len() > 2 {
            return Err(format!(
                "{src}: returned model is not a validated countermodel"
            ));
        }
        if took >= Duration::from_secs(10) {
            return Err(format!("{src} took {took:?}"));
        }
        slowest = slowest.max(took);
    }
    Ok(format!(
        "{}/{} non-theorems refuted, slowest {slowest:.2?}",
        NON_THEOREMS.len(),
        NON_THEOREMS.len()
    ))
}

// ---------------------------------------------------------------- 8

const VARS: [&str; 4] = ["x", "y", "z", "w"];
const PREDS: [(&str, usize); 5] = [("Q0", 0), ("P", 1), ("R", 2), ("S", 3), ("Kin", 1)];

fn random_atom(rng: &mut ChaCha8Rng) -> Atom {
    match rng.gen_range(0..6) {
        0 => Atom::param(["u", "v"].choose(rng).unwrap().to_string()),
        1 => Atom::elem(["a", "b"].choose(rng).unwrap().to_string()),
        _ => Atom::var(VARS.choose(rng).unwrap().to_string()),
    }
}

fn random_term(rng: &mut ChaCha8Rng, depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.4) {
        return match rng.gen_range(0..3) {
            0 => Term::constant("c"),
            _ => Term::var(["p", "q", "t"].choose(rng).unwrap().to_string()),
        };
    }
    match rng.gen_range(0..4) {
        0 => Term::sum(random_term(rng, depth - 1), random_term(rng, depth - 1)),
        1 => Term::app(random_term(rng, depth - 1), random_term(rng, depth - 1)),
        2 => Term::bang(random_term(rng, depth - 1)),
        _ => Term::gen(
            VARS.choose(rng).unwrap().to_string(),
            random_term(rng, depth - 1),
        ),
    }
}

fn random_formula(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        let (q, k) = *PREDS.choose(rng).unwrap();
        return Formula::pred(q, (0..k).map(|_| random_atom(rng)).collect::<Vec<_>>());
    }
    let sub = |rng: &mut ChaCha8Rng| random_formula(rng, depth - 1);
    match rng.gen_range(0..6) {
        0 => Formula::not(sub(rng)),
        1 => Formula::imp(sub(rng), sub(rng)),
        2 => Formula::forall(VARS.choose(rng).unwrap().to_string(), sub(rng)),
        3 => Formula::exists(VARS.choose(rng).unwrap().to_string(), sub(rng)),
        _ => {
            let w: Window = (0..rng.gen_range(0..3)).map(|_| random_atom(rng)).collect();
            Formula::just(random_term(rng, 3), w, sub(rng))
        }
    }
}

fn round_trip() -> Verdict {
    let seed: u64 = match std::env::var("FOLP_SEED") {
        Ok(s) => s
            .parse()
            .map_err(|_| format!("FOLP_SEED={s} is not an integer"))?,
        Err(_) => 0x5eed,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..1000 {
        let g = random_formula(&mut rng, 5);
        let text = print_formula(&g);
        match parse_formula(&text, &decls()) {
            Ok(back) if back == g => {}
            Ok(back) => return Err(format!("formula {i}: {text} came back as {back}")),
            Err(e) => return Err(format!("formula {i}: {text}: {e}")),
        }
    }
    Ok(format!("1000/1000 formulas round-trip (seed {seed})"))
}

// ----------------------------------------------------------------

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("golden proof", golden_proof),
        ("axiom-validity suite", axiom_suite),
        ("prover/checker agreement", agreement),
        ("mutation rejection", mutation_rejection),
        ("semantic soundness", soundness),
        ("non-theorem witnesses", countermodels),
        ("E1-E6 validator", planted_violations),
        ("parser round-trip", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match result {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
