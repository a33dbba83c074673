//! Finite Mkrtychev models: truth of closed D-formulas and the admissible
//! evidence conditions E1-E6.
//!
//! The evidence function is given on finitely many terms; any other term
//! has empty evidence. Evidence formulas are compared up to renaming of
//! bound variables.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::cs::ConstantSpec;
use crate::syntax::{Atom, Formula, Term, Window};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("domain is empty")]
    EmptyDomain,
    #[error("predicate `{0}` is not interpreted")]
    UnknownPredicate(String),
    #[error("predicate `{name}` has arity {expected}, used with {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("`${0}` is not in the domain")]
    UnknownElement(String),
    #[error("evidence for {term} contains a parameter: {formula}")]
    ParamInEvidence { term: Term, formula: Formula },
    #[error("not a closed D-formula: {0}")]
    NotClosed(Formula),
}

/// A failed admissibility condition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// `c:A` in the specification but `A` not in `E(c)`.
    E1 { constant: String, formula: Formula },
    /// `A -> B` in `E(s)`, `A` in `E(t)`, `B` missing from `E(s*t)`.
    E2 { term: Term, formula: Formula },
    /// Member of `E(s)` or `E(t)` missing from `E(s+t)`.
    E3 { term: Term, formula: Formula },
    /// `t:_X A` missing from `E(!t)`.
    E4 { term: Term, formula: Formula },
    /// `forall x. A` missing from `E(gen_x(t))`.
    E5 { term: Term, formula: Formula },
    /// Instance `A(a)` of `A(x)` missing from `E(t)`.
    E6 { term: Term, formula: Formula },
}

impl Violation {
    pub fn condition(&self) -> &'static str {
        match self {
            Violation::E1 { .. } => "E1",
            Violation::E2 { .. } => "E2",
            Violation::E3 { .. } => "E3",
            Violation::E4 { .. } => "E4",
            Violation::E5 { .. } => "E5",
            Violation::E6 { .. } => "E6",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::E1 { constant, formula } => {
                write!(f, "E1: {formula} is missing from E({constant})")
            }
            Violation::E2 { term, formula }
            | Violation::E3 { term, formula }
            | Violation::E4 { term, formula }
            | Violation::E5 { term, formula }
            | Violation::E6 { term, formula } => {
                write!(
                    f,
                    "{}: {formula} is missing from E({term})",
                    self.condition()
                )
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MkrtychevModel {
    domain: BTreeSet<String>,
    interp: BTreeMap<String, BTreeSet<Vec<String>>>,
    arity: BTreeMap<String, usize>,
    evidence: BTreeMap<Term, BTreeSet<Formula>>,
}

impl MkrtychevModel {
    pub fn new(domain: impl IntoIterator<Item = impl Into<String>>) -> Self {
        MkrtychevModel {
            domain: domain.into_iter().map(Into::into).collect(),
            ..Default::default()
        }
    }

    pub fn domain(&self) -> &BTreeSet<String> {
        &self.domain
    }

    /// Declares a predicate with no true tuples.
    pub fn declare_predicate(&mut self, name: impl Into<String>, arity: usize) {
        let name = name.into();
        self.arity.insert(name.clone(), arity);
        self.interp.entry(name).or_default();
    }

    pub fn add_fact(&mut self, name: &str, tuple: Vec<String>) -> Result<(), ModelError> {
        if let Some(d) = tuple.iter().find(|d| !self.domain.contains(*d)) {
            return Err(ModelError::UnknownElement(d.clone()));
        }
        match self.arity.get(name) {
            Some(&n) if n != tuple.len() => {
                return Err(ModelError::Arity {
                    name: name.into(),
                    expected: n,
                    found: tuple.len(),
                })
            }
            _ => {
                self.arity.insert(name.into(), tuple.len());
            }
        }
        self.interp.entry(name.into()).or_default().insert(tuple);
        Ok(())
    }

    pub fn predicates(&self) -> &BTreeMap<String, BTreeSet<Vec<String>>> {
        &self.interp
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.arity.get(name).copied()
    }

    pub fn add_evidence(&mut self, t: Term, f: Formula) {
        self.evidence.entry(t).or_default().insert(f.alpha_normal());
    }

    pub fn remove_evidence(&mut self, t: &Term, f: &Formula) -> bool {
        self.evidence
            .get_mut(t)
            .is_some_and(|s| s.remove(&f.alpha_normal()))
    }

    /// Lists `t` and its subterms with (so far) empty evidence.
    pub fn declare_term(&mut self, t: &Term) {
        for s in t.subterms() {
            self.evidence.entry(s.clone()).or_default();
        }
    }

    pub fn evidence(&self) -> &BTreeMap<Term, BTreeSet<Formula>> {
        &self.evidence
    }

    pub fn has_evidence(&self, t: &Term, f: &Formula) -> bool {
        self.evidence
            .get(t)
            .is_some_and(|s| s.contains(&f.alpha_normal()))
    }

    fn check_pred(&self, q: &str, args: &[Atom]) -> Result<(), ModelError> {
        match self.arity.get(q) {
            None => Err(ModelError::UnknownPredicate(q.into())),
            Some(&n) if n != args.len() => Err(ModelError::Arity {
                name: q.into(),
                expected: n,
                found: args.len(),
            }),
            _ => Ok(()),
        }
    }

    fn check_vocabulary(&self, f: &Formula) -> Result<(), ModelError> {
        let mut err = Ok(());
        f.visit_subformulas(&mut |g| {
            if let (Ok(()), Formula::Pred(q, args)) = (&err, g) {
                err = self.check_pred(q, args);
            }
        });
        err?;
        match f.elems().into_iter().find(|d| !self.domain.contains(d)) {
            Some(d) => Err(ModelError::UnknownElement(d)),
            None => Ok(()),
        }
    }

    /// Truth of a closed D-formula.
    pub fn satisfies(&self, f: &Formula) -> Result<bool, ModelError> {
        if self.domain.is_empty() {
            return Err(ModelError::EmptyDomain);
        }
        if !f.free_vars().is_empty() || !f.params().is_empty() {
            return Err(ModelError::NotClosed(f.clone()));
        }
        self.check_vocabulary(f)?;
        Ok(self.eval(f))
    }

    fn eval(&self, f: &Formula) -> bool {
        match f {
            Formula::Pred(q, args) => {
                let tuple: Vec<String> = args.iter().map(|a| a.name().into()).collect();
                self.interp.get(q).is_some_and(|s| s.contains(&tuple))
            }
            Formula::Not(a) => !self.eval(a),
            Formula::Imp(a, b) => !self.eval(a) || self.eval(b),
            Formula::Forall(x, a) => self.domain.iter().all(|d| self.eval(&inst(a, x, d))),
            Formula::Exists(x, a) => self.domain.iter().any(|d| self.eval(&inst(a, x, d))),
            Formula::Just(t, _, a) => self.has_evidence(t, a) && self.eval(&a.universal_closure()),
        }
    }

    /// Violations of E1-E6 on the listed fragment of the evidence function.
    pub fn validate(&self, cs: &ConstantSpec) -> Result<Vec<Violation>, ModelError> {
        if self.domain.is_empty() {
            return Err(ModelError::EmptyDomain);
        }
        for (t, fs) in &self.evidence {
            for f in fs {
                if !f.params().is_empty() {
                    return Err(ModelError::ParamInEvidence {
                        term: t.clone(),
                        formula: f.clone(),
                    });
                }
                self.check_vocabulary(f)?;
            }
        }
        let empty = BTreeSet::new();
        let ev = |t: &Term| self.evidence.get(t).unwrap_or(&empty);
        let mut out = BTreeSet::new();
        for (c, a) in cs.concrete() {
            let key = Term::Const(c.clone());
            if self.evidence.contains_key(&key) && !self.has_evidence(&key, a) {
                out.insert(Violation::E1 {
                    constant: c.clone(),
                    formula: a.alpha_normal(),
                });
            }
        }
        for (key, have) in &self.evidence {
            let mut want = |formula: Formula, mk: fn(Term, Formula) -> Violation| {
                let formula = formula.alpha_normal();
                if !have.contains(&formula) {
                    out.insert(mk(key.clone(), formula));
                }
            };
            for g in required(key, &ev, &self.domain) {
                want(g.1, g.0);
            }
            for a in have {
                for g in instances(a, &self.domain) {
                    want(g, |term, formula| Violation::E6 { term, formula });
                }
            }
        }
        Ok(out.into_iter().collect())
    }
}

fn inst(a: &Formula, x: &str, d: &str) -> Formula {
    a.substitute(x, &Atom::Elem(d.into()))
        .expect("elements are never captured")
}

/// Single-variable instances `A(a)` of `A(x)` demanded by E6.
pub(crate) fn instances(a: &Formula, domain: &BTreeSet<String>) -> Vec<Formula> {
    let mut out = Vec::new();
    for x in a.free_vars() {
        for d in domain {
            out.push(inst(a, &x, d));
        }
    }
    out
}

type Mk = fn(Term, Formula) -> Violation;

/// Formulas E2-E5 demand in `E(key)` given the evidence of its immediate
/// subterms.
pub(crate) fn required<'a>(
    key: &Term,
    ev: &impl Fn(&Term) -> &'a BTreeSet<Formula>,
    domain: &BTreeSet<String>,
) -> Vec<(Mk, Formula)> {
    let mut out: Vec<(Mk, Formula)> = Vec::new();
    match key {
        Term::App(s, t) => {
            for f in ev(s) {
                if let Formula::Imp(a, b) = f {
                    if ev(t).contains(&a.alpha_normal()) {
                        out.push((
                            |term, formula| Violation::E2 { term, formula },
                            (**b).clone(),
                        ));
                    }
                }
            }
        }
        Term::Sum(s, t) => {
            for f in ev(s).iter().chain(ev(t)) {
                out.push((|term, formula| Violation::E3 { term, formula }, f.clone()));
            }
        }
        Term::Bang(t) => {
            let elems: Vec<&String> = domain.iter().collect();
            for a in ev(t) {
                let own = a.elems();
                let rest: Vec<&String> = elems
                    .iter()
                    .copied()
                    .filter(|d| !own.contains(*d))
                    .collect();
                for mask in 0u64..(1u64 << rest.len().min(63)) {
                    let window: Window = own
                        .iter()
                        .cloned()
                        .chain(
                            rest.iter()
                                .enumerate()
                                .filter(|(i, _)| mask >> i & 1 == 1)
                                .map(|(_, d)| (*d).clone()),
                        )
                        .map(Atom::Elem)
                        .collect();
                    out.push((
                        |term, formula| Violation::E4 { term, formula },
                        Formula::just((**t).clone(), window, a.clone()),
                    ));
                }
            }
        }
        Term::Gen(x, t) => {
            for a in ev(t) {
                out.push((
                    |term, formula| Violation::E5 { term, formula },
                    Formula::forall(x.clone(), a.clone()),
                ));
            }
        }
        Term::Var(_) | Term::Const(_) => {}
    }
    out
}

pub fn satisfies(m: &MkrtychevModel, f: &Formula) -> Result<bool, ModelError> {
    m.satisfies(f)
}

pub fn validate_model(m: &MkrtychevModel, cs: &ConstantSpec) -> Result<Vec<Violation>, ModelError> {
    m.validate(cs)
}
