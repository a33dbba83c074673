//! Small-scope countermodel search.
//!
//! Domains of increasing size are tried. For each interpretation of the
//! predicates involved, evidence is seeded with subsets of the asserted
//! bodies of the goal (instantiated over the domain) and closed under
//! E1-E6. The first admissible model falsifying the goal is returned.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::cs::ConstantSpec;
use crate::model::{instances, required, MkrtychevModel};
use crate::syntax::{Atom, Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CountermodelError {
    #[error("goal is not a sentence: {0}")]
    NotASentence(Formula),
    #[error("only specifications made of concrete entries are supported")]
    InfiniteSpec,
    #[error("search space too large ({0})")]
    Exhausted(String),
}

/// Upper bound on models examined before giving up.
pub const MAX_CANDIDATES: u64 = 1 << 20;

const MAX_SEED_BITS: usize = 16;

pub fn find_countermodel(
    goal: &Formula,
    cs: &ConstantSpec,
    max_domain: usize,
    formula_pool_depth: usize,
) -> Result<Option<MkrtychevModel>, CountermodelError> {
    if !goal.is_sentence() {
        return Err(CountermodelError::NotASentence(goal.clone()));
    }
    if !cs.is_finite() {
        return Err(CountermodelError::InfiniteSpec);
    }
    let mut preds: BTreeMap<String, usize> = goal.predicates();
    for (_, f) in cs.concrete() {
        preds.extend(f.predicates());
    }
    let mut keys: BTreeSet<Term> = BTreeSet::new();
    for t in goal.terms() {
        keys.extend(t.subterms().into_iter().cloned());
    }
    for (c, _) in cs.concrete() {
        keys.insert(Term::Const(c.clone()));
    }
    let mut examined = 0u64;
    for n in 1..=max_domain.max(1) {
        let domain: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
        let dset: BTreeSet<String> = domain.iter().cloned().collect();
        let seeds = seed_facts(goal, &dset);
        if seeds.len() > MAX_SEED_BITS {
            return Err(CountermodelError::Exhausted(format!(
                "{} candidate evidence facts",
                seeds.len()
            )));
        }
        let tuples: Vec<(String, Vec<String>)> = preds
            .iter()
            .flat_map(|(q, &k)| {
                all_tuples(&domain, k)
                    .into_iter()
                    .map(move |t| (q.clone(), t))
            })
            .collect();
        if tuples.len() + seeds.len() > 40 {
            return Err(CountermodelError::Exhausted(format!(
                "{} atomic facts",
                tuples.len()
            )));
        }
        for imask in 0u64..(1u64 << tuples.len()) {
            let mut base = MkrtychevModel::new(domain.iter().cloned());
            for (q, &k) in &preds {
                base.declare_predicate(q.clone(), k);
            }
            for (i, (q, t)) in tuples.iter().enumerate() {
                if imask >> i & 1 == 1 {
                    base.add_fact(q, t.clone()).expect("declared");
                }
            }
            for k in &keys {
                base.declare_term(k);
            }
            for smask in 0u64..(1u64 << seeds.len()) {
                examined += 1;
                if examined > MAX_CANDIDATES {
                    return Err(CountermodelError::Exhausted(format!(
                        "more than {MAX_CANDIDATES} models"
                    )));
                }
                let mut m = base.clone();
                for (c, a) in cs.concrete() {
                    m.add_evidence(Term::Const(c.clone()), a.clone());
                }
                for (i, (t, a)) in seeds.iter().enumerate() {
                    if smask >> i & 1 == 1 {
                        m.add_evidence(t.clone(), a.clone());
                    }
                }
                if !close(&mut m, &keys, formula_pool_depth) {
                    continue;
                }
                if m.validate(cs).map(|v| v.is_empty()) != Ok(true) {
                    continue;
                }
                if m.satisfies(goal) == Ok(false) {
                    return Ok(Some(m));
                }
            }
        }
    }
    Ok(None)
}

/// `(t, A)` for every assertion `t:_X A` in the goal, with the window's
/// variables replaced by domain elements in every way.
fn seed_facts(goal: &Formula, domain: &BTreeSet<String>) -> Vec<(Term, Formula)> {
    let mut out: Vec<(Term, Formula)> = Vec::new();
    goal.visit_subformulas(&mut |g| {
        if let Formula::Just(t, w, a) = g {
            let vars: Vec<&str> = w.iter().filter_map(Atom::as_var).collect();
            let mut bodies = alloc::vec![(**a).clone()];
            for x in vars {
                bodies = bodies
                    .iter()
                    .flat_map(|b| {
                        domain.iter().map(move |d| {
                            b.substitute(x, &Atom::Elem(d.clone()))
                                .expect("elements are never captured")
                        })
                    })
                    .collect();
            }
            for b in bodies {
                let fact = (t.clone(), b.alpha_normal());
                if !out.contains(&fact) {
                    out.push(fact);
                }
            }
        }
    });
    out
}

fn all_tuples(domain: &[String], k: usize) -> Vec<Vec<String>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                domain.iter().map(move |d| {
                    let mut t = t.clone();
                    t.push(d.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Closes the evidence on `keys` under E2-E6; false if it does not settle
/// within `rounds` passes.
fn close(m: &mut MkrtychevModel, keys: &BTreeSet<Term>, rounds: usize) -> bool {
    for _ in 0..=rounds {
        let mut add: Vec<(Term, Formula)> = Vec::new();
        let ev = m.evidence().clone();
        let empty = BTreeSet::new();
        let get = |t: &Term| ev.get(t).unwrap_or(&empty);
        for key in keys {
            let have = get(key);
            for (_, f) in required(key, &get, m.domain()) {
                let f = f.alpha_normal();
                if !have.contains(&f) {
                    add.push((key.clone(), f));
                }
            }
            for a in have {
                for f in instances(a, m.domain()) {
                    let f = f.alpha_normal();
                    if !have.contains(&f) {
                        add.push((key.clone(), f));
                    }
                }
            }
        }
        if add.is_empty() {
            return true;
        }
        for (t, f) in add {
            m.add_evidence(t, f);
        }
    }
    false
}
