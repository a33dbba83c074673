//! Model files (JSON).
//!
//! ```json
//! {"domain": ["a", "b"],
//!  "predicates": {"Q": [["a"]]},
//!  "evidence": [{"term": "t", "formulas": ["Q(x)", "Q($a)"]}]}
//! ```

use std::collections::{BTreeMap, BTreeSet};

use folp_core::model::{MkrtychevModel, ModelError};
use folp_core::text::{ParseError, Parser};
use folp_core::{Formula, Term};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub domain: Vec<String>,
    #[serde(default)]
    pub predicates: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub evidence: Vec<EvidenceEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceEntry {
    pub term: String,
    pub formulas: Vec<String>,
}

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("malformed model JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("evidence entry {index}: term: {source}")]
    Term { index: usize, source: ParseError },
    #[error("evidence for `{term}`, formula {index}: {source}")]
    Formula {
        term: String,
        index: usize,
        source: ParseError,
    },
    #[error("predicate `{0}` is used but not listed under \"predicates\"")]
    UndeclaredPredicate(String),
    #[error("predicate `{name}`: tuple of length {found}, expected {expected}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn bare(d: &str) -> String {
    d.strip_prefix('$').unwrap_or(d).to_string()
}

impl ModelFile {
    /// Builds the model. `decls` are the declared constants; `extra`
    /// formulas (queries) take part in inferring arities of predicates that
    /// have no true tuples.
    pub fn build(
        &self,
        decls: &BTreeSet<String>,
        extra: &[&Formula],
    ) -> Result<MkrtychevModel, ModelFileError> {
        if self.domain.is_empty() {
            return Err(ModelError::EmptyDomain.into());
        }
        let mut m = MkrtychevModel::new(self.domain.iter().map(|d| bare(d)));
        let mut parsed: Vec<(Term, Vec<Formula>)> = Vec::new();
        let mut arities: BTreeMap<String, usize> = BTreeMap::new();
        for (index, e) in self.evidence.iter().enumerate() {
            let t = folp_core::parse_term(&e.term, decls)
                .map_err(|source| ModelFileError::Term { index, source })?;
            let mut fs = Vec::new();
            for (i, src) in e.formulas.iter().enumerate() {
                let mut p = Parser::new(src, decls).map_err(|source| ModelFileError::Formula {
                    term: e.term.clone(),
                    index: i,
                    source,
                })?;
                p.set_arities(arities.clone());
                let f = p
                    .formula()
                    .and_then(|f| p.expect_end().map(|_| f))
                    .map_err(|source| ModelFileError::Formula {
                        term: e.term.clone(),
                        index: i,
                        source,
                    })?;
                arities = p.arities().clone();
                fs.push(f);
            }
            parsed.push((t, fs));
        }
        let used = parsed
            .iter()
            .flat_map(|(_, fs)| fs.iter())
            .chain(extra.iter().copied())
            .flat_map(|f| f.predicates());
        for (q, k) in used {
            arities.entry(q).or_insert(k);
        }
        for (q, tuples) in &self.predicates {
            let k = tuples
                .first()
                .map(Vec::len)
                .or_else(|| arities.get(q).copied())
                .unwrap_or(0);
            if let Some(&n) = arities.get(q) {
                if n != k {
                    return Err(ModelFileError::Arity {
                        name: q.clone(),
                        expected: n,
                        found: k,
                    });
                }
            }
            m.declare_predicate(q.clone(), k);
            for t in tuples {
                if t.len() != k {
                    return Err(ModelFileError::Arity {
                        name: q.clone(),
                        expected: k,
                        found: t.len(),
                    });
                }
                m.add_fact(q, t.iter().map(|d| bare(d)).collect())?;
            }
        }
        for (_, fs) in &parsed {
            for f in fs {
                if let Some(q) = f
                    .predicates()
                    .into_keys()
                    .find(|q| !self.predicates.contains_key(q))
                {
                    return Err(ModelFileError::UndeclaredPredicate(q));
                }
            }
        }
        for (t, fs) in parsed {
            m.declare_term(&t);
            for f in fs {
                m.add_evidence(t.clone(), f);
            }
        }
        Ok(m)
    }

    pub fn from_model(m: &MkrtychevModel) -> Self {
        ModelFile {
            domain: m.domain().iter().cloned().collect(),
            predicates: m
                .predicates()
                .iter()
                .map(|(q, ts)| (q.clone(), ts.iter().cloned().collect()))
                .collect(),
            evidence: m
                .evidence()
                .iter()
                .filter(|(_, fs)| !fs.is_empty())
                .map(|(t, fs)| EvidenceEntry {
                    term: t.to_string(),
                    formulas: fs.iter().map(|f| f.readable().to_string()).collect(),
                })
                .collect(),
        }
    }
}

pub fn parse_model(
    json: &str,
    decls: &BTreeSet<String>,
    extra: &[&Formula],
) -> Result<MkrtychevModel, ModelFileError> {
    let file: ModelFile = serde_json::from_str(json)?;
    file.build(decls, extra)
}

pub fn model_to_json(m: &MkrtychevModel) -> String {
    serde_json::to_string_pretty(&ModelFile::from_model(m)).expect("serialisable")
}
