//! Constant specifications.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::axioms::{match_axiom, matches_scheme, Scheme};
use crate::syntax::Formula;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CsError {
    #[error("constant `{0}` is not declared")]
    Undeclared(String),
    #[error("`{constant} : {formula}` is not an axiom instance")]
    NotAxiom { constant: String, formula: Formula },
}

/// A set of `c:A` with `A` an axiom instance, given by concrete entries,
/// per-constant schemes, or totality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstantSpec {
    constants: BTreeSet<String>,
    concrete: Vec<(String, Formula)>,
    schematic: BTreeSet<(String, Scheme)>,
    total: bool,
    variant_closed: bool,
}

impl ConstantSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, c: impl Into<String>) {
        self.constants.insert(c.into());
    }

    pub fn add_concrete(&mut self, c: &str, f: Formula) -> Result<(), CsError> {
        if !self.constants.contains(c) {
            return Err(CsError::Undeclared(c.into()));
        }
        if match_axiom(&f).is_none() {
            return Err(CsError::NotAxiom {
                constant: c.into(),
                formula: f,
            });
        }
        if !self.concrete.iter().any(|(d, g)| d == c && *g == f) {
            self.concrete.push((c.into(), f));
        }
        Ok(())
    }

    pub fn add_scheme(&mut self, c: &str, s: Scheme) -> Result<(), CsError> {
        if !self.constants.contains(c) {
            return Err(CsError::Undeclared(c.into()));
        }
        self.schematic.insert((c.into(), s));
        Ok(())
    }

    pub fn set_total(&mut self, total: bool) {
        self.total = total;
    }

    pub fn set_variant_closed(&mut self, closed: bool) {
        self.variant_closed = closed;
    }

    pub fn constants(&self) -> &BTreeSet<String> {
        &self.constants
    }

    pub fn concrete(&self) -> &[(String, Formula)] {
        &self.concrete
    }

    pub fn schematic(&self) -> &BTreeSet<(String, Scheme)> {
        &self.schematic
    }

    pub fn is_total(&self) -> bool {
        self.total
    }

    pub fn is_variant_closed(&self) -> bool {
        self.variant_closed
    }

    /// Only concrete entries: every member can be listed.
    pub fn is_finite(&self) -> bool {
        !self.total && self.schematic.is_empty()
    }

    /// Is `c:f` in the specification?
    ///
    /// Concrete entries compare up to renaming of bound variables, or up to
    /// variable variants when the specification is variant closed.
    pub fn contains(&self, c: &str, f: &Formula) -> bool {
        if !self.constants.contains(c) {
            return false;
        }
        if self.total && match_axiom(f).is_some() {
            return true;
        }
        if self
            .schematic
            .iter()
            .any(|(d, s)| d == c && matches_scheme(f, *s))
        {
            return true;
        }
        self.concrete.iter().any(|(d, g)| {
            d == c
                && if self.variant_closed {
                    g.is_variant_of(f)
                } else {
                    g.alpha_eq(f)
                }
        })
    }

    /// Whether every axiom instance has a constant; concrete-only
    /// specifications cannot be checked and report why.
    pub fn axiomatically_appropriate(&self) -> Result<(), String> {
        if self.total {
            return if self.constants.is_empty() {
                Err("total specification without any declared constant".into())
            } else {
                Ok(())
            };
        }
        let covered: BTreeSet<Scheme> = self.schematic.iter().map(|(_, s)| *s).collect();
        let missing: Vec<&str> = Scheme::ALL
            .iter()
            .filter(|s| !covered.contains(s))
            .map(|s| s.name())
            .collect();
        if missing.is_empty() {
            Ok(())
        } else if !self.concrete.is_empty() && covered.is_empty() {
            Err(alloc::format!(
                "{} concrete entries cannot cover the infinitely many axiom instances; no scheme covers {}",
                self.concrete.len(),
                missing.join(", ")
            ))
        } else {
            Err(alloc::format!("no scheme covers {}", missing.join(", ")))
        }
    }

    /// Concrete entries grouped by constant.
    pub fn concrete_by_constant(&self) -> BTreeMap<&str, Vec<&Formula>> {
        let mut out: BTreeMap<&str, Vec<&Formula>> = BTreeMap::new();
        for (c, f) in &self.concrete {
            out.entry(c.as_str()).or_default().push(f);
        }
        out
    }
}

pub fn cs_contains(cs: &ConstantSpec, c: &str, f: &Formula) -> bool {
    cs.contains(c, f)
}

pub fn cs_axiomatically_appropriate(cs: &ConstantSpec) -> bool {
    cs.axiomatically_appropriate().is_ok()
}
