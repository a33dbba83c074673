//! Independent proof checking.
//!
//! Every non-root node is re-derived from its claimed rule instance against
//! the branch above it; the stored formula is only compared, never trusted.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::cs::ConstantSpec;
use crate::proof::{Closure, Origin, ProofNode, ProofTree};
use crate::rules::{apply_rule, cs_closes, Extension, NodeId, RuleError, RuleName};
use crate::syntax::Formula;

/// Malformed trees, as opposed to bad inferences.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("duplicate node id {0}")]
    DuplicateId(NodeId),
    #[error("premise {0} does not name a node")]
    DanglingPremise(NodeId),
    #[error("label is not a closed Par-formula: {0}")]
    NotClosed(Formula),
    #[error("label contains domain elements: {0}")]
    HasElements(Formula),
    #[error("node has {0} children, at most 2 allowed")]
    TooManyChildren(usize),
    #[error("closure mark on an interior node")]
    ClosureOnInterior,
    #[error("tree has no initial formulas")]
    NoRoots,
    #[error("initial chain does not match the roots list")]
    RootChain,
    #[error(
        "{0} is a branching rule but the node does not split into two children from one instance"
    )]
    SplitShape(RuleName),
    #[error("{0} does not branch but the node has two children")]
    UnexpectedSplit(RuleName),
    #[error("with-witness {0} does not name a node")]
    DanglingWitness(NodeId),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("structure: {0}")]
    Structure(#[from] StructuralError),
    #[error("roots are not [~goal]")]
    GoalMismatch,
    #[error("rule: {0}")]
    Rule(#[from] RuleError),
    #[error("formula {found} is not a conclusion of the rule (expected one of {expected:?})")]
    WrongConclusion {
        expected: Vec<Formula>,
        found: Formula,
    },
    #[error("open leaf without closure mark")]
    OpenLeaf,
    #[error("contradiction witness {0} is not on the branch")]
    WitnessOffBranch(NodeId),
    #[error("node {0} and the leaf are not a formula and its negation")]
    NotContradictory(NodeId),
    #[error("no formula ~{0}:A with c:A in the specification on the branch")]
    NotInSpec(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("node {}: {error}", node.map_or_else(|| String::from("-"), |n| alloc::format!("{n}")))]
pub struct Rejection {
    /// First failing node in preorder, when one can be named.
    pub node: Option<NodeId>,
    pub error: CheckError,
}

impl Rejection {
    fn at(node: NodeId, error: impl Into<CheckError>) -> Self {
        Rejection {
            node: Some(node),
            error: error.into(),
        }
    }

    pub fn is_structural(&self) -> bool {
        matches!(self.error, CheckError::Structure(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Accepted {
    pub nodes: usize,
    pub branches: usize,
}

pub fn check_proof(
    t: &ProofTree,
    cs: &ConstantSpec,
    expected_goal: Option<&Formula>,
) -> Result<Accepted, Rejection> {
    let nodes = t.nodes();
    let mut ids = BTreeSet::new();
    for n in &nodes {
        if !ids.insert(n.id) {
            return Err(Rejection::at(n.id, StructuralError::DuplicateId(n.id)));
        }
    }
    for n in &nodes {
        if let Some(r) = n.rule() {
            if let Some(p) = r.premises.iter().find(|p| !ids.contains(p)) {
                return Err(Rejection::at(n.id, StructuralError::DanglingPremise(*p)));
            }
        }
        if let Some(Closure::Contradiction { with }) = &n.closure {
            if !ids.contains(with) {
                return Err(Rejection::at(n.id, StructuralError::DanglingWitness(*with)));
            }
        }
        if !n.formula.is_closed_par_formula() {
            return Err(Rejection::at(
                n.id,
                StructuralError::NotClosed(n.formula.clone()),
            ));
        }
        if !n.formula.elems().is_empty() {
            return Err(Rejection::at(
                n.id,
                StructuralError::HasElements(n.formula.clone()),
            ));
        }
        if n.children.len() > 2 {
            return Err(Rejection::at(
                n.id,
                StructuralError::TooManyChildren(n.children.len()),
            ));
        }
        if !n.children.is_empty() && n.closure.is_some() {
            return Err(Rejection::at(n.id, StructuralError::ClosureOnInterior));
        }
    }
    if t.roots.is_empty() {
        return Err(Rejection {
            node: None,
            error: StructuralError::NoRoots.into(),
        });
    }
    if let Some(goal) = expected_goal {
        if t.roots.len() != 1 || t.roots[0] != Formula::not(goal.clone()) {
            return Err(Rejection {
                node: Some(t.tree.id),
                error: CheckError::GoalMismatch,
            });
        }
    }
    let mut c = Checker {
        cs,
        roots: &t.roots,
        branch: Vec::new(),
        branches: 0,
    };
    c.node(&t.tree)?;
    Ok(Accepted {
        nodes: nodes.len(),
        branches: c.branches,
    })
}

struct Checker<'a> {
    cs: &'a ConstantSpec,
    roots: &'a [Formula],
    branch: Vec<(NodeId, &'a Formula)>,
    branches: usize,
}

impl<'a> Checker<'a> {
    fn node(&mut self, n: &'a ProofNode) -> Result<(), Rejection> {
        let depth = self.branch.len();
        match &n.origin {
            Origin::Root => {
                if depth >= self.roots.len() || self.roots[depth] != n.formula {
                    return Err(Rejection::at(n.id, StructuralError::RootChain));
                }
            }
            Origin::Rule(_) if depth < self.roots.len() => {
                return Err(Rejection::at(n.id, StructuralError::RootChain));
            }
            Origin::Rule(_) => {}
        }
        self.branch.push((n.id, &n.formula));
        let out = self.below(n);
        self.branch.pop();
        out
    }

    fn below(&mut self, n: &'a ProofNode) -> Result<(), Rejection> {
        if n.children.is_empty() {
            if self.branch.len() < self.roots.len() {
                return Err(Rejection::at(n.id, StructuralError::RootChain));
            }
            self.branches += 1;
            return self.leaf(n);
        }
        if self.branch.len() < self.roots.len() {
            // still inside the initial chain
            if n.children.len() != 1 {
                return Err(Rejection::at(n.id, StructuralError::RootChain));
            }
            return self.node(&n.children[0]);
        }
        for c in &n.children {
            if let Origin::Root = c.origin {
                return Err(Rejection::at(c.id, StructuralError::RootChain));
            }
        }
        match n.children.as_slice() {
            [c] => {
                let r = c.rule().expect("checked above");
                if r.name.is_branching() {
                    return Err(Rejection::at(c.id, StructuralError::SplitShape(r.name)));
                }
                match apply_rule(&self.branch, r).map_err(|e| Rejection::at(c.id, e))? {
                    Extension::Linear(fs) => {
                        if !fs.contains(&c.formula) {
                            return Err(Rejection::at(
                                c.id,
                                CheckError::WrongConclusion {
                                    expected: fs,
                                    found: c.formula.clone(),
                                },
                            ));
                        }
                    }
                    Extension::Split(..) => unreachable!("non-branching rule"),
                }
                self.node(c)
            }
            [l, r] => {
                let (rl, rr) = (l.rule().expect("checked"), r.rule().expect("checked"));
                if !rl.name.is_branching() {
                    return Err(Rejection::at(
                        l.id,
                        StructuralError::UnexpectedSplit(rl.name),
                    ));
                }
                if rl != rr {
                    return Err(Rejection::at(r.id, StructuralError::SplitShape(rl.name)));
                }
                match apply_rule(&self.branch, rl).map_err(|e| Rejection::at(l.id, e))? {
                    Extension::Split(a, b) => {
                        for (child, want) in [(l, &a), (r, &b)] {
                            if child.formula != *want {
                                return Err(Rejection::at(
                                    child.id,
                                    CheckError::WrongConclusion {
                                        expected: alloc::vec![a.clone(), b.clone()],
                                        found: child.formula.clone(),
                                    },
                                ));
                            }
                        }
                    }
                    Extension::Linear(_) => unreachable!("branching rule"),
                }
                self.node(l)?;
                self.node(r)
            }
            _ => unreachable!("arity checked"),
        }
    }

    fn leaf(&self, n: &ProofNode) -> Result<(), Rejection> {
        match &n.closure {
            None => Err(Rejection::at(n.id, CheckError::OpenLeaf)),
            Some(Closure::Contradiction { with }) => {
                let w = self
                    .branch
                    .iter()
                    .find(|(i, _)| i == with)
                    .map(|(_, f)| *f)
                    .ok_or(Rejection::at(n.id, CheckError::WitnessOffBranch(*with)))?;
                let pair =
                    |a: &Formula, b: &Formula| a.negated() == Some(b) || b.negated() == Some(a);
                // normally the leaf is the partner; otherwise look along the branch
                if pair(w, &n.formula) || self.branch.iter().any(|(_, f)| pair(w, f)) {
                    Ok(())
                } else {
                    Err(Rejection::at(n.id, CheckError::NotContradictory(*with)))
                }
            }
            Some(Closure::Cs { constant }) => {
                let hit = self
                    .branch
                    .iter()
                    .rev()
                    .any(|(_, f)| cs_closes(f, self.cs).as_deref() == Some(constant.as_str()));
                if hit {
                    Ok(())
                } else {
                    Err(Rejection::at(n.id, CheckError::NotInSpec(constant.clone())))
                }
            }
        }
    }
}
