//! Proof trees: formula-labelled binary trees with rule annotations and
//! closure marks on the leaves.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::cs::ConstantSpec;
use crate::rules::{branch_closed, NodeId, RuleInstance, RuleName};
use crate::syntax::Formula;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    /// One of the initial formulas.
    Root,
    Rule(RuleInstance),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    Contradiction { with: NodeId },
    Cs { constant: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNode {
    pub id: NodeId,
    pub formula: Formula,
    pub origin: Origin,
    pub children: Vec<ProofNode>,
    pub closure: Option<Closure>,
}

impl ProofNode {
    pub fn new(id: NodeId, formula: Formula, origin: Origin) -> Self {
        ProofNode {
            id,
            formula,
            origin,
            children: Vec::new(),
            closure: None,
        }
    }

    pub fn rule(&self) -> Option<&RuleInstance> {
        match &self.origin {
            Origin::Rule(r) => Some(r),
            Origin::Root => None,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// A tableau. The first `roots.len()` nodes of the tree form a chain that
/// holds the initial formulas in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTree {
    pub roots: Vec<Formula>,
    pub tree: ProofNode,
}

impl ProofTree {
    /// Preorder traversal.
    pub fn nodes(&self) -> Vec<&ProofNode> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![&self.tree];
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(n.children.iter().rev());
        }
        out
    }

    pub fn len(&self) -> usize {
        self.nodes().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn find(&self, id: NodeId) -> Option<&ProofNode> {
        self.nodes().into_iter().find(|n| n.id == id)
    }

    pub fn find_mut(&mut self, id: NodeId) -> Option<&mut ProofNode> {
        fn go(n: &mut ProofNode, id: NodeId) -> Option<&mut ProofNode> {
            if n.id == id {
                return Some(n);
            }
            n.children.iter_mut().find_map(|c| go(c, id))
        }
        go(&mut self.tree, id)
    }

    /// Rule names in preorder, one per node.
    pub fn rules_used(&self) -> Vec<RuleName> {
        self.nodes()
            .iter()
            .filter_map(|n| n.rule().map(|r| r.name))
            .collect()
    }

    pub fn closures(&self) -> Vec<(NodeId, &Closure)> {
        self.nodes()
            .iter()
            .filter_map(|n| n.closure.as_ref().map(|c| (n.id, c)))
            .collect()
    }

    /// Every root-to-leaf branch closes, judged from the formulas alone.
    pub fn tableau_closed(&self, cs: &ConstantSpec) -> bool {
        fn go<'a>(
            n: &'a ProofNode,
            branch: &mut Vec<(NodeId, &'a Formula)>,
            cs: &ConstantSpec,
        ) -> bool {
            branch.push((n.id, &n.formula));
            let ok = if n.children.is_empty() {
                branch_closed(branch, cs).is_some()
            } else {
                n.children.iter().all(|c| go(c, branch, cs))
            };
            branch.pop();
            ok
        }
        go(&self.tree, &mut Vec::new(), cs)
    }
}

pub fn tableau_closed(t: &ProofTree, cs: &ConstantSpec) -> bool {
    t.tableau_closed(cs)
}

impl fmt::Display for ProofTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(n: &ProofNode, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{:width$}{}. {}", "", n.id, n.formula, width = depth * 2)?;
            match &n.origin {
                Origin::Root => f.write_str("  [root]")?,
                Origin::Rule(r) => {
                    write!(f, "  [{}", r.name)?;
                    for p in &r.premises {
                        write!(f, " {}", p)?;
                    }
                    if let Some(u) = &r.param {
                        write!(f, " @{}", u)?;
                    }
                    if let Some(x) = &r.var {
                        write!(f, " {}", x)?;
                    }
                    if let Some(a) = &r.cut {
                        write!(f, " cut {}", a)?;
                    }
                    f.write_str("]")?;
                }
            }
            match &n.closure {
                Some(Closure::Contradiction { with }) => write!(f, "  closed with {}", with)?,
                Some(Closure::Cs { constant }) => write!(f, "  closed by {}", constant)?,
                None => {}
            }
            f.write_str("\n")?;
            let step = usize::from(n.children.len() > 1);
            for c in &n.children {
                go(c, depth + step, f)?;
            }
            Ok(())
        }
        go(&self.tree, 0, f)
    }
}
