//! The fifteen tableau rules and branch closure.
//!
//! A rule instance names one premise on the current branch plus the extra
//! data the rule needs (a parameter, a cut formula, a variable). Applying it
//! yields the formulas of the extension; inputs are never modified.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::cs::ConstantSpec;
use crate::syntax::{Atom, Formula, SubstError, Term};

pub type NodeId = u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleName {
    FNeg,
    TImp,
    FImp,
    TForall,
    FExists,
    TExists,
    FForall,
    TColon,
    FPlus,
    FDot,
    FBang,
    Ctr,
    Exp,
    Ins,
    GenX,
}

impl RuleName {
    pub const ALL: [RuleName; 15] = [
        RuleName::FNeg,
        RuleName::TImp,
        RuleName::FImp,
        RuleName::TForall,
        RuleName::FExists,
        RuleName::TExists,
        RuleName::FForall,
        RuleName::TColon,
        RuleName::FPlus,
        RuleName::FDot,
        RuleName::FBang,
        RuleName::Ctr,
        RuleName::Exp,
        RuleName::Ins,
        RuleName::GenX,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleName::FNeg => "FNeg",
            RuleName::TImp => "TImp",
            RuleName::FImp => "FImp",
            RuleName::TForall => "TForall",
            RuleName::FExists => "FExists",
            RuleName::TExists => "TExists",
            RuleName::FForall => "FForall",
            RuleName::TColon => "TColon",
            RuleName::FPlus => "FPlus",
            RuleName::FDot => "FDot",
            RuleName::FBang => "FBang",
            RuleName::Ctr => "Ctr",
            RuleName::Exp => "Exp",
            RuleName::Ins => "Ins",
            RuleName::GenX => "GenX",
        }
    }

    pub fn is_branching(self) -> bool {
        matches!(self, RuleName::TImp | RuleName::FDot)
    }

    /// Rules whose parameter must be new to the branch.
    pub fn needs_fresh_param(self) -> bool {
        matches!(self, RuleName::TExists | RuleName::FForall)
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleName {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        RuleName::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleInstance {
    pub name: RuleName,
    pub premises: Vec<NodeId>,
    /// Parameter name (without `@`) for the quantifier rules, Ctr, Exp and Ins.
    pub param: Option<String>,
    /// The `A` of F·.
    pub cut: Option<Formula>,
    /// The individual variable introduced by Ins.
    pub var: Option<String>,
}

impl RuleInstance {
    pub fn new(name: RuleName, premise: NodeId) -> Self {
        RuleInstance {
            name,
            premises: vec![premise],
            param: None,
            cut: None,
            var: None,
        }
    }

    pub fn with_param(mut self, u: impl Into<String>) -> Self {
        self.param = Some(u.into());
        self
    }

    pub fn with_cut(mut self, cut: Formula) -> Self {
        self.cut = Some(cut);
        self
    }

    pub fn with_var(mut self, x: impl Into<String>) -> Self {
        self.var = Some(x.into());
        self
    }
}

/// What a rule adds: formulas on the same branch, or two new branches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Linear(Vec<Formula>),
    Split(Formula, Formula),
}

impl Extension {
    pub fn formulas(&self) -> Vec<&Formula> {
        match self {
            Extension::Linear(fs) => fs.iter().collect(),
            Extension::Split(l, r) => vec![l, r],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("rule takes exactly one premise, got {0}")]
    PremiseCount(usize),
    #[error("premise {0} is not on the branch")]
    PremiseNotOnBranch(NodeId),
    #[error("premise shape: {rule} needs a premise of the form {expected}")]
    PremiseShape {
        rule: RuleName,
        expected: &'static str,
    },
    #[error("missing {what} for {rule}")]
    Missing { rule: RuleName, what: &'static str },
    #[error("`{0}` is not a parameter")]
    NotAParameter(String),
    #[error("freshness: parameter @{0} already occurs on the branch")]
    NotFresh(String),
    #[error("window must contain only parameters")]
    WindowNotParams,
    #[error("cut formula has parameters outside the window (Par(A) must be a subset of X)")]
    CutOutsideWindow,
    #[error("cut formula contains domain elements")]
    CutHasElements,
    #[error("F! needs the same term and window inside and outside")]
    BangMismatch,
    #[error("gen rule needs the quantified variable to match the gen subscript")]
    GenMismatch,
    #[error("Ctr: parameter @{0} is already in the window")]
    CtrAlreadyInWindow(String),
    #[error("Exp: parameter @{0} is not in the window")]
    ExpNotInWindow(String),
    #[error("Exp: parameter @{0} occurs in the body (u must not be in Par(A))")]
    ExpParamInBody(String),
    #[error("Ins: parameter @{0} does not occur in the body")]
    InsParamNotInBody(String),
    #[error("Ins: variable `{0}` already occurs free in the body")]
    InsVarFree(String),
    #[error("Ins: {0}")]
    InsCapture(SubstError),
    #[error("`{0}` is not an individual variable")]
    BadVariable(String),
}

/// Formulas on a branch, root first, with their node ids.
pub type BranchView<'a> = [(NodeId, &'a Formula)];

fn premise<'a>(branch: &BranchView<'a>, r: &RuleInstance) -> Result<&'a Formula, RuleError> {
    if r.premises.len() != 1 {
        return Err(RuleError::PremiseCount(r.premises.len()));
    }
    let id = r.premises[0];
    branch
        .iter()
        .find(|(n, _)| *n == id)
        .map(|(_, f)| *f)
        .ok_or(RuleError::PremiseNotOnBranch(id))
}

fn param_of(r: &RuleInstance) -> Result<&str, RuleError> {
    let u = r.param.as_deref().ok_or(RuleError::Missing {
        rule: r.name,
        what: "parameter",
    })?;
    if crate::text::is_ident_start(u.chars().next().unwrap_or(' '))
        && u.chars().all(crate::text::is_ident_char)
    {
        Ok(u)
    } else {
        Err(RuleError::NotAParameter(u.to_owned()))
    }
}

fn shape(rule: RuleName, expected: &'static str) -> RuleError {
    RuleError::PremiseShape { rule, expected }
}

/// Applies `r` to the branch and returns the extension it licenses.
pub fn apply_rule(branch: &BranchView<'_>, r: &RuleInstance) -> Result<Extension, RuleError> {
    use Formula::*;
    use RuleName::*;
    let p = premise(branch, r)?;
    let neg = p.negated();
    let window_ok = |w: &crate::syntax::Window| {
        if w.only_params() {
            Ok(())
        } else {
            Err(RuleError::WindowNotParams)
        }
    };
    match r.name {
        FNeg => match neg {
            Some(Not(a)) => Ok(Extension::Linear(vec![(**a).clone()])),
            _ => Err(shape(FNeg, "~~A")),
        },
        TImp => match p {
            Imp(a, b) => Ok(Extension::Split(Formula::not((**a).clone()), (**b).clone())),
            _ => Err(shape(TImp, "A -> B")),
        },
        FImp => match neg {
            Some(Imp(a, b)) => Ok(Extension::Linear(vec![
                (**a).clone(),
                Formula::not((**b).clone()),
            ])),
            _ => Err(shape(FImp, "~(A -> B)")),
        },
        TForall | FExists | TExists | FForall => {
            let (x, body, negate) = match (r.name, p, neg) {
                (TForall, Forall(x, a), _) => (x, a, false),
                (TExists, Exists(x, a), _) => (x, a, false),
                (FExists, _, Some(Exists(x, a))) => (x, a, true),
                (FForall, _, Some(Forall(x, a))) => (x, a, true),
                (TForall, ..) => return Err(shape(TForall, "forall x. A")),
                (TExists, ..) => return Err(shape(TExists, "exists x. A")),
                (FExists, ..) => return Err(shape(FExists, "~exists x. A")),
                _ => return Err(shape(FForall, "~forall x. A")),
            };
            let u = param_of(r)?;
            if r.name.needs_fresh_param() && branch.iter().any(|(_, f)| f.params().contains(u)) {
                return Err(RuleError::NotFresh(u.to_owned()));
            }
            // parameters are never bound, so this cannot capture
            let inst = body
                .substitute(x, &Atom::Param(u.to_owned()))
                .map_err(RuleError::InsCapture)?;
            Ok(Extension::Linear(vec![if negate {
                Formula::not(inst)
            } else {
                inst
            }]))
        }
        TColon => match p {
            Just(_, w, a) => {
                window_ok(w)?;
                Ok(Extension::Linear(vec![a.universal_closure()]))
            }
            _ => Err(shape(TColon, "t:_X A")),
        },
        FPlus => match neg {
            Some(Just(Term::Sum(t, s), w, a)) => {
                window_ok(w)?;
                Ok(Extension::Linear(vec![
                    Formula::not(Formula::just((**t).clone(), w.clone(), (**a).clone())),
                    Formula::not(Formula::just((**s).clone(), w.clone(), (**a).clone())),
                ]))
            }
            _ => Err(shape(FPlus, "~(t+s):_X A")),
        },
        FDot => match neg {
            Some(Just(Term::App(s, t), w, b)) => {
                window_ok(w)?;
                let cut = r.cut.as_ref().ok_or(RuleError::Missing {
                    rule: FDot,
                    what: "cut formula",
                })?;
                if !cut.elems().is_empty() {
                    return Err(RuleError::CutHasElements);
                }
                if !cut
                    .params()
                    .iter()
                    .all(|u| w.contains(&Atom::Param(u.clone())))
                {
                    return Err(RuleError::CutOutsideWindow);
                }
                Ok(Extension::Split(
                    Formula::not(Formula::just(
                        (**s).clone(),
                        w.clone(),
                        Formula::imp(cut.clone(), (**b).clone()),
                    )),
                    Formula::not(Formula::just((**t).clone(), w.clone(), cut.clone())),
                ))
            }
            _ => Err(shape(FDot, "~(s*t):_X B")),
        },
        FBang => match neg {
            Some(Just(Term::Bang(t), w, inner)) => {
                window_ok(w)?;
                match &**inner {
                    Just(t2, w2, a) if **t == *t2 && w == w2 => {
                        Ok(Extension::Linear(vec![Formula::not(Formula::just(
                            t2.clone(),
                            w2.clone(),
                            (**a).clone(),
                        ))]))
                    }
                    Just(..) => Err(RuleError::BangMismatch),
                    _ => Err(shape(FBang, "~!t:_X t:_X A")),
                }
            }
            _ => Err(shape(FBang, "~!t:_X t:_X A")),
        },
        GenX => match neg {
            Some(Just(Term::Gen(x, t), w, fa)) => {
                window_ok(w)?;
                match &**fa {
                    Forall(y, a) if y == x => Ok(Extension::Linear(vec![Formula::not(
                        Formula::just((**t).clone(), w.clone(), (**a).clone()),
                    )])),
                    Forall(..) => Err(RuleError::GenMismatch),
                    _ => Err(shape(GenX, "~gen_x(t):_X forall x. A")),
                }
            }
            _ => Err(shape(GenX, "~gen_x(t):_X forall x. A")),
        },
        Ctr => match neg {
            Some(Just(t, w, a)) => {
                window_ok(w)?;
                let u = Atom::Param(param_of(r)?.to_owned());
                if w.contains(&u) {
                    return Err(RuleError::CtrAlreadyInWindow(u.name().to_owned()));
                }
                Ok(Extension::Linear(vec![Formula::not(Formula::just(
                    t.clone(),
                    w.with(u),
                    (**a).clone(),
                ))]))
            }
            _ => Err(shape(Ctr, "~t:_X A")),
        },
        Exp => match neg {
            Some(Just(t, w, a)) => {
                window_ok(w)?;
                let name = param_of(r)?;
                let u = Atom::Param(name.to_owned());
                if !w.contains(&u) {
                    return Err(RuleError::ExpNotInWindow(name.to_owned()));
                }
                if a.params().contains(name) {
                    return Err(RuleError::ExpParamInBody(name.to_owned()));
                }
                Ok(Extension::Linear(vec![Formula::not(Formula::just(
                    t.clone(),
                    w.without(&u),
                    (**a).clone(),
                ))]))
            }
            _ => Err(shape(Exp, "~t:_Xu A")),
        },
        Ins => match neg {
            Some(Just(t, w, a)) => {
                window_ok(w)?;
                let u = param_of(r)?;
                let x = r.var.as_deref().ok_or(RuleError::Missing {
                    rule: Ins,
                    what: "variable",
                })?;
                if !crate::text::is_lower_ident(x) {
                    return Err(RuleError::BadVariable(x.to_owned()));
                }
                if !a.params().contains(u) {
                    return Err(RuleError::InsParamNotInBody(u.to_owned()));
                }
                if a.free_vars().contains(x) {
                    return Err(RuleError::InsVarFree(x.to_owned()));
                }
                let body = a
                    .replace_param(u, &Atom::Var(x.to_owned()))
                    .map_err(RuleError::InsCapture)?;
                Ok(Extension::Linear(vec![Formula::not(Formula::just(
                    t.clone(),
                    w.clone(),
                    body,
                ))]))
            }
            _ => Err(shape(Ins, "~t:_X A(u)")),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchClosure {
    /// Node ids of `A` and `~A`.
    Contradiction(NodeId, NodeId),
    /// `~c:A` at the node with `c:A` in the specification.
    Cs { constant: String, node: NodeId },
}

/// Does the single formula `f` close a branch by the specification?
pub fn cs_closes(f: &Formula, cs: &ConstantSpec) -> Option<String> {
    match f.negated() {
        Some(Formula::Just(Term::Const(c), w, a)) if w.is_empty() && cs.contains(c, a) => {
            Some(c.clone())
        }
        _ => None,
    }
}

/// Closure of a branch: a formula together with its negation, or a negated
/// specification entry. Comparison is syntactic.
pub fn branch_closed(branch: &BranchView<'_>, cs: &ConstantSpec) -> Option<BranchClosure> {
    for (i, (id, f)) in branch.iter().enumerate() {
        if let Some(c) = cs_closes(f, cs) {
            return Some(BranchClosure::Cs {
                constant: c,
                node: *id,
            });
        }
        for (id2, g) in &branch[..i] {
            if g.negated() == Some(*f) {
                return Some(BranchClosure::Contradiction(*id, *id2));
            }
            if f.negated() == Some(*g) {
                return Some(BranchClosure::Contradiction(*id2, *id));
            }
        }
    }
    None
}
