//! Deterministic tableau search.
//!
//! One branch is worked at a time, leftmost first. Each step applies the
//! highest-priority rule instance that is enabled on the current leaf and
//! not redundant (some conclusion is new to the branch). Closure is tested
//! whenever a node is added, so a closed leaf is always its own witness.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use thiserror::Error;

use crate::cs::ConstantSpec;
use crate::proof::{Closure, Origin, ProofNode, ProofTree};
use crate::rules::{apply_rule, cs_closes, Extension, NodeId, RuleInstance, RuleName};
use crate::syntax::{Atom, Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: usize,
    pub max_depth: usize,
    pub max_params: usize,
    pub max_cuts: usize,
    pub time_limit: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 10_000,
            max_depth: 200,
            max_params: 8,
            max_cuts: 32,
            time_limit: Duration::from_secs(30),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Nodes,
    Depth,
    Params,
    Time,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dimension::Nodes => "max_nodes",
            Dimension::Depth => "max_depth",
            Dimension::Params => "max_params",
            Dimension::Time => "time_limit",
        })
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Proved(ProofTree),
    /// A branch on which no further rule applies.
    Open {
        branch: Vec<Formula>,
        diagnostics: Vec<String>,
    },
    Exhausted(Dimension),
}

impl Outcome {
    pub fn proof(&self) -> Option<&ProofTree> {
        match self {
            Outcome::Proved(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("goal is not a sentence: {0}")]
    NotASentence(Formula),
    #[error("initial formula is not a closed Par-formula: {0}")]
    NotClosed(Formula),
    #[error("budget dimension {0} must be at least 1")]
    ZeroBudget(Dimension),
}

/// Elapsed time since the search started.
pub trait Clock {
    fn elapsed(&self) -> Duration;
}

/// A clock that never advances; the time limit is then never hit.
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

#[derive(Clone, Debug)]
struct Node {
    formula: Formula,
    parent: Option<usize>,
    rule: Option<RuleInstance>,
    children: Vec<usize>,
    closure: Option<Closure>,
}

fn id_of(i: usize) -> NodeId {
    i as NodeId + 1
}

fn idx_of(id: NodeId) -> usize {
    id as usize - 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// A rule was applied.
    Extended,
    /// Every branch is closed.
    Closed,
    /// The current branch is open and nothing applies.
    Saturated,
    Exhausted(Dimension),
}

/// Search state; [`SearchState::step`] advances it by one rule application.
pub struct SearchState<'a> {
    cs: &'a ConstantSpec,
    budget: Budget,
    hints: Vec<Formula>,
    vocab: Vec<String>,
    nodes: Vec<Node>,
    open: Vec<usize>,
    next_param: usize,
    roots: Vec<Formula>,
    done: Option<Step>,
}

#[allow(clippy::large_enum_variant)]
enum Pick {
    Apply(RuleInstance, Extension),
    ParamsBlocked,
    Nothing,
}

impl<'a> SearchState<'a> {
    pub fn new(
        roots: Vec<Formula>,
        cs: &'a ConstantSpec,
        budget: Budget,
        hints: Vec<Formula>,
    ) -> Result<Self, SearchError> {
        for (d, v) in [
            (Dimension::Nodes, budget.max_nodes),
            (Dimension::Depth, budget.max_depth),
            (Dimension::Params, budget.max_params),
        ] {
            if v == 0 {
                return Err(SearchError::ZeroBudget(d));
            }
        }
        if let Some(f) = roots
            .iter()
            .find(|f| !f.is_closed_par_formula() || !f.elems().is_empty())
        {
            return Err(SearchError::NotClosed(f.clone()));
        }
        let mut vocab = BTreeSet::new();
        for f in roots
            .iter()
            .chain(&hints)
            .chain(cs.concrete().iter().map(|(_, f)| f))
        {
            vocab.extend(f.var_names());
        }
        let mut s = SearchState {
            cs,
            budget,
            hints,
            vocab: vocab.into_iter().collect(),
            nodes: Vec::new(),
            open: Vec::new(),
            next_param: 0,
            roots: roots.clone(),
            done: None,
        };
        let mut parent = None;
        for f in roots {
            let i = s.push(f, parent, None);
            parent = Some(i);
            if s.nodes[i].closure.is_some() {
                break;
            }
        }
        let last = s.nodes.len() - 1;
        if s.nodes[last].closure.is_none() {
            s.open.push(last);
        }
        Ok(s)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Formulas on the branch being worked, root first.
    pub fn current_branch(&self) -> Vec<&Formula> {
        match self.open.last() {
            Some(&leaf) => self
                .path(leaf)
                .into_iter()
                .map(|i| &self.nodes[i].formula)
                .collect(),
            None => Vec::new(),
        }
    }

    fn path(&self, leaf: usize) -> Vec<usize> {
        let mut out = vec![leaf];
        let mut cur = leaf;
        while let Some(p) = self.nodes[cur].parent {
            out.push(p);
            cur = p;
        }
        out.reverse();
        out
    }

    /// Adds a node and marks it closed when it closes its branch.
    fn push(&mut self, f: Formula, parent: Option<usize>, rule: Option<RuleInstance>) -> usize {
        let i = self.nodes.len();
        let mut closure = cs_closes(&f, self.cs).map(|constant| Closure::Cs { constant });
        if let (None, Some(p)) = (&closure, parent) {
            for j in self.path(p) {
                let g = &self.nodes[j].formula;
                if g.negated() == Some(&f) || f.negated() == Some(g) {
                    closure = Some(Closure::Contradiction { with: id_of(j) });
                    break;
                }
            }
        }
        self.nodes.push(Node {
            formula: f,
            parent,
            rule,
            children: Vec::new(),
            closure,
        });
        if let Some(p) = parent {
            self.nodes[p].children.push(i);
        }
        i
    }

    /// Applies one rule instance on the current branch.
    pub fn step(&mut self, clock: &dyn Clock) -> Step {
        if let Some(s) = &self.done {
            return s.clone();
        }
        let Some(&leaf) = self.open.last() else {
            self.done = Some(Step::Closed);
            return Step::Closed;
        };
        if clock.elapsed() > self.budget.time_limit {
            return self.finish(Step::Exhausted(Dimension::Time));
        }
        let path = self.path(leaf);
        let (inst, ext) = match self.pick(&path) {
            Pick::Apply(i, e) => (i, e),
            Pick::ParamsBlocked => return self.finish(Step::Exhausted(Dimension::Params)),
            Pick::Nothing => return self.finish(Step::Saturated),
        };
        let added = match &ext {
            Extension::Linear(fs) => fs.len(),
            Extension::Split(..) => 2,
        };
        if self.nodes.len() + added > self.budget.max_nodes {
            return self.finish(Step::Exhausted(Dimension::Nodes));
        }
        if path.len()
            + if added == 2 && !inst.name.is_branching() {
                2
            } else {
                1
            }
            > self.budget.max_depth
        {
            return self.finish(Step::Exhausted(Dimension::Depth));
        }
        if inst.name.needs_fresh_param() || self.introduces_param(&path, &inst) {
            self.next_param += 1;
        }
        self.open.pop();
        match ext {
            Extension::Linear(fs) => {
                let mut at = leaf;
                for f in fs {
                    at = self.push(f, Some(at), Some(inst.clone()));
                    if self.nodes[at].closure.is_some() {
                        break;
                    }
                }
                if self.nodes[at].closure.is_none() {
                    self.open.push(at);
                }
            }
            Extension::Split(a, b) => {
                let l = self.push(a, Some(leaf), Some(inst.clone()));
                let r = self.push(b, Some(leaf), Some(inst));
                for i in [r, l] {
                    if self.nodes[i].closure.is_none() {
                        self.open.push(i);
                    }
                }
            }
        }
        if self.open.is_empty() {
            self.done = Some(Step::Closed);
            return Step::Closed;
        }
        Step::Extended
    }

    fn finish(&mut self, s: Step) -> Step {
        self.done = Some(s.clone());
        s
    }

    fn introduces_param(&self, path: &[usize], inst: &RuleInstance) -> bool {
        match &inst.param {
            Some(u) if matches!(inst.name, RuleName::TForall | RuleName::FExists) => !path
                .iter()
                .any(|&i| self.nodes[i].formula.params().contains(u)),
            _ => false,
        }
    }

    fn fresh_param(&self, params: &[String]) -> String {
        let mut n = self.next_param;
        loop {
            let u = format!("u{n}");
            if !params.contains(&u) {
                return u;
            }
            n += 1;
        }
    }

    fn fresh_var(&self, premise: &Formula) -> String {
        let taken = premise.var_names();
        (0..)
            .map(|i| format!("v{i}"))
            .find(|v| !self.vocab.contains(v) && !taken.contains(v))
            .expect("unbounded")
    }

    fn pick(&self, path: &[usize]) -> Pick {
        use RuleName::*;
        let view: Vec<(NodeId, &Formula)> = path
            .iter()
            .map(|&i| (id_of(i), &self.nodes[i].formula))
            .collect();
        let present = |f: &Formula| view.iter().any(|(_, g)| *g == f);
        let applied = |name: RuleName, prem: NodeId, param: Option<&str>| {
            path.iter().any(|&i| {
                self.nodes[i].rule.as_ref().is_some_and(|r| {
                    r.name == name
                        && r.premises == [prem]
                        && (param.is_none() || r.param.as_deref() == param)
                })
            })
        };
        // enabled and adds something new
        let fire = |inst: RuleInstance| -> Option<Pick> {
            match apply_rule(&view, &inst).ok()? {
                Extension::Linear(fs) => {
                    let fresh: Vec<Formula> = fs.into_iter().filter(|f| !present(f)).collect();
                    (!fresh.is_empty()).then_some(Pick::Apply(inst, Extension::Linear(fresh)))
                }
                Extension::Split(a, b) => (!present(&a) && !present(&b))
                    .then_some(Pick::Apply(inst, Extension::Split(a, b))),
            }
        };

        for name in [FNeg, FImp, FPlus, FBang, GenX, Exp, TColon, Ins] {
            for &(id, f) in &view {
                let found = match name {
                    Exp => match f.negated() {
                        Some(Formula::Just(_, w, _)) => w
                            .iter()
                            .filter_map(|a| match a {
                                Atom::Param(u) => {
                                    fire(RuleInstance::new(Exp, id).with_param(u.clone()))
                                }
                                _ => None,
                            })
                            .next(),
                        _ => None,
                    },
                    Ins => match f.negated() {
                        Some(Formula::Just(_, _, body)) => {
                            body.params().into_iter().next().and_then(|u| {
                                if applied(Ins, id, Some(&u)) {
                                    return None;
                                }
                                let fresh = self.fresh_var(f);
                                self.vocab
                                    .iter()
                                    .chain(core::iter::once(&fresh))
                                    .find_map(|x| {
                                        let inst = RuleInstance::new(Ins, id)
                                            .with_param(u.clone())
                                            .with_var(x.clone());
                                        apply_rule(&view, &inst).ok().map(|_| inst)
                                    })
                                    .and_then(fire)
                            })
                        }
                        _ => None,
                    },
                    _ => fire(RuleInstance::new(name, id)),
                };
                if let Some(p) = found {
                    return p;
                }
            }
        }

        let mut params: Vec<String> = Vec::new();
        for (_, f) in &view {
            f.visit_atoms(&mut |a| {
                if let Atom::Param(u) = a {
                    if !params.contains(u) {
                        params.push(u.clone());
                    }
                }
            });
        }
        let room = params.len() < self.budget.max_params;
        let mut blocked = false;

        for &(id, f) in &view {
            let quantified = matches!(f, Formula::Exists(..))
                || matches!(f.negated(), Some(Formula::Forall(..)));
            if quantified && !applied(TExists, id, None) && !applied(FForall, id, None) {
                if !room {
                    blocked = true;
                    continue;
                }
                let name = if matches!(f, Formula::Exists(..)) {
                    TExists
                } else {
                    FForall
                };
                if let Some(p) =
                    fire(RuleInstance::new(name, id).with_param(self.fresh_param(&params)))
                {
                    return p;
                }
            }
        }

        for &(id, _) in &view {
            if let Some(p) = fire(RuleInstance::new(TImp, id)) {
                return p;
            }
        }

        let universal: Vec<(NodeId, RuleName)> = view
            .iter()
            .filter_map(|&(id, f)| match (f, f.negated()) {
                (Formula::Forall(..), _) => Some((id, TForall)),
                (_, Some(Formula::Exists(..))) => Some((id, FExists)),
                _ => None,
            })
            .collect();
        if !universal.is_empty() {
            if params.is_empty() {
                if room {
                    let u = self.fresh_param(&params);
                    let (id, name) = universal[0];
                    if let Some(p) = fire(RuleInstance::new(name, id).with_param(u)) {
                        return p;
                    }
                } else {
                    blocked = true;
                }
            }
            for u in &params {
                for &(id, name) in &universal {
                    if let Some(p) = fire(RuleInstance::new(name, id).with_param(u.clone())) {
                        return p;
                    }
                }
            }
        }

        // Ctr towards a positive assertion with a wider window
        for &(id, f) in &view {
            if let Some(Formula::Just(t, x, a)) = f.negated() {
                for (_, g) in &view {
                    if let Formula::Just(t2, y, a2) = g {
                        if t2 == t && a2 == a {
                            if let Some(u) = y.iter().find(|v| !x.contains(v)) {
                                if let Some(p) =
                                    fire(RuleInstance::new(Ctr, id).with_param(u.name()))
                                {
                                    return p;
                                }
                            }
                        }
                    }
                }
            }
        }

        let dots: Vec<(NodeId, Vec<Formula>)> = view
            .iter()
            .filter_map(|&(id, f)| match f.negated() {
                Some(Formula::Just(Term::App(..), w, b)) => Some((id, self.cuts(&view, w, b))),
                _ => None,
            })
            .collect();
        let longest = dots.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
        for k in 0..longest {
            for (id, cands) in &dots {
                if let Some(a) = cands.get(k) {
                    if let Some(p) = fire(RuleInstance::new(FDot, *id).with_cut(a.clone())) {
                        return p;
                    }
                }
            }
        }

        if blocked {
            Pick::ParamsBlocked
        } else {
            Pick::Nothing
        }
    }

    /// Cut candidates for `~(s*t):_X B`, best first.
    fn cuts(
        &self,
        view: &[(NodeId, &Formula)],
        w: &crate::syntax::Window,
        b: &Formula,
    ) -> Vec<Formula> {
        let mut out: Vec<Formula> = Vec::new();
        let mut add = |a: &Formula| {
            let fits = a.elems().is_empty()
                && a.params()
                    .iter()
                    .all(|u| w.contains(&Atom::Param(u.clone())));
            if fits && !out.contains(a) && out.len() < self.budget.max_cuts {
                out.push(a.clone());
            }
        };
        for h in &self.hints {
            add(h);
        }
        for (_, f) in view {
            f.visit_subformulas(&mut |g| {
                if let Formula::Just(_, _, body) = g {
                    if let Formula::Imp(c, b2) = &**body {
                        if **b2 == *b {
                            add(c);
                        }
                    }
                }
            });
        }
        for (_, f) in self.cs.concrete() {
            if let Formula::Imp(c, _) = f {
                add(c);
            }
        }
        for (_, f) in view {
            f.visit_subformulas(&mut |g| add(g));
        }
        out
    }

    /// The finished tableau with unneeded nodes dropped and ids renumbered
    /// in preorder. Only available once every branch is closed.
    pub fn proof(&self) -> Option<ProofTree> {
        if !self.open.is_empty() {
            return None;
        }
        let n = self.nodes.len();
        let mut needed = vec![false; n];
        for (i, node) in self.nodes.iter().enumerate() {
            if node.rule.is_none() || node.children.is_empty() {
                needed[i] = true;
            }
            if let Some(Closure::Contradiction { with }) = &node.closure {
                needed[idx_of(*with)] = true;
            }
            if node.children.len() == 2 {
                for &c in &node.children {
                    needed[c] = true;
                }
            }
        }
        for i in (0..n).rev() {
            if needed[i] {
                if let Some(r) = &self.nodes[i].rule {
                    for &p in &r.premises {
                        needed[idx_of(p)] = true;
                    }
                }
            }
        }
        // kept children of a node, looking through dropped ones
        fn kept(nodes: &[Node], needed: &[bool], i: usize, out: &mut Vec<usize>) {
            for &c in &nodes[i].children {
                if needed[c] {
                    out.push(c);
                } else {
                    kept(nodes, needed, c, out);
                }
            }
        }
        let mut order = Vec::new();
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            order.push(i);
            let mut ks = Vec::new();
            kept(&self.nodes, &needed, i, &mut ks);
            stack.extend(ks.into_iter().rev());
        }
        let mut new_id = vec![0 as NodeId; n];
        for (k, &i) in order.iter().enumerate() {
            new_id[i] = k as NodeId + 1;
        }
        fn build(s: &SearchState<'_>, needed: &[bool], new_id: &[NodeId], i: usize) -> ProofNode {
            let node = &s.nodes[i];
            let origin = match &node.rule {
                None => Origin::Root,
                Some(r) => {
                    let mut r = r.clone();
                    r.premises = r.premises.iter().map(|&p| new_id[idx_of(p)]).collect();
                    Origin::Rule(r)
                }
            };
            let closure = node.closure.clone().map(|c| match c {
                Closure::Contradiction { with } => Closure::Contradiction {
                    with: new_id[idx_of(with)],
                },
                other => other,
            });
            let mut ks = Vec::new();
            kept(&s.nodes, needed, i, &mut ks);
            ProofNode {
                id: new_id[i],
                formula: node.formula.clone(),
                origin,
                children: ks
                    .into_iter()
                    .map(|c| build(s, needed, new_id, c))
                    .collect(),
                closure,
            }
        }
        Some(ProofTree {
            roots: self.roots.clone(),
            tree: build(self, &needed, &new_id, 0),
        })
    }

    /// Runs until the tableau closes or the search stops.
    pub fn run(&mut self, clock: &dyn Clock) -> Outcome {
        loop {
            match self.step(clock) {
                Step::Extended => {}
                Step::Closed => return Outcome::Proved(self.proof().expect("closed")),
                Step::Exhausted(d) => return Outcome::Exhausted(d),
                Step::Saturated => {
                    let branch: Vec<Formula> = self.current_branch().into_iter().cloned().collect();
                    let diagnostics = vec![
                        format!(
                            "no rule applies to the open branch of {} formulas",
                            branch.len()
                        ),
                        format!("{} nodes expanded", self.nodes.len()),
                    ];
                    return Outcome::Open {
                        branch,
                        diagnostics,
                    };
                }
            }
        }
    }
}

/// Searches for a closed tableau starting from `~goal`.
pub fn prove(
    goal: &Formula,
    cs: &ConstantSpec,
    budget: &Budget,
    hints: &[Formula],
) -> Result<Outcome, SearchError> {
    prove_with_clock(goal, cs, budget, hints, &NoClock)
}

pub fn prove_with_clock(
    goal: &Formula,
    cs: &ConstantSpec,
    budget: &Budget,
    hints: &[Formula],
    clock: &dyn Clock,
) -> Result<Outcome, SearchError> {
    if !goal.is_sentence() {
        return Err(SearchError::NotASentence(goal.clone()));
    }
    let mut s = SearchState::new(
        vec![Formula::not(goal.clone())],
        cs,
        budget.clone(),
        hints.to_vec(),
    )?;
    Ok(s.run(clock))
}
