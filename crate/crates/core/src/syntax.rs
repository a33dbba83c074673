//! Abstract syntax: atoms, justification terms, windows and formulas.
//!
//! Individual variables, parameters and domain elements live in disjoint
//! namespaces (`Atom::Var`, `Atom::Param`, `Atom::Elem`). Names are stored
//! without their sigil; `@` and `$` are added by the printer.
//!
//! Free variables of an assertion `t:_X A` are exactly the individual
//! variables of `X`. Occurrences of a variable inside `A` that is not listed
//! in `X` are neither free in the assertion nor bindable from outside, so
//! substitution and binders never reach them.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Var(String),
    Param(String),
    Elem(String),
}

impl Atom {
    pub fn var(name: impl Into<String>) -> Self {
        Atom::Var(name.into())
    }

    pub fn param(name: impl Into<String>) -> Self {
        Atom::Param(name.into())
    }

    pub fn elem(name: impl Into<String>) -> Self {
        Atom::Elem(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Atom::Var(n) | Atom::Param(n) | Atom::Elem(n) => n,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Atom::Var(_))
    }

    pub fn is_param(&self) -> bool {
        matches!(self, Atom::Param(_))
    }

    pub fn is_elem(&self) -> bool {
        matches!(self, Atom::Elem(_))
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Atom::Var(n) => Some(n),
            _ => None,
        }
    }
}

/// The subscript `X` of `t:_X A`, kept sorted and duplicate-free so that
/// structural equality of formulas is set equality of windows.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Window(Vec<Atom>);

impl Window {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Self {
        let mut v: Vec<Atom> = atoms.into_iter().collect();
        v.sort();
        v.dedup();
        Window(v)
    }

    pub fn empty() -> Self {
        Window(Vec::new())
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Atom> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.0.binary_search(a).is_ok()
    }

    pub fn with(&self, a: Atom) -> Self {
        Window::new(self.0.iter().cloned().chain(core::iter::once(a)))
    }

    pub fn without(&self, a: &Atom) -> Self {
        Window(self.0.iter().filter(|b| *b != a).cloned().collect())
    }

    pub fn is_subset(&self, other: &Window) -> bool {
        self.0.iter().all(|a| other.contains(a))
    }

    /// True when every member is a parameter.
    pub fn only_params(&self) -> bool {
        self.0.iter().all(Atom::is_param)
    }

    fn map(&self, mut f: impl FnMut(&Atom) -> Atom) -> Self {
        Window::new(self.0.iter().map(&mut f))
    }
}

impl FromIterator<Atom> for Window {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        Window::new(iter)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    Sum(Box<Term>, Box<Term>),
    App(Box<Term>, Box<Term>),
    Bang(Box<Term>),
    Gen(String, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn sum(l: Term, r: Term) -> Self {
        Term::Sum(Box::new(l), Box::new(r))
    }

    pub fn app(l: Term, r: Term) -> Self {
        Term::App(Box::new(l), Box::new(r))
    }

    pub fn bang(t: Term) -> Self {
        Term::Bang(Box::new(t))
    }

    pub fn gen(x: impl Into<String>, t: Term) -> Self {
        Term::Gen(x.into(), Box::new(t))
    }

    /// All subterms including `self`, children before parents.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        self.collect_subterms(&mut out);
        out
    }

    fn collect_subterms<'a>(&'a self, out: &mut Vec<&'a Term>) {
        match self {
            Term::Var(_) | Term::Const(_) => {}
            Term::Sum(l, r) | Term::App(l, r) => {
                l.collect_subterms(out);
                r.collect_subterms(out);
            }
            Term::Bang(t) | Term::Gen(_, t) => t.collect_subterms(out),
        }
        out.push(self);
    }

    pub fn constants(&self) -> BTreeSet<String> {
        self.subterms()
            .into_iter()
            .filter_map(|t| match t {
                Term::Const(c) => Some(c.clone()),
                _ => None,
            })
            .collect()
    }

    fn rename_gen_vars(&self, map: &BTreeMap<String, String>) -> Term {
        match self {
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::Sum(l, r) => Term::sum(l.rename_gen_vars(map), r.rename_gen_vars(map)),
            Term::App(l, r) => Term::app(l.rename_gen_vars(map), r.rename_gen_vars(map)),
            Term::Bang(t) => Term::bang(t.rename_gen_vars(map)),
            Term::Gen(x, t) => Term::gen(
                map.get(x).cloned().unwrap_or_else(|| x.clone()),
                t.rename_gen_vars(map),
            ),
        }
    }

    fn visit_gen_vars(&self, f: &mut impl FnMut(&str)) {
        match self {
            Term::Var(_) | Term::Const(_) => {}
            Term::Sum(l, r) | Term::App(l, r) => {
                l.visit_gen_vars(f);
                r.visit_gen_vars(f);
            }
            Term::Bang(t) => t.visit_gen_vars(f),
            Term::Gen(x, t) => {
                f(x);
                t.visit_gen_vars(f);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Pred(String, Vec<Atom>),
    Not(Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    Just(Term, Window, Box<Formula>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("capture violation: `{var}` would be captured")]
    Capture { var: String },
}

impl Formula {
    pub fn pred(name: impl Into<String>, args: impl IntoIterator<Item = Atom>) -> Self {
        Formula::Pred(name.into(), args.into_iter().collect())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn forall(x: impl Into<String>, f: Formula) -> Self {
        Formula::Forall(x.into(), Box::new(f))
    }

    pub fn exists(x: impl Into<String>, f: Formula) -> Self {
        Formula::Exists(x.into(), Box::new(f))
    }

    pub fn just(t: Term, w: Window, f: Formula) -> Self {
        Formula::Just(t, w, Box::new(f))
    }

    /// Strips one negation, if any.
    pub fn negated(&self) -> Option<&Formula> {
        match self {
            Formula::Not(f) => Some(f),
            _ => None,
        }
    }

    /// Atoms in free position: unbound variables, and every parameter or
    /// domain element outside hidden assertion bodies.
    pub fn free_atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<Atom>) {
        let mut add = |a: &Atom, bound: &Vec<String>| match a {
            Atom::Var(x) if bound.contains(x) => {}
            _ => {
                out.insert(a.clone());
            }
        };
        match self {
            Formula::Pred(_, args) => args.iter().for_each(|a| add(a, bound)),
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(x, f) | Formula::Exists(x, f) => {
                bound.push(x.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
            Formula::Just(_, w, _) => w.iter().for_each(|a| add(a, bound)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        self.free_atoms()
            .into_iter()
            .filter_map(|a| match a {
                Atom::Var(x) => Some(x),
                _ => None,
            })
            .collect()
    }

    /// Visits every atom occurrence (predicate arguments and windows),
    /// hidden or not.
    pub fn visit_atoms(&self, f: &mut impl FnMut(&Atom)) {
        match self {
            Formula::Pred(_, args) => args.iter().for_each(&mut *f),
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => g.visit_atoms(f),
            Formula::Imp(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
            Formula::Just(_, w, g) => {
                w.iter().for_each(&mut *f);
                g.visit_atoms(f);
            }
        }
    }

    /// Every parameter occurring anywhere, windows included.
    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a| {
            if let Atom::Param(u) = a {
                out.insert(u.clone());
            }
        });
        out
    }

    /// Every domain element occurring anywhere.
    pub fn elems(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a| {
            if let Atom::Elem(d) = a {
                out.insert(d.clone());
            }
        });
        out
    }

    /// Every individual variable name occurring anywhere: arguments,
    /// windows, binders and `gen` subscripts.
    pub fn var_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_var_names(&mut out);
        out
    }

    fn collect_var_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Pred(_, args) => {
                out.extend(args.iter().filter_map(|a| a.as_var().map(str::to_owned)))
            }
            Formula::Not(f) => f.collect_var_names(out),
            Formula::Imp(a, b) => {
                a.collect_var_names(out);
                b.collect_var_names(out);
            }
            Formula::Forall(x, f) | Formula::Exists(x, f) => {
                out.insert(x.clone());
                f.collect_var_names(out);
            }
            Formula::Just(t, w, f) => {
                t.visit_gen_vars(&mut |x| {
                    out.insert(x.to_owned());
                });
                out.extend(w.iter().filter_map(|a| a.as_var().map(str::to_owned)));
                f.collect_var_names(out);
            }
        }
    }

    pub fn predicates(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        self.visit_subformulas(&mut |g| {
            if let Formula::Pred(q, args) = g {
                out.entry(q.clone()).or_insert(args.len());
            }
        });
        out
    }

    /// Justification terms of all assertions, outermost first.
    pub fn terms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        self.visit_subformulas(&mut |g| {
            if let Formula::Just(t, _, _) = g {
                out.push(t);
            }
        });
        out
    }

    /// Preorder traversal over all subformulas, `self` first.
    pub fn visit_subformulas<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Pred(..) => {}
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => {
                g.visit_subformulas(f)
            }
            Formula::Imp(a, b) => {
                a.visit_subformulas(f);
                b.visit_subformulas(f);
            }
            Formula::Just(_, _, g) => g.visit_subformulas(f),
        }
    }

    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        self.visit_subformulas(&mut |g| out.push(g));
        out
    }

    pub fn is_closed_par_formula(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// A sentence: no free variables and no parameters or domain elements.
    pub fn is_sentence(&self) -> bool {
        self.free_atoms().is_empty() && self.params().is_empty() && self.elems().is_empty()
    }

    /// Replaces the free occurrences of variable `x` by `a`.
    ///
    /// Inside `t:_X B` the variable is only reached when it belongs to `X`;
    /// then both the window entry and the free occurrences in `B` change.
    pub fn substitute(&self, x: &str, a: &Atom) -> Result<Formula, SubstError> {
        self.subst(&Atom::Var(x.to_owned()), a, &mut Vec::new())
    }

    /// Replaces every occurrence of parameter `u` (windows and bodies) by `a`.
    pub fn replace_param(&self, u: &str, a: &Atom) -> Result<Formula, SubstError> {
        self.subst(&Atom::Param(u.to_owned()), a, &mut Vec::new())
    }

    /// Replaces every occurrence of domain element `d` by `a`.
    pub fn replace_elem(&self, d: &str, a: &Atom) -> Result<Formula, SubstError> {
        self.subst(&Atom::Elem(d.to_owned()), a, &mut Vec::new())
    }

    fn subst(
        &self,
        from: &Atom,
        to: &Atom,
        bound: &mut Vec<String>,
    ) -> Result<Formula, SubstError> {
        let capture = |bound: &Vec<String>| match to {
            Atom::Var(v) if bound.contains(v) => Err(SubstError::Capture { var: v.clone() }),
            _ => Ok(()),
        };
        Ok(match self {
            Formula::Pred(q, args) => {
                let mut out = Vec::with_capacity(args.len());
                for arg in args {
                    if arg == from {
                        capture(bound)?;
                        out.push(to.clone());
                    } else {
                        out.push(arg.clone());
                    }
                }
                Formula::Pred(q.clone(), out)
            }
            Formula::Not(f) => Formula::not(f.subst(from, to, bound)?),
            Formula::Imp(a, b) => {
                Formula::imp(a.subst(from, to, bound)?, b.subst(from, to, bound)?)
            }
            Formula::Forall(y, f) | Formula::Exists(y, f) => {
                if from.as_var() == Some(y.as_str()) {
                    return Ok(self.clone());
                }
                bound.push(y.clone());
                let body = f.subst(from, to, bound);
                bound.pop();
                let body = body?;
                match self {
                    Formula::Forall(..) => Formula::forall(y.clone(), body),
                    _ => Formula::exists(y.clone(), body),
                }
            }
            Formula::Just(t, w, f) => {
                if w.contains(from) {
                    capture(bound)?;
                    if let Atom::Var(v) = to {
                        // a hidden occurrence of `v` in the body would become visible
                        if !w.contains(to) && f.free_vars().contains(v) {
                            return Err(SubstError::Capture { var: v.clone() });
                        }
                    }
                    let body = f.subst(from, to, &mut Vec::new())?;
                    let win = w.map(|a| if a == from { to.clone() } else { a.clone() });
                    Formula::just(t.clone(), win, body)
                } else if from.is_var() {
                    self.clone()
                } else {
                    Formula::just(t.clone(), w.clone(), f.subst(from, to, &mut Vec::new())?)
                }
            }
        })
    }

    /// `∀A`: quantifies the free variables, lexicographically first outermost.
    pub fn universal_closure(&self) -> Formula {
        self.free_vars()
            .into_iter()
            .rev()
            .fold(self.clone(), |acc, x| Formula::forall(x, acc))
    }

    /// Renames bound variables to canonical level names (`#0`, `#1`, ...),
    /// so alpha-equivalent formulas become structurally equal.
    pub fn alpha_normal(&self) -> Formula {
        self.alpha_rec(&mut Vec::new(), 0)
    }

    fn alpha_rec(&self, env: &mut Vec<(String, String)>, depth: usize) -> Formula {
        let lookup = |env: &Vec<(String, String)>, a: &Atom| match a {
            Atom::Var(x) => env
                .iter()
                .rev()
                .find(|(orig, _)| orig == x)
                .map(|(_, c)| Atom::Var(c.clone()))
                .unwrap_or_else(|| a.clone()),
            _ => a.clone(),
        };
        match self {
            Formula::Pred(q, args) => {
                Formula::Pred(q.clone(), args.iter().map(|a| lookup(env, a)).collect())
            }
            Formula::Not(f) => Formula::not(f.alpha_rec(env, depth)),
            Formula::Imp(a, b) => Formula::imp(a.alpha_rec(env, depth), b.alpha_rec(env, depth)),
            Formula::Forall(x, f) | Formula::Exists(x, f) => {
                let canon = format!("#{depth}");
                env.push((x.clone(), canon.clone()));
                let body = f.alpha_rec(env, depth + 1);
                env.pop();
                match self {
                    Formula::Forall(..) => Formula::forall(canon, body),
                    _ => Formula::exists(canon, body),
                }
            }
            Formula::Just(t, w, f) => {
                // only window variables connect the body to outer binders
                let mut inner: Vec<(String, String)> = env
                    .iter()
                    .filter(|(orig, _)| w.contains(&Atom::Var(orig.clone())))
                    .cloned()
                    .collect();
                let win = w.map(|a| lookup(env, a));
                Formula::just(t.clone(), win, f.alpha_rec(&mut inner, depth))
            }
        }
    }

    /// Renames the canonical `#k` binders of an alpha-normal formula to
    /// ordinary variable names that occur nowhere else, so it can be printed
    /// and parsed back.
    pub fn readable(&self) -> Formula {
        let names = self.var_names();
        let taken: BTreeSet<&str> = names
            .iter()
            .filter(|x| !x.starts_with('#'))
            .map(String::as_str)
            .collect();
        let mut map: BTreeMap<String, String> = BTreeMap::new();
        for x in names.iter().filter(|x| x.starts_with('#')) {
            let k = &x[1..];
            let mut name = format!("b{k}");
            while taken.contains(name.as_str()) {
                name.push('_');
            }
            map.insert(x.clone(), name);
        }
        self.rename_vars(&|x| map.get(x).cloned().unwrap_or_else(|| x.to_owned()))
    }

    fn rename_vars(&self, r: &dyn Fn(&str) -> String) -> Formula {
        let atom = |a: &Atom| match a {
            Atom::Var(x) => Atom::Var(r(x)),
            _ => a.clone(),
        };
        match self {
            Formula::Pred(q, args) => Formula::Pred(q.clone(), args.iter().map(atom).collect()),
            Formula::Not(f) => Formula::not(f.rename_vars(r)),
            Formula::Imp(a, b) => Formula::imp(a.rename_vars(r), b.rename_vars(r)),
            Formula::Forall(x, f) => Formula::forall(r(x), f.rename_vars(r)),
            Formula::Exists(x, f) => Formula::exists(r(x), f.rename_vars(r)),
            Formula::Just(t, w, f) => Formula::just(t.clone(), w.map(atom), f.rename_vars(r)),
        }
    }

    pub fn alpha_eq(&self, other: &Formula) -> bool {
        self == other || self.alpha_normal() == other.alpha_normal()
    }

    /// Canonical representative of the variable-variant class: bound
    /// variables are alpha-normalised, then the remaining variable names are
    /// renamed in order of first occurrence. Variables that only occur in
    /// windows are ordered by the list of windows they occur in, which does
    /// not depend on their names.
    pub fn variant_normal(&self) -> Formula {
        let normal = self.alpha_normal();
        let mut order: Vec<String> = Vec::new();
        let mut seen: BTreeSet<String> = BTreeSet::new();
        normal.first_pass(&mut |x| {
            if !x.starts_with('#') && seen.insert(x.to_owned()) {
                order.push(x.to_owned());
            }
        });
        let mut signatures: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        let mut index = 0usize;
        normal.window_pass(&mut index, &mut |k, w| {
            for a in w.iter() {
                if let Atom::Var(x) = a {
                    if !x.starts_with('#') && !seen.contains(x) {
                        signatures.entry(x.clone()).or_default().push(k);
                    }
                }
            }
        });
        let mut window_only: Vec<(Vec<usize>, String)> =
            signatures.into_iter().map(|(x, sig)| (sig, x)).collect();
        window_only.sort();
        order.extend(window_only.into_iter().map(|(_, x)| x));
        let map: BTreeMap<String, String> = order
            .into_iter()
            .enumerate()
            .map(|(i, x)| (x, format!("%{i}")))
            .collect();
        normal.rename_all_vars(&map)
    }

    fn first_pass(&self, f: &mut impl FnMut(&str)) {
        match self {
            Formula::Pred(_, args) => args.iter().filter_map(Atom::as_var).for_each(&mut *f),
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => g.first_pass(f),
            Formula::Imp(a, b) => {
                a.first_pass(f);
                b.first_pass(f);
            }
            Formula::Just(t, _, g) => {
                t.visit_gen_vars(&mut *f);
                g.first_pass(f);
            }
        }
    }

    fn window_pass(&self, index: &mut usize, f: &mut impl FnMut(usize, &Window)) {
        match self {
            Formula::Pred(..) => {}
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => {
                g.window_pass(index, f)
            }
            Formula::Imp(a, b) => {
                a.window_pass(index, f);
                b.window_pass(index, f);
            }
            Formula::Just(_, w, g) => {
                f(*index, w);
                *index += 1;
                g.window_pass(index, f);
            }
        }
    }

    fn rename_all_vars(&self, map: &BTreeMap<String, String>) -> Formula {
        let ren = |a: &Atom| match a {
            Atom::Var(x) => Atom::Var(map.get(x).cloned().unwrap_or_else(|| x.clone())),
            _ => a.clone(),
        };
        match self {
            Formula::Pred(q, args) => Formula::Pred(q.clone(), args.iter().map(ren).collect()),
            Formula::Not(f) => Formula::not(f.rename_all_vars(map)),
            Formula::Imp(a, b) => Formula::imp(a.rename_all_vars(map), b.rename_all_vars(map)),
            Formula::Forall(x, f) => Formula::forall(x.clone(), f.rename_all_vars(map)),
            Formula::Exists(x, f) => Formula::exists(x.clone(), f.rename_all_vars(map)),
            Formula::Just(t, w, f) => {
                Formula::just(t.rename_gen_vars(map), w.map(ren), f.rename_all_vars(map))
            }
        }
    }

    /// Identical up to a bijective renaming of free and bound variables.
    pub fn is_variant_of(&self, other: &Formula) -> bool {
        self == other || self.variant_normal() == other.variant_normal()
    }
}

/// Free-function form of [`Formula::is_variant_of`].
pub fn variable_variant(f: &Formula, g: &Formula) -> bool {
    f.is_variant_of(g)
}
