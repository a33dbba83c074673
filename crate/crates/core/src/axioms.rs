//! Axiom schemes and instance recognition.
//!
//! First-order part: P1-P3 (propositional), Q1 (instantiation), Q2
//! (distribution), Q3 (vacuous generalisation), Q4 (existential
//! introduction and elimination). Justification part: CTR, EXP, SUM1, SUM2,
//! JK, JT, J4, GEN.

use alloc::collections::BTreeSet;
use core::fmt;
use core::str::FromStr;

use crate::syntax::{Atom, Formula, Term, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scheme {
    P1,
    P2,
    P3,
    Q1,
    Q2,
    Q3,
    Q4,
    Ctr,
    Exp,
    Sum1,
    Sum2,
    Jk,
    Jt,
    J4,
    Gen,
}

impl Scheme {
    /// Matching order; the first scheme that matches wins.
    pub const ALL: [Scheme; 15] = [
        Scheme::P1,
        Scheme::P2,
        Scheme::P3,
        Scheme::Q1,
        Scheme::Q2,
        Scheme::Q3,
        Scheme::Q4,
        Scheme::Ctr,
        Scheme::Exp,
        Scheme::Sum1,
        Scheme::Sum2,
        Scheme::Jk,
        Scheme::Jt,
        Scheme::J4,
        Scheme::Gen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::P1 => "P1",
            Scheme::P2 => "P2",
            Scheme::P3 => "P3",
            Scheme::Q1 => "Q1",
            Scheme::Q2 => "Q2",
            Scheme::Q3 => "Q3",
            Scheme::Q4 => "Q4",
            Scheme::Ctr => "CTR",
            Scheme::Exp => "EXP",
            Scheme::Sum1 => "SUM1",
            Scheme::Sum2 => "SUM2",
            Scheme::Jk => "JK",
            Scheme::Jt => "JT",
            Scheme::J4 => "J4",
            Scheme::Gen => "GEN",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Scheme::ALL.into_iter().find(|sc| sc.name() == s).ok_or(())
    }
}

/// First scheme (in [`Scheme::ALL`] order) that `f` instantiates.
pub fn match_axiom(f: &Formula) -> Option<Scheme> {
    Scheme::ALL.into_iter().find(|&s| matches_scheme(f, s))
}

pub fn is_axiom(f: &Formula) -> bool {
    match_axiom(f).is_some()
}

pub fn matches_scheme(f: &Formula, scheme: Scheme) -> bool {
    use Formula::*;
    let Imp(lhs, rhs) = f else {
        return false;
    };
    let (lhs, rhs) = (&**lhs, &**rhs);
    match scheme {
        // A -> (B -> A)
        Scheme::P1 => matches!(rhs, Imp(_, a) if **a == *lhs),
        // (A -> (B -> C)) -> ((A -> B) -> (A -> C))
        Scheme::P2 => match (lhs, rhs) {
            (Imp(a, bc), Imp(ab, ac)) => match (&**bc, &**ab, &**ac) {
                (Imp(b, c), Imp(a2, b2), Imp(a3, c2)) => a == a2 && a == a3 && b == b2 && c == c2,
                _ => false,
            },
            _ => false,
        },
        // (~A -> ~B) -> (B -> A)
        Scheme::P3 => match (lhs, rhs) {
            (Imp(na, nb), Imp(b, a)) => {
                matches!((&**na, &**nb), (Not(a2), Not(b2)) if a2 == a && b2 == b)
            }
            _ => false,
        },
        // forall x. A -> A{x/y}
        Scheme::Q1 => match lhs {
            Forall(x, a) => is_instance(a, x, rhs),
            _ => false,
        },
        // forall x. (A -> B) -> (forall x. A -> forall x. B)
        Scheme::Q2 => match (lhs, rhs) {
            (Forall(x, ab), Imp(fa, fb)) => match (&**ab, &**fa, &**fb) {
                (Imp(a, b), Forall(x2, a2), Forall(x3, b2)) => {
                    x == x2 && x == x3 && a == a2 && b == b2
                }
                _ => false,
            },
            _ => false,
        },
        // A -> forall x. A, x not free in A
        Scheme::Q3 => match rhs {
            Forall(x, a) => **a == *lhs && !lhs.free_vars().contains(x),
            _ => false,
        },
        // A{x/y} -> exists x. A   |   forall x. (A -> B) -> (exists x. A -> B), x not free in B
        Scheme::Q4 => {
            let intro = matches!(rhs, Exists(x, a) if is_instance(a, x, lhs));
            let elim = match (lhs, rhs) {
                (Forall(x, ab), Imp(ea, b2)) => match (&**ab, &**ea) {
                    (Imp(a, b), Exists(x2, a2)) => {
                        x == x2 && a == a2 && b == b2 && !b.free_vars().contains(x)
                    }
                    _ => false,
                },
                _ => false,
            };
            intro || elim
        }
        // t:_{Xy} A -> t:_X A, y not free in A
        Scheme::Ctr => match (lhs, rhs) {
            (Just(t, wide, a), Just(t2, narrow, a2)) if t == t2 && a == a2 => {
                match extra_atom(wide, narrow) {
                    Some(y) => !a.free_atoms().contains(y),
                    None => false,
                }
            }
            _ => false,
        },
        // t:_X A -> t:_{Xy} A
        Scheme::Exp => match (lhs, rhs) {
            (Just(t, narrow, a), Just(t2, wide, a2)) => {
                t == t2 && a == a2 && extra_atom(wide, narrow).is_some()
            }
            _ => false,
        },
        // s:_X A -> (s+t):_X A
        Scheme::Sum1 => match (lhs, rhs) {
            (Just(s, w, a), Just(Term::Sum(s2, _), w2, a2)) => **s2 == *s && w == w2 && a == a2,
            _ => false,
        },
        // s:_X A -> (t+s):_X A
        Scheme::Sum2 => match (lhs, rhs) {
            (Just(s, w, a), Just(Term::Sum(_, s2), w2, a2)) => **s2 == *s && w == w2 && a == a2,
            _ => false,
        },
        // s:_X (A -> B) -> (t:_X A -> (s*t):_X B)
        Scheme::Jk => match (lhs, rhs) {
            (Just(s, w, ab), Imp(ta, stb)) => match (&**ab, &**ta, &**stb) {
                (Imp(a, b), Just(t, w2, a2), Just(Term::App(s2, t2), w3, b2)) => {
                    **s2 == *s && **t2 == *t && w == w2 && w == w3 && a == a2 && b == b2
                }
                _ => false,
            },
            _ => false,
        },
        // t:_X A -> A
        Scheme::Jt => matches!(lhs, Just(_, _, a) if **a == *rhs),
        // t:_X A -> !t:_X t:_X A
        Scheme::J4 => match rhs {
            Just(Term::Bang(t2), w2, inner) => {
                **inner == *lhs && matches!(lhs, Just(t, w, _) if **t2 == *t && w2 == w)
            }
            _ => false,
        },
        // t:_X A -> gen_x(t):_X forall x. A, x not in X
        Scheme::Gen => match (lhs, rhs) {
            (Just(t, w, a), Just(Term::Gen(x, t2), w2, fa)) => {
                **t2 == *t
                    && w == w2
                    && !w.contains(&Atom::Var(x.clone()))
                    && matches!(&**fa, Forall(x2, a2) if x2 == x && **a2 == **a)
            }
            _ => false,
        },
    }
}

/// `wide = narrow ∪ {y}` with `y ∉ narrow`; returns `y`.
fn extra_atom<'a>(wide: &'a Window, narrow: &Window) -> Option<&'a Atom> {
    if wide.len() != narrow.len() + 1 || !narrow.is_subset(wide) {
        return None;
    }
    wide.iter().find(|a| !narrow.contains(a))
}

/// Is `target` equal to `body{x/y}` for some atom `y` substitutable for `x`?
fn is_instance(body: &Formula, x: &str, target: &Formula) -> bool {
    let mut candidates: BTreeSet<Atom> = BTreeSet::new();
    candidates.insert(Atom::Var(x.into()));
    target.visit_atoms(&mut |a| {
        candidates.insert(a.clone());
    });
    candidates
        .iter()
        .any(|y| matches!(body.substitute(x, y), Ok(ref g) if g == target))
}
