//! Concrete syntax.
//!
//! ```text
//! formula := impl
//! impl    := unary ("->" impl)?
//! unary   := "~" unary | ("forall" | "exists") IVAR "." unary
//!          | term ":" window? unary | primary
//! primary := PRED ("(" atoms? ")")? | "(" formula ")"
//! window  := "[" atoms? "]"
//! term    := tapp ("+" tapp)*
//! tapp    := tpre ("*" tpre)*
//! tpre    := "!" tpre | "gen" "<" IVAR ">" "(" term ")" | JID | "(" term ")"
//! ```
//!
//! Predicates start with an uppercase letter, individual variables and
//! justification identifiers are lowercase, parameters carry `@` and domain
//! elements `$`. A justification identifier is a constant iff it is declared.
//! `#` starts a comment that runs to the end of the line.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::syntax::{Atom, Formula, Term, Window};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Param(String),
    Elem(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    Colon,
    Tilde,
    Arrow,
    Plus,
    Star,
    Bang,
    Lt,
    Gt,
    Minus,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Param(s) => write!(f, "`@{s}`"),
            Tok::Elem(s) => write!(f, "`${s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrack => f.write_str("`[`"),
            Tok::RBrack => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::Lt => f.write_str("`<`"),
            Tok::Gt => f.write_str("`>`"),
            Tok::Minus => f.write_str("`-`"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    BadChar(char),
    #[error("sigil `{0}` must be followed by an identifier")]
    BadSigil(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("only individual variables may be quantified or used in gen, found {0}")]
    NotAVariable(String),
    #[error("predicate `{name}` used with arity {found}, previously {expected}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("`{0}` is reserved")]
    Reserved(String),
    #[error("trailing input: {0}")]
    Trailing(String),
}

const KEYWORDS: [&str; 3] = ["forall", "exists", "gen"];

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Lowercase identifier usable as an individual or justification variable.
pub fn is_lower_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase())
        && cs.all(is_ident_char)
        && !KEYWORDS.contains(&s)
}

pub fn is_pred_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_uppercase()) && cs.all(is_ident_char)
}

pub fn tokenize(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, col, kind| ParseError { line, col, kind };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let ident_at = |start: usize| {
            let mut j = start;
            while j < chars.len() && is_ident_char(chars[j]) {
                j += 1;
            }
            j
        };
        let tok = if is_ident_start(c) {
            let j = ident_at(i);
            let s: String = chars[i..j].iter().collect();
            col += j - i;
            i = j;
            Tok::Ident(s)
        } else if c == '@' || c == '$' {
            if i + 1 >= chars.len() || !is_ident_start(chars[i + 1]) {
                return Err(err(l0, c0, ParseErrorKind::BadSigil(c)));
            }
            let j = ident_at(i + 1);
            let s: String = chars[i + 1..j].iter().collect();
            col += j - i;
            i = j;
            if c == '@' {
                Tok::Param(s)
            } else {
                Tok::Elem(s)
            }
        } else {
            let (tok, len) = match c {
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                '[' => (Tok::LBrack, 1),
                ']' => (Tok::RBrack, 1),
                ',' => (Tok::Comma, 1),
                '.' => (Tok::Dot, 1),
                ':' => (Tok::Colon, 1),
                '~' => (Tok::Tilde, 1),
                '+' => (Tok::Plus, 1),
                '*' => (Tok::Star, 1),
                '!' => (Tok::Bang, 1),
                '<' => (Tok::Lt, 1),
                '>' => (Tok::Gt, 1),
                '-' if chars.get(i + 1) == Some(&'>') => (Tok::Arrow, 2),
                '-' => (Tok::Minus, 1),
                _ => return Err(err(l0, c0, ParseErrorKind::BadChar(c))),
            };
            i += len;
            col += len;
            tok
        };
        out.push(Spanned {
            tok,
            line: l0,
            col: c0,
        });
    }
    Ok(out)
}

/// Recursive-descent parser over a token stream. Exposed so that file
/// readers can parse a formula and continue with their own statements.
pub struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    decls: &'a BTreeSet<String>,
    arities: BTreeMap<String, usize>,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    pub fn new(input: &str, decls: &'a BTreeSet<String>) -> Result<Self, ParseError> {
        let toks = tokenize(input)?;
        let end = match input.lines().enumerate().last() {
            Some((n, l)) => (n + 1, l.chars().count() + 1),
            None => (1, 1),
        };
        Ok(Parser {
            toks,
            pos: 0,
            decls,
            arities: BTreeMap::new(),
            end,
        })
    }

    /// Predicate arities seen so far; shared across everything this parser
    /// reads.
    pub fn arities(&self) -> &BTreeMap<String, usize> {
        &self.arities
    }

    pub fn set_arities(&mut self, arities: BTreeMap<String, usize>) {
        self.arities = arities;
    }

    pub fn set_decls(&mut self, decls: &'a BTreeSet<String>) {
        self.decls = decls;
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|s| &s.tok)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn position(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(s) => (s.line, s.col),
            None => self.end,
        }
    }

    pub fn error(&self, kind: ParseErrorKind) -> ParseError {
        let (line, col) = self.position();
        ParseError { line, col, kind }
    }

    pub fn unexpected(&self, expected: &str) -> ParseError {
        let found = match self.peek() {
            Some(t) => t.to_string(),
            None => "end of input".to_owned(),
        };
        self.error(ParseErrorKind::Unexpected {
            expected: expected.to_owned(),
            found,
        })
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    pub fn expect_ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(ParseErrorKind::Trailing(t.to_string()))),
        }
    }

    fn ivar(&mut self) -> Result<String, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) if is_lower_ident(&s) => {
                self.pos += 1;
                Ok(s)
            }
            Some(Tok::Ident(s)) if KEYWORDS.contains(&s.as_str()) => {
                Err(self.error(ParseErrorKind::Reserved(s)))
            }
            Some(t @ (Tok::Param(_) | Tok::Elem(_))) => {
                Err(self.error(ParseErrorKind::NotAVariable(t.to_string())))
            }
            _ => Err(self.unexpected("an individual variable")),
        }
    }

    pub fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Ident(kw)) if kw == "forall" || kw == "exists" => {
                self.pos += 1;
                let x = self.ivar()?;
                self.expect(&Tok::Dot)?;
                let body = self.unary()?;
                Ok(if kw == "forall" {
                    Formula::forall(x, body)
                } else {
                    Formula::exists(x, body)
                })
            }
            Some(Tok::Ident(s)) if is_pred_ident(&s) => self.primary(),
            Some(Tok::LParen) => {
                // `(` opens either a parenthesised term or a formula
                let save = self.pos;
                if let Ok(t) = self.term() {
                    if self.peek() == Some(&Tok::Colon) {
                        return self.assertion(t);
                    }
                }
                self.pos = save;
                self.primary()
            }
            Some(Tok::Ident(_)) | Some(Tok::Bang) => {
                let t = self.term()?;
                self.assertion(t)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn assertion(&mut self, t: Term) -> Result<Formula, ParseError> {
        self.expect(&Tok::Colon)?;
        let w = if self.peek() == Some(&Tok::LBrack) {
            self.pos += 1;
            let atoms = self.atoms(&Tok::RBrack)?;
            self.expect(&Tok::RBrack)?;
            Window::new(atoms)
        } else {
            Window::empty()
        };
        let body = self.unary()?;
        Ok(Formula::just(t, w, body))
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Ident(name)) if is_pred_ident(&name) => {
                let at = self.position();
                self.pos += 1;
                let args = if self.eat(&Tok::LParen) {
                    let args = self.atoms(&Tok::RParen)?;
                    self.expect(&Tok::RParen)?;
                    args
                } else {
                    Vec::new()
                };
                match self.arities.get(&name) {
                    Some(&n) if n != args.len() => Err(ParseError {
                        line: at.0,
                        col: at.1,
                        kind: ParseErrorKind::Arity {
                            name,
                            expected: n,
                            found: args.len(),
                        },
                    }),
                    _ => {
                        self.arities.insert(name.clone(), args.len());
                        Ok(Formula::Pred(name, args))
                    }
                }
            }
            _ => Err(self.unexpected("a predicate or `(`")),
        }
    }

    fn atoms(&mut self, close: &Tok) -> Result<Vec<Atom>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            return Ok(out);
        }
        loop {
            out.push(self.atom()?);
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    pub fn atom(&mut self) -> Result<Atom, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Param(u)) => {
                self.pos += 1;
                Ok(Atom::Param(u))
            }
            Some(Tok::Elem(d)) => {
                self.pos += 1;
                Ok(Atom::Elem(d))
            }
            _ => self.ivar().map(Atom::Var),
        }
    }

    pub fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.tapp()?;
        while self.eat(&Tok::Plus) {
            t = Term::sum(t, self.tapp()?);
        }
        Ok(t)
    }

    fn tapp(&mut self) -> Result<Term, ParseError> {
        let mut t = self.tpre()?;
        while self.eat(&Tok::Star) {
            t = Term::app(t, self.tpre()?);
        }
        Ok(t)
    }

    fn tpre(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Term::bang(self.tpre()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(s)) if s == "gen" => {
                self.pos += 1;
                self.expect(&Tok::Lt)?;
                let x = self.ivar()?;
                self.expect(&Tok::Gt)?;
                self.expect(&Tok::LParen)?;
                let t = self.term()?;
                self.expect(&Tok::RParen)?;
                Ok(Term::gen(x, t))
            }
            Some(Tok::Ident(s)) if is_lower_ident(&s) => {
                self.pos += 1;
                Ok(if self.decls.contains(&s) {
                    Term::Const(s)
                } else {
                    Term::Var(s)
                })
            }
            _ => Err(self.unexpected("a justification term")),
        }
    }
}

pub fn parse_formula(input: &str, decls: &BTreeSet<String>) -> Result<Formula, ParseError> {
    let mut p = Parser::new(input, decls)?;
    let f = p.formula()?;
    p.expect_end()?;
    Ok(f)
}

pub fn parse_term(input: &str, decls: &BTreeSet<String>) -> Result<Term, ParseError> {
    let mut p = Parser::new(input, decls)?;
    let t = p.term()?;
    p.expect_end()?;
    Ok(t)
}

/// Parses an atom written with its sigil (`x`, `@u`, `$a`).
pub fn parse_atom(input: &str) -> Result<Atom, ParseError> {
    let empty = BTreeSet::new();
    let mut p = Parser::new(input, &empty)?;
    let a = p.atom()?;
    p.expect_end()?;
    Ok(a)
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Var(x) => f.write_str(x),
            Atom::Param(u) => write!(f, "@{u}"),
            Atom::Elem(d) => write!(f, "${d}"),
        }
    }
}

fn write_atoms(f: &mut fmt::Formatter<'_>, atoms: &[Atom]) -> fmt::Result {
    for (i, a) in atoms.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        write_atoms(f, self.atoms())?;
        f.write_str("]")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        struct Paren<'a>(&'a Term, bool);
        impl fmt::Display for Paren<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.1 {
                    write!(f, "({})", self.0)
                } else {
                    write!(f, "{}", self.0)
                }
            }
        }
        let is_sum = |t: &Term| matches!(t, Term::Sum(..));
        let is_op = |t: &Term| matches!(t, Term::Sum(..) | Term::App(..));
        match self {
            Term::Var(p) | Term::Const(p) => f.write_str(p),
            Term::Sum(l, r) => write!(f, "{}+{}", l, Paren(r, is_sum(r))),
            Term::App(l, r) => write!(f, "{}*{}", Paren(l, is_sum(l)), Paren(r, is_op(r))),
            Term::Bang(t) => write!(f, "!{}", Paren(t, is_op(t))),
            Term::Gen(x, t) => write!(f, "gen<{x}>({t})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // operands of prefix operators and the left side of `->` must not be
        // bare implications
        fn operand(f: &mut fmt::Formatter<'_>, g: &Formula) -> fmt::Result {
            if matches!(g, Formula::Imp(..)) {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        }
        match self {
            Formula::Pred(q, args) => {
                f.write_str(q)?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    write_atoms(f, args)?;
                    f.write_str(")")?;
                }
                Ok(())
            }
            Formula::Not(g) => {
                f.write_str("~")?;
                operand(f, g)
            }
            Formula::Imp(a, b) => {
                operand(f, a)?;
                write!(f, " -> {b}")
            }
            Formula::Forall(x, g) => {
                write!(f, "forall {x}. ")?;
                operand(f, g)
            }
            Formula::Exists(x, g) => {
                write!(f, "exists {x}. ")?;
                operand(f, g)
            }
            Formula::Just(t, w, g) => {
                write!(f, "{t} : ")?;
                if !w.is_empty() {
                    write!(f, "{w} ")?;
                }
                operand(f, g)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Atom;

    fn decls(cs: &[&str]) -> BTreeSet<String> {
        cs.iter().map(|s| (*s).to_owned()).collect()
    }

    fn ax(x: &str) -> Formula {
        Formula::pred("A", [Atom::var(x)])
    }

    #[test]
    fn parses_converse_barcan_goal() {
        let f = parse_formula(
            "p : forall x. A(x) -> forall x. (c*p):[x] A(x)",
            &decls(&["c"]),
        )
        .unwrap();
        let expected = Formula::imp(
            Formula::just(
                Term::var("p"),
                Window::empty(),
                Formula::forall("x", ax("x")),
            ),
            Formula::forall(
                "x",
                Formula::just(
                    Term::app(Term::constant("c"), Term::var("p")),
                    Window::new([Atom::var("x")]),
                    ax("x"),
                ),
            ),
        );
        assert_eq!(f, expected);
        assert_eq!(parse_formula(&f.to_string(), &decls(&["c"])).unwrap(), f);
    }

    #[test]
    fn parses_small_forms() {
        let nn = parse_formula("~~Q0", &BTreeSet::new()).unwrap();
        assert_eq!(nn, Formula::not(Formula::not(Formula::pred("Q0", []))));
        let g = parse_formula("gen<x>(t) : [] forall x. A(x)", &BTreeSet::new()).unwrap();
        assert_eq!(
            g,
            Formula::just(
                Term::gen("x", Term::var("t")),
                Window::empty(),
                Formula::forall("x", ax("x"))
            )
        );
    }

    #[test]
    fn implication_is_right_associative() {
        let f = parse_formula("A(x) -> B(x) -> C(x)", &BTreeSet::new()).unwrap();
        assert_eq!(f.to_string(), "A(x) -> B(x) -> C(x)");
        assert!(matches!(&f, Formula::Imp(_, r) if matches!(**r, Formula::Imp(..))));
        let g = parse_formula("(A(x) -> B(x)) -> C(x)", &BTreeSet::new()).unwrap();
        assert_eq!(g.to_string(), "(A(x) -> B(x)) -> C(x)");
    }

    #[test]
    fn colon_binds_a_unary_formula() {
        let f = parse_formula("t:[x]A(x) -> A(x)", &BTreeSet::new()).unwrap();
        assert!(matches!(f, Formula::Imp(ref l, _) if matches!(**l, Formula::Just(..))));
    }

    #[test]
    fn prints_sum_assertion() {
        let f = Formula::just(
            Term::sum(Term::var("p"), Term::var("q")),
            Window::new([Atom::param("u")]),
            Formula::pred("Q", [Atom::param("u")]),
        );
        assert_eq!(f.to_string(), "p+q : [@u] Q(@u)");
        assert_eq!(parse_formula(&f.to_string(), &BTreeSet::new()).unwrap(), f);
    }

    #[test]
    fn term_precedence_round_trips() {
        let d = decls(&["c"]);
        for src in [
            "p+q+r",
            "p+(q+r)",
            "(p+q)*r",
            "p*(q*r)",
            "!(p*q)",
            "!p*q",
            "gen<x>(c+p)*!q",
        ] {
            let t = parse_term(src, &d).unwrap();
            assert_eq!(parse_term(&t.to_string(), &d).unwrap(), t, "{src}");
        }
        assert_eq!(parse_term("p+(q+r)", &d).unwrap().to_string(), "p+(q+r)");
        assert_eq!(parse_term("(p*q)", &d).unwrap().to_string(), "p*q");
    }

    #[test]
    fn rejects_bad_quantification_and_arity() {
        let e = parse_formula("forall @u. Q(@u)", &BTreeSet::new()).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::NotAVariable(_)));
        let e = parse_formula("exists $a. Q($a)", &BTreeSet::new()).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::NotAVariable(_)));
        let e = parse_formula("Q(x) -> Q(x, y)", &BTreeSet::new()).unwrap_err();
        assert_eq!((e.line, e.col), (1, 9));
        assert!(matches!(e.kind, ParseErrorKind::Arity { .. }));
        let e = parse_formula("Q(@)", &BTreeSet::new()).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::BadSigil('@')));
    }

    #[test]
    fn reports_line_and_column() {
        let e = parse_formula("Q0 ->\n  -> Q1", &BTreeSet::new()).unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        let e = parse_formula("Q0 -> ", &BTreeSet::new()).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Unexpected { .. }));
    }

    #[test]
    fn parenthesised_term_versus_formula() {
        let f = parse_formula("(p+q):Q0", &BTreeSet::new()).unwrap();
        assert!(matches!(f, Formula::Just(Term::Sum(..), _, _)));
        let g = parse_formula("(Q0)", &BTreeSet::new()).unwrap();
        assert_eq!(g, Formula::pred("Q0", []));
        let h = parse_formula("(p:Q0 -> Q0)", &BTreeSet::new()).unwrap();
        assert!(matches!(h, Formula::Imp(..)));
    }
}
