//! Constant specification files.
//!
//! ```text
//! # comment
//! const c, d.
//! c : forall x. A(x) -> A(x).
//! d : scheme JT.
//! variant-closed.
//! total.
//! ```

use std::collections::BTreeSet;

use folp_core::cs::{ConstantSpec, CsError};
use folp_core::text::{ParseError, Parser, Tok};
use folp_core::Scheme;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CsFileError {
    #[error("{0}")]
    Syntax(#[from] ParseError),
    #[error("{line}:{col}: constant `{name}` is not declared")]
    Undeclared {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: unknown scheme `{name}`")]
    UnknownScheme {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: {source}")]
    Entry {
        line: usize,
        col: usize,
        source: CsError,
    },
}

/// Names declared by `const` statements, in any position of the file.
fn declarations(text: &str) -> Result<BTreeSet<String>, ParseError> {
    let empty = BTreeSet::new();
    let mut p = Parser::new(text, &empty)?;
    let mut out = BTreeSet::new();
    let mut at_start = true;
    while let Some(t) = p.bump() {
        match t {
            Tok::Ident(k) if at_start && k == "const" => loop {
                out.insert(p.expect_ident("a constant name")?);
                if !p.eat(&Tok::Comma) {
                    break;
                }
            },
            Tok::Dot => {
                at_start = true;
                continue;
            }
            _ => {}
        }
        at_start = false;
    }
    Ok(out)
}

pub fn parse_cs(text: &str) -> Result<ConstantSpec, CsFileError> {
    let decls = declarations(text)?;
    let mut cs = ConstantSpec::new();
    for c in &decls {
        cs.declare(c.clone());
    }
    let mut p = Parser::new(text, &decls)?;
    while !p.at_end() {
        let (line, col) = p.position();
        let head = p.expect_ident("a statement")?;
        match head.as_str() {
            "const" => {
                p.expect_ident("a constant name")?;
                while p.eat(&Tok::Comma) {
                    p.expect_ident("a constant name")?;
                }
            }
            "total" => cs.set_total(true),
            "variant" if p.peek() == Some(&Tok::Minus) => {
                p.bump();
                match p.expect_ident("`closed`")?.as_str() {
                    "closed" => cs.set_variant_closed(true),
                    _ => return Err(p.unexpected("`variant-closed`").into()),
                }
            }
            c => {
                if !decls.contains(c) {
                    return Err(CsFileError::Undeclared {
                        line,
                        col,
                        name: c.into(),
                    });
                }
                p.expect(&Tok::Colon)?;
                let is_scheme = matches!(p.peek(), Some(Tok::Ident(k)) if k == "scheme")
                    && matches!(p.peek_at(1), Some(Tok::Ident(_)))
                    && p.peek_at(2) == Some(&Tok::Dot);
                if is_scheme {
                    p.bump();
                    let (line, col) = p.position();
                    let name = p.expect_ident("a scheme name")?;
                    let s: Scheme = name.parse().map_err(|_| CsFileError::UnknownScheme {
                        line,
                        col,
                        name: name.clone(),
                    })?;
                    cs.add_scheme(c, s).map_err(|source| CsFileError::Entry {
                        line,
                        col,
                        source,
                    })?;
                } else {
                    let f = p.formula()?;
                    cs.add_concrete(c, f).map_err(|source| CsFileError::Entry {
                        line,
                        col,
                        source,
                    })?;
                }
            }
        }
        p.expect(&Tok::Dot)?;
    }
    Ok(cs)
}
