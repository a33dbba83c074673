//! First-order logic of proofs: syntax, axioms, constant specifications,
//! a tableau prover with an independent proof checker, and evaluation in
//! Mkrtychev models.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod axioms;
pub mod checker;
pub mod countermodel;
pub mod cs;
pub mod model;
pub mod proof;
pub mod rules;
pub mod search;
pub mod syntax;
pub mod text;

pub use axioms::{is_axiom, match_axiom, Scheme};
pub use checker::{check_proof, Accepted, CheckError, Rejection, StructuralError};
pub use countermodel::{find_countermodel, CountermodelError};
pub use cs::{ConstantSpec, CsError};
pub use model::{satisfies, validate_model, MkrtychevModel, ModelError, Violation};
pub use proof::{tableau_closed, Closure, Origin, ProofNode, ProofTree};
pub use rules::{apply_rule, branch_closed, Extension, NodeId, RuleError, RuleInstance, RuleName};
pub use search::{
    prove, prove_with_clock, Budget, Clock, Dimension, NoClock, Outcome, SearchError, SearchState,
};
pub use syntax::{Atom, Formula, SubstError, Term, Window};
pub use text::{parse_formula, parse_term, ParseError};
