//! Proof files (JSON).

use std::collections::BTreeSet;

use folp_core::proof::{Closure, Origin, ProofNode, ProofTree};
use folp_core::rules::{NodeId, RuleInstance, RuleName};
use folp_core::text::{is_lower_ident, parse_atom, ParseError};
use folp_core::{parse_formula, Atom};
use serde::{Deserialize, Serialize};
use thiserror::Error;

const ROOT: &str = "Root";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofFile {
    pub roots: Vec<String>,
    pub tree: NodeJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: NodeId,
    pub formula: String,
    #[serde(default)]
    pub rule: Option<RuleJson>,
    #[serde(default)]
    pub children: Vec<NodeJson>,
    #[serde(default)]
    pub closure: Option<ClosureJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleJson {
    pub name: String,
    #[serde(default)]
    pub premises: Vec<NodeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ClosureJson {
    Contradiction { with: NodeId },
    Cs { constant: String },
}

#[derive(Debug, Error)]
pub enum ProofFileError {
    #[error("malformed proof JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("root {index}: {source}")]
    Root { index: usize, source: ParseError },
    #[error("node {node}: {field}: {source}")]
    Formula {
        node: NodeId,
        field: &'static str,
        source: ParseError,
    },
    #[error("node {node}: unknown rule `{name}`")]
    UnknownRule { node: NodeId, name: String },
    #[error("node {node}: `{text}` is not a parameter")]
    BadParam { node: NodeId, text: String },
    #[error("node {node}: `{text}` is not an individual variable")]
    BadVar { node: NodeId, text: String },
}

impl ProofFile {
    pub fn from_tree(t: &ProofTree) -> Self {
        ProofFile {
            roots: t.roots.iter().map(ToString::to_string).collect(),
            tree: node_json(&t.tree),
        }
    }

    pub fn to_tree(&self, decls: &BTreeSet<String>) -> Result<ProofTree, ProofFileError> {
        let roots = self
            .roots
            .iter()
            .enumerate()
            .map(|(index, s)| {
                parse_formula(s, decls).map_err(|source| ProofFileError::Root { index, source })
            })
            .collect::<Result<_, _>>()?;
        Ok(ProofTree {
            roots,
            tree: tree_node(&self.tree, decls)?,
        })
    }
}

fn node_json(n: &ProofNode) -> NodeJson {
    let rule = match &n.origin {
        Origin::Root => RuleJson {
            name: ROOT.into(),
            premises: vec![],
            param: None,
            cut: None,
            var: None,
        },
        Origin::Rule(r) => RuleJson {
            name: r.name.to_string(),
            premises: r.premises.clone(),
            param: r.param.as_ref().map(|u| format!("@{u}")),
            cut: r.cut.as_ref().map(ToString::to_string),
            var: r.var.clone(),
        },
    };
    NodeJson {
        id: n.id,
        formula: n.formula.to_string(),
        rule: Some(rule),
        children: n.children.iter().map(node_json).collect(),
        closure: n.closure.as_ref().map(|c| match c {
            Closure::Contradiction { with } => ClosureJson::Contradiction { with: *with },
            Closure::Cs { constant } => ClosureJson::Cs {
                constant: constant.clone(),
            },
        }),
    }
}

fn tree_node(n: &NodeJson, decls: &BTreeSet<String>) -> Result<ProofNode, ProofFileError> {
    let node = n.id;
    let formula = parse_formula(&n.formula, decls).map_err(|source| ProofFileError::Formula {
        node,
        field: "formula",
        source,
    })?;
    let origin = match &n.rule {
        None => Origin::Root,
        Some(r) if r.name == ROOT => Origin::Root,
        Some(r) => {
            let name: RuleName = r.name.parse().map_err(|_| ProofFileError::UnknownRule {
                node,
                name: r.name.clone(),
            })?;
            let param = r
                .param
                .as_ref()
                .map(|p| match parse_atom(p) {
                    Ok(Atom::Param(u)) => Ok(u),
                    _ => Err(ProofFileError::BadParam {
                        node,
                        text: p.clone(),
                    }),
                })
                .transpose()?;
            let cut = r
                .cut
                .as_ref()
                .map(|c| {
                    parse_formula(c, decls).map_err(|source| ProofFileError::Formula {
                        node,
                        field: "cut",
                        source,
                    })
                })
                .transpose()?;
            if let Some(x) = r.var.as_ref().filter(|x| !is_lower_ident(x)) {
                return Err(ProofFileError::BadVar {
                    node,
                    text: x.clone(),
                });
            }
            Origin::Rule(RuleInstance {
                name,
                premises: r.premises.clone(),
                param,
                cut,
                var: r.var.clone(),
            })
        }
    };
    let children = n
        .children
        .iter()
        .map(|c| tree_node(c, decls))
        .collect::<Result<_, _>>()?;
    let closure = n.closure.as_ref().map(|c| match c {
        ClosureJson::Contradiction { with } => Closure::Contradiction { with: *with },
        ClosureJson::Cs { constant } => Closure::Cs {
            constant: constant.clone(),
        },
    });
    Ok(ProofNode {
        id: node,
        formula,
        origin,
        children,
        closure,
    })
}

/// Parses a proof file. Nesting depth is bounded only by the stack, since
/// long branches nest deeply; callers expecting very deep trees should run
/// on a thread with a large stack, as the `folp` binary does.
pub fn parse_proof(json: &str, decls: &BTreeSet<String>) -> Result<ProofTree, ProofFileError> {
    let mut de = serde_json::Deserializer::from_str(json);
    de.disable_recursion_limit();
    let file = ProofFile::deserialize(&mut de)?;
    de.end()?;
    file.to_tree(decls)
}

pub fn proof_to_json(t: &ProofTree) -> String {
    serde_json::to_string_pretty(&ProofFile::from_tree(t)).expect("serialisable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use folp_core::{prove, Budget, ConstantSpec};

    fn example() -> (ProofTree, BTreeSet<String>) {
        let decls: BTreeSet<String> = ["c".to_string()].into();
        let mut cs = ConstantSpec::new();
        cs.declare("c");
        cs.add_concrete(
            "c",
            parse_formula("forall x. A(x) -> A(x)", &decls).unwrap(),
        )
        .unwrap();
        let goal = parse_formula("p : forall x. A(x) -> forall x. (c*p):[x] A(x)", &decls).unwrap();
        let t = prove(&goal, &cs, &Budget::default(), &[])
            .unwrap()
            .proof()
            .unwrap()
            .clone();
        (t, decls)
    }

    #[test]
    fn round_trips() {
        let (t, decls) = example();
        let json = proof_to_json(&t);
        assert_eq!(parse_proof(&json, &decls).unwrap(), t);
        assert!(json.contains(r#""kind": "cs""#));
        assert!(json.contains(r#""param": "@u0""#));
    }

    #[test]
    fn deep_chains_parse() {
        let depth = 1000;
        let mut json = String::from(r#"{"roots": ["Q0"], "tree": "#);
        for id in 1..=depth {
            json += &format!(r#"{{"id": {id}, "formula": "Q0", "children": ["#);
        }
        json += &"]}".repeat(depth);
        json += "}";
        let t = std::thread::Builder::new()
            .stack_size(1 << 28)
            .spawn(move || parse_proof(&json, &BTreeSet::new()).unwrap())
            .unwrap()
            .join()
            .unwrap();
        assert_eq!(t.len(), depth);
    }

    #[test]
    fn reports_bad_fields() {
        let none = BTreeSet::new();
        let bad = |rule: &str| {
            let json = format!(
                r#"{{"roots": ["~Q0"], "tree": {{"id": 1, "formula": "~Q0", "rule": {rule}, "children": [], "closure": null}}}}"#
            );
            parse_proof(&json, &none).unwrap_err()
        };
        assert!(matches!(
            bad(r#"{"name": "TBogus", "premises": []}"#),
            ProofFileError::UnknownRule { node: 1, .. }
        ));
        assert!(matches!(
            bad(r#"{"name": "Exp", "premises": [1], "param": "u"}"#),
            ProofFileError::BadParam { .. }
        ));
        assert!(matches!(
            bad(r#"{"name": "Ins", "premises": [1], "var": "X"}"#),
            ProofFileError::BadVar { .. }
        ));
        assert!(matches!(
            bad(r#"{"name": "FDot", "premises": [1], "cut": "A("}"#),
            ProofFileError::Formula { field: "cut", .. }
        ));
        assert!(matches!(
            parse_proof("{}", &none),
            Err(ProofFileError::Json(_))
        ));
    }
}
