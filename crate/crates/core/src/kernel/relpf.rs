//! Derivations with proof terms erased: the relational proof system view.

use serde::Serialize;

use super::check::{derive, Derivation, Rule};
use super::error::KernelError;
use super::proof::Proof;
use crate::syntax::{Context, Judgment};

/// One rule instance `hyps |- t [R] t'`; hypotheses are the context with
/// its proof variables dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelPfNode {
    pub rule: Rule,
    pub hypotheses: Vec<Judgment>,
    pub conclusion: Judgment,
    pub premises: Vec<RelPfNode>,
}

fn drop_proof_vars(ctx: &Context) -> Vec<Judgment> {
    ctx.entries().iter().map(|e| e.judgment.clone()).collect()
}

impl From<&Derivation> for RelPfNode {
    fn from(d: &Derivation) -> Self {
        RelPfNode {
            rule: d.rule,
            hypotheses: drop_proof_vars(&d.context),
            conclusion: d.judgment.clone(),
            premises: d.children.iter().map(RelPfNode::from).collect(),
        }
    }
}

impl RelPfNode {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(RelPfNode::size).sum::<usize>()
    }

    /// Rules along the first-premise spine, root first.
    pub fn spine(&self) -> Vec<Rule> {
        let mut out = vec![self.rule];
        let mut cur = self;
        while let Some(first) = cur.premises.first() {
            out.push(first.rule);
            cur = first;
        }
        out
    }

    /// Indented text rendering, root first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let hyps = if self.hypotheses.is_empty() {
            ".".to_string()
        } else {
            self.hypotheses.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(", ")
        };
        out.push_str(&"  ".repeat(depth));
        out.push_str(&format!("[{}] {hyps} |- {}\n", self.rule, self.conclusion));
        for p in &self.premises {
            p.render_into(out, depth + 1);
        }
    }

    pub fn to_record(&self) -> RelPfRecord {
        RelPfRecord {
            rule: self.rule,
            hypotheses: self.hypotheses.iter().map(|j| j.to_string()).collect(),
            conclusion: self.conclusion.to_string(),
            premises: self.premises.iter().map(RelPfNode::to_record).collect(),
        }
    }
}

/// Serializable form of a [`RelPfNode`].
#[derive(Debug, Clone, Serialize)]
pub struct RelPfRecord {
    pub rule: Rule,
    pub hypotheses: Vec<String>,
    pub conclusion: String,
    pub premises: Vec<RelPfRecord>,
}

pub fn to_relpf(ctx: &Context, p: &Proof, fuel: usize) -> Result<RelPfNode, KernelError> {
    derive(ctx, p, fuel).map(|d| RelPfNode::from(&d))
}
