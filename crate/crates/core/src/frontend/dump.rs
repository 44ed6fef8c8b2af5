//! Line-delimited JSON records for checked proofs. Field order follows the
//! struct declarations, so output is byte-stable for identical input.

use serde::Serialize;

use super::parser::DumpKind;
use super::script::CheckedProof;
use crate::kernel::{to_relpf, KernelError, RelPfRecord};
use crate::syntax::{render_term, render_type, Judgment};
use crate::systemf::{
    erase_proof, project_ctx, project_derivation, project_type, self_witness, validate_f, BridgeError, FRecord,
};

#[derive(Debug, Clone, Serialize)]
pub struct JudgmentFields {
    pub left: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub right: String,
}

impl From<&Judgment> for JudgmentFields {
    fn from(j: &Judgment) -> Self {
        JudgmentFields {
            left: render_term(&j.left),
            ty: render_type(&j.ty),
            right: render_term(&j.right),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Assumption {
    pub var: String,
    #[serde(flatten)]
    pub judgment: JudgmentFields,
}

#[derive(Debug, Clone, Serialize)]
pub struct JudgmentRecord {
    pub kind: DumpKind,
    pub name: String,
    pub context: Vec<Assumption>,
    #[serde(flatten)]
    pub judgment: JudgmentFields,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelPfDump {
    pub kind: DumpKind,
    pub name: String,
    pub tree: RelPfRecord,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErasureRecord {
    pub kind: DumpKind,
    pub name: String,
    pub term: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemFRecord {
    pub kind: DumpKind,
    pub name: String,
    pub context: Vec<(String, String)>,
    pub subject: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub derivation: FRecord,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessRecord {
    pub kind: DumpKind,
    pub name: String,
    pub context: Vec<Assumption>,
    #[serde(flatten)]
    pub judgment: JudgmentFields,
    pub proof: String,
}

#[derive(Debug, thiserror::Error)]
pub enum DumpError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
    #[error("system F: {0}")]
    SystemF(String),
}

impl DumpError {
    pub fn code(&self) -> String {
        match self {
            DumpError::Kernel(e) => e.kind.as_str().to_string(),
            DumpError::Bridge(_) | DumpError::SystemF(_) => "projection-failed".to_string(),
        }
    }
}

fn assumptions(ctx: &crate::syntax::Context) -> Vec<Assumption> {
    ctx.entries()
        .iter()
        .map(|e| Assumption {
            var: e.var.to_string(),
            judgment: (&e.judgment).into(),
        })
        .collect()
}

fn line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("records serialize")
}

/// One JSON line describing `p`.
pub fn dump(kind: DumpKind, p: &CheckedProof, fuel: usize) -> Result<String, DumpError> {
    let name = p.name.to_string();
    Ok(match kind {
        DumpKind::Judgment => line(&JudgmentRecord {
            kind,
            name,
            context: assumptions(&p.context),
            judgment: (&p.judgment).into(),
        }),
        DumpKind::Relpf => line(&RelPfDump {
            kind,
            name,
            tree: to_relpf(&p.context, &p.proof, fuel)?.to_record(),
        }),
        DumpKind::Erasure => line(&ErasureRecord {
            kind,
            name,
            term: render_term(&erase_proof(&p.proof)),
        }),
        DumpKind::Systemf => {
            let fctx = project_ctx(&p.context);
            let d = project_derivation(&p.context, &p.proof, fuel)?;
            let (subject, ty) = validate_f(&fctx, &d).map_err(|e| DumpError::SystemF(e.to_string()))?;
            debug_assert_eq!(ty, project_type(&p.judgment.ty));
            line(&SystemFRecord {
                kind,
                name,
                context: fctx.iter().map(|(x, t)| (x.to_string(), t.to_string())).collect(),
                subject: render_term(&subject),
                ty: ty.to_string(),
                derivation: d.to_record(),
            })
        }
        DumpKind::Witness => {
            let w = self_witness(&p.context, &p.proof, fuel)?;
            line(&WitnessRecord {
                kind,
                name,
                context: assumptions(&w.context),
                judgment: (&w.judgment).into(),
                proof: crate::kernel::render_proof(&w.proof),
            })
        }
    })
}
