use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    UnboundProofVariable,
    NotAnArrow,
    NotAUniversal,
    NotAPromotion,
    NotAComposition,
    NotAConverse,
    ArgumentMismatch,
    ConversionFailed,
    ConversionUndecided,
    FreshnessViolation,
    RhoPremiseMismatch,
    PairMidMismatch,
    DeclarationMismatch,
}

impl ErrorKind {
    pub const ALL: [ErrorKind; 13] = [
        ErrorKind::UnboundProofVariable,
        ErrorKind::NotAnArrow,
        ErrorKind::NotAUniversal,
        ErrorKind::NotAPromotion,
        ErrorKind::NotAComposition,
        ErrorKind::NotAConverse,
        ErrorKind::ArgumentMismatch,
        ErrorKind::ConversionFailed,
        ErrorKind::ConversionUndecided,
        ErrorKind::FreshnessViolation,
        ErrorKind::RhoPremiseMismatch,
        ErrorKind::PairMidMismatch,
        ErrorKind::DeclarationMismatch,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::UnboundProofVariable => "unbound-proof-variable",
            ErrorKind::NotAnArrow => "not-an-arrow",
            ErrorKind::NotAUniversal => "not-a-universal",
            ErrorKind::NotAPromotion => "not-a-promotion",
            ErrorKind::NotAComposition => "not-a-composition",
            ErrorKind::NotAConverse => "not-a-converse",
            ErrorKind::ArgumentMismatch => "argument-mismatch",
            ErrorKind::ConversionFailed => "conversion-failed",
            ErrorKind::ConversionUndecided => "conversion-undecided",
            ErrorKind::FreshnessViolation => "freshness-violation",
            ErrorKind::RhoPremiseMismatch => "rho-premise-mismatch",
            ErrorKind::PairMidMismatch => "pair-mid-mismatch",
            ErrorKind::DeclarationMismatch => "declaration-mismatch",
        }
    }

    pub fn parse(s: &str) -> Option<ErrorKind> {
        ErrorKind::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Path from the root of a proof to the offending subproof, as child
/// indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ProofPath(pub Vec<usize>);

impl ProofPath {
    pub fn child(&self, i: usize) -> ProofPath {
        let mut v = self.0.clone();
        v.push(i);
        ProofPath(v)
    }
}

impl fmt::Display for ProofPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for i in &self.0 {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{kind} at {location}: {message}")]
pub struct KernelError {
    pub kind: ErrorKind,
    pub location: ProofPath,
    pub message: String,
}

impl KernelError {
    pub fn new(kind: ErrorKind, location: &ProofPath, message: impl Into<String>) -> Self {
        KernelError {
            kind,
            location: location.clone(),
            message: message.into(),
        }
    }
}
