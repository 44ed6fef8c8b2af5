//! Derived types, datatype generators, the checked standard library and
//! proof builders.

use thiserror::Error;

use crate::kernel::KernelError;
use crate::systemf::FError;

pub mod builders;
pub mod datatypes;
pub mod derived;
pub mod stdlib;

pub use builders::*;
pub use datatypes::{
    gen_fmap, gen_fmap_deriv, gen_fold, gen_fold_deriv, gen_in, gen_in_deriv, gen_rebuild, gen_rebuild_deriv,
    FmapDerivation,
};
pub use derived::{bool_ty, d_param, nat_functor, nat_ty, unit_ty, DerivedForm};
pub use stdlib::{render_prelude, stdlib, StdEntry, Stdlib};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PreludeError {
    #[error("malformed-parameter: {0}")]
    MalformedParameter(String),
    #[error("polarity-violation: {0}")]
    PolarityViolation(String),
    #[error("underivable: {0}")]
    Underivable(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error(transparent)]
    SystemF(#[from] FError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

impl PreludeError {
    pub fn code(&self) -> &'static str {
        match self {
            PreludeError::MalformedParameter(_) => "malformed-parameter",
            PreludeError::PolarityViolation(_) => "polarity-violation",
            PreludeError::Underivable(_) => "underivable",
            PreludeError::Precondition(_) => "precondition",
            PreludeError::SystemF(e) => e.kind.as_str(),
            PreludeError::Kernel(e) => e.kind.as_str(),
        }
    }
}
