//! The trusted checker for relational proof terms.

pub mod check;
pub mod error;
pub mod pretty;
pub mod proof;
pub mod relpf;

pub use check::{check, check_declared, derive, Derivation, Rule};
pub use error::{ErrorKind, KernelError, ProofPath};
pub use pretty::render_proof;
pub use proof::Proof;
pub use relpf::{to_relpf, RelPfNode, RelPfRecord};
