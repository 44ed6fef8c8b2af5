//! System F types and derivations, and the bridge to relational proofs.

pub mod bridge;
pub mod deriv;
pub mod ftype;

pub use bridge::{
    dot_rename, embed_ctx, embed_f, erase_proof, project_ctx, project_derivation, project_type, self_witness,
    BridgeError, SelfWitness,
};
pub use deriv::{validate_f, weaken_f, FDerivation, FError, FErrorKind, FRecord};
pub use ftype::{FContext, FType};
