//! Relational type theory: terms and relational types, a proof-term
//! checker, a bridge to System F, derived datatypes and a script frontend.

pub mod analysis;
pub mod frontend;
pub mod kernel;
pub mod par;
pub mod prelude;
pub mod reduction;
pub mod syntax;
pub mod systemf;
