//! Terms, relational types, contexts and judgments.

pub mod context;
pub mod name;
pub mod pretty;
pub mod term;
pub mod types;

pub use context::{alpha_eq, free_vars, Context, Entry, FreeVars, HasFreeVars, Judgment};
pub use name::{dotted, fresh, is_dotted, name, Name, NameSupply};
pub use pretty::{render_context, render_judgment, render_term, render_type};
pub use term::{combinators, subst_term, Term};
pub use types::{subst_terms_in_type, subst_tvar, RelType};
