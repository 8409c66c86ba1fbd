//! Evaluation of first-order formulas over constraint stores.
//!
//! A formula is evaluated in a state `⟨C;θ⟩` (a constraint store and a
//! substitution) and yields a finite set of states. How the store is
//! maintained after each atomic step is decided by an [`infer::InferPolicy`].
//! The [`oracle`] module checks results by bounded enumeration.

pub mod algebra;
pub mod cli;
pub mod infer;
pub mod oracle;
pub mod semantics;
pub mod state;
pub mod syntax;

pub use algebra::{Algebra, Subst};
pub use infer::{policy, InferPolicy};
pub use semantics::{eval, EvalContext};
pub use state::{AnswerSet, State, Store};
pub use syntax::{parse_formula, Formula, Signature, Term};
