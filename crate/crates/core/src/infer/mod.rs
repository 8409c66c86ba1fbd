//! The `infer` contract and the shipped constraint-management policies.

mod baseline;
mod linear;
mod policies;
mod propagate;
mod unify;

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::state::{AnswerSet, State};

pub use baseline::{apt00_eval, atomic as baseline_atomic, equation as baseline_equation, Baseline, FreshNames, Outcome};
pub use linear::{rewrite_linear, LinearForm, Linear, Rewrite};
pub use policies::{Atoms, Diseq, Literals, Unify};
pub use propagate::{aux, Propagator, SplitState, SplitStep, Step};
pub use unify::{mgu, mgu_all, mgu_subst, NotUnifiable};

/// A state-set transformer used after every atomic step of evaluation.
///
/// Implementations are expected to map `error` to `{error}`, leave
/// `⟨∅;θ⟩` unchanged, return `∅` only for inconsistent states and preserve
/// the meaning of the state.
pub trait InferPolicy: Send + Sync {
    fn name(&self) -> &str;

    fn is_special(&self, state: &State, alg: &Algebra) -> bool;

    fn infer(&self, state: &State, alg: &Algebra) -> AnswerSet;
}

impl<T: InferPolicy + ?Sized> InferPolicy for Arc<T> {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn is_special(&self, state: &State, alg: &Algebra) -> bool {
        (**self).is_special(state, alg)
    }

    fn infer(&self, state: &State, alg: &Algebra) -> AnswerSet {
        (**self).infer(state, alg)
    }
}

/// Names accepted by [`policy`].
pub const POLICY_NAMES: [&str; 6] = ["baseline", "unify", "atoms", "linear", "literals", "diseq"];

/// Look up a shipped policy by name.
pub fn policy(name: &str) -> Option<Arc<dyn InferPolicy>> {
    Some(match name {
        "baseline" => Arc::new(Baseline),
        "unify" => Arc::new(SplitStep(Unify)),
        "atoms" => Arc::new(SplitStep(Atoms)),
        "linear" => Arc::new(SplitStep(Linear)),
        "literals" => Arc::new(SplitStep(Literals)),
        "diseq" => Arc::new(SplitStep(Diseq)),
        _ => return None,
    })
}

/// All shipped policies in registry order.
pub fn all_policies() -> Vec<Arc<dyn InferPolicy>> {
    POLICY_NAMES.iter().map(|n| policy(n).expect("registered")).collect()
}
