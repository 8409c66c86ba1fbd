//! The split/step machinery shared by the propagation policies.

use crate::algebra::{Algebra, Subst};
use crate::state::{classify, AnswerSet, Consistency, State, Store};
use crate::syntax::Formula;

use super::InferPolicy;

/// A store partitioned into passive and active constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitState {
    pub passive: Vec<Formula>,
    pub active: Vec<Formula>,
    pub subst: Subst,
}

/// Result of one propagation step on the selected active constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// The constraint is discharged; continue with this substitution.
    Continue(Subst),
    /// The constraint is refuted.
    Fail,
}

/// A constraint-management strategy described by its special states, its
/// active/passive classification and a step on one active constraint.
pub trait Propagator: Send + Sync {
    fn name(&self) -> &str;

    /// Whether the policy applies to this algebra at all.
    fn supports(&self, alg: &Algebra) -> bool;

    /// Whether a store formula lies in the policy's fragment.
    fn admits(&self, f: &Formula) -> bool;

    fn is_active(&self, f: &Formula, theta: &Subst, alg: &Algebra) -> bool;

    fn step(&self, f: &Formula, theta: &Subst, alg: &Algebra) -> Step;

    fn split(&self, store: &Store, theta: &Subst, alg: &Algebra) -> SplitState {
        let (active, passive) = store.iter().cloned().partition(|f| self.is_active(f, theta, alg));
        SplitState {
            passive,
            active,
            subst: theta.clone(),
        }
    }
}

/// Repeat split and step on the rightmost active constraint until none is
/// left. Every step removes one constraint, so this terminates.
pub fn aux<P: Propagator + ?Sized>(p: &P, store: &Store, theta: &Subst, alg: &Algebra) -> AnswerSet {
    let mut store = store.clone();
    let mut theta = theta.clone();
    loop {
        let split = p.split(&store, &theta, alg);
        let Some(selected) = split.active.last() else {
            return AnswerSet::singleton(State::Pair(store, theta));
        };
        match p.step(selected, &theta, alg) {
            Step::Fail => return AnswerSet::empty(),
            Step::Continue(next) => {
                store = store.iter().filter(|f| *f != selected).cloned().collect();
                theta = next;
            }
        }
    }
}

/// Turns a [`Propagator`] into an `infer` policy.
#[derive(Clone, Debug, Default)]
pub struct SplitStep<P>(pub P);

impl<P: Propagator> InferPolicy for SplitStep<P> {
    fn name(&self) -> &str {
        self.0.name()
    }

    fn is_special(&self, state: &State, alg: &Algebra) -> bool {
        match state {
            State::Pair(store, _) => self.0.supports(alg) && store.iter().all(|f| self.0.admits(f)),
            State::Error => false,
        }
    }

    fn infer(&self, state: &State, alg: &Algebra) -> AnswerSet {
        match state {
            State::Error => AnswerSet::error(),
            State::Pair(store, theta) if store.is_empty() => AnswerSet::singleton(State::from_subst(theta.clone())),
            State::Pair(..) if classify(state, alg) == Consistency::Inconsistent => AnswerSet::empty(),
            State::Pair(store, theta) if self.is_special(state, alg) => aux(&self.0, store, theta, alg),
            State::Pair(..) => AnswerSet::error(),
        }
    }
}
