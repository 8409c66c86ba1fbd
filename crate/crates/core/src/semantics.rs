//! The evaluator `⟨C;θ⟩[[φ]]`, parameterized by an `infer` policy.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::io::Write;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::infer::{FreshNames, InferPolicy};
use crate::state::{cons, cons_plus, drop_state, AnswerSet, State, StateJson};
use crate::syntax::Formula;

/// One trace record, written as a JSON line.
#[derive(Clone, Debug, Serialize)]
pub struct TraceEvent {
    /// `infer` or the clause name: `atom`, `or`, `and`, `not`, `exists`, `error`.
    pub event: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    pub input: StateJson,
    pub output: Vec<StateJson>,
}

/// Algebra, policy and optional trace sink for a series of evaluations.
pub struct EvalContext {
    algebra: Algebra,
    policy: Arc<dyn InferPolicy>,
    trace: Option<RefCell<Box<dyn Write>>>,
}

impl EvalContext {
    pub fn new(algebra: Algebra, policy: Arc<dyn InferPolicy>) -> EvalContext {
        EvalContext {
            algebra,
            policy,
            trace: None,
        }
    }

    /// Emit JSON-lines trace events to `sink`.
    pub fn with_trace(mut self, sink: Box<dyn Write>) -> EvalContext {
        self.trace = Some(RefCell::new(sink));
        self
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn policy(&self) -> &dyn InferPolicy {
        self.policy.as_ref()
    }

    /// `σ[[φ]]`. Fresh names start above every `$u<n>` in the input.
    pub fn eval(&self, phi: &Formula, sigma: &State) -> AnswerSet {
        let mut fresh = fresh_for(phi, [sigma]);
        self.eval_state(phi, sigma, &mut fresh)
    }

    /// `Σ[[φ]]`, the pointwise union in the order of `Σ`.
    pub fn eval_set(&self, phi: &Formula, sigmas: &AnswerSet) -> AnswerSet {
        let mut fresh = fresh_for(phi, sigmas.iter());
        self.eval_all(phi, sigmas, &mut fresh)
    }

    /// `infer σ` under this context's policy, traced.
    pub fn infer(&self, sigma: &State) -> AnswerSet {
        let out = self.policy.infer(sigma, &self.algebra);
        self.emit("infer", None, sigma, &out);
        out
    }

    fn eval_all(&self, phi: &Formula, sigmas: &AnswerSet, fresh: &mut FreshNames) -> AnswerSet {
        let mut out = AnswerSet::empty();
        for s in sigmas {
            out.extend(self.eval_state(phi, s, fresh));
        }
        out
    }

    fn eval_state(&self, phi: &Formula, sigma: &State, fresh: &mut FreshNames) -> AnswerSet {
        let State::Pair(store, theta) = sigma else {
            let out = AnswerSet::error();
            self.emit("error", Some(phi), sigma, &out);
            return out;
        };
        let alg = &self.algebra;
        let (clause, out) = match phi {
            a if a.is_atomic() => ("atom", self.infer(&State::Pair(store.with(a.clone()), theta.clone()))),
            Formula::Or(a, b) => {
                let mut out = self.eval_state(a, sigma, fresh);
                out.extend(self.eval_state(b, sigma, fresh));
                ("or", out)
            }
            Formula::And(a, b) => {
                let left = self.eval_state(a, sigma, fresh);
                ("and", self.eval_all(b, &left, fresh))
            }
            Formula::Not(g) => {
                let inner = self.eval_state(g, sigma, fresh);
                let out = if cons_plus(&inner, alg).is_empty() {
                    self.infer(sigma)
                } else if cons(&inner, alg).contains(sigma) {
                    AnswerSet::empty()
                } else {
                    self.infer(&State::Pair(store.with(phi.clone()), theta.clone()))
                };
                ("not", out)
            }
            Formula::Exists(x, body) => {
                let u = fresh.next();
                let renamed = body.rename_free(x, &u).expect("fresh name is unused");
                let inner = self.eval_state(&renamed, sigma, fresh);
                let mut out = AnswerSet::empty();
                for s in cons_plus(&inner, alg) {
                    out.extend(self.infer(&drop_state(&u, &s)));
                }
                ("exists", out)
            }
            _ => unreachable!("atomic formulas handled above"),
        };
        self.emit(clause, Some(phi), sigma, &out);
        out
    }

    fn emit(&self, event: &'static str, phi: Option<&Formula>, input: &State, output: &AnswerSet) {
        let Some(sink) = &self.trace else { return };
        let record = TraceEvent {
            event,
            formula: phi.map(|f| f.to_string()),
            input: input.to_json(),
            output: output.to_json(),
        };
        let mut sink = sink.borrow_mut();
        // tracing is best effort; a closed sink must not change results
        let _ = serde_json::to_writer(&mut *sink, &record);
        let _ = writeln!(sink);
    }
}

fn fresh_for<'a>(phi: &Formula, states: impl IntoIterator<Item = &'a State>) -> FreshNames {
    let mut names: BTreeSet<String> = phi.all_vars();
    for s in states {
        names.extend(s.vars());
    }
    FreshNames::above_names(names.iter().map(String::as_str))
}

/// Evaluate with a one-off context.
pub fn eval(phi: &Formula, sigma: &State, alg: &Algebra, policy: Arc<dyn InferPolicy>) -> AnswerSet {
    EvalContext::new(alg.clone(), policy).eval(phi, sigma)
}
