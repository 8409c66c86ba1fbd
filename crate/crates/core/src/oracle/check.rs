//! Property suites driven by the oracle.

use serde::Serialize;

use crate::semantics::EvalContext;
use crate::state::{cons, cons_plus, State};
use crate::syntax::Formula;

use super::{instantiate, Assignment, Oracle, Verdict};
use crate::syntax::Term;

/// A formula and the state it is evaluated in.
#[derive(Clone, Debug, PartialEq)]
pub struct Case {
    pub phi: Formula,
    pub state: State,
}

/// `φ₁` to be preserved while `φ₂` is evaluated in `state`.
#[derive(Clone, Debug, PartialEq)]
pub struct Triple {
    pub phi1: Formula,
    pub phi2: Formula,
    pub state: State,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub property: String,
    pub formula: String,
    pub state: String,
    pub detail: String,
}

/// Summary of a property run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub cases: usize,
    pub passed: usize,
    pub skipped_unknown: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn skip_rate(&self) -> f64 {
        if self.cases == 0 {
            0.0
        } else {
            self.skipped_unknown as f64 / self.cases as f64
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: Report) {
        self.cases += other.cases;
        self.passed += other.passed;
        self.skipped_unknown += other.skipped_unknown;
        self.violations.extend(other.violations);
    }

    fn record(&mut self, outcome: Outcome) {
        self.cases += 1;
        match outcome {
            Outcome::Passed => self.passed += 1,
            Outcome::Unknown => self.skipped_unknown += 1,
            Outcome::Violated(v) => self.violations.push(v),
        }
    }
}

enum Outcome {
    Passed,
    Unknown,
    Violated(Violation),
}

/// Tracks whether any verdict a case relied on was undecided.
#[derive(Default)]
struct Tally {
    unknown: bool,
}

impl Tally {
    fn finish(self) -> Outcome {
        if self.unknown {
            Outcome::Unknown
        } else {
            Outcome::Passed
        }
    }
}

fn violation(property: &str, phi: &Formula, state: &State, detail: String) -> Outcome {
    Outcome::Violated(Violation {
        property: property.to_string(),
        formula: phi.to_string(),
        state: state.to_string(),
        detail,
    })
}

/// Every computed pair satisfies `φ`; an answer set without consistent or
/// error states certifies `¬φ` in the input state.
pub fn check_soundness(ctx: &EvalContext, oracle: &Oracle, cases: impl IntoIterator<Item = Case>) -> Report {
    let mut report = Report::default();
    for case in cases {
        report.record(soundness_case(ctx, oracle, &case));
    }
    report
}

fn soundness_case(ctx: &EvalContext, oracle: &Oracle, case: &Case) -> Outcome {
    let alg = ctx.algebra();
    let out = ctx.eval(&case.phi, &case.state);
    let mut tally = Tally::default();
    for s in out.iter() {
        let State::Pair(c, t) = s else { continue };
        match oracle.models(c, t, &case.phi) {
            Verdict::False => {
                return violation("soundness.1", &case.phi, &case.state, format!("computed {s} does not satisfy the formula"))
            }
            Verdict::Unknown => tally.unknown = true,
            Verdict::True => {}
        }
    }
    if cons_plus(&out, alg).is_empty() {
        if let State::Pair(c, t) = &case.state {
            match oracle.models(c, t, &Formula::not(case.phi.clone())) {
                Verdict::False => {
                    return violation(
                        "soundness.2",
                        &case.phi,
                        &case.state,
                        "no answer, yet the negation does not hold".into(),
                    )
                }
                Verdict::Unknown => tally.unknown = true,
                Verdict::True => {}
            }
        }
    }
    tally.finish()
}

/// Evaluating `φ₂` preserves validity of `φ₁`; and, for disjunction-free
/// `φ₂`, preserves consistency of `C ∧ φ₁ ∧ φ₂` in each consistent result.
///
/// The consistency half fails for disjunctions: with `φ₁ = (x = 0)` and
/// `φ₂ = (x = 0 | x = 1)` the branch `{x/1}` is consistent but not with
/// `φ₁ ∧ φ₂`. Such triples are checked for validity only.
pub fn check_persistence(ctx: &EvalContext, oracle: &Oracle, triples: impl IntoIterator<Item = Triple>) -> Report {
    let mut report = Report::default();
    for triple in triples {
        report.record(persistence_case(ctx, oracle, &triple));
    }
    report
}

/// Carry an assignment `ρ'` for a derived state `⟨C';θ'⟩` back to the
/// variables of `⟨C;θ⟩` through `θ'`, and decide `Cθ ∧ φ₁θ` there.
fn pulled_back(
    oracle: &Oracle,
    store: &crate::state::Store,
    theta: &crate::algebra::Subst,
    theta2: &crate::algebra::Subst,
    phi1: &Formula,
    rho2: &Assignment,
) -> Verdict {
    let mut formulas: Vec<Formula> = store.iter().map(|f| theta.apply_formula(f)).collect();
    formulas.push(theta.apply_formula(phi1));
    let alg = oracle.algebra();
    let mut rho = Assignment::new();
    for f in &formulas {
        for v in f.free_vars() {
            let mut value = instantiate(&theta2.apply(&Term::var(v.as_str())), rho2);
            if !value.is_ground() {
                let unconstrained: Assignment = value.vars().into_iter().map(|u| (u, oracle.default_value())).collect();
                value = instantiate(&value, &unconstrained);
            }
            rho.insert(v, alg.eval_ground(&value));
        }
    }
    let mut acc = Verdict::True;
    for f in &formulas {
        match oracle.holds_at(f, &rho) {
            Verdict::False => return Verdict::False,
            Verdict::Unknown => acc = Verdict::Unknown,
            Verdict::True => {}
        }
    }
    acc
}

fn show(rho: &Assignment) -> String {
    let parts: Vec<String> = rho.iter().map(|(v, t)| format!("{v}/{t}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Does the formula contain `∨`?
pub fn has_disjunction(f: &Formula) -> bool {
    match f {
        Formula::Or(..) => true,
        Formula::And(a, b) => has_disjunction(a) || has_disjunction(b),
        Formula::Not(g) | Formula::Exists(_, g) => has_disjunction(g),
        _ => false,
    }
}

fn persistence_case(ctx: &EvalContext, oracle: &Oracle, t: &Triple) -> Outcome {
    let State::Pair(c, theta) = &t.state else {
        return Outcome::Passed;
    };
    let out = ctx.eval(&t.phi2, &t.state);
    let mut tally = Tally::default();
    let both = Formula::and(t.phi1.clone(), t.phi2.clone());

    match oracle.models(c, theta, &t.phi1) {
        Verdict::True => {
            for s in out.iter() {
                let State::Pair(c2, t2) = s else { continue };
                match oracle.counterexample(c2, t2, &t.phi1) {
                    Ok(Some(rho2)) => match pulled_back(oracle, c, theta, t2, &t.phi1, &rho2) {
                        Verdict::True => {
                            return violation(
                                "persistence.1",
                                &both,
                                &t.state,
                                format!("{s} no longer satisfies phi1 at {}", show(&rho2)),
                            )
                        }
                        // the bounded premise missed this point
                        Verdict::False => {}
                        Verdict::Unknown => tally.unknown = true,
                    },
                    Ok(None) => {}
                    Err(_) => tally.unknown = true,
                }
            }
        }
        Verdict::Unknown => tally.unknown = true,
        Verdict::False => {}
    }

    if !has_disjunction(&t.phi2) {
        match oracle.satisfiable_with(c, theta, std::slice::from_ref(&both)) {
            Verdict::True => {
                for s in cons(&out, ctx.algebra()).iter() {
                    let State::Pair(c2, t2) = s else { continue };
                    match oracle.satisfiable(c2, t2) {
                        Verdict::True => {}
                        Verdict::Unknown => {
                            tally.unknown = true;
                            continue;
                        }
                        Verdict::False => continue,
                    }
                    match oracle.satisfiable_with(c2, t2, std::slice::from_ref(&both)) {
                        Verdict::False => {
                            return violation(
                                "persistence.2",
                                &both,
                                &t.state,
                                format!("{s} is inconsistent with phi1 & phi2"),
                            )
                        }
                        Verdict::Unknown => tally.unknown = true,
                        Verdict::True => {}
                    }
                }
            }
            Verdict::Unknown => tally.unknown = true,
            Verdict::False => {}
        }
    }
    tally.finish()
}
