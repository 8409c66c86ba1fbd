//! Unification, passive atoms, passive literals and Herbrand disequations.

use crate::algebra::{Algebra, Subst, Truth};
use crate::syntax::Formula;

use super::baseline::{self, Outcome};
use super::propagate::{Propagator, Step};
use super::unify::mgu_subst;

fn unify_step(s: &crate::syntax::Term, t: &crate::syntax::Term, theta: &Subst, alg: &Algebra) -> Step {
    match mgu_subst(&theta.apply(s), &theta.apply(t), alg) {
        Some(eta) => Step::Continue(theta.compose(&eta, alg)),
        None => Step::Fail,
    }
}

/// Herbrand equations, all active, solved by unification.
#[derive(Clone, Copy, Debug, Default)]
pub struct Unify;

impl Propagator for Unify {
    fn name(&self) -> &str {
        "unify"
    }

    fn supports(&self, alg: &Algebra) -> bool {
        alg.is_herbrand()
    }

    fn admits(&self, f: &Formula) -> bool {
        matches!(f, Formula::Eq(..))
    }

    fn is_active(&self, _f: &Formula, _theta: &Subst, _alg: &Algebra) -> bool {
        true
    }

    fn step(&self, f: &Formula, theta: &Subst, alg: &Algebra) -> Step {
        match f {
            Formula::Eq(s, t) => unify_step(s, t, theta, alg),
            other => panic!("unify step on `{other}`"),
        }
    }
}

fn baseline_step(f: &Formula, theta: &Subst, alg: &Algebra) -> Option<Step> {
    let outcomes = match f {
        Formula::Not(inner) => match alg.literal_truth(f, theta) {
            Truth::True => vec![Outcome::Subst(theta.clone())],
            Truth::False => vec![],
            Truth::NonGround => {
                debug_assert!(inner.is_atomic());
                vec![Outcome::Error]
            }
        },
        f => baseline::atomic(f, theta, alg),
    };
    match outcomes.as_slice() {
        [] => Some(Step::Fail),
        [Outcome::Subst(eta)] => Some(Step::Continue(eta.clone())),
        _ => None,
    }
}

/// Atoms whose baseline evaluation would be `error` wait in the store.
#[derive(Clone, Copy, Debug, Default)]
pub struct Atoms;

impl Propagator for Atoms {
    fn name(&self) -> &str {
        "atoms"
    }

    fn supports(&self, _alg: &Algebra) -> bool {
        true
    }

    fn admits(&self, f: &Formula) -> bool {
        f.is_atomic()
    }

    fn is_active(&self, f: &Formula, theta: &Subst, alg: &Algebra) -> bool {
        baseline_step(f, theta, alg).is_some()
    }

    fn step(&self, f: &Formula, theta: &Subst, alg: &Algebra) -> Step {
        baseline_step(f, theta, alg).expect("step on a passive constraint")
    }
}

/// As [`Atoms`], with negated atoms admitted as well.
#[derive(Clone, Copy, Debug, Default)]
pub struct Literals;

impl Propagator for Literals {
    fn name(&self) -> &str {
        "literals"
    }

    fn supports(&self, _alg: &Algebra) -> bool {
        true
    }

    fn admits(&self, f: &Formula) -> bool {
        f.is_literal()
    }

    fn is_active(&self, f: &Formula, theta: &Subst, alg: &Algebra) -> bool {
        baseline_step(f, theta, alg).is_some()
    }

    fn step(&self, f: &Formula, theta: &Subst, alg: &Algebra) -> Step {
        baseline_step(f, theta, alg).expect("step on a passive constraint")
    }
}

/// Herbrand equations (active) and disequations, active only when ground
/// or trivially false.
#[derive(Clone, Copy, Debug, Default)]
pub struct Diseq;

impl Propagator for Diseq {
    fn name(&self) -> &str {
        "diseq"
    }

    fn supports(&self, alg: &Algebra) -> bool {
        alg.is_herbrand()
    }

    fn admits(&self, f: &Formula) -> bool {
        matches!(f, Formula::Eq(..)) || f.as_disequation().is_some()
    }

    fn is_active(&self, f: &Formula, theta: &Subst, _alg: &Algebra) -> bool {
        match f.as_disequation() {
            Some((s, t)) => {
                let (s, t) = (theta.apply(s), theta.apply(t));
                s == t || (s.is_ground() && t.is_ground())
            }
            None => true,
        }
    }

    fn step(&self, f: &Formula, theta: &Subst, alg: &Algebra) -> Step {
        if let Formula::Eq(s, t) = f {
            return unify_step(s, t, theta, alg);
        }
        let (s, t) = f.as_disequation().expect("admitted formula");
        if alg.j_eval(&theta.apply(s)) == alg.j_eval(&theta.apply(t)) {
            Step::Fail
        } else {
            Step::Continue(theta.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::infer::propagate::SplitStep;
    use crate::infer::InferPolicy;
    use crate::state::{AnswerSet, State, Store};
    use crate::syntax::{parse_formula, Signature, Term};

    fn herbrand() -> Algebra {
        Algebra::herbrand(Signature::parse_functions("f/1,g/2,a/0,b/0,c/0").unwrap())
    }

    fn store(alg: &Algebra, items: &[&str]) -> Store {
        items
            .iter()
            .map(|s| parse_formula(s, alg.signature()).unwrap())
            .collect()
    }

    #[test]
    fn unify_solves_equations() {
        let alg = herbrand();
        let s = State::pair(store(&alg, &["x = f(y)", "y = a"]), Subst::empty());
        let expected = Subst::new([("x", Term::app("f", vec![Term::constant("a")])), ("y", Term::constant("a"))], &alg);
        assert_eq!(SplitStep(Unify).infer(&s, &alg), AnswerSet::singleton(State::from_subst(expected)));
        let s = State::pair(store(&alg, &["a = b"]), Subst::empty());
        assert!(SplitStep(Unify).infer(&s, &alg).is_empty());
        assert_eq!(
            SplitStep(Unify).infer(&State::initial(), &alg),
            AnswerSet::singleton(State::initial())
        );
    }

    #[test]
    fn atoms_split() {
        let alg = Algebra::integers();
        let st = store(&alg, &["y < z", "y = 1"]);
        let split = Atoms.split(&st, &Subst::empty(), &alg);
        assert_eq!(split.passive, store(&alg, &["y < z"]).as_slice());
        assert_eq!(split.active, store(&alg, &["y = 1"]).as_slice());

        let full = Subst::new([("y", Term::int(1)), ("z", Term::int(2))], &alg);
        let split = Atoms.split(&store(&alg, &["y < z"]), &full, &alg);
        assert!(split.passive.is_empty());
        assert_eq!(split.active.len(), 1);
    }

    #[test]
    fn atoms_steps() {
        let alg = Algebra::integers();
        let theta = Subst::singleton("y", Term::int(1), &alg);
        let f = parse_formula("z = 2", alg.signature()).unwrap();
        let expected = Subst::new([("y", Term::int(1)), ("z", Term::int(2))], &alg);
        assert_eq!(Atoms.step(&f, &theta, &alg), Step::Continue(expected));
        let t = parse_formula("1 < 2", alg.signature()).unwrap();
        assert_eq!(Atoms.step(&t, &Subst::empty(), &alg), Step::Continue(Subst::empty()));
        let f = parse_formula("2 < 1", alg.signature()).unwrap();
        assert_eq!(Atoms.step(&f, &Subst::empty(), &alg), Step::Fail);
    }

    #[test]
    fn literal_steps() {
        let alg = Algebra::integers();
        let t = parse_formula("~(1 = 2)", alg.signature()).unwrap();
        assert_eq!(Literals.step(&t, &Subst::empty(), &alg), Step::Continue(Subst::empty()));
        let f = parse_formula("~(1 = 1)", alg.signature()).unwrap();
        assert_eq!(Literals.step(&f, &Subst::empty(), &alg), Step::Fail);
        assert!(!Literals.is_active(&parse_formula("~(x = 1)", alg.signature()).unwrap(), &Subst::empty(), &alg));
    }

    #[test]
    fn disequation_steps() {
        let alg = herbrand();
        let xx = parse_formula("x /= x", alg.signature()).unwrap();
        assert!(Diseq.is_active(&xx, &Subst::empty(), &alg));
        assert_eq!(Diseq.step(&xx, &Subst::empty(), &alg), Step::Fail);
        let s = State::pair(store(&alg, &["x /= y", "x = c"]), Subst::empty());
        let out = SplitStep(Diseq).infer(&s, &alg);
        let expected = State::pair(store(&alg, &["x /= y"]), Subst::singleton("x", Term::constant("c"), &alg));
        assert_eq!(out, AnswerSet::singleton(expected));
    }
}
