//! The store-free reference semantics and the `infer` that embeds it.

use std::collections::BTreeSet;

use crate::algebra::{Algebra, Subst, Truth};
use crate::state::{AnswerSet, State, Store};
use crate::syntax::{Formula, Term, FRESH_PREFIX};

use super::InferPolicy;

/// An element of `M[[φ]](θ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Error,
    Subst(Subst),
}

/// The equation clause: bind a variable side, compare values, or give up.
pub fn equation(s: &Term, t: &Term, theta: &Subst, alg: &Algebra) -> Vec<Outcome> {
    let (s_th, t_th) = (theta.apply(s), theta.apply(t));
    if let Some(x) = s_th.as_var() {
        if !t_th.occurs(x) {
            let eta = Subst::singleton(x, alg.j_eval(&t_th), alg);
            return vec![Outcome::Subst(theta.compose(&eta, alg))];
        }
    }
    if let Some(x) = t_th.as_var() {
        if !s_th.occurs(x) && !s_th.is_var() {
            let eta = Subst::singleton(x, alg.j_eval(&s_th), alg);
            return vec![Outcome::Subst(theta.compose(&eta, alg))];
        }
    }
    if alg.j_eval(&s_th) == alg.j_eval(&t_th) {
        return vec![Outcome::Subst(theta.clone())];
    }
    if s_th.is_ground() && t_th.is_ground() {
        return vec![];
    }
    vec![Outcome::Error]
}

/// `M[[A]](θ)` for an atomic formula.
pub fn atomic(atom: &Formula, theta: &Subst, alg: &Algebra) -> Vec<Outcome> {
    if let Formula::Eq(s, t) = atom {
        return equation(s, t, theta, alg);
    }
    match alg.atom_truth(atom, theta) {
        Truth::True => vec![Outcome::Subst(theta.clone())],
        Truth::False => vec![],
        Truth::NonGround => vec![Outcome::Error],
    }
}

/// `M[[φ]](θ)`, with fresh names drawn from `fresh`.
pub fn apt00_eval(phi: &Formula, theta: &Subst, alg: &Algebra) -> Vec<Outcome> {
    let mut fresh = FreshNames::above(phi, theta);
    let mut out = Vec::new();
    eval_into(phi, theta, alg, &mut fresh, &mut out);
    out
}

fn push(out: &mut Vec<Outcome>, o: Outcome) {
    if !out.contains(&o) {
        out.push(o);
    }
}

fn eval_into(phi: &Formula, theta: &Subst, alg: &Algebra, fresh: &mut FreshNames, out: &mut Vec<Outcome>) {
    match phi {
        f if f.is_atomic() => {
            for o in atomic(f, theta, alg) {
                push(out, o);
            }
        }
        Formula::Or(a, b) => {
            eval_into(a, theta, alg, fresh, out);
            eval_into(b, theta, alg, fresh, out);
        }
        Formula::And(a, b) => {
            let mut left = Vec::new();
            eval_into(a, theta, alg, fresh, &mut left);
            for o in left {
                match o {
                    Outcome::Error => push(out, Outcome::Error),
                    Outcome::Subst(eta) => eval_into(b, &eta, alg, fresh, out),
                }
            }
        }
        Formula::Not(g) => {
            let mut inner = Vec::new();
            eval_into(g, theta, alg, fresh, &mut inner);
            if inner.is_empty() {
                push(out, Outcome::Subst(theta.clone()));
            } else if !inner.contains(&Outcome::Subst(theta.clone())) {
                push(out, Outcome::Error);
            }
        }
        Formula::Exists(x, body) => {
            let u = fresh.next();
            let renamed = body.rename_free(x, &u).expect("fresh name is unused");
            let mut inner = Vec::new();
            eval_into(&renamed, theta, alg, fresh, &mut inner);
            for o in inner {
                push(
                    out,
                    match o {
                        Outcome::Error => Outcome::Error,
                        Outcome::Subst(eta) => Outcome::Subst(eta.without(&u)),
                    },
                );
            }
        }
        _ => unreachable!("atomic formulas handled above"),
    }
}

/// Generator of `$u<n>` names above every index already in use.
#[derive(Clone, Debug)]
pub struct FreshNames {
    next: usize,
}

impl FreshNames {
    pub fn starting_at(next: usize) -> FreshNames {
        FreshNames { next }
    }

    pub fn above(phi: &Formula, theta: &Subst) -> FreshNames {
        let mut names: BTreeSet<String> = phi.all_vars();
        names.extend(theta.domain().map(str::to_string));
        names.extend(theta.range_vars());
        FreshNames::above_names(names.iter().map(String::as_str))
    }

    pub fn above_names<'a>(names: impl IntoIterator<Item = &'a str>) -> FreshNames {
        let max = names
            .into_iter()
            .filter_map(|n| n.strip_prefix(FRESH_PREFIX)?.strip_prefix('u')?.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        FreshNames { next: max + 1 }
    }

    pub fn next(&mut self) -> String {
        let name = format!("{FRESH_PREFIX}u{}", self.next);
        self.next += 1;
        name
    }

    pub fn peek(&self) -> usize {
        self.next
    }
}

/// `infer` for the store-free semantics: only empty and singleton atomic
/// stores are handled.
#[derive(Clone, Copy, Debug, Default)]
pub struct Baseline;

impl InferPolicy for Baseline {
    fn name(&self) -> &str {
        "baseline"
    }

    fn is_special(&self, state: &State, _alg: &Algebra) -> bool {
        matches!(state, State::Pair(c, _) if c.len() == 1 && c.iter().all(Formula::is_atomic))
    }

    fn infer(&self, state: &State, alg: &Algebra) -> AnswerSet {
        match state {
            State::Error => AnswerSet::error(),
            State::Pair(store, theta) if store.is_empty() => AnswerSet::singleton(State::from_subst(theta.clone())),
            State::Pair(store, theta) if self.is_special(state, alg) => {
                let atom = &store.as_slice()[0];
                atomic(atom, theta, alg)
                    .into_iter()
                    .map(|o| match o {
                        Outcome::Error => State::Error,
                        Outcome::Subst(eta) => State::Pair(Store::new(), eta),
                    })
                    .collect()
            }
            State::Pair(..) => AnswerSet::error(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn int() -> Algebra {
        Algebra::integers()
    }

    fn run(text: &str) -> Vec<Outcome> {
        let alg = int();
        apt00_eval(&parse_formula(text, alg.signature()).unwrap(), &Subst::empty(), &alg)
    }

    fn subst(pairs: &[(&str, i64)]) -> Outcome {
        Outcome::Subst(Subst::new(pairs.iter().map(|(v, n)| (*v, Term::int(*n))), &int()))
    }

    #[test]
    fn reference_semantics_examples() {
        assert_eq!(run("y = 1 & z = 1 & y - 1 = z - 1"), vec![subst(&[("y", 1), ("z", 1)])]);
        assert_eq!(run("y - 1 = z - 1 & y = 1 & z = 1"), vec![Outcome::Error]);
        assert_eq!(run("~(x = 1) & x = 0"), vec![Outcome::Error]);
        assert_eq!(run("x = 0 & ~(x = 1)"), vec![subst(&[("x", 0)])]);
        assert_eq!(run("exists x. x = 1"), vec![subst(&[])]);
    }

    #[test]
    fn baseline_infer_examples() {
        let alg = int();
        let sig = alg.signature().clone();
        let theta = Subst::singleton("x", Term::int(1), &alg);
        let s = State::pair(Store::from_formulas([parse_formula("y = z - 1", &sig).unwrap()]), theta.clone());
        let expected = theta.compose(&Subst::singleton("y", Term::sub(Term::var("z"), Term::int(1)), &alg), &alg);
        assert_eq!(Baseline.infer(&s, &alg), AnswerSet::singleton(State::from_subst(expected)));

        let s = State::pair(Store::from_formulas([parse_formula("y < z", &sig).unwrap()]), Subst::empty());
        assert_eq!(Baseline.infer(&s, &alg), AnswerSet::error());

        let s = State::pair(Store::from_formulas([parse_formula("1 = 2", &sig).unwrap()]), Subst::empty());
        assert!(Baseline.infer(&s, &alg).is_empty());
    }

    #[test]
    fn fresh_names_skip_used_indices() {
        let alg = int();
        let phi = Formula::eq(Term::var("$u4"), Term::int(0));
        let mut fresh = FreshNames::above(&phi, &Subst::empty());
        assert_eq!(fresh.next(), "$u5");
        let mut fresh = FreshNames::above(&Formula::Bottom, &Subst::singleton("x", Term::int(1), &alg));
        assert_eq!(fresh.next(), "$u1");
    }
}
