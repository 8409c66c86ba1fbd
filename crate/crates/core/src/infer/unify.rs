//! Syntactic unification with occurs check.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{Algebra, Subst};
use crate::syntax::Term;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NotUnifiable {
    #[error("symbol clash: `{0}` vs `{1}`")]
    Clash(String, String),
    #[error("occurs check: `{0}` occurs in `{1}`")]
    Occurs(String, Term),
}

/// Most general unifier of `s` and `t`, idempotent.
pub fn mgu(s: &Term, t: &Term) -> Result<BTreeMap<String, Term>, NotUnifiable> {
    mgu_all(vec![(s.clone(), t.clone())])
}

/// Most general simultaneous unifier of a list of pairs.
pub fn mgu_all(mut pending: Vec<(Term, Term)>) -> Result<BTreeMap<String, Term>, NotUnifiable> {
    let mut solved: BTreeMap<String, Term> = BTreeMap::new();
    while let Some((a, b)) = pending.pop() {
        let a = resolve(&a, &solved);
        let b = resolve(&b, &solved);
        match (a, b) {
            (a, b) if a == b => {}
            (Term::Var(x), t) | (t, Term::Var(x)) => {
                if t.occurs(&x) {
                    return Err(NotUnifiable::Occurs(x, t));
                }
                for value in solved.values_mut() {
                    *value = replace(value, &x, &t);
                }
                solved.insert(x, t);
            }
            (Term::App(f, fa), Term::App(g, ga)) => {
                if f != g || fa.len() != ga.len() {
                    return Err(NotUnifiable::Clash(f, g));
                }
                pending.extend(fa.into_iter().zip(ga).rev());
            }
            (a, b) => return Err(NotUnifiable::Clash(a.to_string(), b.to_string())),
        }
    }
    Ok(solved)
}

/// `mgu` packaged as a J-substitution.
pub fn mgu_subst(s: &Term, t: &Term, alg: &Algebra) -> Option<Subst> {
    mgu(s, t).ok().map(|m| Subst::new(m, alg))
}

fn resolve(t: &Term, solved: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Var(v) => solved.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::Num(_) => t.clone(),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| resolve(a, solved)).collect()),
    }
}

fn replace(t: &Term, x: &str, by: &Term) -> Term {
    match t {
        Term::Var(v) if v == x => by.clone(),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| replace(a, x, by)).collect()),
        _ => t.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, Signature};

    fn sig() -> Signature {
        Signature::parse_functions("f/1,g/2,a/0,b/0").unwrap()
    }

    fn t(text: &str) -> Term {
        parse_term(text, &sig()).unwrap()
    }

    fn apply(m: &BTreeMap<String, Term>, term: &Term) -> Term {
        resolve(term, m)
    }

    #[test]
    fn mgu_examples() {
        let m = mgu(&t("g(x,b)"), &t("g(a,y)")).unwrap();
        assert_eq!(m, BTreeMap::from([("x".into(), t("a")), ("y".into(), t("b"))]));
        assert!(matches!(mgu(&t("x"), &t("f(x)")), Err(NotUnifiable::Occurs(..))));
        assert!(mgu(&t("x"), &t("x")).unwrap().is_empty());
        assert!(matches!(mgu(&t("a"), &t("b")), Err(NotUnifiable::Clash(..))));
    }

    #[test]
    fn mgu_is_idempotent_and_unifies() {
        let (s, u) = (t("g(x,f(y))"), t("g(f(z),x)"));
        let m = mgu(&s, &u).unwrap();
        assert_eq!(apply(&m, &s), apply(&m, &u));
        for value in m.values() {
            assert_eq!(&apply(&m, value), value);
        }
    }

    #[test]
    fn chained_bindings_are_resolved() {
        let m = mgu_all(vec![(t("x"), t("f(y)")), (t("y"), t("a"))]).unwrap();
        assert_eq!(m.get("x"), Some(&t("f(a)")));
        assert_eq!(m.get("y"), Some(&t("a")));
    }
}
