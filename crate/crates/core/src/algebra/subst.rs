use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::Algebra;
use crate::syntax::{Formula, Term};

/// A J-substitution: a finite map from variables to J-terms.
///
/// Normal form is enforced on construction: values are J-evaluated and no
/// variable is bound to itself, so structural equality is substitution
/// equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subst {
    map: BTreeMap<String, Term>,
}

impl Subst {
    pub fn empty() -> Subst {
        Subst::default()
    }

    pub fn new<I, S>(bindings: I, alg: &Algebra) -> Subst
    where
        I: IntoIterator<Item = (S, Term)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (var, value) in bindings {
            let var = var.into();
            let value = alg.j_eval(&value);
            if value.as_var() != Some(var.as_str()) {
                map.insert(var, value);
            }
        }
        Subst { map }
    }

    pub fn singleton(var: impl Into<String>, value: Term, alg: &Algebra) -> Subst {
        Subst::new([(var.into(), value)], alg)
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.map.get(var)
    }

    pub fn contains(&self, var: &str) -> bool {
        self.map.contains_key(var)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.map.iter().map(|(v, t)| (v.as_str(), t))
    }

    pub fn domain(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    /// Variables occurring in the bound values.
    pub fn range_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for t in self.map.values() {
            t.collect_vars(&mut out);
        }
        out
    }

    /// `tθ`: simultaneous replacement, no re-evaluation.
    pub fn apply(&self, t: &Term) -> Term {
        if self.map.is_empty() {
            return t.clone();
        }
        match t {
            Term::Var(v) => self.map.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::Num(_) => t.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    /// `φθ` with bound variables renamed apart when a value would be captured.
    pub fn apply_formula(&self, f: &Formula) -> Formula {
        if self.map.is_empty() {
            return f.clone();
        }
        match f {
            Formula::Atom(r, args) => Formula::Atom(r.clone(), args.iter().map(|a| self.apply(a)).collect()),
            Formula::Eq(s, t) => Formula::Eq(self.apply(s), self.apply(t)),
            Formula::Neq(s, t) => Formula::Neq(self.apply(s), self.apply(t)),
            Formula::Not(g) => Formula::not(self.apply_formula(g)),
            Formula::And(a, b) => Formula::and(self.apply_formula(a), self.apply_formula(b)),
            Formula::Or(a, b) => Formula::or(self.apply_formula(a), self.apply_formula(b)),
            Formula::Bottom => Formula::Bottom,
            Formula::Exists(v, body) => {
                let inner = self.without(v);
                let captured = body
                    .free_vars()
                    .iter()
                    .filter(|x| *x != v)
                    .any(|x| inner.get(x).is_some_and(|t| t.occurs(v)));
                if captured {
                    let mut avoid = body.all_vars();
                    avoid.extend(inner.range_vars());
                    avoid.extend(inner.domain().map(str::to_string));
                    let renamed = rename_apart(v, &avoid);
                    let body = body.rename_free_unchecked(v, &renamed);
                    Formula::exists(renamed, inner.apply_formula(&body))
                } else {
                    Formula::exists(v.clone(), inner.apply_formula(body))
                }
            }
        }
    }

    /// Composition `θη`: the unique γ with `xγ = ⟦(xθ)η⟧` for every x.
    pub fn compose(&self, other: &Subst, alg: &Algebra) -> Subst {
        let mut bindings: Vec<(String, Term)> = self
            .map
            .iter()
            .map(|(v, t)| (v.clone(), other.apply(t)))
            .collect();
        for (v, t) in &other.map {
            if !self.map.contains_key(v) {
                bindings.push((v.clone(), t.clone()));
            }
        }
        Subst::new(bindings, alg)
    }

    /// `DROP_u(θ)`: unbind `u`, leaving every other binding untouched.
    pub fn without(&self, var: &str) -> Subst {
        let mut map = self.map.clone();
        map.remove(var);
        Subst { map }
    }

    /// Restrict to the variables not in `vars`.
    pub fn without_all<'a>(&self, vars: impl IntoIterator<Item = &'a str>) -> Subst {
        let mut map = self.map.clone();
        for v in vars {
            map.remove(v);
        }
        Subst { map }
    }
}

/// A variant of `base` that avoids every name in `avoid`.
fn rename_apart(base: &str, avoid: &BTreeSet<String>) -> String {
    (1..)
        .map(|i| format!("{base}_{i}"))
        .find(|cand| !avoid.contains(cand))
        .expect("unbounded candidates")
}

impl fmt::Display for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}/{t}")?;
        }
        write!(f, "}}")
    }
}
