//! Constraint stores, states, answer sets, local-variable elimination and the
//! consistency classification.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Subst, Truth};
use crate::syntax::{Formula, ParseError, Parser, Signature, Term};

/// A finite set of formulas kept in insertion order.
///
/// Equality and hashing ignore the order.
#[derive(Clone, Debug, Default)]
pub struct Store {
    items: Vec<Formula>,
}

impl Store {
    pub fn new() -> Store {
        Store::default()
    }

    pub fn from_formulas(items: impl IntoIterator<Item = Formula>) -> Store {
        let mut store = Store::new();
        for f in items {
            store.insert(f);
        }
        store
    }

    /// Add a formula unless a structurally equal one is present.
    pub fn insert(&mut self, f: Formula) -> bool {
        if self.items.contains(&f) {
            false
        } else {
            self.items.push(f);
            true
        }
    }

    pub fn with(&self, f: Formula) -> Store {
        let mut s = self.clone();
        s.insert(f);
        s
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.items.contains(f)
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.items.iter()
    }

    pub fn as_slice(&self) -> &[Formula] {
        &self.items
    }

    fn sorted(&self) -> Vec<&Formula> {
        let mut v: Vec<&Formula> = self.items.iter().collect();
        v.sort();
        v
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        self.items.iter().flat_map(Formula::free_vars).collect()
    }
}

impl PartialEq for Store {
    fn eq(&self, other: &Store) -> bool {
        self.items.len() == other.items.len() && self.items.iter().all(|f| other.items.contains(f))
    }
}

impl Eq for Store {}

impl Hash for Store {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sorted().hash(state)
    }
}

impl FromIterator<Formula> for Store {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Store {
        Store::from_formulas(iter)
    }
}

impl<'a> IntoIterator for &'a Store {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

impl fmt::Display for Store {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.items.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", item.display_conj_level())?;
        }
        Ok(())
    }
}

/// `error` or a pair of a constraint store and a J-substitution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum State {
    Error,
    Pair(Store, Subst),
}

impl State {
    pub fn pair(store: Store, subst: Subst) -> State {
        State::Pair(store, subst)
    }

    /// `⟨∅; ε⟩`.
    pub fn initial() -> State {
        State::Pair(Store::new(), Subst::empty())
    }

    pub fn from_subst(subst: Subst) -> State {
        State::Pair(Store::new(), subst)
    }

    pub fn is_error(&self) -> bool {
        matches!(self, State::Error)
    }

    pub fn as_pair(&self) -> Option<(&Store, &Subst)> {
        match self {
            State::Pair(c, t) => Some((c, t)),
            State::Error => None,
        }
    }

    /// Variables mentioned anywhere in the state.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        if let State::Pair(store, subst) = self {
            for f in store {
                out.extend(f.all_vars());
            }
            out.extend(subst.domain().map(str::to_string));
            out.extend(subst.range_vars());
        }
        out
    }

    pub fn parse(text: &str, alg: &Algebra) -> Result<State, ParseError> {
        State::parse_with(text, alg.signature(), alg, false)
    }

    /// Parse printed evaluator output, which may mention generated variables.
    pub fn parse_output(text: &str, alg: &Algebra) -> Result<State, ParseError> {
        State::parse_with(text, alg.signature(), alg, true)
    }

    fn parse_with(text: &str, sig: &Signature, alg: &Algebra, fresh: bool) -> Result<State, ParseError> {
        let mut p = Parser::new(text, sig)?.allow_fresh(fresh);
        let state = p.state()?;
        p.finish()?;
        Ok(match state {
            None => State::Error,
            Some((store, bindings)) => State::Pair(Store::from_formulas(store), Subst::new(bindings, alg)),
        })
    }

    pub fn to_json(&self) -> StateJson {
        match self {
            State::Error => StateJson::Error,
            State::Pair(store, subst) => StateJson::Pair {
                store: store.iter().map(|f| f.to_string()).collect(),
                subst: subst.iter().map(|(v, t)| (v.to_string(), t.to_string())).collect(),
            },
        }
    }

    pub fn from_json(json: &StateJson, alg: &Algebra) -> Result<State, ParseError> {
        match json {
            StateJson::Error => Ok(State::Error),
            StateJson::Pair { store, subst } => {
                let sig = alg.signature();
                let mut formulas = Vec::new();
                for text in store {
                    let mut p = Parser::new(text, sig)?.allow_fresh(true);
                    formulas.push(p.formula()?);
                    p.finish()?;
                }
                let mut bindings = Vec::new();
                for (var, text) in subst {
                    let mut p = Parser::new(text, sig)?.allow_fresh(true);
                    let term = p.term()?;
                    p.finish()?;
                    bindings.push((var.clone(), term));
                }
                Ok(State::Pair(Store::from_formulas(formulas), Subst::new(bindings, alg)))
            }
        }
    }
}

/// JSON shape of a state: `{"kind":"error"}` or
/// `{"kind":"pair","store":[...],"subst":{"x":"1"}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateJson {
    Error,
    Pair {
        store: Vec<String>,
        subst: std::collections::BTreeMap<String, String>,
    },
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            State::Error => write!(f, "error"),
            State::Pair(store, subst) => write!(f, "<{store} | {subst}>"),
        }
    }
}

/// A finite set of states in derivation order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnswerSet {
    states: Vec<State>,
}

impl AnswerSet {
    pub fn empty() -> AnswerSet {
        AnswerSet::default()
    }

    pub fn singleton(state: State) -> AnswerSet {
        AnswerSet { states: vec![state] }
    }

    pub fn error() -> AnswerSet {
        AnswerSet::singleton(State::Error)
    }

    pub fn insert(&mut self, state: State) -> bool {
        if self.states.contains(&state) {
            false
        } else {
            self.states.push(state);
            true
        }
    }

    pub fn extend(&mut self, other: AnswerSet) {
        for s in other.states {
            self.insert(s);
        }
    }

    pub fn contains(&self, state: &State) -> bool {
        self.states.contains(state)
    }

    pub fn contains_error(&self) -> bool {
        self.states.iter().any(State::is_error)
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, State> {
        self.states.iter()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Store, &Subst)> {
        self.states.iter().filter_map(State::as_pair)
    }

    /// Same states regardless of order.
    pub fn same_set(&self, other: &AnswerSet) -> bool {
        self.len() == other.len() && self.states.iter().all(|s| other.contains(s))
    }

    pub fn to_json(&self) -> Vec<StateJson> {
        self.states.iter().map(State::to_json).collect()
    }
}

impl FromIterator<State> for AnswerSet {
    fn from_iter<I: IntoIterator<Item = State>>(iter: I) -> AnswerSet {
        let mut set = AnswerSet::empty();
        for s in iter {
            set.insert(s);
        }
        set
    }
}

impl IntoIterator for AnswerSet {
    type Item = State;
    type IntoIter = std::vec::IntoIter<State>;

    fn into_iter(self) -> Self::IntoIter {
        self.states.into_iter()
    }
}

impl<'a> IntoIterator for &'a AnswerSet {
    type Item = &'a State;
    type IntoIter = std::slice::Iter<'a, State>;

    fn into_iter(self) -> Self::IntoIter {
        self.states.iter()
    }
}

impl fmt::Display for AnswerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.states.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// `DROP_u(θ)`.
pub fn drop_subst(u: &str, theta: &Subst) -> Subst {
    theta.without(u)
}

/// `drop_u σ`: eliminate the local variable `u` from a state.
///
/// When no store formula mentions `u` free, only the binding of `u` goes.
/// Otherwise the formulas mentioning `u` are replaced by
/// `∃u (u = uη ∧ y = yη ∧ ⋀C(u))`, where `y` are the variables whose values
/// mention `u`; their bindings move into the quantified formula. Empty
/// conjunct blocks are left out.
pub fn drop_state(u: &str, state: &State) -> State {
    let State::Pair(store, eta) = state else {
        return State::Error;
    };
    let (mentioning, rest): (Vec<&Formula>, Vec<&Formula>) = store.iter().partition(|f| f.has_free(u));
    if mentioning.is_empty() {
        return State::Pair(store.clone(), drop_subst(u, eta));
    }
    let dependents: Vec<&str> = eta
        .iter()
        .filter(|(v, t)| *v != u && t.occurs(u))
        .map(|(v, _)| v)
        .collect();
    let mut conjuncts = Vec::new();
    if let Some(value) = eta.get(u) {
        conjuncts.push(Formula::eq(Term::var(u), value.clone()));
    }
    for y in &dependents {
        let value = eta.get(y).expect("dependent is bound");
        conjuncts.push(Formula::eq(Term::var(*y), value.clone()));
    }
    conjuncts.extend(mentioning.into_iter().cloned());
    let body = Formula::conjoin(conjuncts).expect("at least one store formula mentions u");
    let mut new_store: Store = rest.into_iter().cloned().collect();
    new_store.insert(Formula::exists(u, body));
    let subst = drop_subst(u, eta).without_all(dependents.iter().copied());
    State::Pair(new_store, subst)
}

/// Outcome of the decidable inconsistency check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Consistency {
    Consistent,
    Inconsistent,
    ErrorKind,
}

/// Sound but incomplete J-inconsistency check.
///
/// A pair is inconsistent when its store holds `⊥` or a literal that is
/// ground under the substitution and false. Everything else counts as
/// consistent.
pub fn classify(state: &State, alg: &Algebra) -> Consistency {
    match state {
        State::Error => Consistency::ErrorKind,
        State::Pair(store, theta) => {
            let refuted = store
                .iter()
                .any(|f| f.is_literal() && alg.literal_truth(f, theta) == Truth::False);
            if refuted {
                Consistency::Inconsistent
            } else {
                Consistency::Consistent
            }
        }
    }
}

/// `Cons(Σ)`: the consistent states.
pub fn cons(states: &AnswerSet, alg: &Algebra) -> AnswerSet {
    states
        .iter()
        .filter(|s| classify(s, alg) == Consistency::Consistent)
        .cloned()
        .collect()
}

/// `Cons⁺(Σ)`: the states that are not inconsistent, `error` included.
pub fn cons_plus(states: &AnswerSet, alg: &Algebra) -> AnswerSet {
    states
        .iter()
        .filter(|s| classify(s, alg) != Consistency::Inconsistent)
        .cloned()
        .collect()
}
