//! Bounded brute-force satisfaction checking.
//!
//! Free variables range over a finite window of the carrier. Quantified
//! variables are decided exactly where possible: for a fixed assignment of
//! the outer variables, each atom mentioning the quantified variable is
//! piecewise constant in it, so a finite candidate set covers every case.
//! Where that analysis does not apply the search falls back to a window and
//! can only confirm a witness; failure to find one gives `Unknown`.
//!
//! Consequently `False` from [`Oracle::models`] always comes with a genuine
//! counterexample inside the window, and `True` from
//! [`Oracle::satisfiable`] with a genuine model.

mod check;
pub mod corpus;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Domain, Subst};
use crate::infer::{mgu, LinearForm};
use crate::state::{State, Store};
use crate::syntax::{Formula, Term};

pub use check::{check_persistence, check_soundness, has_disjunction, Case, Report, Triple, Violation};

/// Three-valued verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl Verdict {
    fn not(self) -> Verdict {
        match self {
            Verdict::True => Verdict::False,
            Verdict::False => Verdict::True,
            Verdict::Unknown => Verdict::Unknown,
        }
    }

    fn and(self, other: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::False => Verdict::False,
            Verdict::True => other(),
            Verdict::Unknown => match other() {
                Verdict::False => Verdict::False,
                _ => Verdict::Unknown,
            },
        }
    }

    fn or(self, other: impl FnOnce() -> Verdict) -> Verdict {
        self.not().and(|| other().not()).not()
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Range of the enumeration for free variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchBound {
    /// Integers in `[lo, hi]`, widened by the largest constant in play.
    Int { lo: i64, hi: i64 },
    /// Fractions `p/q` with `q ≤ den` in `[lo, hi]`, widened likewise.
    Rat { lo: i64, hi: i64, den: i64 },
    /// Ground terms up to the given depth.
    Herbrand { depth: usize },
}

impl SearchBound {
    /// The default bound for an algebra.
    pub fn default_for(alg: &Algebra) -> SearchBound {
        match alg.domain() {
            Domain::Integers => SearchBound::Int { lo: -2, hi: 2 },
            Domain::Rationals => SearchBound::Rat { lo: -2, hi: 2, den: 2 },
            Domain::Herbrand => SearchBound::Herbrand { depth: 1 },
        }
    }
}

/// Assignments beyond this many are not enumerated.
const MAX_ASSIGNMENTS: usize = 400_000;
const MAX_UNIVERSE: usize = 50_000;
/// Formula nodes visited per query before giving up.
const MAX_WORK: usize = 100_000;

/// Values for free variables.
pub type Assignment = BTreeMap<String, Term>;

/// A bounded model checker for one algebra.
#[derive(Clone, Debug)]
pub struct Oracle {
    alg: Algebra,
    bound: SearchBound,
}

impl Oracle {
    pub fn new(alg: Algebra, bound: SearchBound) -> Oracle {
        Oracle { alg, bound }
    }

    pub fn with_default_bound(alg: Algebra) -> Oracle {
        let bound = SearchBound::default_for(&alg);
        Oracle::new(alg, bound)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn bound(&self) -> &SearchBound {
        &self.bound
    }

    /// `⟨C;θ⟩ ⊨ φ`: every assignment satisfying `Cθ` satisfies `φθ`.
    pub fn models(&self, store: &Store, theta: &Subst, phi: &Formula) -> Verdict {
        let premises: Vec<Formula> = store.iter().map(|f| theta.apply_formula(f)).collect();
        let goal = theta.apply_formula(phi);
        let mut all = premises.clone();
        all.push(goal.clone());
        let ctx = Window::for_formulas(self, &all);
        let vars = free_vars_of(&all);
        let mut unknown = false;
        let done = ctx.for_each_assignment(&vars, &mut |rho| {
            let c = ctx.conj(&premises, rho);
            if c == Verdict::False {
                return true;
            }
            match (c, ctx.eval(&goal, rho, 0)) {
                (Verdict::True, Verdict::False) => return false,
                (_, Verdict::True) => {}
                _ => unknown = true,
            }
            true
        });
        match done {
            None => Verdict::Unknown,
            Some(false) => Verdict::False,
            Some(true) if unknown => Verdict::Unknown,
            Some(true) => Verdict::True,
        }
    }

    /// An assignment satisfying `Cθ` but not `φθ`. `Err` when undecided.
    pub fn counterexample(&self, store: &Store, theta: &Subst, phi: &Formula) -> Result<Option<Assignment>, Verdict> {
        let premises: Vec<Formula> = store.iter().map(|f| theta.apply_formula(f)).collect();
        let goal = theta.apply_formula(phi);
        let mut all = premises.clone();
        all.push(goal.clone());
        let ctx = Window::for_formulas(self, &all);
        let vars = free_vars_of(&all);
        let mut unknown = false;
        let mut found = None;
        let done = ctx.for_each_assignment(&vars, &mut |rho| {
            let c = ctx.conj(&premises, rho);
            if c == Verdict::False {
                return true;
            }
            match (c, ctx.eval(&goal, rho, 0)) {
                (Verdict::True, Verdict::False) => {
                    found = Some(rho.clone());
                    return false;
                }
                (_, Verdict::True) => {}
                _ => unknown = true,
            }
            true
        });
        match done {
            None => Err(Verdict::Unknown),
            Some(false) => Ok(found),
            Some(true) if unknown => Err(Verdict::Unknown),
            Some(true) => Ok(None),
        }
    }

    /// Truth of `φ` at a total assignment of its free variables.
    pub fn holds_at(&self, phi: &Formula, rho: &Assignment) -> Verdict {
        Window::for_formulas(self, std::slice::from_ref(phi)).eval(phi, rho, 0)
    }

    /// A default carrier element, used for variables nothing constrains.
    pub fn default_value(&self) -> Term {
        match self.alg.domain() {
            Domain::Herbrand => self
                .alg
                .signature()
                .constants()
                .next()
                .map(Term::constant)
                .expect("a Herbrand signature with a constant"),
            _ => Term::int(0),
        }
    }

    /// [`Oracle::models`] on a state; `error` satisfies nothing decidable.
    pub fn state_models(&self, state: &State, phi: &Formula) -> Verdict {
        match state {
            State::Pair(c, t) => self.models(c, t, phi),
            State::Error => Verdict::Unknown,
        }
    }

    /// Some assignment satisfies `Cθ` together with every `extra` formula
    /// instantiated by `θ`.
    pub fn satisfiable_with(&self, store: &Store, theta: &Subst, extra: &[Formula]) -> Verdict {
        let formulas: Vec<Formula> = store.iter().chain(extra).map(|f| theta.apply_formula(f)).collect();
        let ctx = Window::for_formulas(self, &formulas);
        let vars = free_vars_of(&formulas);
        let mut unknown = false;
        let done = ctx.for_each_assignment(&vars, &mut |rho| match ctx.conj(&formulas, rho) {
            Verdict::True => false,
            Verdict::Unknown => {
                unknown = true;
                true
            }
            Verdict::False => true,
        });
        match done {
            None => Verdict::Unknown,
            Some(false) => Verdict::True,
            Some(true) if unknown => Verdict::Unknown,
            Some(true) => Verdict::False,
        }
    }

    /// Some assignment satisfies `Cθ`.
    pub fn satisfiable(&self, store: &Store, theta: &Subst) -> Verdict {
        self.satisfiable_with(store, theta, &[])
    }

    /// Whether two states admit the same assignments to the variables they
    /// mention, reading `⟨C;θ⟩` as `Cθ ∧ ⋀ x = xθ`. `False` comes with a
    /// witness assignment on which they differ.
    pub fn equivalent(&self, a: &State, b: &State) -> Verdict {
        let (State::Pair(ca, ta), State::Pair(cb, tb)) = (a, b) else {
            return (a == b).into();
        };
        let fa = as_formulas(ca, ta);
        let fb = as_formulas(cb, tb);
        let mut all = fa.clone();
        all.extend(fb.iter().cloned());
        let ctx = Window::for_formulas(self, &all);
        let vars = free_vars_of(&all);
        let mut unknown = false;
        let done = ctx.for_each_assignment(&vars, &mut |rho| {
            match (ctx.conj(&fa, rho), ctx.conj(&fb, rho)) {
                (Verdict::True, Verdict::False) | (Verdict::False, Verdict::True) => return false,
                (Verdict::Unknown, _) | (_, Verdict::Unknown) => unknown = true,
                _ => {}
            }
            true
        });
        match done {
            None => Verdict::Unknown,
            Some(false) => Verdict::False,
            Some(true) if unknown => Verdict::Unknown,
            Some(true) => Verdict::True,
        }
    }

    /// Truth of a closed formula.
    pub fn truth(&self, phi: &Formula) -> Verdict {
        let ctx = Window::for_formulas(self, std::slice::from_ref(phi));
        let vars = free_vars_of(std::slice::from_ref(phi));
        if !vars.is_empty() {
            return self.models(&Store::new(), &Subst::empty(), phi);
        }
        ctx.eval(phi, &Assignment::new(), 0)
    }

    /// The candidate values for free variables of the given formulas.
    pub fn window(&self, formulas: &[Formula]) -> Vec<Term> {
        Window::for_formulas(self, formulas).level(0).to_vec()
    }
}

/// `Cθ` plus the equations `x = xθ`.
fn as_formulas(store: &Store, theta: &Subst) -> Vec<Formula> {
    let mut out: Vec<Formula> = store.iter().map(|f| theta.apply_formula(f)).collect();
    for (x, t) in theta.iter() {
        out.push(Formula::eq(Term::var(x), t.clone()));
    }
    out
}

fn free_vars_of(formulas: &[Formula]) -> Vec<String> {
    let set: BTreeSet<String> = formulas.iter().flat_map(Formula::free_vars).collect();
    set.into_iter().collect()
}

/// The enumeration context for one query: the oracle plus the slack derived
/// from the constants of the formulas involved.
struct Window<'o> {
    oracle: &'o Oracle,
    slack: i64,
    herbrand_universe: Vec<Vec<Term>>,
    work: std::cell::Cell<usize>,
    levels: std::cell::RefCell<Vec<Option<Rc<Vec<Term>>>>>,
}

impl<'o> Window<'o> {
    fn for_formulas(oracle: &'o Oracle, formulas: &[Formula]) -> Window<'o> {
        let mut max = BigRational::one();
        for f in formulas {
            f.for_each_term(&mut |t| {
                let m = t.max_abs_numeral();
                if m > max {
                    max = m;
                }
            });
        }
        let slack = max.ceil().to_integer().to_i64().unwrap_or(i64::MAX / 4).min(1_000);
        let herbrand_universe = match (&oracle.bound, oracle.alg.domain()) {
            (SearchBound::Herbrand { depth }, Domain::Herbrand) => herbrand_levels(&oracle.alg, depth + 1),
            _ => Vec::new(),
        };
        Window {
            oracle,
            slack,
            herbrand_universe,
            work: std::cell::Cell::new(0),
            levels: Default::default(),
        }
    }

    fn alg(&self) -> &Algebra {
        &self.oracle.alg
    }

    /// Candidate values at quantifier nesting `level` (0 for free variables).
    fn level(&self, level: usize) -> Rc<Vec<Term>> {
        let mut cache = self.levels.borrow_mut();
        if cache.len() <= level {
            cache.resize(level + 1, None);
        }
        cache[level].get_or_insert_with(|| Rc::new(self.compute_level(level))).clone()
    }

    fn compute_level(&self, level: usize) -> Vec<Term> {
        let s = self.slack;
        let widen = level as i64 * (2 * s + 1);
        match self.oracle.bound {
            SearchBound::Int { lo, hi } => (lo - s - widen..=hi + s + widen).map(Term::int).collect(),
            SearchBound::Rat { lo, hi, den } => {
                let (lo, hi) = (lo - s - widen, hi + s + widen);
                let mut values = BTreeSet::new();
                for q in 1..=den.max(1) {
                    for p in lo * q..=hi * q {
                        values.insert(BigRational::new(BigInt::from(p), BigInt::from(q)));
                    }
                }
                values.into_iter().map(Term::Num).collect()
            }
            SearchBound::Herbrand { depth } => {
                let d = depth.min(self.herbrand_universe.len().saturating_sub(1));
                self.herbrand_universe.iter().take(d + 1).flatten().cloned().collect()
            }
        }
    }

    /// Run `visit` on every assignment; stops early when it returns false.
    /// `None` when the search space is too large.
    fn for_each_assignment(&self, vars: &[String], visit: &mut dyn FnMut(&Assignment) -> bool) -> Option<bool> {
        let values = self.level(0);
        let total = (values.len() as f64).powi(vars.len() as i32);
        if total > MAX_ASSIGNMENTS as f64 {
            return None;
        }
        let mut rho = Assignment::new();
        Some(assign(vars, &values, &mut rho, visit))
    }

    fn conj(&self, formulas: &[Formula], rho: &Assignment) -> Verdict {
        let mut acc = Verdict::True;
        for f in formulas {
            acc = acc.and(|| self.eval(f, rho, 0));
            if acc == Verdict::False {
                break;
            }
        }
        acc
    }

    fn eval(&self, phi: &Formula, rho: &Assignment, level: usize) -> Verdict {
        let spent = self.work.get() + 1;
        self.work.set(spent);
        if spent > MAX_WORK {
            return Verdict::Unknown;
        }
        match phi {
            Formula::Bottom => Verdict::False,
            Formula::Atom(..) | Formula::Eq(..) | Formula::Neq(..) => self.atom(phi, rho),
            Formula::Not(g) => self.eval(g, rho, level).not(),
            Formula::And(a, b) => self.eval(a, rho, level).and(|| self.eval(b, rho, level)),
            Formula::Or(a, b) => self.eval(a, rho, level).or(|| self.eval(b, rho, level)),
            Formula::Exists(y, body) => {
                let mut inner = rho.clone();
                inner.remove(y);
                let (candidates, exact) = match self.critical_candidates(y, body, &inner) {
                    Some(c) => (Rc::new(c), true),
                    None => (self.level(level + 1), false),
                };
                let mut unknown = false;
                for value in candidates.iter() {
                    inner.insert(y.clone(), value.clone());
                    match self.eval(body, &inner, level + 1) {
                        Verdict::True => return Verdict::True,
                        Verdict::Unknown => unknown = true,
                        Verdict::False => {}
                    }
                }
                if exact && !unknown {
                    Verdict::False
                } else {
                    Verdict::Unknown
                }
            }
        }
    }

    fn atom(&self, atom: &Formula, rho: &Assignment) -> Verdict {
        let alg = self.alg();
        let (rel, args): (&str, Vec<&Term>) = match atom {
            Formula::Atom(r, args) => (r, args.iter().collect()),
            Formula::Eq(s, t) => ("=", vec![s, t]),
            Formula::Neq(s, t) => ("/=", vec![s, t]),
            _ => unreachable!("not an atom"),
        };
        let mut values = Vec::with_capacity(args.len());
        for a in args {
            let t = instantiate(a, rho);
            if !t.is_ground() {
                return Verdict::Unknown;
            }
            values.push(alg.eval_ground(&t));
        }
        if values.iter().any(|v| !alg.is_element(v)) {
            return Verdict::Unknown;
        }
        alg.rel_truth(rel, &values).into()
    }

    /// A finite set of values for `y` that meets every region on which the
    /// body's truth is constant, or `None` when no such set is known.
    fn critical_candidates(&self, y: &str, body: &Formula, rho: &Assignment) -> Option<Vec<Term>> {
        let mut atoms = Vec::new();
        if !collect_atoms(body, y, rho, &mut Vec::new(), &mut atoms) {
            return None;
        }
        match self.alg().domain() {
            Domain::Herbrand => {
                let mut points = Vec::new();
                for (s, t) in &atoms {
                    if let Ok(m) = mgu(s, t) {
                        if let Some(g) = m.get(y) {
                            if g.is_ground() && !points.contains(g) {
                                points.push(g.clone());
                            }
                        }
                    }
                }
                if self.herbrand_universe_is_finite() {
                    return Some(self.herbrand_universe.iter().flatten().cloned().collect());
                }
                let generic = match self.herbrand_universe.iter().flatten().find(|t| !points.contains(t)) {
                    Some(t) => t.clone(),
                    None => self.deeper_than(&points)?,
                };
                points.push(generic);
                Some(points)
            }
            Domain::Integers | Domain::Rationals => {
                let mut crit = BTreeSet::new();
                for (s, t) in &atoms {
                    let l = LinearForm::of_term(s)?;
                    let r = LinearForm::of_term(t)?;
                    let (a, b) = single_var_form(&l, &r, y)?;
                    if !a.is_zero() {
                        crit.insert(-b / a);
                    }
                }
                Some(self.arith_candidates(&crit))
            }
        }
    }

    fn arith_candidates(&self, crit: &BTreeSet<BigRational>) -> Vec<Term> {
        let one = BigRational::one();
        let mut out: BTreeSet<BigRational> = BTreeSet::new();
        if crit.is_empty() {
            out.insert(BigRational::zero());
        }
        let integers = self.alg().domain() == Domain::Integers;
        for c in crit {
            if integers {
                out.insert(c.ceil() - &one);
                out.insert(c.floor());
                out.insert(c.floor() + &one);
            } else {
                out.insert(c.clone());
                out.insert(c - &one);
                out.insert(c + &one);
            }
        }
        if !integers {
            let sorted: Vec<&BigRational> = crit.iter().collect();
            for w in sorted.windows(2) {
                out.insert((w[0] + w[1]) / BigRational::from_integer(2.into()));
            }
        }
        out.into_iter().map(Term::Num).collect()
    }

    /// A ground term deeper than every term in `points`.
    fn deeper_than(&self, points: &[Term]) -> Option<Term> {
        let deepest = points.iter().max_by_key(|t| t.depth())?.clone();
        let (f, arity) = self.alg().signature().functions().find(|(_, a)| *a > 0)?;
        Some(Term::app(f, vec![deepest; arity]))
    }

    fn herbrand_universe_is_finite(&self) -> bool {
        !self.alg().signature().functions().any(|(_, a)| a > 0)
    }
}

fn assign(vars: &[String], values: &[Term], rho: &mut Assignment, visit: &mut dyn FnMut(&Assignment) -> bool) -> bool {
    let Some((first, rest)) = vars.split_first() else {
        return visit(rho);
    };
    for v in values {
        rho.insert(first.clone(), v.clone());
        if !assign(rest, values, rho, visit) {
            return false;
        }
    }
    rho.remove(first);
    true
}

/// [`instantiate`] leaving the variables in `shadowed` alone.
fn instantiate_visible(t: &Term, rho: &Assignment, shadowed: &[String]) -> Term {
    match t {
        Term::Var(v) if shadowed.contains(v) => t.clone(),
        Term::Var(v) => rho.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::Num(_) => t.clone(),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| instantiate_visible(a, rho, shadowed)).collect()),
    }
}

/// `t` with assigned variables replaced, not evaluated.
pub fn instantiate(t: &Term, rho: &Assignment) -> Term {
    match t {
        Term::Var(v) => rho.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::Num(_) => t.clone(),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| instantiate(a, rho)).collect()),
    }
}

/// Collect the instantiated argument pairs of the atoms in which `y` occurs
/// free. Returns false when such an atom also mentions another unassigned
/// variable.
fn collect_atoms(
    f: &Formula,
    y: &str,
    rho: &Assignment,
    bound: &mut Vec<String>,
    out: &mut Vec<(Term, Term)>,
) -> bool {
    match f {
        Formula::Bottom => true,
        Formula::Atom(..) | Formula::Eq(..) | Formula::Neq(..) => {
            let args: Vec<&Term> = match f {
                Formula::Atom(_, args) => args.iter().collect(),
                Formula::Eq(s, t) | Formula::Neq(s, t) => vec![s, t],
                _ => unreachable!(),
            };
            let inst: Vec<Term> = args.iter().map(|t| instantiate_visible(t, rho, bound)).collect();
            let mut vars = BTreeSet::new();
            for t in &inst {
                t.collect_vars(&mut vars);
            }
            if !vars.contains(y) {
                return true;
            }
            if vars.len() > 1 || inst.len() != 2 {
                return false;
            }
            out.push((inst[0].clone(), inst[1].clone()));
            true
        }
        Formula::Not(g) => collect_atoms(g, y, rho, bound, out),
        Formula::And(a, b) | Formula::Or(a, b) => {
            collect_atoms(a, y, rho, bound, out) && collect_atoms(b, y, rho, bound, out)
        }
        Formula::Exists(z, body) => {
            if z == y {
                return true;
            }
            bound.push(z.clone());
            let ok = collect_atoms(body, y, rho, bound, out);
            bound.pop();
            ok
        }
    }
}

/// `l - r` as `a·y + b` when `y` is its only variable.
fn single_var_form(l: &LinearForm, r: &LinearForm, y: &str) -> Option<(BigRational, BigRational)> {
    let mut a = BigRational::zero();
    for (v, c) in &l.coeffs {
        if v != y {
            return None;
        }
        a += c;
    }
    for (v, c) in &r.coeffs {
        if v != y {
            return None;
        }
        a -= c;
    }
    Some((a, &l.constant - &r.constant))
}

/// Ground terms grouped by exact depth, up to `max_depth`.
fn herbrand_levels(alg: &Algebra, max_depth: usize) -> Vec<Vec<Term>> {
    let sig = alg.signature();
    let mut levels: Vec<Vec<Term>> = vec![sig.constants().map(Term::constant).collect()];
    let functions: Vec<(String, usize)> = sig
        .functions()
        .filter(|(_, a)| *a > 0)
        .map(|(n, a)| (n.to_string(), a))
        .collect();
    for d in 1..=max_depth {
        let below: Vec<Term> = levels.iter().flatten().cloned().collect();
        let estimate: f64 = functions.iter().map(|(_, a)| (below.len() as f64).powi(*a as i32)).sum();
        if below.len() as f64 + estimate > MAX_UNIVERSE as f64 {
            // deeper levels are left out; the window is smaller than asked
            break;
        }
        let mut next = Vec::new();
        for (f, arity) in &functions {
            let mut args = vec![0usize; *arity];
            loop {
                let chosen: Vec<Term> = args.iter().map(|&i| below[i].clone()).collect();
                if chosen.iter().any(|t| t.depth() == d - 1) {
                    next.push(Term::app(f.clone(), chosen));
                }
                // odometer over `below^arity`
                let mut k = 0;
                while k < args.len() {
                    args[k] += 1;
                    if args[k] < below.len() {
                        break;
                    }
                    args[k] = 0;
                    k += 1;
                }
                if k == args.len() || below.is_empty() {
                    break;
                }
            }
            if next.len() > 20_000 {
                break;
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    levels
}
