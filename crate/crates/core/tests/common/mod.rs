// Independent checkers shared by the integration and acceptance targets.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use folc::algebra::Algebra;
use folc::infer::{apt00_eval, mgu, policy, InferPolicy, Outcome, POLICY_NAMES};
use folc::oracle::corpus::Generator;
use folc::oracle::{instantiate, Assignment, Oracle, SearchBound, Verdict};
use folc::state::{AnswerSet, State, Store};
use folc::syntax::{parse_formula, Formula, Signature, Term};
use folc::{EvalContext, Subst};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---- embedding ----

/// Compare `baseline` against the store-free reference on `n` inputs.
/// Returns the descriptions of all disagreements.
pub fn embedding_discrepancies(generator_for: &str, seed: u64, n: usize) -> Vec<String> {
    let mut gen = Generator::for_policy(generator_for, seed);
    let alg = gen.algebra().clone();
    let ctx = EvalContext::new(alg.clone(), policy("baseline").unwrap());
    let mut bad = Vec::new();
    for _ in 0..n {
        let phi = gen.formula();
        let State::Pair(_, theta) = gen.state() else { unreachable!() };
        let ours = ctx.eval(&phi, &State::from_subst(theta.clone()));
        let reference = apt00_eval(&phi, &theta, &alg);
        let mut ok = ours.contains_error() == reference.contains(&Outcome::Error);
        for s in &ours {
            if let State::Pair(c, eta) = s {
                ok &= c.is_empty() && reference.contains(&Outcome::Subst(eta.clone()));
            }
        }
        for o in &reference {
            if let Outcome::Subst(eta) = o {
                ok &= ours.contains(&State::from_subst(eta.clone()));
            }
        }
        if !ok {
            bad.push(format!("{phi} in {theta}: ours {ours:?} reference {reference:?}"));
        }
    }
    bad
}

// ---- unification ----

/// Ground terms of depth at most `depth` over the given symbols.
pub fn ground_terms(symbols: &[(&str, usize)], depth: usize) -> Vec<Term> {
    let mut levels: Vec<Term> = symbols.iter().filter(|(_, n)| *n == 0).map(|(c, _)| Term::constant(*c)).collect();
    for _ in 0..depth {
        let mut next: Vec<Term> = symbols.iter().filter(|(_, n)| *n == 0).map(|(c, _)| Term::constant(*c)).collect();
        for (f, n) in symbols.iter().filter(|(_, n)| *n > 0) {
            let mut tuples: Vec<Vec<Term>> = vec![vec![]];
            for _ in 0..*n {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        levels.iter().map(move |x| {
                            let mut t = t.clone();
                            t.push(x.clone());
                            t
                        })
                    })
                    .collect();
            }
            next.extend(tuples.into_iter().map(|args| Term::app(*f, args)));
        }
        levels = next;
    }
    levels
}

pub fn substitute(t: &Term, m: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Var(v) => m.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| substitute(a, m)).collect()),
        other => other.clone(),
    }
}

/// One-sided matching: extend `delta` so that `pattern·delta = ground`.
fn matches(pattern: &Term, ground: &Term, delta: &mut BTreeMap<String, Term>) -> bool {
    match (pattern, ground) {
        (Term::Var(v), g) => match delta.get(v) {
            Some(bound) => bound == g,
            None => {
                delta.insert(v.clone(), g.clone());
                true
            }
        },
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| matches(x, y, delta))
        }
        (p, g) => p == g,
    }
}

#[derive(Debug, Default)]
pub struct UnifyStats {
    pub pairs: usize,
    pub unifiable: usize,
    pub inconclusive: usize,
    pub failures: Vec<String>,
}

fn random_term(rng: &mut ChaCha8Rng, symbols: &[(&str, usize)], vars: &[&str], depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.4) {
        if rng.gen_bool(0.5) {
            return Term::var(*vars.choose(rng).unwrap());
        }
        let consts: Vec<&str> = symbols.iter().filter(|(_, n)| *n == 0).map(|(c, _)| *c).collect();
        return Term::constant(*consts.choose(rng).unwrap());
    }
    let funcs: Vec<(&str, usize)> = symbols.iter().filter(|(_, n)| *n > 0).copied().collect();
    let (f, n) = *funcs.choose(rng).unwrap();
    Term::app(f, (0..n).map(|_| random_term(rng, symbols, vars, depth - 1)).collect())
}

/// mgu against exhaustive search over ground substitutions of depth <= 3.
pub fn unification_suite(seed: u64, n: usize) -> UnifyStats {
    let families: [(&[(&str, usize)], &[&str]); 2] = [
        (&[("f", 1), ("g", 2), ("a", 0)], &["x", "y"]),
        (&[("f", 1), ("a", 0), ("b", 0)], &["x", "y", "z"]),
    ];
    let mut rng = rng(seed);
    let mut stats = UnifyStats::default();
    for i in 0..n {
        let (symbols, vars) = families[i % 2];
        let universe = ground_terms(symbols, 3);
        let s = random_term(&mut rng, symbols, vars, 3);
        let t = random_term(&mut rng, symbols, vars, 3);
        stats.pairs += 1;
        let mut names: Vec<String> = s.vars().union(&t.vars()).cloned().collect();
        names.sort();
        let ground_unifiers = brute_force(&s, &t, &names, &universe);
        match mgu(&s, &t) {
            Err(_) => {
                if let Some(g) = ground_unifiers.first() {
                    stats.failures.push(format!("{s} = {t}: mgu fails, yet {g:?} unifies"));
                }
            }
            Ok(m) => {
                stats.unifiable += 1;
                if substitute(&s, &m) != substitute(&t, &m) {
                    stats.failures.push(format!("{s} = {t}: {m:?} does not unify"));
                    continue;
                }
                let twice: BTreeMap<String, Term> = m.iter().map(|(v, u)| (v.clone(), substitute(u, &m))).collect();
                if twice != m {
                    stats.failures.push(format!("{s} = {t}: {m:?} is not idempotent"));
                }
                if ground_unifiers.is_empty() {
                    // every grounding of the mgu is too deep for the search
                    stats.inconclusive += 1;
                    continue;
                }
                for g in &ground_unifiers {
                    let mut delta = BTreeMap::new();
                    let general = names.iter().all(|v| {
                        let image = m.get(v).cloned().unwrap_or_else(|| Term::var(v.as_str()));
                        matches(&image, &g[v], &mut delta)
                    });
                    if !general {
                        stats.failures.push(format!("{s} = {t}: unifier {g:?} is not an instance of {m:?}"));
                        break;
                    }
                }
            }
        }
    }
    stats
}

fn brute_force(s: &Term, t: &Term, names: &[String], universe: &[Term]) -> Vec<BTreeMap<String, Term>> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; names.len()];
    loop {
        let g: BTreeMap<String, Term> = names.iter().cloned().zip(idx.iter().map(|&i| universe[i].clone())).collect();
        if substitute(s, &g) == substitute(t, &g) {
            out.push(g);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < universe.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

// ---- linear systems ----

#[derive(Debug, Default)]
pub struct GaussStats {
    pub systems: usize,
    pub samples: usize,
    pub failures: Vec<String>,
}

fn linear_side(coeffs: &[(i64, &str)]) -> Term {
    let mut terms = coeffs.iter().filter(|(c, _)| *c != 0).map(|(c, v)| Term::mul(Term::int(*c), Term::var(*v)));
    let first = terms.next().unwrap_or_else(|| Term::int(0));
    terms.fold(first, Term::add)
}

/// Random systems of at most three equations in at most three variables,
/// most with a planted integer solution. The answer of `linear` must have the
/// same solutions as the system on a sample grid and at the planted point.
pub fn gaussian_suite(seed: u64, n: usize) -> GaussStats {
    let alg = Algebra::rationals();
    let oracle = Oracle::new(alg.clone(), SearchBound::Rat { lo: -3, hi: 3, den: 2 });
    let ctx = EvalContext::new(alg.clone(), policy("linear").unwrap());
    let mut rng = rng(seed);
    let mut stats = GaussStats::default();
    let all_vars = ["x", "y", "z"];
    let grid: Vec<Term> = (-6..=6).map(|k| Term::ratio(k, 2)).map(|t| alg.j_eval(&t)).collect();
    for _ in 0..n {
        stats.systems += 1;
        let k = rng.gen_range(1..=3);
        let vars: Vec<&str> = all_vars[..k].to_vec();
        let hidden: Vec<i64> = vars.iter().map(|_| rng.gen_range(-2..=2)).collect();
        let planted = rng.gen_bool(0.8);
        let mut eqs = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let coeffs: Vec<(i64, &str)> = vars.iter().map(|v| (rng.gen_range(-3..=3), *v)).collect();
            let mut rhs: i64 = coeffs.iter().zip(&hidden).map(|((c, _), h)| c * h).sum();
            if !planted {
                rhs += rng.gen_range(-2..=2);
            }
            eqs.push(Formula::eq(linear_side(&coeffs), Term::int(rhs)));
        }
        let system = Formula::conjoin(eqs.clone()).unwrap();
        let out = ctx.eval(&system, &State::initial());
        if out.contains_error() {
            stats.failures.push(format!("{system}: error"));
            continue;
        }
        let holds = |f: &Formula, rho: &Assignment| oracle.holds_at(f, rho) == Verdict::True;
        let system_holds = |rho: &Assignment| eqs.iter().all(|e| holds(e, rho));
        let answer_holds = |rho: &Assignment| {
            out.pairs().any(|(c, theta)| {
                c.iter().all(|f| holds(&theta.apply_formula(f), rho))
                    && theta.iter().all(|(v, t)| {
                        let value = alg.eval_ground(&instantiate(t, rho));
                        rho.get(v).map_or(true, |x| *x == value)
                    })
            })
        };
        let mut points: Vec<Assignment> = Vec::new();
        let mut idx = vec![0usize; vars.len()];
        'grid: loop {
            points.push(vars.iter().map(|v| v.to_string()).zip(idx.iter().map(|&i| grid[i].clone())).collect());
            for slot in idx.iter_mut() {
                *slot += 1;
                if *slot < grid.len() {
                    continue 'grid;
                }
                *slot = 0;
            }
            break;
        }
        points.push(vars.iter().map(|v| v.to_string()).zip(hidden.iter().map(|h| Term::int(*h))).collect());
        for rho in &points {
            stats.samples += 1;
            if system_holds(rho) != answer_holds(rho) {
                stats.failures.push(format!("{system}: answer {out} disagrees at {rho:?}"));
                break;
            }
        }
        // every instance of a computed answer solves the system
        for (c, theta) in out.pairs() {
            if !c.is_empty() {
                continue;
            }
            for _ in 0..5 {
                let free: Assignment = vars
                    .iter()
                    .filter(|v| !theta.contains(v))
                    .map(|v| (v.to_string(), grid.choose(&mut rng).unwrap().clone()))
                    .collect();
                let mut rho = free.clone();
                for v in &vars {
                    if let Some(t) = theta.get(v) {
                        rho.insert(v.to_string(), alg.eval_ground(&instantiate(t, &free)));
                    }
                }
                if !system_holds(&rho) {
                    stats.failures.push(format!("{system}: instance {rho:?} of {theta} is not a solution"));
                }
            }
        }
    }
    stats
}

// ---- healthiness ----

pub fn algebras() -> Vec<Algebra> {
    vec![
        Algebra::integers(),
        Algebra::rationals(),
        Algebra::herbrand(Signature::parse_functions("f/1,g/2,a/0,b/0").unwrap()),
    ]
}

/// Error in, error out; an empty store is left alone.
pub fn error_and_identity_failures() -> Vec<String> {
    let mut bad = Vec::new();
    for p in POLICY_NAMES {
        let p = policy(p).unwrap();
        for alg in algebras() {
            if p.infer(&State::Error, &alg) != AnswerSet::error() {
                bad.push(format!("{} / {}: error not preserved", p.name(), alg.name()));
            }
            let sample = if alg.is_herbrand() { ["f(y)", "g(a, z)", "b"] } else { ["y + 1", "2", "y * z"] };
            let thetas = [
                Subst::empty(),
                Subst::singleton("x", Term::var("y"), &alg),
                Subst::new(
                    sample.iter().zip(["x", "w", "v"]).map(|(t, v)| (v, folc::syntax::parse_term(t, alg.signature()).unwrap())),
                    &alg,
                ),
            ];
            for theta in thetas {
                let s = State::from_subst(theta);
                if p.infer(&s, &alg) != AnswerSet::singleton(s.clone()) {
                    bad.push(format!("{} / {}: {s} changed", p.name(), alg.name()));
                }
            }
        }
    }
    bad
}

/// Stores infer may discard; each discard must be refuted at every bound.
/// No model at any of a range of windows counts as refuted.
pub fn constructed_stores(alg: &Algebra) -> Vec<State> {
    let texts: &[&str] = if alg.is_herbrand() {
        &[
            "<false | {}>",
            "<a = b | {}>",
            "<x = f(x) | {}>",
            "<x = a ; x = b | {}>",
            "<f(x) = g(y, z) | {}>",
            "<x /= x | {}>",
            "<x /= y | {x/a, y/a}>",
            "<g(x, y) = g(y, f(x)) | {}>",
            "<x = y ; x /= y | {}>",
            "<x = a | {x/b}>",
        ]
    } else {
        &[
            "<false | {}>",
            "<1 = 2 | {}>",
            "<x = 1 ; x = 2 | {}>",
            "<x < x | {}>",
            "<x + y = 3 ; x + y = 4 | {}>",
            "<~(x = 1) | {x/1}>",
            "<y < z | {y/2, z/1}>",
            "<x <= y ; y < x | {x/1}>",
            "<x = 1 | {x/2}>",
            "<2 * x = 1 | {}>",
        ]
    };
    texts.iter().map(|t| State::parse(t, alg).unwrap()).collect()
}

pub fn refuted_at_all_bounds(alg: &Algebra, store: &Store, theta: &Subst) -> bool {
    let widths = [1, 2, 3, 6, 12];
    let bounds = if alg.is_herbrand() {
        (1..=3).map(|d| SearchBound::Herbrand { depth: d }).collect::<Vec<_>>()
    } else if alg.name() == "rat" {
        widths.iter().map(|&k| SearchBound::Rat { lo: -k, hi: k, den: 2 }).collect()
    } else {
        widths.iter().map(|&k| SearchBound::Int { lo: -k, hi: k }).collect()
    };
    bounds
        .into_iter()
        .all(|b| Oracle::new(alg.clone(), b).satisfiable(store, theta) != Verdict::True)
}

pub fn discard_failures(p: &dyn InferPolicy, alg: &Algebra, states: &[State]) -> Vec<String> {
    let mut bad = Vec::new();
    for s in states {
        let State::Pair(c, theta) = s else { continue };
        if p.infer(s, alg).is_empty() && !refuted_at_all_bounds(alg, c, theta) {
            bad.push(format!("{} discards satisfiable {s}", p.name()));
        }
    }
    bad
}

#[derive(Debug, Default)]
pub struct EquivStats {
    pub cases: usize,
    pub compared: usize,
    pub unknown: usize,
    pub failures: Vec<String>,
}

/// Random stores in the policy's fragment: each computed state must admit
/// the same assignments as the input; each discard must be refuted.
pub fn equivalence_suite(name: &str, seed: u64, n: usize) -> EquivStats {
    let mut gen = Generator::for_policy(name, seed);
    let alg = gen.algebra().clone();
    let p = policy(name).unwrap();
    let oracle = Oracle::with_default_bound(alg.clone());
    let mut stats = EquivStats::default();
    let mut produced = 0;
    while produced < n {
        let State::Pair(_, theta) = gen.state() else { unreachable!() };
        let count = if name == "baseline" { 1 } else { gen.rng().gen_range(1..=3) };
        let store = Store::from_formulas((0..count).map(|_| gen.atom()));
        let input = State::pair(store.clone(), theta.clone());
        produced += 1;
        stats.cases += 1;
        let out = p.infer(&input, &alg);
        if out.is_empty() && !refuted_at_all_bounds(&alg, &store, &theta) {
            stats.failures.push(format!("{name}: discarded satisfiable {input}"));
        }
        let mut unknown = false;
        for s in out.iter().filter(|s| !s.is_error()) {
            match oracle.equivalent(&input, s) {
                Verdict::False => stats.failures.push(format!("{name}: {input} became {s}")),
                Verdict::Unknown => unknown = true,
                Verdict::True => {}
            }
        }
        if unknown {
            stats.unknown += 1;
        } else {
            stats.compared += 1;
        }
    }
    stats
}

/// Formulas of the integer fragment used by tests that only need syntax.
pub fn int_formula(text: &str) -> Formula {
    parse_formula(text, Algebra::integers().signature()).unwrap()
}
