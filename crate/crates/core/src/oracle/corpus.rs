//! Seeded random formulas and states, shaped to each policy's fragment.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Domain, Subst};
use crate::state::{State, Store};
use crate::syntax::{Formula, Signature, Term, LESS, LESS_EQ};

use super::check::{Case, Triple};

/// The signature used for generated Herbrand formulas.
pub const HERBRAND_SIG: &str = "f/1,g/2,a/0,b/0";

/// Which atoms and terms the generator produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// Integer comparisons over small linear terms.
    IntArith,
    /// Rational equations, mostly linear.
    RatLinear,
    /// Herbrand equations and disequations.
    Herbrand,
}

/// The algebra and profile each shipped policy is exercised with.
pub fn profile_for(policy: &str) -> (Algebra, Profile) {
    match policy {
        "unify" | "diseq" => (herbrand(), Profile::Herbrand),
        "linear" => (Algebra::rationals(), Profile::RatLinear),
        _ => (Algebra::integers(), Profile::IntArith),
    }
}

pub fn herbrand() -> Algebra {
    Algebra::herbrand(Signature::parse_functions(HERBRAND_SIG).expect("valid signature"))
}

/// Generation parameters.
#[derive(Clone, Debug)]
pub struct Shape {
    pub max_depth: usize,
    pub vars: Vec<String>,
    /// Allow a non-empty initial store.
    pub stores: bool,
    /// Allow initial bindings.
    pub bindings: bool,
}

impl Default for Shape {
    fn default() -> Shape {
        Shape {
            max_depth: 4,
            vars: ["x", "y", "z"].map(String::from).to_vec(),
            stores: true,
            bindings: true,
        }
    }
}

/// A deterministic generator of formulas and states.
pub struct Generator {
    rng: ChaCha8Rng,
    alg: Algebra,
    profile: Profile,
    shape: Shape,
}

impl Generator {
    pub fn new(seed: u64, alg: Algebra, profile: Profile, shape: Shape) -> Generator {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            alg,
            profile,
            shape,
        }
    }

    /// A generator whose profile follows the algebra.
    pub fn for_algebra(seed: u64, alg: Algebra, shape: Shape) -> Generator {
        let profile = match alg.domain() {
            Domain::Herbrand => Profile::Herbrand,
            Domain::Rationals => Profile::RatLinear,
            Domain::Integers => Profile::IntArith,
        };
        Generator::new(seed, alg, profile, shape)
    }

    /// A generator for the named policy with the default shape.
    pub fn for_policy(policy: &str, seed: u64) -> Generator {
        let (alg, profile) = profile_for(policy);
        let mut shape = Shape::default();
        // the store-free semantics rejects every non-empty store
        shape.stores = policy != "baseline";
        Generator::new(seed, alg, profile, shape)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn var(&mut self) -> Term {
        Term::var(self.shape.vars.choose(&mut self.rng).expect("at least one variable").as_str())
    }

    fn small_int(&mut self) -> Term {
        Term::int(self.rng.gen_range(-1..=2))
    }

    /// A ground domain element.
    pub fn value(&mut self) -> Term {
        match self.alg.domain() {
            Domain::Herbrand => self.herbrand_term(1, false),
            _ => self.small_int(),
        }
    }

    fn herbrand_term(&mut self, depth: usize, with_vars: bool) -> Term {
        let sig = self.alg.signature();
        let constants: Vec<String> = sig.constants().map(String::from).collect();
        let functions: Vec<(String, usize)> =
            sig.functions().filter(|(_, n)| *n > 0).map(|(f, n)| (f.to_string(), n)).collect();
        let leaf = depth == 0 || functions.is_empty() || self.rng.gen_bool(0.5);
        if leaf {
            if with_vars && (constants.is_empty() || self.rng.gen_bool(0.6)) {
                return self.var();
            }
            return Term::constant(constants.choose(&mut self.rng).expect("a constant").as_str());
        }
        let (f, n) = functions.choose(&mut self.rng).unwrap().clone();
        let args = (0..n).map(|_| self.herbrand_term(depth - 1, with_vars)).collect();
        Term::app(f, args)
    }

    fn arith_term(&mut self, depth: usize) -> Term {
        if depth == 0 || self.rng.gen_bool(0.5) {
            return if self.rng.gen_bool(0.65) { self.var() } else { self.small_int() };
        }
        match self.rng.gen_range(0..3) {
            0 => Term::add(self.arith_term(depth - 1), self.arith_term(depth - 1)),
            1 => Term::sub(self.arith_term(depth - 1), self.arith_term(depth - 1)),
            _ => {
                let k = Term::int(self.rng.gen_range(-1..=2));
                Term::mul(k, self.var())
            }
        }
    }

    fn rat_term(&mut self, depth: usize) -> Term {
        if depth > 0 && self.rng.gen_ratio(1, 10) {
            return Term::mul(self.var(), self.var());
        }
        self.arith_term(depth)
    }

    /// An atomic formula of the profile.
    pub fn atom(&mut self) -> Formula {
        match self.profile {
            Profile::IntArith => {
                let (s, t) = (self.arith_term(1), self.arith_term(1));
                match self.rng.gen_range(0..8) {
                    0..=3 => Formula::eq(s, t),
                    4 | 5 => Formula::atom(LESS, vec![s, t]),
                    6 => Formula::atom(LESS_EQ, vec![s, t]),
                    _ => Formula::neq(s, t),
                }
            }
            Profile::RatLinear => {
                let (s, t) = (self.rat_term(2), self.rat_term(1));
                if self.rng.gen_ratio(1, 8) {
                    Formula::atom(LESS, vec![s, t])
                } else {
                    Formula::eq(s, t)
                }
            }
            Profile::Herbrand => {
                let (s, t) = (self.herbrand_term(2, true), self.herbrand_term(2, true));
                match self.rng.gen_range(0..4) {
                    0 => Formula::neq(s, t),
                    _ => Formula::eq(s, t),
                }
            }
        }
    }

    /// A formula of at most the given depth.
    pub fn formula_of_depth(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return self.atom();
        }
        match self.rng.gen_range(0..10) {
            0..=3 => Formula::and(self.formula_of_depth(depth - 1), self.formula_of_depth(depth - 1)),
            4 | 5 => Formula::or(self.formula_of_depth(depth - 1), self.formula_of_depth(depth - 1)),
            6 | 7 => Formula::not(self.formula_of_depth(depth - 1)),
            _ => {
                let x = self.shape.vars.choose(&mut self.rng).unwrap().clone();
                Formula::exists(x, self.formula_of_depth(depth - 1))
            }
        }
    }

    pub fn formula(&mut self) -> Formula {
        let d = self.shape.max_depth;
        self.formula_of_depth(d)
    }

    /// A formula without `∨`.
    pub fn formula_without_disjunction(&mut self) -> Formula {
        loop {
            let f = self.formula();
            if !super::has_disjunction(&f) {
                return f;
            }
        }
    }

    /// An initial state: some ground bindings and possibly a small store in
    /// the policy's fragment.
    pub fn state(&mut self) -> State {
        let mut bindings = Vec::new();
        if self.shape.bindings {
            for v in self.shape.vars.clone() {
                if self.rng.gen_bool(0.25) {
                    let value = self.value();
                    bindings.push((v, value));
                }
            }
        }
        let theta = Subst::new(bindings, &self.alg);
        let mut store = Store::new();
        if self.shape.stores && self.rng.gen_bool(0.35) {
            for _ in 0..self.rng.gen_range(1..=2) {
                let a = self.atom();
                store.insert(a);
            }
        }
        State::Pair(store, theta)
    }

    pub fn case(&mut self) -> Case {
        Case {
            phi: self.formula(),
            state: self.state(),
        }
    }

    pub fn cases(&mut self, n: usize) -> Vec<Case> {
        (0..n).map(|_| self.case()).collect()
    }

    /// A triple; `φ₂` is disjunction-free when `plain` is set.
    pub fn triple(&mut self, plain: bool) -> Triple {
        let phi1 = self.formula_of_depth(2);
        let phi2 = if plain { self.formula_without_disjunction() } else { self.formula() };
        Triple {
            phi1,
            phi2,
            state: self.state(),
        }
    }
}
