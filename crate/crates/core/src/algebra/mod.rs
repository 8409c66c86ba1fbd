//! Algebras, J-evaluation of generalized terms, J-substitutions and the
//! truth of ground atoms.

mod subst;

use std::fmt;

use num_rational::BigRational;
use num_traits::One;

pub use subst::Subst;

use crate::syntax::{Formula, Numerals, Signature, Term, LESS, LESS_EQ, MINUS, PLUS, TIMES};

/// Carrier of an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// Ground terms over the signature; function application is term construction.
    Herbrand,
    Integers,
    Rationals,
}

/// An algebra together with the interpretation of its relation symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    domain: Domain,
    signature: Signature,
}

/// Truth of an atom under a substitution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    NonGround,
}

impl From<bool> for Truth {
    fn from(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

impl Algebra {
    pub fn herbrand(signature: Signature) -> Algebra {
        Algebra {
            name: "herbrand".into(),
            domain: Domain::Herbrand,
            signature,
        }
    }

    pub fn integers() -> Algebra {
        Algebra {
            name: "int".into(),
            domain: Domain::Integers,
            signature: Signature::arithmetic(Numerals::Integers),
        }
    }

    pub fn rationals() -> Algebra {
        Algebra {
            name: "rat".into(),
            domain: Domain::Rationals,
            signature: Signature::arithmetic(Numerals::Rationals),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn is_herbrand(&self) -> bool {
        self.domain == Domain::Herbrand
    }

    pub fn is_arithmetic(&self) -> bool {
        !self.is_herbrand()
    }

    /// Does `t` denote an element of the carrier?
    pub fn is_element(&self, t: &Term) -> bool {
        match (self.domain, t) {
            (Domain::Herbrand, t) => t.is_ground() && !contains_num(t),
            (Domain::Integers, Term::Num(n)) => n.denom().is_one(),
            (Domain::Rationals, Term::Num(_)) => true,
            _ => false,
        }
    }

    /// Apply a function symbol to domain elements.
    pub fn eval_fn(&self, symbol: &str, args: &[Term]) -> Term {
        match self.domain {
            Domain::Herbrand => Term::App(symbol.to_string(), args.to_vec()),
            Domain::Integers | Domain::Rationals => {
                let [Term::Num(a), Term::Num(b)] = args else {
                    panic!("arithmetic symbol `{symbol}` applied to non-numbers {args:?}")
                };
                let value = match symbol {
                    PLUS => a + b,
                    MINUS => a - b,
                    TIMES => a * b,
                    other => panic!("`{other}` is not interpreted by the {} algebra", self.name),
                };
                Term::Num(value)
            }
        }
    }

    /// Interpretation of a relation symbol on domain elements.
    pub fn rel_truth(&self, rel: &str, args: &[Term]) -> bool {
        match (rel, args) {
            ("=", [a, b]) => a == b,
            ("/=", [a, b]) => a != b,
            (LESS | LESS_EQ, [Term::Num(a), Term::Num(b)]) if self.is_arithmetic() => {
                if rel == LESS {
                    a < b
                } else {
                    a <= b
                }
            }
            _ => panic!("relation `{rel}`/{} is not interpreted by the {} algebra", args.len(), self.name),
        }
    }

    /// Value of a ground term.
    pub fn eval_ground(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => panic!("eval_ground on non-ground term containing `{v}`"),
            Term::Num(_) => t.clone(),
            Term::App(f, args) => {
                let vals: Vec<Term> = args.iter().map(|a| self.eval_ground(a)).collect();
                self.eval_fn(f, &vals)
            }
        }
    }

    /// `⟦t⟧_J`: replace every maximal ground subterm by its value.
    pub fn j_eval(&self, t: &Term) -> Term {
        if t.is_ground() {
            return self.eval_ground(t);
        }
        match t {
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.j_eval(a)).collect()),
            _ => t.clone(),
        }
    }

    /// J-evaluate every term of a formula.
    pub fn j_eval_formula(&self, f: &Formula) -> Formula {
        f.map_terms(&mut |t| self.j_eval(t))
    }

    /// Truth of `Aθ` for an atom, disequation or `⊥`.
    pub fn atom_truth(&self, atom: &Formula, theta: &Subst) -> Truth {
        let (rel, args): (&str, Vec<&Term>) = match atom {
            Formula::Atom(r, args) => (r.as_str(), args.iter().collect()),
            Formula::Eq(s, t) => ("=", vec![s, t]),
            Formula::Neq(s, t) => ("/=", vec![s, t]),
            Formula::Bottom => return Truth::False,
            other => panic!("atom_truth on non-atomic formula `{other}`"),
        };
        let instantiated: Vec<Term> = args.into_iter().map(|a| theta.apply(a)).collect();
        if !instantiated.iter().all(Term::is_ground) {
            return Truth::NonGround;
        }
        let values: Vec<Term> = instantiated.iter().map(|a| self.eval_ground(a)).collect();
        self.rel_truth(rel, &values).into()
    }

    /// Truth of a literal `L` or `¬L` under `θ`; `NonGround` when undetermined.
    pub fn literal_truth(&self, lit: &Formula, theta: &Subst) -> Truth {
        match lit {
            Formula::Not(inner) if inner.is_atomic() => match self.atom_truth(inner, theta) {
                Truth::True => Truth::False,
                Truth::False => Truth::True,
                Truth::NonGround => Truth::NonGround,
            },
            f if f.is_atomic() => self.atom_truth(f, theta),
            _ => Truth::NonGround,
        }
    }
}

fn contains_num(t: &Term) -> bool {
    match t {
        Term::Num(_) => true,
        Term::Var(_) => false,
        Term::App(_, args) => args.iter().any(contains_num),
    }
}

/// Numeric value of a J-term, when it is a domain element of an arithmetic algebra.
pub fn as_number(t: &Term) -> Option<&BigRational> {
    match t {
        Term::Num(n) => Some(n),
        _ => None,
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.domain {
            Domain::Herbrand => write!(f, "herbrand[{}]", self.signature),
            _ => write!(f, "{}", self.name),
        }
    }
}
