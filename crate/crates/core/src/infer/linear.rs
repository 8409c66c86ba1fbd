//! Linear equations over the rationals: normalization and Gaussian steps.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Algebra, Subst};
use crate::syntax::{Formula, Term, MINUS, PLUS, TIMES};

use super::propagate::{Propagator, Step};

/// `Σ cᵢxᵢ + k`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearForm {
    pub coeffs: BTreeMap<String, BigRational>,
    pub constant: BigRational,
}

impl LinearForm {
    fn constant(k: BigRational) -> LinearForm {
        LinearForm {
            coeffs: BTreeMap::new(),
            constant: k,
        }
    }

    fn var(x: &str) -> LinearForm {
        LinearForm {
            coeffs: BTreeMap::from([(x.to_string(), BigRational::one())]),
            constant: BigRational::zero(),
        }
    }

    fn as_constant(&self) -> Option<&BigRational> {
        self.coeffs.is_empty().then_some(&self.constant)
    }

    fn add(mut self, other: &LinearForm, sign: &BigRational) -> LinearForm {
        for (x, c) in &other.coeffs {
            let entry = self.coeffs.entry(x.clone()).or_insert_with(BigRational::zero);
            *entry += c * sign;
            if entry.is_zero() {
                self.coeffs.remove(x);
            }
        }
        self.constant += &other.constant * sign;
        self
    }

    fn scale(mut self, k: &BigRational) -> LinearForm {
        if k.is_zero() {
            return LinearForm::default();
        }
        for c in self.coeffs.values_mut() {
            *c *= k;
        }
        self.constant *= k;
        self
    }

    /// Normalize a term; `None` when it is not linear.
    pub fn of_term(t: &Term) -> Option<LinearForm> {
        match t {
            Term::Var(x) => Some(LinearForm::var(x)),
            Term::Num(n) => Some(LinearForm::constant(n.clone())),
            Term::App(f, args) if args.len() == 2 => {
                let a = LinearForm::of_term(&args[0])?;
                let b = LinearForm::of_term(&args[1])?;
                match f.as_str() {
                    PLUS => Some(a.add(&b, &BigRational::one())),
                    MINUS => Some(a.add(&b, &-BigRational::one())),
                    TIMES => match (a.as_constant(), b.as_constant()) {
                        (Some(k), _) => Some(b.scale(&k.clone())),
                        (_, Some(k)) => Some(a.scale(&k.clone())),
                        _ => None,
                    },
                    _ => None,
                }
            }
            Term::App(..) => None,
        }
    }
}

/// Outcome of normalizing `sθ = tθ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rewrite {
    /// `0 = 0`.
    Trivial,
    /// `r = 0` with `r ≠ 0`.
    Contradiction,
    /// `x = u` with `u` linear and free of `x`.
    Pivot(String, Term),
    NonLinear,
}

/// Rewrite an equation under `θ`, pivoting on the lexicographically first
/// variable with a nonzero coefficient.
pub fn rewrite_linear(eq: &Formula, theta: &Subst) -> Rewrite {
    let Formula::Eq(s, t) = eq else {
        return Rewrite::NonLinear;
    };
    let (Some(l), Some(r)) = (
        LinearForm::of_term(&theta.apply(s)),
        LinearForm::of_term(&theta.apply(t)),
    ) else {
        return Rewrite::NonLinear;
    };
    let diff = l.add(&r, &-BigRational::one());
    let Some((x, c)) = diff.coeffs.iter().next() else {
        return if diff.constant.is_zero() {
            Rewrite::Trivial
        } else {
            Rewrite::Contradiction
        };
    };
    // c·x + rest = 0  ⇒  x = -(rest)/c
    let factor = -c.recip();
    let mut rest = diff.clone();
    rest.coeffs.remove(x);
    let solved = rest.scale(&factor);
    Rewrite::Pivot(x.clone(), to_term(&solved))
}

/// Render a linear form as a term: constant first, then variables in order.
pub fn to_term(form: &LinearForm) -> Term {
    let mut acc: Option<Term> = (!form.constant.is_zero() || form.coeffs.is_empty()).then(|| Term::Num(form.constant.clone()));
    for (x, c) in &form.coeffs {
        let magnitude = c.abs();
        let monomial = if magnitude.is_one() {
            Term::var(x.as_str())
        } else {
            Term::mul(Term::Num(magnitude), Term::var(x.as_str()))
        };
        acc = Some(match acc {
            None if c.is_negative() => Term::mul(Term::Num(c.clone()), Term::var(x.as_str())),
            None => monomial,
            Some(a) if c.is_negative() => Term::sub(a, monomial),
            Some(a) => Term::add(a, monomial),
        });
    }
    acc.expect("constant or at least one variable")
}

/// Linear equations active, non-linear ones passive, over the rationals.
#[derive(Clone, Copy, Debug, Default)]
pub struct Linear;

impl Propagator for Linear {
    fn name(&self) -> &str {
        "linear"
    }

    fn supports(&self, alg: &Algebra) -> bool {
        alg.domain() == crate::algebra::Domain::Rationals
    }

    fn admits(&self, f: &Formula) -> bool {
        matches!(f, Formula::Eq(..))
    }

    fn is_active(&self, f: &Formula, theta: &Subst, _alg: &Algebra) -> bool {
        rewrite_linear(f, theta) != Rewrite::NonLinear
    }

    fn step(&self, f: &Formula, theta: &Subst, alg: &Algebra) -> Step {
        match rewrite_linear(f, theta) {
            Rewrite::Trivial => Step::Continue(theta.clone()),
            Rewrite::Contradiction => Step::Fail,
            Rewrite::Pivot(x, u) => Step::Continue(theta.compose(&Subst::singleton(x, u, alg), alg)),
            Rewrite::NonLinear => panic!("step on a passive constraint"),
        }
    }
}
