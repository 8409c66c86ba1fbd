use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Prefix reserved for evaluator-generated variables.
pub const FRESH_PREFIX: char = '$';

pub const PLUS: &str = "+";
pub const MINUS: &str = "-";
pub const TIMES: &str = "*";

/// A (generalized) term.
///
/// `Num` doubles as the numeral syntax of the arithmetic algebras and as an
/// embedded domain element: every numeral denotes itself. Herbrand terms
/// never contain `Num`; a ground Herbrand term is its own value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
    Num(BigRational),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(symbol: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(symbol.into(), args)
    }

    pub fn int(n: i64) -> Term {
        Term::Num(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Term {
        Term::Num(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::App(PLUS.into(), vec![a, b])
    }

    pub fn sub(a: Term, b: Term) -> Term {
        Term::App(MINUS.into(), vec![a, b])
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::App(TIMES.into(), vec![a, b])
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Num(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn occurs(&self, var: &str) -> bool {
        match self {
            Term::Var(v) => v == var,
            Term::Num(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.occurs(var)),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Num(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    /// Depth of the term tree; variables, numerals and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::App(_, args) if !args.is_empty() => {
                1 + args.iter().map(Term::depth).max().unwrap_or(0)
            }
            _ => 0,
        }
    }

    /// Replace every occurrence of `from` by the variable `to`.
    pub fn rename_var(&self, from: &str, to: &str) -> Term {
        match self {
            Term::Var(v) if v == from => Term::Var(to.to_string()),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.rename_var(from, to)).collect())
            }
            _ => self.clone(),
        }
    }

    /// Largest absolute value of a numeral occurring in the term.
    pub fn max_abs_numeral(&self) -> BigRational {
        match self {
            Term::Num(n) => n.abs(),
            Term::Var(_) => BigRational::zero(),
            Term::App(_, args) => args
                .iter()
                .map(Term::max_abs_numeral)
                .max()
                .unwrap_or_else(BigRational::zero),
        }
    }

    fn is_arith(&self) -> Option<(&str, &Term, &Term)> {
        match self {
            Term::App(f, args) if args.len() == 2 && is_arith_symbol(f) => {
                Some((f.as_str(), &args[0], &args[1]))
            }
            _ => None,
        }
    }

    fn precedence(&self) -> u8 {
        match self.is_arith() {
            Some((f, _, _)) if f == TIMES => 2,
            Some(_) => 1,
            None => 3,
        }
    }
}

pub fn is_arith_symbol(s: &str) -> bool {
    s == PLUS || s == MINUS || s == TIMES
}

pub(crate) fn fmt_number(n: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if n.denom().is_one() {
        write!(f, "{}", n.numer())
    } else {
        write!(f, "{}/{}", n.numer(), n.denom())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((op, lhs, rhs)) = self.is_arith() {
            let prec = self.precedence();
            // left-associative: the left operand may share our precedence
            if lhs.precedence() < prec {
                write!(f, "({lhs})")?;
            } else {
                write!(f, "{lhs}")?;
            }
            write!(f, " {op} ")?;
            if rhs.precedence() <= prec {
                write!(f, "({rhs})")
            } else {
                write!(f, "{rhs}")
            }
        } else {
            match self {
                Term::Var(v) => write!(f, "{v}"),
                Term::Num(n) => fmt_number(n, f),
                Term::App(s, args) if args.is_empty() => write!(f, "{s}"),
                Term::App(s, args) => {
                    write!(f, "{s}(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    write!(f, ")")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_arithmetic_with_minimal_parens() {
        let x = Term::var("x");
        let y = Term::var("y");
        let t = Term::sub(Term::int(3), y.clone());
        assert_eq!(t.to_string(), "3 - y");
        let t = Term::sub(x.clone(), Term::add(y.clone(), Term::int(1)));
        assert_eq!(t.to_string(), "x - (y + 1)");
        let t = Term::add(Term::sub(x.clone(), y.clone()), Term::int(1));
        assert_eq!(t.to_string(), "x - y + 1");
        let t = Term::mul(Term::add(x.clone(), y.clone()), Term::int(-2));
        assert_eq!(t.to_string(), "(x + y) * -2");
        assert_eq!(Term::ratio(-3, 2).to_string(), "-3/2");
    }

    #[test]
    fn depth_and_groundness() {
        let t = Term::app("g", vec![Term::app("f", vec![Term::constant("a")]), Term::var("x")]);
        assert_eq!(t.depth(), 2);
        assert!(!t.is_ground());
        assert!(t.occurs("x"));
        assert_eq!(Term::constant("a").depth(), 0);
    }
}
