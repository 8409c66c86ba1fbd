use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::term::Term;

pub const LESS: &str = "<";
pub const LESS_EQ: &str = "<=";

/// First-order formulas without universal quantification.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    Neq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    /// The always-false formula.
    Bottom,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("variable `{0}` already occurs in the formula")]
pub struct RenameClash(pub String);

impl Formula {
    pub fn atom(rel: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Atom(rel.into(), args)
    }

    pub fn eq(s: Term, t: Term) -> Formula {
        Formula::Eq(s, t)
    }

    pub fn neq(s: Term, t: Term) -> Formula {
        Formula::Neq(s, t)
    }

    pub fn less(s: Term, t: Term) -> Formula {
        Formula::Atom(LESS.into(), vec![s, t])
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(body))
    }

    /// Left-nested conjunction; `None` for an empty iterator.
    pub fn conjoin(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    /// Atomic formulas: relation atoms, equations, disequations and `⊥`.
    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            Formula::Atom(..) | Formula::Eq(..) | Formula::Neq(..) | Formula::Bottom
        )
    }

    /// Atomic formulas and negations of atomic formulas other than `⊥`.
    pub fn is_literal(&self) -> bool {
        match self {
            Formula::Not(inner) => inner.is_atomic() && **inner != Formula::Bottom,
            f => f.is_atomic(),
        }
    }

    /// `s ≠ t` in either spelling.
    pub fn as_disequation(&self) -> Option<(&Term, &Term)> {
        match self {
            Formula::Neq(s, t) => Some((s, t)),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Eq(s, t) => Some((s, t)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn has_free(&self, var: &str) -> bool {
        self.free_vars().contains(var)
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let add_term = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<String>| {
            for v in t.vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|a| add_term(a, bound, out)),
            Formula::Eq(s, t) | Formula::Neq(s, t) => {
                add_term(s, bound, out);
                add_term(t, bound, out);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Formula::Bottom => {}
        }
    }

    /// Every variable name occurring in the formula, free or bound.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.for_each_term(&mut |t| t.collect_vars(&mut out));
        self.for_each_binder(&mut |v| {
            out.insert(v.to_string());
        });
        out
    }

    pub fn for_each_term(&self, visit: &mut impl FnMut(&Term)) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|a| visit(a)),
            Formula::Eq(s, t) | Formula::Neq(s, t) => {
                visit(s);
                visit(t);
            }
            Formula::Not(f) | Formula::Exists(_, f) => f.for_each_term(visit),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.for_each_term(visit);
                b.for_each_term(visit);
            }
            Formula::Bottom => {}
        }
    }

    fn for_each_binder(&self, visit: &mut impl FnMut(&str)) {
        match self {
            Formula::Exists(v, f) => {
                visit(v);
                f.for_each_binder(visit);
            }
            Formula::Not(f) => f.for_each_binder(visit),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.for_each_binder(visit);
                b.for_each_binder(visit);
            }
            _ => {}
        }
    }

    /// Number of nested `∃` along the deepest path.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Exists(_, f) => 1 + f.quantifier_depth(),
            Formula::Not(f) => f.quantifier_depth(),
            Formula::And(a, b) | Formula::Or(a, b) => a.quantifier_depth().max(b.quantifier_depth()),
            _ => 0,
        }
    }

    /// `φ{x/u}`: replace the free occurrences of `x` by the variable `u`.
    ///
    /// `u` must not occur anywhere in the formula, so no capture can happen.
    pub fn rename_free(&self, x: &str, u: &str) -> Result<Formula, RenameClash> {
        if self.all_vars().contains(u) {
            return Err(RenameClash(u.to_string()));
        }
        Ok(self.rename_free_unchecked(x, u))
    }

    pub(crate) fn rename_free_unchecked(&self, x: &str, u: &str) -> Formula {
        match self {
            Formula::Atom(r, args) => {
                Formula::Atom(r.clone(), args.iter().map(|a| a.rename_var(x, u)).collect())
            }
            Formula::Eq(s, t) => Formula::Eq(s.rename_var(x, u), t.rename_var(x, u)),
            Formula::Neq(s, t) => Formula::Neq(s.rename_var(x, u), t.rename_var(x, u)),
            Formula::Not(f) => Formula::not(f.rename_free_unchecked(x, u)),
            Formula::And(a, b) => {
                Formula::and(a.rename_free_unchecked(x, u), b.rename_free_unchecked(x, u))
            }
            Formula::Or(a, b) => {
                Formula::or(a.rename_free_unchecked(x, u), b.rename_free_unchecked(x, u))
            }
            Formula::Exists(v, _) if v == x => self.clone(),
            Formula::Exists(v, body) => {
                Formula::exists(v.clone(), body.rename_free_unchecked(x, u))
            }
            Formula::Bottom => Formula::Bottom,
        }
    }

    /// Map every term of the formula; binders are left untouched.
    pub fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> Formula {
        match self {
            Formula::Atom(r, args) => Formula::Atom(r.clone(), args.iter().map(|a| f(a)).collect()),
            Formula::Eq(s, t) => Formula::Eq(f(s), f(t)),
            Formula::Neq(s, t) => Formula::Neq(f(s), f(t)),
            Formula::Not(g) => Formula::not(g.map_terms(f)),
            Formula::And(a, b) => Formula::and(a.map_terms(f), b.map_terms(f)),
            Formula::Or(a, b) => Formula::or(a.map_terms(f), b.map_terms(f)),
            Formula::Exists(v, body) => Formula::exists(v.clone(), body.map_terms(f)),
            Formula::Bottom => Formula::Bottom,
        }
    }

    /// Number of connective and atom nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Not(f) | Formula::Exists(_, f) => 1 + f.size(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }

    fn level(&self) -> u8 {
        match self {
            Formula::Or(..) => 0,
            Formula::And(..) => 1,
            _ => 2,
        }
    }

    /// Display wrapper that parenthesizes top-level disjunctions, used where
    /// `|` would be ambiguous (state printing).
    pub fn display_conj_level(&self) -> ConjLevel<'_> {
        ConjLevel(self)
    }
}

pub struct ConjLevel<'a>(&'a Formula);

impl fmt::Display for ConjLevel<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.level() == 0 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

fn is_symbolic_relation(rel: &str) -> bool {
    !rel.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(rel, args) if args.len() == 2 && is_symbolic_relation(rel) => {
                write!(f, "{} {rel} {}", args[0], args[1])
            }
            Formula::Atom(rel, args) => {
                write!(f, "{rel}(")?;
                write_args(f, args)?;
                write!(f, ")")
            }
            Formula::Eq(s, t) => write!(f, "{s} = {t}"),
            Formula::Neq(s, t) => write!(f, "{s} /= {t}"),
            Formula::Bottom => write!(f, "false"),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Not(_) | Formula::Bottom => write!(f, "~{inner}"),
                _ => write!(f, "~({inner})"),
            },
            Formula::Exists(v, body) => {
                if body.level() < 2 {
                    write!(f, "exists {v}. ({body})")
                } else {
                    write!(f, "exists {v}. {body}")
                }
            }
            Formula::And(a, b) => {
                if a.level() < 1 {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, " & ")?;
                if b.level() <= 1 {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Formula::Or(a, b) => {
                write!(f, "{a} | ")?;
                if b.level() == 0 {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("x")
    }
    fn y() -> Term {
        Term::var("y")
    }

    #[test]
    fn free_vars_examples() {
        let f = Formula::exists("x", Formula::eq(x(), y()));
        assert_eq!(f.free_vars(), BTreeSet::from(["y".to_string()]));
        assert_eq!(Formula::eq(x(), x()).free_vars(), BTreeSet::from(["x".to_string()]));
        assert!(Formula::Bottom.free_vars().is_empty());
    }

    #[test]
    fn rename_free_examples() {
        let one = Term::int(1);
        let f = Formula::eq(x(), one.clone());
        assert_eq!(f.rename_free("x", "$u1").unwrap(), Formula::eq(Term::var("$u1"), one.clone()));

        let g = Formula::exists("x", Formula::eq(x(), y()));
        assert_eq!(g.rename_free("x", "$u1").unwrap(), g);

        let h = Formula::and(
            Formula::eq(x(), Term::int(0)),
            Formula::not(Formula::eq(x(), one.clone())),
        );
        let u2 = Term::var("$u2");
        assert_eq!(
            h.rename_free("x", "$u2").unwrap(),
            Formula::and(Formula::eq(u2.clone(), Term::int(0)), Formula::not(Formula::eq(u2, one)))
        );
    }

    #[test]
    fn rename_free_rejects_occurring_target() {
        let f = Formula::exists("u", Formula::eq(x(), Term::var("u")));
        assert_eq!(f.rename_free("x", "u"), Err(RenameClash("u".into())));
    }

    #[test]
    fn neq_and_negated_eq_print_differently() {
        let a = Formula::neq(x(), y());
        let b = Formula::not(Formula::eq(x(), y()));
        assert_eq!(a.to_string(), "x /= y");
        assert_eq!(b.to_string(), "~(x = y)");
        assert_eq!(a.as_disequation(), b.as_disequation());
    }

    #[test]
    fn connective_printing() {
        let a = Formula::eq(x(), Term::int(1));
        let b = Formula::eq(y(), Term::int(2));
        let f = Formula::and(Formula::or(a.clone(), b.clone()), Formula::exists("z", Formula::and(a.clone(), b.clone())));
        assert_eq!(f.to_string(), "(x = 1 | y = 2) & exists z. (x = 1 & y = 2)");
        let g = Formula::and(a.clone(), Formula::and(b.clone(), a.clone()));
        assert_eq!(g.to_string(), "x = 1 & (y = 2 & x = 1)");
    }
}
