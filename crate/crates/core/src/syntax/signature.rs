use std::collections::BTreeMap;
use std::fmt;

use super::formula::{LESS, LESS_EQ};
use super::parser::ParseError;
use super::term::{MINUS, PLUS, TIMES};

/// Which numerals the concrete syntax accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Numerals {
    None,
    Integers,
    Rationals,
}

/// Declared function and relation symbols with their arities.
///
/// `=` and `/=` are always available and never listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    functions: BTreeMap<String, usize>,
    relations: BTreeMap<String, usize>,
    numerals: Numerals,
}

impl Signature {
    pub fn empty() -> Signature {
        Signature {
            functions: BTreeMap::new(),
            relations: BTreeMap::new(),
            numerals: Numerals::None,
        }
    }

    /// `+`, `-`, `*`, `<`, `<=` and numerals of the given kind.
    pub fn arithmetic(numerals: Numerals) -> Signature {
        let mut sig = Signature::empty();
        for op in [PLUS, MINUS, TIMES] {
            sig.functions.insert(op.to_string(), 2);
        }
        for rel in [LESS, LESS_EQ] {
            sig.relations.insert(rel.to_string(), 2);
        }
        sig.numerals = numerals;
        sig
    }

    /// Parse a declaration list such as `f/1,g/2,a/0`.
    pub fn parse_functions(text: &str) -> Result<Signature, ParseError> {
        let mut sig = Signature::empty();
        let mut offset = 0;
        for part in text.split(',') {
            let trimmed = part.trim();
            let pos = offset + part.len() - part.trim_start().len();
            offset += part.len() + 1;
            if trimmed.is_empty() {
                continue;
            }
            let (name, arity) = trimmed.split_once('/').ok_or_else(|| ParseError::Syntax {
                pos,
                message: format!("expected `name/arity`, found `{trimmed}`"),
            })?;
            let name = name.trim();
            let valid_name = name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !valid_name || is_keyword(name) {
                return Err(ParseError::Syntax {
                    pos,
                    message: format!("invalid symbol name `{name}`"),
                });
            }
            let arity: usize = arity.trim().parse().map_err(|_| ParseError::Syntax {
                pos,
                message: format!("invalid arity in `{trimmed}`"),
            })?;
            if let Some(previous) = sig.functions.insert(name.to_string(), arity) {
                if previous != arity {
                    return Err(ParseError::Syntax {
                        pos,
                        message: format!("symbol `{name}` declared twice with different arities"),
                    });
                }
            }
        }
        Ok(sig)
    }

    pub fn with_function(mut self, name: impl Into<String>, arity: usize) -> Signature {
        self.functions.insert(name.into(), arity);
        self
    }

    pub fn with_relation(mut self, name: impl Into<String>, arity: usize) -> Signature {
        self.relations.insert(name.into(), arity);
        self
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    pub fn relation_arity(&self, name: &str) -> Option<usize> {
        self.relations.get(name).copied()
    }

    pub fn numerals(&self) -> Numerals {
        self.numerals
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, usize)> {
        self.relations.iter().map(|(n, a)| (n.as_str(), *a))
    }

    /// Zero-ary function symbols.
    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.functions.iter().filter(|(_, a)| **a == 0).map(|(n, _)| n.as_str())
    }
}

pub(crate) fn is_keyword(name: &str) -> bool {
    matches!(name, "exists" | "false" | "error")
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, arity) in &self.functions {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{name}/{arity}")?;
        }
        Ok(())
    }
}
