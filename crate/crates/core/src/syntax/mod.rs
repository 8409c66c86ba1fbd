//! Terms, formulas, signatures and their concrete syntax.

mod formula;
mod parser;
mod signature;
mod term;

pub use formula::{ConjLevel, Formula, RenameClash, LESS, LESS_EQ};
pub use parser::{parse_formula, parse_store, parse_term, ParseError, Parser};
pub use signature::{Numerals, Signature};
pub use term::{is_arith_symbol, Term, FRESH_PREFIX, MINUS, PLUS, TIMES};

/// Free variables of a formula.
pub fn free_vars(formula: &Formula) -> std::collections::BTreeSet<String> {
    formula.free_vars()
}
