//! Recursive-descent parser for terms, formulas, substitutions and states.
//!
//! Grammar:
//!
//! ```text
//! formula := conj ('|' conj)*
//! conj    := unary ('&' unary)*
//! unary   := '~' unary | 'exists' IDENT '.' unary | 'false' | '(' formula ')' | atom
//! atom    := RELNAME '(' terms ')' | term ('=' | '/=' | '<' | '<=' | RELNAME) term
//! term    := mult (('+' | '-') mult)*
//! mult    := primary ('*' primary)*
//! primary := ['-'] NUMBER ['/' NUMBER] | IDENT ['(' terms ')'] | '(' term ')'
//! ```
//!
//! Identifiers declared as function symbols in the signature are constants
//! or function applications; every other identifier is a variable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::formula::Formula;
use super::signature::{is_keyword, Numerals, Signature};
use super::term::{Term, FRESH_PREFIX, MINUS, PLUS, TIMES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("arity mismatch at offset {pos}: `{symbol}` expects {expected} argument(s), got {found}")]
    Arity {
        pos: usize,
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("reserved name `{name}` at offset {pos}: names starting with `$` are generated by the evaluator")]
    ReservedName { pos: usize, name: String },
}

impl ParseError {
    pub fn pos(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::Arity { pos, .. }
            | ParseError::ReservedName { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(BigInt),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Semi,
    Tilde,
    Amp,
    Bar,
    Eq,
    Neq,
    Lt,
    Le,
    Gt,
    Plus,
    Minus,
    Star,
    Slash,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(n) => format!("`{n}`"),
            Tok::End => "end of input".to_string(),
            other => {
                let s = match other {
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::Comma => ",",
                    Tok::Dot => ".",
                    Tok::Semi => ";",
                    Tok::Tilde => "~",
                    Tok::Amp => "&",
                    Tok::Bar => "|",
                    Tok::Eq => "=",
                    Tok::Neq => "/=",
                    Tok::Lt => "<",
                    Tok::Le => "<=",
                    Tok::Gt => ">",
                    Tok::Plus => "+",
                    Tok::Minus => "-",
                    Tok::Star => "*",
                    Tok::Slash => "/",
                    _ => unreachable!(),
                };
                format!("`{s}`")
            }
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = |next: u8| bytes.get(i + 1) == Some(&next);
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            ';' => Tok::Semi,
            '~' => Tok::Tilde,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '=' => Tok::Eq,
            '>' => Tok::Gt,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' if two(b'=') => {
                i += 1;
                Tok::Neq
            }
            '/' => Tok::Slash,
            '<' if two(b'=') => {
                i += 1;
                Tok::Le
            }
            '<' => Tok::Lt,
            d if d.is_ascii_digit() => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                Tok::Number(text[start..=i].parse().expect("digits"))
            }
            a if a.is_ascii_alphabetic() || a == '_' || a == FRESH_PREFIX => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// Parser over one input string.
pub struct Parser<'s> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: &'s Signature,
    allow_fresh: bool,
}

type PResult<T> = Result<T, ParseError>;

impl<'s> Parser<'s> {
    pub fn new(text: &str, sig: &'s Signature) -> Result<Parser<'s>, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            sig,
            allow_fresh: false,
        })
    }

    /// Accept `$`-prefixed variables. Only for re-reading evaluator output.
    pub fn allow_fresh(mut self, allow: bool) -> Self {
        self.allow_fresh = allow;
        self
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let idx = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[idx].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected<T>(&self, expected: &str) -> PResult<T> {
        Err(ParseError::Syntax {
            pos: self.offset(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        })
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.unexpected(&tok.describe())
        }
    }

    pub fn finish(&self) -> PResult<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    pub fn formula(&mut self) -> PResult<Formula> {
        let mut lhs = self.conj()?;
        while self.eat(&Tok::Bar) {
            let rhs = self.conj()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    pub fn conj(&mut self) -> PResult<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(kw) if kw == "exists" => {
                self.bump();
                let var = self.variable_name()?;
                self.expect(Tok::Dot)?;
                Ok(Formula::exists(var, self.unary()?))
            }
            Tok::Ident(kw) if kw == "false" => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Tok::LParen => {
                let save = self.pos;
                self.bump();
                let grouped = self.formula().and_then(|f| {
                    self.expect(Tok::RParen)?;
                    Ok(f)
                });
                match grouped {
                    Ok(f) if !self.continues_atom() => Ok(f),
                    first => {
                        let first_err = first.err();
                        self.pos = save;
                        match self.atom() {
                            Ok(a) => Ok(a),
                            Err(e) => Err(match first_err {
                                Some(fe) if fe.pos() > e.pos() => fe,
                                _ => e,
                            }),
                        }
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn continues_atom(&self) -> bool {
        match self.peek() {
            Tok::Eq | Tok::Neq | Tok::Lt | Tok::Le | Tok::Plus | Tok::Minus | Tok::Star => true,
            Tok::Ident(r) => self.sig.relation_arity(r) == Some(2),
            _ => false,
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        if let Tok::Ident(name) = self.peek().clone() {
            if let Some(arity) = self.sig.relation_arity(&name) {
                if *self.peek_at(1) == Tok::LParen {
                    let at = self.offset();
                    self.bump();
                    let args = self.arguments()?;
                    check_arity(at, &name, arity, args.len())?;
                    return Ok(Formula::atom(name, args));
                }
            }
        }
        let lhs = self.term()?;
        let at = self.offset();
        let rel = match self.peek().clone() {
            Tok::Eq => None,
            Tok::Neq => None,
            Tok::Lt => Some("<".to_string()),
            Tok::Le => Some("<=".to_string()),
            Tok::Ident(r) if self.sig.relation_arity(&r).is_some() => Some(r),
            _ => return self.unexpected("a relation (`=`, `/=`, `<`, `<=`)"),
        };
        let op = self.bump();
        let rhs = self.term()?;
        match (op, rel) {
            (Tok::Eq, _) => Ok(Formula::eq(lhs, rhs)),
            (Tok::Neq, _) => Ok(Formula::neq(lhs, rhs)),
            (_, Some(r)) => {
                let arity = self.sig.relation_arity(&r).ok_or_else(|| ParseError::Syntax {
                    pos: at,
                    message: format!("relation `{r}` is not in the signature"),
                })?;
                check_arity(at, &r, arity, 2)?;
                Ok(Formula::atom(r, vec![lhs, rhs]))
            }
            _ => unreachable!(),
        }
    }

    fn arguments(&mut self) -> PResult<Vec<Term>> {
        self.expect(Tok::LParen)?;
        let mut args = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            if self.eat(&Tok::RParen) {
                return Ok(args);
            }
            if !self.eat(&Tok::Comma) {
                return self.unexpected("`,` or `)`");
            }
        }
    }

    fn arith_op(&self, op: &str, at: usize) -> PResult<()> {
        if self.sig.function_arity(op) == Some(2) {
            Ok(())
        } else {
            Err(ParseError::Syntax {
                pos: at,
                message: format!("arithmetic operator `{op}` is not available in this algebra"),
            })
        }
    }

    pub fn term(&mut self) -> PResult<Term> {
        let mut lhs = self.mult()?;
        loop {
            let at = self.offset();
            let op = match self.peek() {
                Tok::Plus => PLUS,
                Tok::Minus => MINUS,
                _ => return Ok(lhs),
            };
            self.arith_op(op, at)?;
            self.bump();
            let rhs = self.mult()?;
            lhs = Term::app(op, vec![lhs, rhs]);
        }
    }

    fn mult(&mut self) -> PResult<Term> {
        let mut lhs = self.primary()?;
        while *self.peek() == Tok::Star {
            self.arith_op(TIMES, self.offset())?;
            self.bump();
            let rhs = self.primary()?;
            lhs = Term::mul(lhs, rhs);
        }
        Ok(lhs)
    }

    fn primary(&mut self) -> PResult<Term> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Minus if matches!(self.peek_at(1), Tok::Number(_)) => {
                self.bump();
                let n = self.number(at)?;
                Ok(Term::Num(-n))
            }
            Tok::Number(_) => Ok(Term::Num(self.number(at)?)),
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(name) => {
                if is_keyword(&name) {
                    return self.unexpected("a term");
                }
                self.bump();
                if *self.peek() == Tok::LParen {
                    let Some(arity) = self.sig.function_arity(&name) else {
                        return Err(ParseError::Syntax {
                            pos: at,
                            message: format!("function symbol `{name}` is not in the signature"),
                        });
                    };
                    let args = self.arguments()?;
                    check_arity(at, &name, arity, args.len())?;
                    Ok(Term::app(name, args))
                } else {
                    match self.sig.function_arity(&name) {
                        Some(0) => Ok(Term::constant(name)),
                        Some(arity) => Err(ParseError::Arity {
                            pos: at,
                            symbol: name,
                            expected: arity,
                            found: 0,
                        }),
                        None if self.sig.relation_arity(&name).is_some() => {
                            Err(ParseError::Syntax {
                                pos: at,
                                message: format!("relation `{name}` used as a term"),
                            })
                        }
                        None => self.check_var(name, at).map(Term::Var),
                    }
                }
            }
            _ => self.unexpected("a term"),
        }
    }

    fn number(&mut self, at: usize) -> PResult<BigRational> {
        let Tok::Number(n) = self.bump() else {
            unreachable!("caller checked for a number")
        };
        if self.sig.numerals() == Numerals::None {
            return Err(ParseError::Syntax {
                pos: at,
                message: "numerals are not available in this algebra".into(),
            });
        }
        if *self.peek() == Tok::Slash && matches!(self.peek_at(1), Tok::Number(_)) {
            if self.sig.numerals() != Numerals::Rationals {
                return Err(ParseError::Syntax {
                    pos: at,
                    message: "fractions are only available over the rationals".into(),
                });
            }
            self.bump();
            let Tok::Number(d) = self.bump() else { unreachable!() };
            if d.is_zero() {
                return Err(ParseError::Syntax {
                    pos: at,
                    message: "zero denominator".into(),
                });
            }
            return Ok(BigRational::new(n, d));
        }
        Ok(BigRational::from_integer(n))
    }

    fn check_var(&self, name: String, at: usize) -> PResult<String> {
        if name.starts_with(FRESH_PREFIX) && !self.allow_fresh {
            return Err(ParseError::ReservedName { pos: at, name });
        }
        if name.starts_with(FRESH_PREFIX) && name.len() == 1 {
            return Err(ParseError::Syntax {
                pos: at,
                message: "empty variable name".into(),
            });
        }
        Ok(name)
    }

    fn variable_name(&mut self) -> PResult<String> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Ident(name) if !is_keyword(&name) => {
                if self.sig.function_arity(&name).is_some() || self.sig.relation_arity(&name).is_some() {
                    return Err(ParseError::Syntax {
                        pos: at,
                        message: format!("`{name}` is a declared symbol, not a variable"),
                    });
                }
                self.bump();
                self.check_var(name, at)
            }
            _ => self.unexpected("a variable"),
        }
    }

    /// `{x/t, ...}` as raw bindings, in source order.
    pub fn bindings(&mut self) -> PResult<Vec<(String, Term)>> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBrace) {
            return Ok(out);
        }
        loop {
            let at = self.offset();
            let var = self.variable_name()?;
            if out.iter().any(|(v, _)| *v == var) {
                return Err(ParseError::Syntax {
                    pos: at,
                    message: format!("variable `{var}` bound twice"),
                });
            }
            self.expect(Tok::Slash)?;
            out.push((var, self.term()?));
            if self.eat(&Tok::RBrace) {
                return Ok(out);
            }
            if !self.eat(&Tok::Comma) {
                return self.unexpected("`,` or `}`");
            }
        }
    }

    /// Store syntax: `{}` or conjunction-level formulas separated by `;`.
    pub fn store(&mut self) -> PResult<Vec<Formula>> {
        if *self.peek() == Tok::LBrace && *self.peek_at(1) == Tok::RBrace {
            self.bump();
            self.bump();
            return Ok(Vec::new());
        }
        let mut out = vec![self.conj()?];
        while self.eat(&Tok::Semi) {
            out.push(self.conj()?);
        }
        Ok(out)
    }

    /// `error` or `<store | subst>`; `None` stands for the error state.
    #[allow(clippy::type_complexity)]
    pub fn state(&mut self) -> PResult<Option<(Vec<Formula>, Vec<(String, Term)>)>> {
        if let Tok::Ident(kw) = self.peek() {
            if kw == "error" {
                self.bump();
                return Ok(None);
            }
        }
        self.expect(Tok::Lt)?;
        let store = self.store()?;
        self.expect(Tok::Bar)?;
        let bindings = self.bindings()?;
        self.expect(Tok::Gt)?;
        Ok(Some((store, bindings)))
    }
}

fn check_arity(pos: usize, symbol: &str, expected: usize, found: usize) -> PResult<()> {
    if expected == found {
        Ok(())
    } else {
        Err(ParseError::Arity {
            pos,
            symbol: symbol.to_string(),
            expected,
            found,
        })
    }
}

pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Store text for the CLI: formulas separated by `;`, optionally wrapped in `<...>`.
pub fn parse_store(text: &str, sig: &Signature) -> Result<Vec<Formula>, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let wrapped = p.eat(&Tok::Lt);
    let store = if wrapped && *p.peek() == Tok::Gt {
        Vec::new()
    } else {
        p.store()?
    };
    if wrapped {
        p.expect(Tok::Gt)?;
    }
    p.finish()?;
    Ok(store)
}
