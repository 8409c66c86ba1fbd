//! The `folc` command line: evaluate a formula or check it against the oracle.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{Algebra, Subst};
use crate::infer::{policy, POLICY_NAMES};
use crate::oracle::{check_persistence, check_soundness, Case, Report};
use crate::oracle::corpus::{Generator, Shape, HERBRAND_SIG};
use crate::oracle::{Oracle, SearchBound};
use crate::semantics::EvalContext;
use crate::state::{AnswerSet, State, Store};
use crate::syntax::{parse_formula, Parser as TextParser, Signature};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR_STATE: i32 = 1;
pub const EXIT_EMPTY: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "folc", version, about = "Evaluate first-order formulas against a constraint store")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the answer set of a formula.
    Eval(EvalArgs),
    /// Run the oracle property suites and print a JSON report.
    Check(CheckArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Herbrand,
    Int,
    Rat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusKind {
    Random,
}

#[derive(Args, Debug)]
pub struct Common {
    #[arg(long, value_enum, default_value = "int")]
    pub algebra: AlgebraKind,
    /// Herbrand signature, e.g. "f/1,g/2,a/0,b/0".
    #[arg(long)]
    pub sig: Option<String>,
    #[arg(long, default_value = "baseline", value_parser = clap::builder::PossibleValuesParser::new(POLICY_NAMES))]
    pub policy: String,
    /// Initial store, formulas separated by `;`.
    #[arg(long)]
    pub store: Option<String>,
    /// Initial substitution, e.g. "{x/1, y/f(a)}".
    #[arg(long)]
    pub theta: Option<String>,
    /// Write evaluation events as JSON lines to stderr.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub json: bool,
    pub formula: String,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: Common,
    /// Oracle window for numeric algebras, e.g. -3..3.
    #[arg(long, allow_hyphen_values = true)]
    pub bound: Option<String>,
    /// Oracle term depth for Herbrand.
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, value_enum)]
    pub corpus: Option<CorpusKind>,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
    pub formula: Option<String>,
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(String);

fn usage(e: impl ToString) -> UsageError {
    UsageError(e.to_string())
}

/// Exit code for an answer set.
pub fn exit_code(answers: &AnswerSet) -> i32 {
    if answers.contains_error() {
        EXIT_ERROR_STATE
    } else if answers.is_empty() {
        EXIT_EMPTY
    } else {
        EXIT_OK
    }
}

/// Run with explicit arguments and sinks. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => eval(a, out),
        Command::Check(a) => check(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "folc: {e}");
            EXIT_USAGE
        }
    }
}

fn algebra(c: &Common) -> Result<Algebra, UsageError> {
    match (c.algebra, &c.sig) {
        (AlgebraKind::Herbrand, sig) => {
            let sig = Signature::parse_functions(sig.as_deref().unwrap_or(HERBRAND_SIG)).map_err(usage)?;
            Ok(Algebra::herbrand(sig))
        }
        (_, Some(_)) => Err(usage("--sig applies to the herbrand algebra only")),
        (AlgebraKind::Int, None) => Ok(Algebra::integers()),
        (AlgebraKind::Rat, None) => Ok(Algebra::rationals()),
    }
}

fn initial_state(c: &Common, alg: &Algebra) -> Result<State, UsageError> {
    let store = match &c.store {
        Some(text) => crate::syntax::parse_store(text, alg.signature()).map_err(|e| usage(format!("--store: {e}")))?,
        None => Vec::new(),
    };
    let bindings = match &c.theta {
        Some(text) => {
            let mut p = TextParser::new(text, alg.signature()).map_err(|e| usage(format!("--theta: {e}")))?;
            let b = p.bindings().map_err(|e| usage(format!("--theta: {e}")))?;
            p.finish().map_err(|e| usage(format!("--theta: {e}")))?;
            b
        }
        None => Vec::new(),
    };
    Ok(State::pair(Store::from_formulas(store), Subst::new(bindings, alg)))
}

fn context(c: &Common, alg: &Algebra) -> EvalContext {
    let ctx = EvalContext::new(alg.clone(), policy(&c.policy).expect("validated by clap"));
    if c.trace {
        ctx.with_trace(Box::new(std::io::stderr()))
    } else {
        ctx
    }
}

fn eval(a: &EvalArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    let alg = algebra(&a.common)?;
    let phi = parse_formula(&a.formula, alg.signature()).map_err(usage)?;
    let sigma = initial_state(&a.common, &alg)?;
    let answers = context(&a.common, &alg).eval(&phi, &sigma);
    let written = if a.json {
        serde_json::to_writer_pretty(&mut *out, &answers.to_json())
            .map_err(usage)
            .and_then(|_| writeln!(out).map_err(usage))
    } else if answers.is_empty() {
        writeln!(out, "no answers").map_err(usage)
    } else {
        writeln!(out, "{answers}").map_err(usage)
    };
    written?;
    Ok(exit_code(&answers))
}

fn parse_bound(text: &str) -> Result<(i64, i64), UsageError> {
    let bad = || usage(format!("--bound expects lo..hi, got `{text}`"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn search_bound(a: &CheckArgs, alg: &Algebra) -> Result<SearchBound, UsageError> {
    let mut bound = SearchBound::default_for(alg);
    match &mut bound {
        SearchBound::Herbrand { depth } => {
            if a.bound.is_some() {
                return Err(usage("--bound applies to numeric algebras; use --depth"));
            }
            if let Some(d) = a.depth {
                *depth = d;
            }
        }
        SearchBound::Int { lo, hi } | SearchBound::Rat { lo, hi, .. } => {
            if a.depth.is_some() {
                return Err(usage("--depth applies to the herbrand algebra; use --bound"));
            }
            if let Some(text) = &a.bound {
                (*lo, *hi) = parse_bound(text)?;
            }
        }
    }
    Ok(bound)
}

#[derive(Serialize)]
struct CheckReport<'a> {
    policy: &'a str,
    algebra: &'a str,
    soundness: Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    persistence: Option<Report>,
    violations: usize,
}

fn check(a: &CheckArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    let alg = algebra(&a.common)?;
    let oracle = Oracle::new(alg.clone(), search_bound(a, &alg)?);
    let ctx = context(&a.common, &alg);
    let (soundness, persistence) = match &a.formula {
        Some(text) => {
            let phi = parse_formula(text, alg.signature()).map_err(usage)?;
            let state = initial_state(&a.common, &alg)?;
            (check_soundness(&ctx, &oracle, [Case { phi, state }]), None)
        }
        None => {
            let mut shape = Shape::default();
            shape.stores = a.common.policy != "baseline";
            let mut gen = Generator::for_algebra(a.seed, alg.clone(), shape);
            let cases = gen.cases(a.n);
            let triples: Vec<_> = (0..a.n).map(|i| gen.triple(i % 2 == 0)).collect();
            (check_soundness(&ctx, &oracle, cases), Some(check_persistence(&ctx, &oracle, triples)))
        }
    };
    let violations = soundness.violations.len() + persistence.as_ref().map_or(0, |r| r.violations.len());
    let report = CheckReport {
        policy: &a.common.policy,
        algebra: alg.name(),
        soundness,
        persistence,
        violations,
    };
    serde_json::to_writer_pretty(&mut *out, &report).map_err(usage)?;
    writeln!(out).map_err(usage)?;
    Ok(if violations == 0 { EXIT_OK } else { EXIT_ERROR_STATE })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("folc").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bounds_parse() {
        assert_eq!(parse_bound("-3..3").unwrap(), (-3, 3));
        assert_eq!(parse_bound("0..0").unwrap(), (0, 0));
        assert!(parse_bound("3..-3").is_err());
        assert!(parse_bound("3").is_err());
    }

    #[test]
    fn eval_prints_states() {
        let (code, out, _) = run_args(&["eval", "--policy", "atoms", "y < z & y = 1 & z = 2"]);
        assert_eq!((code, out.as_str()), (0, "<{} | {y/1, z/2}>\n"));
        let (code, out, _) = run_args(&["eval", "y < z & y = 1 & z = 2"]);
        assert_eq!((code, out.as_str()), (1, "error\n"));
        let (code, _, _) = run_args(&["eval", "~(x = x)"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn usage_errors_exit_3() {
        assert_eq!(run_args(&["eval", "x = "]).0, 3);
        assert_eq!(run_args(&["eval", "--policy", "elim", "x = 1"]).0, 3);
        assert_eq!(run_args(&["eval", "--sig", "a/0", "x = 1"]).0, 3);
        assert_eq!(run_args(&["eval", "--theta", "{x/}", "x = 1"]).0, 3);
        assert_eq!(run_args(&["check", "--algebra", "herbrand", "--bound", "0..1", "x = a"]).0, 3);
        assert_eq!(run_args(&["frobnicate"]).0, 3);
    }

    #[test]
    fn initial_state_flags() {
        let (code, out, _) = run_args(&["eval", "--policy", "atoms", "--store", "x < y", "--theta", "{x/1}", "y = 2"]);
        assert_eq!((code, out.as_str()), (0, "<{} | {x/1, y/2}>\n"));
    }
}
