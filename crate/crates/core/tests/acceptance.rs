// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use folc::algebra::Algebra;
use folc::infer::{mgu, policy, NotUnifiable, POLICY_NAMES};
use folc::oracle::corpus::Generator;
use folc::oracle::{check_persistence, check_soundness, has_disjunction, Oracle, Report};
use folc::state::{AnswerSet, State};
use folc::syntax::{parse_formula, parse_term, Signature};
use folc::EvalContext;

type Outcome = Result<String, String>;

fn eval_text(policy_name: &str, alg: &Algebra, text: &str, start: &State) -> Result<AnswerSet, String> {
    let phi = parse_formula(text, alg.signature()).map_err(|e| format!("{text}: {e}"))?;
    Ok(EvalContext::new(alg.clone(), policy(policy_name).unwrap()).eval(&phi, start))
}

fn expect(policy_name: &str, alg: &Algebra, text: &str, start: &State, want: &str) -> Result<(), String> {
    let got = eval_text(policy_name, alg, text, start)?;
    let want = AnswerSet::singleton(State::parse(want, alg).map_err(|e| e.to_string())?);
    if got == want {
        Ok(())
    } else {
        Err(format!("{policy_name}: {text} gave {got:?}, expected {want:?}"))
    }
}

fn order_sensitivity_items() -> Outcome {
    let alg = Algebra::integers();
    let x1 = State::parse("<{} | {x/1}>", &alg).unwrap();
    let init = State::initial();
    let items: [(&str, &State, &str); 7] = [
        ("y = z - 1 & z = x + 2", &x1, "<{} | {x/1, y/2, z/3}>"),
        ("y = 1 & z = 1 & y - 1 = z - 1", &init, "<{} | {y/1, z/1}>"),
        ("y = 1 & z = 2 & y < z", &init, "<{} | {y/1, z/2}>"),
        ("x = 0 & ~(x = 1)", &init, "<{} | {x/0}>"),
        ("y - 1 = z - 1 & y = 1 & z = 1", &init, "error"),
        ("y < z & y = 1 & z = 2", &init, "error"),
        ("~(x = 1) & x = 0", &init, "error"),
    ];
    for (text, start, want) in items {
        expect("baseline", &alg, text, start, want)?;
    }
    Ok("7/7 items exact".into())
}

fn passive_atoms() -> Outcome {
    let alg = Algebra::integers();
    let init = State::initial();
    expect("atoms", &alg, "y - 1 = z - 1 & y = 1 & z = 1", &init, "<{} | {y/1, z/1}>")?;
    expect("atoms", &alg, "y < z & y = 1 & z = 2", &init, "<{} | {y/1, z/2}>")?;
    expect("atoms", &alg, "~(x = 1) & x = 0", &init, "error")?;
    Ok("3/3 exact".into())
}

fn negative_literals() -> Outcome {
    expect("literals", &Algebra::integers(), "~(x = 1) & x = 0", &State::initial(), "<{} | {x/0}>")?;
    Ok("1/1 exact".into())
}

fn herbrand_disequations() -> Outcome {
    let alg = Algebra::herbrand(Signature::parse_functions("f/1,g/2,a/0,b/0,c/0").unwrap());
    expect("diseq", &alg, "f(x) /= f(y) & g(x, b) = g(a, y)", &State::initial(), "<{} | {x/a, y/b}>")?;
    let got = eval_text("diseq", &alg, "x /= y & x = c", &State::initial())?;
    let want = AnswerSet::singleton(State::parse("<x /= y | {x/c}>", &alg).unwrap());
    if !got.same_set(&want) {
        return Err(format!("x /= y & x = c gave {got}"));
    }
    Ok("2/2 exact, passive x /= y kept".into())
}

fn embedding() -> Outcome {
    let mut bad = common::embedding_discrepancies("baseline", 101, 500);
    bad.extend(common::embedding_discrepancies("unify", 102, 500));
    if bad.is_empty() {
        Ok("1000 inputs (500 int, 500 herbrand), 0 discrepancies".into())
    } else {
        Err(format!("{} discrepancies, first: {}", bad.len(), bad[0]))
    }
}

fn summarize(name: &str, r: &Report, out: &mut Vec<String>) -> Result<(), String> {
    if let Some(v) = r.violations.first() {
        return Err(format!("{name}: {} violations, first {v:?}", r.violations.len()));
    }
    out.push(format!("{name} {}/{} skip {:.1}%", r.passed, r.cases, 100.0 * r.skip_rate()));
    Ok(())
}

fn soundness() -> Outcome {
    let mut lines = Vec::new();
    for name in POLICY_NAMES {
        let mut gen = Generator::for_policy(name, 202);
        let alg = gen.algebra().clone();
        let ctx = EvalContext::new(alg.clone(), policy(name).unwrap());
        let report = check_soundness(&ctx, &Oracle::with_default_bound(alg), gen.cases(500));
        summarize(name, &report, &mut lines)?;
        if report.skip_rate() >= 0.3 {
            return Err(format!("{name}: skip rate {:.1}%", 100.0 * report.skip_rate()));
        }
    }
    Ok(lines.join(", "))
}

fn persistence() -> Outcome {
    let mut lines = Vec::new();
    for name in POLICY_NAMES {
        let mut gen = Generator::for_policy(name, 303);
        let alg = gen.algebra().clone();
        let ctx = EvalContext::new(alg.clone(), policy(name).unwrap());
        let oracle = Oracle::with_default_bound(alg);
        // both halves on disjunction-free triples, preservation alone otherwise
        let mut triples: Vec<_> = (0..300).map(|_| gen.triple(true)).collect();
        triples.extend((0..100).map(|_| gen.triple(false)).filter(|t| has_disjunction(&t.phi2)));
        let report = check_persistence(&ctx, &oracle, triples);
        summarize(name, &report, &mut lines)?;
    }
    Ok(lines.join(", "))
}

fn healthiness() -> Outcome {
    let bad = common::error_and_identity_failures();
    if let Some(b) = bad.first() {
        return Err(b.clone());
    }
    let mut constructed = 0;
    for name in POLICY_NAMES {
        let p = policy(name).unwrap();
        for alg in common::algebras() {
            let states = common::constructed_stores(&alg);
            constructed += states.len();
            if let Some(b) = common::discard_failures(p.as_ref(), &alg, &states).first() {
                return Err(b.clone());
            }
        }
    }
    let mut lines = Vec::new();
    for name in POLICY_NAMES {
        let stats = common::equivalence_suite(name, 404, 200);
        if let Some(b) = stats.failures.first() {
            return Err(b.clone());
        }
        lines.push(format!("{name} {}/{}", stats.compared, stats.cases));
    }
    Ok(format!("error/identity ok, {constructed} constructed discards refuted, equivalence {}", lines.join(", ")))
}

fn unification() -> Outcome {
    let stats = common::unification_suite(505, 1000);
    if let Some(f) = stats.failures.first() {
        return Err(f.clone());
    }
    let sig = Signature::parse_functions("f/1,g/2,a/0").unwrap();
    let occurs = [("x", "f(x)"), ("g(x, a)", "g(f(x), a)"), ("g(x, y)", "g(f(y), f(x))"), ("f(g(x, x))", "f(g(y, f(y)))")];
    for (s, t) in occurs {
        let (s, t) = (parse_term(s, &sig).unwrap(), parse_term(t, &sig).unwrap());
        if !matches!(mgu(&s, &t), Err(NotUnifiable::Occurs(..))) {
            return Err(format!("{s} = {t} passed the occurs check"));
        }
    }
    Ok(format!(
        "{} pairs ({} unifiable, {} beyond search depth), {} occurs-check cases rejected",
        stats.pairs,
        stats.unifiable,
        stats.inconclusive,
        occurs.len()
    ))
}

fn gaussian() -> Outcome {
    expect("linear", &Algebra::rationals(), "x + y = 3 & x - y = 1", &State::initial(), "<{} | {x/2, y/1}>")?;
    let stats = common::gaussian_suite(606, 200);
    if let Some(f) = stats.failures.first() {
        return Err(f.clone());
    }
    Ok(format!("{{x/2, y/1}} exact, {} systems, {} sampled points agree", stats.systems, stats.samples))
}

fn non_commutativity() -> Outcome {
    let alg = Algebra::integers();
    let init = State::initial();
    let (ab, ba) = ("y < z & y = 1 & z = 2", "y = 1 & z = 2 & y < z");
    let base = (eval_text("baseline", &alg, ab, &init)?, eval_text("baseline", &alg, ba, &init)?);
    if !(base.0 == AnswerSet::error() && !base.1.contains_error() && base.0 != base.1) {
        return Err(format!("baseline: {} vs {}", base.0, base.1));
    }
    let atoms = (eval_text("atoms", &alg, ab, &init)?, eval_text("atoms", &alg, ba, &init)?);
    if atoms.0 != atoms.1 {
        return Err(format!("atoms: {} vs {}", atoms.0, atoms.1));
    }
    Ok("baseline: error vs success; atoms: equal".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("golden order sensitivity under baseline", order_sensitivity_items),
        ("golden passive atoms", passive_atoms),
        ("golden negative literals", negative_literals),
        ("golden herbrand disequations", herbrand_disequations),
        ("embedding of the reference semantics", embedding),
        ("soundness suite", soundness),
        ("persistence suite", persistence),
        ("healthiness suite", healthiness),
        ("unification suite", unification),
        ("gaussian suite", gaussian),
        ("non-commutativity witness", non_commutativity),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
