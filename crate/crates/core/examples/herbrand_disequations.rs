// Equations over terms are solved by unification; disequations stay in the
// store until they become ground or trivially false.

use folc::{parse_formula, policy, Algebra, AnswerSet, EvalContext, Signature, State};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let alg = Algebra::herbrand(Signature::parse_functions("f/1,g/2,a/0,b/0,c/0")?);
    let ctx = EvalContext::new(alg.clone(), policy("diseq").ok_or("missing policy")?);

    let phi = parse_formula("f(x) /= f(y) & g(x, b) = g(a, y)", alg.signature())?;
    let got = ctx.eval(&phi, &State::initial());
    println!("{phi}  ~>  {got}");
    assert_eq!(got, AnswerSet::singleton(State::parse("<{} | {x/a, y/b}>", &alg)?));

    // a grounding choice for x /= y cannot be made early
    let phi = parse_formula("x /= y & x = c", alg.signature())?;
    let got = ctx.eval(&phi, &State::initial());
    println!("{phi}  ~>  {got}");
    assert_eq!(got, AnswerSet::singleton(State::parse("<x /= y | {x/c}>", &alg)?));

    let phi = parse_formula("x /= y & x = y", alg.signature())?;
    assert!(ctx.eval(&phi, &State::initial()).is_empty());

    let phi = parse_formula("x = f(x)", alg.signature())?;
    assert!(ctx.eval(&phi, &State::initial()).is_empty());
    println!("x = f(x)  ~>  no answers (occurs check)");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("herbrand disequations example");
}
