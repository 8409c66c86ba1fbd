// Linear equations over the rationals are solved by pivoting; non-linear
// ones wait until enough variables are bound.

use folc::infer::{rewrite_linear, Rewrite};
use folc::{parse_formula, policy, Algebra, AnswerSet, EvalContext, State, Subst};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let alg = Algebra::rationals();
    let ctx = EvalContext::new(alg.clone(), policy("linear").ok_or("missing policy")?);

    let eq = parse_formula("x + y = 3", alg.signature())?;
    if let Rewrite::Pivot(x, t) = rewrite_linear(&eq, &Subst::empty()) {
        println!("x + y = 3 pivots to {x} = {t}");
    }

    for (text, expected) in [
        ("x + y = 3 & x - y = 1", "<{} | {x/2, y/1}>"),
        ("2 * x = 1", "<{} | {x/1/2}>"),
        ("x * y = 4 & x = 2", "<{} | {x/2, y/2}>"),
    ] {
        let phi = parse_formula(text, alg.signature())?;
        let got = ctx.eval(&phi, &State::initial());
        println!("{text}  ~>  {got}");
        assert_eq!(got, AnswerSet::singleton(State::parse(expected, &alg)?));
    }

    let phi = parse_formula("x + y = 3 & x + y = 4", alg.signature())?;
    assert!(ctx.eval(&phi, &State::initial()).is_empty());
    println!("x + y = 3 & x + y = 4  ~>  no answers");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("gaussian elimination example");
}
