// `literals` also parks negated atoms, so `~(x = 1) & x = 0` finds `x/0`.

use folc::{parse_formula, policy, Algebra, AnswerSet, EvalContext, State};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let alg = Algebra::integers();
    let ctx = EvalContext::new(alg.clone(), policy("literals").ok_or("missing policy")?);

    let phi = parse_formula("~(x = 1)", alg.signature())?;
    let parked = ctx.eval(&phi, &State::initial());
    println!("~(x = 1)  ~>  {parked}");
    assert_eq!(parked, AnswerSet::singleton(State::parse("<~(x = 1) | {}>", &alg)?));

    let phi = parse_formula("~(x = 1) & x = 0", alg.signature())?;
    let got = ctx.eval(&phi, &State::initial());
    println!("~(x = 1) & x = 0  ~>  {got}");
    assert_eq!(got, AnswerSet::singleton(State::parse("<{} | {x/0}>", &alg)?));

    let phi = parse_formula("~(x = 1) & x = 1", alg.signature())?;
    let got = ctx.eval(&phi, &State::initial());
    println!("~(x = 1) & x = 1  ~>  no answers");
    assert!(got.is_empty());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("negative literals example");
}
