// `exists` renames its variable apart, evaluates the body and drops the
// local variable again, quantifying leftover constraints that mention it.

use folc::state::drop_state;
use folc::{parse_formula, policy, Algebra, AnswerSet, EvalContext, State};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let alg = Algebra::integers();
    let ctx = EvalContext::new(alg.clone(), policy("atoms").ok_or("missing policy")?);

    let phi = parse_formula("exists x. x = 1", alg.signature())?;
    let got = ctx.eval(&phi, &State::initial());
    println!("{phi}  ~>  {got}");
    assert_eq!(got, AnswerSet::singleton(State::initial()));

    // atoms cannot solve y + 1 = 3, and the quantified residue is outside its fragment
    let phi = parse_formula("exists u. (u = y + 1 & u = 3)", alg.signature())?;
    let got = ctx.eval(&phi, &State::initial());
    println!("{phi}  ~>  {got}   (atoms)");
    assert_eq!(got, AnswerSet::error());

    let rat = Algebra::rationals();
    let linear = EvalContext::new(rat.clone(), policy("linear").ok_or("missing policy")?);
    let phi = parse_formula("exists u. (u = y + 1 & u = 3)", rat.signature())?;
    let got = linear.eval(&phi, &State::initial());
    println!("{phi}  ~>  {got}   (linear)");
    assert_eq!(got, AnswerSet::singleton(State::parse("<{} | {y/2}>", &rat)?));

    // a binding of the local variable that a stored atom still needs
    let inner = State::parse_output("<$u1 < z | {$u1/1}>", &alg)?;
    let dropped = drop_state("$u1", &inner);
    println!("drop $u1 from {inner}  =  {dropped}");
    assert_eq!(dropped, State::parse_output("<exists $u1. ($u1 = 1 & $u1 < z) | {}>", &alg)?);

    let gone = drop_state("$u1", &State::parse_output("<{} | {$u1/1, x/2}>", &alg)?);
    assert_eq!(gone, State::parse("<{} | {x/2}>", &alg)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("local variables example");
}
