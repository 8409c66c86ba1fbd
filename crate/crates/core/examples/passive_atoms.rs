// Atoms that cannot be decided yet wait in the store. Under `atoms` the
// conjunctions that failed under `baseline` succeed, while a negated atom
// is still out of reach.

use folc::{parse_formula, policy, Algebra, AnswerSet, EvalContext, State};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let alg = Algebra::integers();
    let ctx = EvalContext::new(alg.clone(), policy("atoms").ok_or("missing policy")?);
    let cases = [
        ("y - 1 = z - 1 & y = 1 & z = 1", "<{} | {y/1, z/1}>"),
        ("y < z & y = 1 & z = 2", "<{} | {y/1, z/2}>"),
        ("~(x = 1) & x = 0", "error"),
    ];
    for (text, expected) in cases {
        let phi = parse_formula(text, alg.signature())?;
        let got = ctx.eval(&phi, &State::initial());
        println!("{text}  ~>  {got}");
        assert_eq!(got, AnswerSet::singleton(State::parse(expected, &alg)?));
    }

    // the intermediate state keeps `y < z` passive
    let half = parse_formula("y < z & y = 1", alg.signature())?;
    let got = ctx.eval(&half, &State::initial());
    println!("y < z & y = 1  ~>  {got}");
    assert_eq!(got, AnswerSet::singleton(State::parse("<y < z | {y/1}>", &alg)?));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("passive atoms example");
}
