// Evaluation events as JSON lines, one per clause and per `infer` call.

use folc::{parse_formula, policy, Algebra, EvalContext, State};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let alg = Algebra::integers();
    let ctx = EvalContext::new(alg.clone(), policy("atoms").ok_or("missing policy")?).with_trace(Box::new(std::io::stdout()));
    let phi = parse_formula("y < z & y = 1", alg.signature())?;
    let got = ctx.eval(&phi, &State::initial());
    assert_eq!(got.len(), 1);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("tracing example");
}
