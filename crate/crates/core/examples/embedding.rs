// The store-free reference semantics and `baseline` agree on every input.

use folc::infer::{apt00_eval, Outcome};
use folc::oracle::corpus::Generator;
use folc::{policy, EvalContext, State};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (name, seed) in [("baseline", 1), ("diseq", 2)] {
        // the diseq generator gives Herbrand formulas; evaluation is still baseline
        let mut gen = Generator::for_policy(name, seed);
        let alg = gen.algebra().clone();
        let ctx = EvalContext::new(alg.clone(), policy("baseline").ok_or("missing policy")?);
        let mut agree = 0;
        for _ in 0..200 {
            let phi = gen.formula();
            let State::Pair(_, theta) = gen.state() else { unreachable!() };
            let ours = ctx.eval(&phi, &State::from_subst(theta.clone()));
            let reference = apt00_eval(&phi, &theta, &alg);
            let substs_match = ours.iter().all(|s| match s {
                State::Error => true,
                State::Pair(c, eta) => c.is_empty() && reference.contains(&Outcome::Subst(eta.clone())),
            }) && reference.iter().all(|o| match o {
                Outcome::Error => true,
                Outcome::Subst(eta) => ours.contains(&State::from_subst(eta.clone())),
            });
            let errors_match = ours.contains_error() == reference.contains(&Outcome::Error);
            if !(substs_match && errors_match) {
                return Err(format!("disagreement on {phi}").into());
            }
            agree += 1;
        }
        println!("{} algebra: {agree} formulas agree", alg.name());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("embedding example");
}
