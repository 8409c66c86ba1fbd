// Check every policy against the brute-force oracle on a random corpus.

use folc::infer::POLICY_NAMES;
use folc::oracle::corpus::Generator;
use folc::oracle::{check_persistence, check_soundness, Oracle, Verdict};
use folc::{parse_formula, policy, Algebra, EvalContext, State};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let alg = Algebra::integers();
    let oracle = Oracle::with_default_bound(alg.clone());
    let state = State::parse("<x < y | {y/1}>", &alg)?;
    let x_small = parse_formula("x <= 0", alg.signature())?;
    println!("{state} entails {x_small}: {:?}", oracle.state_models(&state, &x_small));
    assert_eq!(oracle.state_models(&state, &x_small), Verdict::True);
    assert_eq!(oracle.truth(&parse_formula("exists x. (0 < x & x < 1)", alg.signature())?), Verdict::False);

    for name in POLICY_NAMES {
        let mut gen = Generator::for_policy(name, 42);
        let alg = gen.algebra().clone();
        let ctx = EvalContext::new(alg.clone(), policy(name).ok_or("missing policy")?);
        let oracle = Oracle::with_default_bound(alg);
        let sound = check_soundness(&ctx, &oracle, gen.cases(100));
        let triples: Vec<_> = (0..50).map(|_| gen.triple(true)).collect();
        let persist = check_persistence(&ctx, &oracle, triples);
        println!(
            "{name:<9} soundness {}/{} (unknown {})  persistence {}/{} (unknown {})",
            sound.passed, sound.cases, sound.skipped_unknown, persist.passed, persist.cases, persist.skipped_unknown
        );
        if !sound.is_clean() || !persist.is_clean() {
            return Err(format!("{name}: {:?} {:?}", sound.violations, persist.violations).into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("soundness check example");
}
