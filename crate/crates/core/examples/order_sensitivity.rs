// The seven conjunctions of the classic order-sensitivity example under the
// store-free `baseline` policy. Reordering a conjunction can turn a result
// into `error`.

use folc::{eval, parse_formula, policy, Algebra, AnswerSet, State, Subst};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let alg = Algebra::integers();
    let baseline = policy("baseline").ok_or("missing policy")?;
    let start_x1 = State::parse("<{} | {x/1}>", &alg)?;
    let items: [(&str, &State, Option<&str>); 7] = [
        ("y = z - 1 & z = x + 2", &start_x1, Some("{x/1, y/2, z/3}")),
        ("y = 1 & z = 1 & y - 1 = z - 1", &State::initial(), Some("{y/1, z/1}")),
        ("y = 1 & z = 2 & y < z", &State::initial(), Some("{y/1, z/2}")),
        ("x = 0 & ~(x = 1)", &State::initial(), Some("{x/0}")),
        ("y - 1 = z - 1 & y = 1 & z = 1", &State::initial(), None),
        ("y < z & y = 1 & z = 2", &State::initial(), None),
        ("~(x = 1) & x = 0", &State::initial(), None),
    ];
    for (i, (text, start, expected)) in items.into_iter().enumerate() {
        let phi = parse_formula(text, alg.signature())?;
        let got = eval(&phi, start, &alg, baseline.clone());
        println!("{}. {text}  ~>  {}", i + 1, got.to_string().replace('\n', ", "));
        let want = match expected {
            Some(subst) => AnswerSet::singleton(State::from_subst(parse_subst(subst, &alg)?)),
            None => AnswerSet::error(),
        };
        if got != want {
            return Err(format!("item {}: expected {want}, got {got}", i + 1).into());
        }
    }
    Ok(())
}

fn parse_subst(text: &str, alg: &Algebra) -> Result<Subst, Box<dyn std::error::Error>> {
    let state = State::parse(&format!("<{{}} | {text}>"), alg)?;
    let (_, theta) = state.as_pair().ok_or("not a pair")?;
    Ok(theta.clone())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("order sensitivity example");
}
