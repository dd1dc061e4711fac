//! Workload generators shared by the benchmarks.

use cplogic::{parse_theory, validate_theory, Interpretation, Theory};

/// `n` independent throwers, each shattering the bottle with probability
/// 1/2. The execution tree has `2^(n+1) - 1` nodes.
pub fn throwers(n: usize) -> (Theory, Interpretation) {
    let names: Vec<String> = (0..n).map(|i| format!("throws{i}")).collect();
    let mut src = format!("exogenous {}.\n", names.join(", "));
    for name in &names {
        src.push_str(&format!("shatters:1/2 <- {name}.\n"));
    }
    let theory =
        validate_theory(parse_theory(&src).expect("generated source parses")).expect("generated theory is valid");
    let ctx = names.iter().map(|n| theory.atom(n).unwrap()).collect();
    (theory, ctx)
}

/// A chain `a1 <- a0, a2 <- a1, ...` where every link may fail with
/// probability 1/3, plus a competing negative influence at each step.
pub fn chain(n: usize) -> (Theory, Interpretation) {
    let mut src = String::from("exogenous a0.\n");
    for i in 1..=n {
        src.push_str(&format!("a{i}:2/3 <- a{}.\n", i - 1));
        src.push_str(&format!("b{i}:1/2 <- a{}, ~a{i}.\n", i - 1));
    }
    let theory =
        validate_theory(parse_theory(&src).expect("generated source parses")).expect("generated theory is valid");
    let ctx = [theory.atom("a0").unwrap()].into_iter().collect();
    (theory, ctx)
}
