//! Small models used by the examples, tests and CLI demos.

use std::sync::Arc;

use crate::model::{Assignment, CausalFunction, CausalMultiteam, FunctionComponent, Multiteam, Signature};

/// Multiteam from value tokens listed in signature order.
pub fn multiteam(sig: &Signature, rows: &[(&[&str], u64)]) -> Multiteam {
    Multiteam::from_rows(rows.iter().map(|(vals, c)| {
        let a = Assignment::from_tokens(sig, sig.vars().iter().map(String::as_str).zip(vals.iter().copied()))
            .expect("fixture rows are valid");
        (a, *c)
    }))
}

/// `X` in {0,1,2}, `Y` in {1,2,3}, `Y := X+1`, rows (0,1), (1,2)x2, (2,3)x3.
pub fn inc() -> CausalMultiteam {
    let sig = Signature::new([("X", vec!["0", "1", "2"]), ("Y", vec!["1", "2", "3"])]).expect("valid");
    let f = CausalFunction::from_tokens(&sig, "Y", &["X"], [(vec!["0"], "1"), (vec!["1"], "2"), (vec!["2"], "3")])
        .expect("valid");
    let team = multiteam(&sig, &[(&["0", "1"], 1), (&["1", "2"], 2), (&["2", "3"], 3)]);
    CausalMultiteam::new(Arc::new(sig), team, FunctionComponent::from_functions([f]).expect("valid")).expect("valid")
}

/// Two fair coins, no laws: each of the four outcomes once.
pub fn coin() -> CausalMultiteam {
    let sig = Signature::new([("X", vec!["heads", "tails"]), ("Y", vec!["heads", "tails"])]).expect("valid");
    let team = multiteam(
        &sig,
        &[(&["tails", "tails"], 1), (&["tails", "heads"], 1), (&["heads", "tails"], 1), (&["heads", "heads"], 1)],
    );
    CausalMultiteam::new(Arc::new(sig), team, FunctionComponent::new()).expect("valid")
}

/// Binary `X`, `Y`, no laws, rows (0,0)x2 and (0,1).
pub fn s3() -> CausalMultiteam {
    let sig = Signature::new([("X", vec!["0", "1"]), ("Y", vec!["0", "1"])]).expect("valid");
    let team = multiteam(&sig, &[(&["0", "0"], 2), (&["0", "1"], 1)]);
    CausalMultiteam::new(Arc::new(sig), team, FunctionComponent::new()).expect("valid")
}
