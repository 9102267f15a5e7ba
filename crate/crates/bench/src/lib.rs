//! Workloads shared by the benchmarks.

use std::sync::Arc;

use causalteam::enumerate::function_components;
use causalteam::gen::{Fragment, Gen};
use causalteam::rescaling::FiniteClass;
use causalteam::{CausalMultiteam, FunctionComponent, PcoFormula, Signature};

/// Three variables: `A` ternary, `B` and `C` binary.
pub fn signature() -> Arc<Signature> {
    Arc::new(
        Signature::new([("A", vec!["0", "1", "2"]), ("B", vec!["0", "1"]), ("C", vec!["0", "1"])])
            .expect("valid signature"),
    )
}

pub fn binary2() -> Arc<Signature> {
    Arc::new(Signature::new([("X", vec!["0", "1"]), ("Y", vec!["0", "1"])]).expect("valid signature"))
}

/// Laws with at least one equation, so interventions have work to do.
pub fn laws(sig: &Signature) -> Vec<FunctionComponent> {
    let all = function_components(sig, 10_000_000).expect("small signature");
    all.into_iter().filter(|fc| !fc.is_empty()).collect()
}

/// `n` random models with up to `rows` rows each.
pub fn models(seed: u64, n: usize, rows: u64) -> Vec<CausalMultiteam> {
    let sig = signature();
    let fcs = laws(&sig);
    let mut g = Gen::new(seed, sig);
    (0..n).map(|_| g.model(&fcs, rows / 2, rows)).collect()
}

pub fn formulas(seed: u64, n: usize, depth: usize, fragment: Fragment) -> Vec<PcoFormula> {
    let mut g = Gen::new(seed, signature());
    (0..n).map(|_| g.pco(depth, fragment)).collect()
}

/// A class over two binary variables with `members` random members.
pub fn class(seed: u64, members: usize) -> FiniteClass {
    let sig = binary2();
    let fcs = function_components(&sig, 1_000).expect("small signature");
    let mut g = Gen::new(seed, Arc::clone(&sig));
    let ms: Vec<CausalMultiteam> = (0..members).map(|_| g.model(&fcs, 1, 3)).collect();
    FiniteClass::new(sig, ms).expect("same signature")
}
