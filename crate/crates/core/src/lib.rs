//! Exact model checking for probabilistic causal team logic.

pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod formula;
pub mod gen;
pub mod io;
pub mod model;
pub mod rational;
pub mod rescaling;
pub mod sem;
pub mod semantics;
pub mod suite;
pub mod transforms;

pub use error::{Error, Result};
pub use formula::{parse, parse_co, parse_pco, CoFormula, Formula, Pair, PcoFormula, Rel};
pub use model::{Assignment, CausalFunction, CausalMultiteam, FunctionComponent, Multiteam, Signature};
pub use rational::Rational;
pub use semantics::{
    cond_prob, intervene, prob, restrict, satisfies, satisfies_co, satisfies_formula, satisfies_mixed,
    satisfies_traced, Checker, CondProb, EvalResult, EventChecker, MixedReport, Threshold, Trace,
};
