//! Signatures, assignments, multiteams, structural laws and validated causal
//! multiteams.

mod causal;
mod function;
mod signature;
mod team;

pub use causal::{
    causal_graph, check_compatibility_tolerant, new_causal_multiteam, support, CausalGraph, CausalMultiteam,
    ToleranceViolation,
};
pub use function::{minimize_parents, CausalFunction, FunctionComponent};
pub use signature::{Signature, Tuples};
pub use team::{Assignment, AssignmentDisplay, Multiteam};
