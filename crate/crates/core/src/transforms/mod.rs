//! Rewriting passes over PCO formulas.

mod cneg;
mod nf;

pub use cneg::{compile_cneg, material_implication};
pub use nf::{classify_rung, flatten_counterfactuals, normal_form, LeafKind, NfLeaf, NormalForm, RungReport};
