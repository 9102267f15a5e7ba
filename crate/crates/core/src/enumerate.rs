//! Exhaustive enumeration of function components and small causal
//! multiteams over a signature.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{Assignment, CausalFunction, CausalMultiteam, FunctionComponent, Multiteam, Signature};

fn binom(n: u128, k: u128) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Number of multisets of size at most `bound` over `items` elements.
pub fn multiset_count(items: usize, bound: usize) -> u128 {
    if items == 0 {
        return 1;
    }
    // sum_{k<=bound} C(items+k-1, k) = C(items+bound, bound)
    binom((items + bound) as u128, bound as u128)
}

/// Distinct non-constant laws for `target`, minimized.
fn laws_for(sig: &Signature, target: usize) -> Vec<CausalFunction> {
    let args: Vec<usize> = (0..sig.len()).filter(|&v| v != target).collect();
    let inputs = sig.tuples(&args).count();
    let out = sig.range_len(target) as u32;
    let mut seen = BTreeSet::new();
    let mut result = Vec::new();
    let mut table = vec![0u32; inputs];
    loop {
        if table.iter().any(|&x| x != table[0]) {
            if let Ok(f) = CausalFunction::new(sig, target, args.clone(), table.clone()) {
                let f = f.minimize(sig);
                if seen.insert((f.args().to_vec(), f.table().to_vec())) {
                    result.push(f);
                }
            }
        }
        let mut i = 0;
        while i < inputs {
            table[i] += 1;
            if table[i] < out {
                break;
            }
            table[i] = 0;
            i += 1;
        }
        if i == inputs {
            break;
        }
    }
    result
}

/// Estimated number of function components before the acyclicity filter.
pub fn function_component_estimate(sig: &Signature) -> u128 {
    let per_var: Vec<u128> = (0..sig.len())
        .map(|v| {
            let inputs: u128 = (0..sig.len()).filter(|&w| w != v).map(|w| sig.range_len(w) as u128).product();
            let out = sig.range_len(v) as u128;
            // out^inputs minus the constant tables, plus "exogenous"
            let all = u32::try_from(inputs).ok().and_then(|i| out.checked_pow(i)).unwrap_or(u128::MAX);
            all.saturating_sub(out).saturating_add(1)
        })
        .collect();
    per_var.iter().fold(1u128, |acc, &x| acc.saturating_mul(x))
}

/// Every recursive function component over `sig`, the empty one first.
pub fn function_components(sig: &Signature, cap: u128) -> Result<Vec<FunctionComponent>> {
    let est = function_component_estimate(sig);
    if est > cap {
        return Err(Error::BudgetExceeded(est));
    }
    let options: Vec<Vec<Option<CausalFunction>>> = (0..sig.len())
        .map(|v| std::iter::once(None).chain(laws_for(sig, v).into_iter().map(Some)).collect())
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; sig.len()];
    loop {
        let fs = pick.iter().enumerate().filter_map(|(v, &i)| options[v][i].clone());
        if let Ok(fc) = FunctionComponent::from_functions(fs) {
            if fc.topological_order(sig).is_ok() {
                out.push(fc);
            }
        }
        let mut v = sig.len();
        loop {
            if v == 0 {
                return Ok(out);
            }
            v -= 1;
            pick[v] += 1;
            if pick[v] < options[v].len() {
                break;
            }
            pick[v] = 0;
        }
    }
}

/// Assignments compatible with `laws`, in lexicographic order.
pub fn compatible_assignments(sig: &Signature, laws: &FunctionComponent) -> Vec<Assignment> {
    let all: Vec<usize> = (0..sig.len()).collect();
    sig.tuples(&all)
        .filter(|row| laws.functions().all(|f| f.eval(row) == row[f.target()]))
        .map(Assignment::new)
        .collect()
}

/// Every multiteam over `items` with total count at most `bound`, by size.
pub fn multiteams(items: &[Assignment], bound: usize) -> Vec<Multiteam> {
    let mut out = Vec::new();
    for size in 0..=bound {
        let mut counts = vec![0u64; items.len()];
        fill(items, &mut counts, 0, size as u64, &mut out);
    }
    out
}

fn fill(items: &[Assignment], counts: &mut [u64], i: usize, left: u64, out: &mut Vec<Multiteam>) {
    if i == items.len() {
        if left == 0 {
            out.push(Multiteam::from_rows(
                items.iter().zip(counts.iter()).filter(|(_, &c)| c > 0).map(|(a, &c)| (a.clone(), c)),
            ));
        }
        return;
    }
    for c in (0..=left).rev() {
        counts[i] = c;
        fill(items, counts, i + 1, left - c, out);
    }
    counts[i] = 0;
}

/// Number of causal multiteams of size at most `bound` over `laws`.
pub fn model_count(sig: &Signature, laws: &[FunctionComponent], bound: usize) -> u128 {
    laws.iter()
        .map(|fc| multiset_count(compatible_assignments(sig, fc).len(), bound))
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// All causal multiteams over `sig` with at most `bound` rows, grouped by
/// function component. Fails before enumerating if the count exceeds `cap`.
pub fn all_models(sig: &Arc<Signature>, bound: usize, cap: u128) -> Result<Vec<CausalMultiteam>> {
    let fcs = function_components(sig, cap)?;
    let n = model_count(sig, &fcs, bound);
    if n > cap {
        return Err(Error::BudgetExceeded(n));
    }
    let mut out = Vec::new();
    for fc in fcs {
        let items = compatible_assignments(sig, &fc);
        let template = CausalMultiteam::empty(Arc::clone(sig), fc)?;
        for team in multiteams(&items, bound) {
            out.push(template.replace_team(team)?);
        }
    }
    Ok(out)
}
