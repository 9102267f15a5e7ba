//! Rescalings, the capture formulas and a bounded definability check.

use std::sync::Arc;

use num_integer::Integer;

use crate::enumerate::{compatible_assignments, function_components, multiset_count, multiteams};
use crate::error::{Error, Result};
use crate::formula::{bot_pco, CoFormula, PcoFormula, Rel};
use crate::model::{Assignment, CausalMultiteam, FunctionComponent, Multiteam, Signature};
use crate::rational::{ratio, Rational};
use crate::semantics::Checker;

/// `count(s) / |m|`.
pub fn epsilon_of(m: &CausalMultiteam, s: &Assignment) -> Result<Rational> {
    if m.is_empty() {
        return Err(Error::EmptyModel);
    }
    Ok(ratio(m.team().count(s), m.len()))
}

fn same_signature(a: &CausalMultiteam, b: &CausalMultiteam) -> Result<()> {
    if Arc::ptr_eq(a.signature_arc(), b.signature_arc()) || a.signature() == b.signature() {
        Ok(())
    } else {
        Err(Error::SignatureMismatch)
    }
}

/// Same laws, and either both empty or every assignment has the same
/// probability in both.
pub fn is_rescaling(a: &CausalMultiteam, b: &CausalMultiteam) -> Result<bool> {
    same_signature(a, b)?;
    if a.laws() != b.laws() {
        return Ok(false);
    }
    if a.is_empty() || b.is_empty() {
        return Ok(a.is_empty() && b.is_empty());
    }
    Ok(canonical(a).team() == canonical(b).team())
}

/// Every count multiplied by `n`.
///
/// # Panics
/// If `n` is zero.
pub fn scale(m: &CausalMultiteam, n: u64) -> CausalMultiteam {
    assert!(n >= 1, "scale factor must be positive");
    m.with_team(m.team().map_counts(|c| c * n))
}

/// The smallest multiteam that is a multiple of both.
pub fn common_multiple(a: &CausalMultiteam, b: &CausalMultiteam) -> Result<CausalMultiteam> {
    if a.is_empty() || b.is_empty() || !is_rescaling(a, b)? {
        return Err(Error::NotRescalings);
    }
    let l = a.len().lcm(&b.len());
    let out = scale(a, l / a.len());
    debug_assert_eq!(out.team(), scale(b, l / b.len()).team());
    Ok(out)
}

/// Counts divided by their gcd.
pub fn canonical(m: &CausalMultiteam) -> CausalMultiteam {
    let g = m.team().count_gcd();
    if g <= 1 {
        return m.clone();
    }
    m.with_team(m.team().map_counts(|c| c / g))
}

fn point_event(sig: &Signature, values: &[u32]) -> CoFormula {
    let eqs = values.iter().enumerate().map(|(v, &x)| CoFormula::eq(sig.name(v), sig.value(v, x)));
    CoFormula::and_all(eqs).expect("signatures are nonempty")
}

/// States that the multiteam is a rescaling of `team`: every assignment of
/// the signature gets its exact probability, zero included. The empty team
/// gives `bot`.
pub fn theta_formula(team: &Multiteam, sig: &Signature) -> Result<PcoFormula> {
    if team.is_empty() {
        return bot_pco(Some(sig));
    }
    let all: Vec<usize> = (0..sig.len()).collect();
    let n = team.len();
    let atoms = sig.tuples(&all).map(|s| {
        let eps = ratio(team.count(&Assignment::new(s.clone())), n);
        PcoFormula::pr(point_event(sig, &s), Rel::Eq, eps)
    });
    PcoFormula::and_all(atoms).ok_or_else(|| Error::InvalidSignature("no variables".into()))
}

/// States that the laws are exactly `laws`.
pub fn phi_formula(laws: &FunctionComponent, sig: &Signature) -> CoFormula {
    let mut parts = Vec::new();
    for v in 0..sig.len() {
        let others: Vec<usize> = (0..sig.len()).filter(|&w| w != v).collect();
        let antecedent = |w: &[u32]| -> Vec<(String, String)> {
            others.iter().zip(w).map(|(&o, &x)| (sig.name(o).to_string(), sig.value(o, x).to_string())).collect()
        };
        let lit = |x: u32| CoFormula::eq(sig.name(v), sig.value(v, x));
        for w in sig.tuples(&others) {
            let cf = |body: CoFormula| -> CoFormula {
                if others.is_empty() {
                    body
                } else {
                    CoFormula::cf(antecedent(&w), body)
                }
            };
            match laws.get(v) {
                Some(f) => {
                    let mut row = vec![0u32; sig.len()];
                    for (&o, &x) in others.iter().zip(&w) {
                        row[o] = x;
                    }
                    parts.push(cf(lit(f.eval(&row))));
                }
                None => {
                    for x in 0..sig.range_len(v) as u32 {
                        parts.push(CoFormula::sup(lit(x), cf(lit(x))));
                    }
                }
            }
        }
    }
    CoFormula::and_all(parts).unwrap_or(CoFormula::Top)
}

/// `k`-fold strict tensor of `NE`: at least `k` rows. `k = 0` gives `top`.
pub fn theta_k_formula(k: usize) -> PcoFormula {
    (1..k).fold(if k == 0 { PcoFormula::Top } else { PcoFormula::Ne }, |acc, _| PcoFormula::strict(acc, PcoFormula::Ne))
}

/// A finite set of causal multiteams over one signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteClass {
    sig: Arc<Signature>,
    members: Vec<CausalMultiteam>,
}

impl FiniteClass {
    /// Duplicates are dropped; all members must share the signature.
    pub fn new(sig: impl Into<Arc<Signature>>, members: impl IntoIterator<Item = CausalMultiteam>) -> Result<Self> {
        let sig = sig.into();
        let mut out: Vec<CausalMultiteam> = Vec::new();
        for m in members {
            if *m.signature() != *sig {
                return Err(Error::SignatureMismatch);
            }
            if !out.contains(&m) {
                out.push(m);
            }
        }
        Ok(FiniteClass { sig, members: out })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn members(&self) -> &[CausalMultiteam] {
        &self.members
    }

    /// Whether `m` is empty or a rescaling of some nonempty member.
    pub fn closure_contains(&self, m: &CausalMultiteam) -> Result<bool> {
        if m.is_empty() {
            return Ok(true);
        }
        for t in &self.members {
            if !t.is_empty() && is_rescaling(t, m)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// `\/` over the members of `Theta & Phi`, with `top` in place of `Phi`
/// for empty members.
pub fn psi_formula(k: &FiniteClass) -> Result<PcoFormula> {
    let mut parts = Vec::new();
    for m in k.members() {
        let theta = theta_formula(m.team(), &k.sig)?;
        let phi = if m.is_empty() {
            PcoFormula::Top
        } else {
            PcoFormula::try_from_co(&phi_formula(m.laws(), &k.sig)).expect("no tensor in phi")
        };
        parts.push(PcoFormula::and(theta, phi));
    }
    PcoFormula::gdisj_all(parts).ok_or(Error::EmptyClass)
}

/// A model on which the formula and the expected class disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub model: CausalMultiteam,
    pub satisfies_psi: bool,
    pub in_closure: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefinabilityReport {
    pub models_checked: u64,
    pub satisfying: u64,
    pub expected: u64,
    pub discrepancies: Vec<Discrepancy>,
}

impl DefinabilityReport {
    pub fn agrees(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Default model cap for [`check_definability`].
pub const DEFAULT_CAP: u128 = 1_000_000;

/// Enumerates every causal multiteam over the class signature with at most
/// `bound` rows and compares `m |= psi_formula(k)` with membership in the
/// rescaling closure of `k` plus the empty models.
pub fn check_definability(k: &FiniteClass, bound: usize, cap: u128) -> Result<DefinabilityReport> {
    let psi = psi_formula(k)?;
    let sig = &k.sig;
    let fcs = function_components(sig, cap)?;
    let items: Vec<Vec<Assignment>> = fcs.iter().map(|fc| compatible_assignments(sig, fc)).collect();
    let estimate = items.iter().map(|i| multiset_count(i.len(), bound)).fold(0u128, |a, b| a.saturating_add(b));
    if estimate > cap {
        return Err(Error::BudgetExceeded(estimate));
    }
    let mut report = DefinabilityReport { models_checked: 0, satisfying: 0, expected: 0, discrepancies: Vec::new() };
    for (fc, items) in fcs.into_iter().zip(items) {
        let template = CausalMultiteam::empty(Arc::clone(sig), fc)?;
        let checker = Checker::new(&template, &psi)?;
        for team in multiteams(&items, bound) {
            let m = template.replace_team(team)?;
            let sat = checker.check(&m)?;
            let exp = k.closure_contains(&m)?;
            report.models_checked += 1;
            report.satisfying += u64::from(sat);
            report.expected += u64::from(exp);
            if sat != exp {
                report.discrepancies.push(Discrepancy { model: m, satisfies_psi: sat, in_closure: exp });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{coin, inc, multiteam, s3};
    use crate::model::CausalFunction;
    use crate::semantics::satisfies;

    fn holds(m: &CausalMultiteam, f: &PcoFormula) -> bool {
        satisfies(m, f).unwrap().verdict
    }

    fn bin2() -> Arc<Signature> {
        Arc::new(Signature::new([("X", vec!["0", "1"]), ("Y", vec!["0", "1"])]).unwrap())
    }

    fn copy_model() -> CausalMultiteam {
        let sig = bin2();
        let f = CausalFunction::from_tokens(&sig, "Y", &["X"], [(vec!["0"], "0"), (vec!["1"], "1")]).unwrap();
        let team = multiteam(&sig, &[(&["0", "0"], 1), (&["1", "1"], 2)]);
        CausalMultiteam::new(sig, team, FunctionComponent::from_functions([f]).unwrap()).unwrap()
    }

    #[test]
    fn epsilons() {
        let m = inc();
        assert_eq!(epsilon_of(&m, &Assignment::new(vec![2, 2])).unwrap(), ratio(1, 2));
        assert_eq!(epsilon_of(&m, &Assignment::new(vec![0, 2])).unwrap(), ratio(0, 1));
        let one = m.with_team(multiteam(m.signature(), &[(&["1", "2"], 1)]));
        assert_eq!(epsilon_of(&one, &Assignment::new(vec![1, 1])).unwrap(), ratio(1, 1));
    }

    #[test]
    fn rescaling_relation() {
        let m = inc();
        assert!(is_rescaling(&m, &scale(&m, 2)).unwrap());
        assert_eq!(scale(&m, 1), m);
        assert_eq!(scale(&m, 2).team().count(&Assignment::new(vec![2, 2])), 6);

        let sig = m.signature_arc().clone();
        let other = CausalFunction::from_tokens(&sig, "Y", &["X"], [(vec!["0"], "2"), (vec!["1"], "1"), (vec!["2"], "1")])
            .unwrap();
        let team = multiteam(&sig, &[(&["0", "2"], 1), (&["1", "1"], 2), (&["2", "1"], 3)]);
        let g = CausalMultiteam::new(sig, team, FunctionComponent::from_functions([other]).unwrap()).unwrap();
        assert!(!is_rescaling(&m, &g).unwrap());

        let c = coin();
        let a = c.with_team(multiteam(c.signature(), &[(&["heads", "heads"], 1), (&["tails", "tails"], 1)]));
        let b = c.with_team(multiteam(c.signature(), &[(&["heads", "heads"], 1), (&["tails", "tails"], 2)]));
        assert!(!is_rescaling(&a, &b).unwrap());
        assert_eq!(is_rescaling(&a, &inc()), Err(Error::SignatureMismatch));
    }

    #[test]
    fn common_multiples_and_canonical_forms() {
        let c = coin();
        let a = c.with_team(multiteam(c.signature(), &[(&["heads", "heads"], 2)]));
        let b = c.with_team(multiteam(c.signature(), &[(&["heads", "heads"], 3)]));
        assert_eq!(common_multiple(&a, &b).unwrap().len(), 6);
        assert_eq!(common_multiple(&a, &a).unwrap(), a);
        assert_eq!(common_multiple(&a, &scale(&a, 4)).unwrap(), scale(&a, 4));
        assert_eq!(common_multiple(&a, &inc()), Err(Error::SignatureMismatch));
        assert_eq!(common_multiple(&a, &coin()), Err(Error::NotRescalings));

        assert_eq!(canonical(&scale(&inc(), 2)), inc());
        assert_eq!(canonical(&inc()), inc());
        assert_eq!(canonical(&b).len(), 1);
        let five = c.with_team(multiteam(c.signature(), &[(&["heads", "heads"], 5), (&["tails", "tails"], 5)]));
        assert_eq!(canonical(&five).len(), 2);
    }

    #[test]
    fn theta_captures_distributions() {
        let m = s3();
        let theta = theta_formula(m.team(), m.signature()).unwrap();
        assert!(holds(&m, &theta));
        assert!(holds(&scale(&m, 3), &theta));
        let empty_theta = theta_formula(&Multiteam::new(), m.signature()).unwrap();
        assert!(!holds(&m, &empty_theta));
        let other = m.with_team(multiteam(m.signature(), &[(&["0", "0"], 1), (&["0", "1"], 1)]));
        assert!(!holds(&other, &theta));
    }

    #[test]
    fn phi_captures_laws() {
        let m = inc();
        let phi = PcoFormula::try_from_co(&phi_formula(m.laws(), m.signature())).unwrap();
        assert!(holds(&m, &phi));
        let sig = m.signature_arc().clone();
        let other = CausalFunction::from_tokens(&sig, "Y", &["X"], [(vec!["0"], "2"), (vec!["1"], "1"), (vec!["2"], "1")])
            .unwrap();
        let team = multiteam(&sig, &[(&["0", "2"], 1)]);
        let g = CausalMultiteam::new(Arc::clone(&sig), team.clone(), FunctionComponent::from_functions([other]).unwrap())
            .unwrap();
        assert!(!holds(&g, &phi));
        let exo = CausalMultiteam::new(sig, team, FunctionComponent::new()).unwrap();
        assert!(!holds(&exo, &phi));
        assert!(holds(&g.with_team(Multiteam::new()), &phi));
        assert!(!phi_formula(m.laws(), m.signature()).has_tensor());
    }

    #[test]
    fn psi_and_definability() {
        let m = copy_model();
        let k = FiniteClass::new(bin2(), [m.clone()]).unwrap();
        let psi = psi_formula(&k).unwrap();
        for n in 1..4 {
            assert!(holds(&scale(&m, n), &psi));
        }
        let r = check_definability(&k, 6, DEFAULT_CAP).unwrap();
        assert!(r.agrees(), "{:?}", r.discrepancies);
        // empty models of every law set plus 3 rescalings within the bound
        assert_eq!(r.expected, 5 + 2);

        let r0 = check_definability(&k, 0, DEFAULT_CAP).unwrap();
        assert!(r0.agrees());
        assert_eq!((r0.models_checked, r0.satisfying), (5, 5));

        let empty = FiniteClass::new(bin2(), [m.with_team(Multiteam::new())]).unwrap();
        let r = check_definability(&empty, 3, DEFAULT_CAP).unwrap();
        assert!(r.agrees());
        assert_eq!(r.satisfying, 5);

        assert_eq!(psi_formula(&FiniteClass::new(bin2(), []).unwrap()), Err(Error::EmptyClass));
        assert_eq!(FiniteClass::new(bin2(), [inc()]), Err(Error::SignatureMismatch));
        assert!(matches!(check_definability(&k, 6, 10), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn theta_k_is_not_closed_under_rescaling() {
        assert_eq!(theta_k_formula(1), PcoFormula::Ne);
        let c = coin();
        let one = c.with_team(multiteam(c.signature(), &[(&["heads", "heads"], 1)]));
        let two = c.with_team(multiteam(c.signature(), &[(&["heads", "heads"], 1), (&["tails", "heads"], 1)]));
        assert!(!holds(&one, &theta_k_formula(2)));
        assert!(holds(&two, &theta_k_formula(2)));
        assert!(!holds(&one, &theta_k_formula(3)));
        assert!(holds(&scale(&one, 3), &theta_k_formula(3)));
        assert!(!holds(&c.with_team(Multiteam::new()), &PcoFormula::Ne));
    }
}
