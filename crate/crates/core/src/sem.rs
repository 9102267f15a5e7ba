//! Semi-deterministic recursive structural equation models and their
//! translation to and from causal multiteams.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::formula::Pair;
use crate::model::{Assignment, CausalMultiteam, FunctionComponent, Multiteam, Signature};
use crate::rational::{format_compact, ratio, Rational};

/// Structural laws plus a distribution over exogenous tuples. Tuples list
/// the exogenous values in signature order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sem {
    sig: Arc<Signature>,
    laws: FunctionComponent,
    order: Vec<usize>,
    exogenous: Vec<usize>,
    exo_dist: BTreeMap<Vec<u32>, Rational>,
}

impl Sem {
    /// Validates ranges, recursivity and that the weights are nonnegative
    /// and sum to one. Zero weights are dropped.
    pub fn new(
        sig: impl Into<Arc<Signature>>,
        laws: FunctionComponent,
        exo_dist: BTreeMap<Vec<u32>, Rational>,
    ) -> Result<Self> {
        let sig = sig.into();
        // reuse the model checks on laws: non-constancy and acyclicity
        let probe = CausalMultiteam::empty(Arc::clone(&sig), laws)?;
        let laws = probe.laws().clone();
        let order = probe.order().to_vec();
        let exogenous = laws.exogenous(&sig);
        let mut total = Rational::zero();
        let mut dist = BTreeMap::new();
        for (u, p) in exo_dist {
            if u.len() != exogenous.len() {
                return Err(Error::InvalidDistribution(format!(
                    "tuple has {} values, there are {} exogenous variables",
                    u.len(),
                    exogenous.len()
                )));
            }
            for (&v, &x) in exogenous.iter().zip(&u) {
                if x as usize >= sig.range_len(v) {
                    return Err(Error::RangeError { variable: sig.name(v).to_string(), value: format!("#{x}") });
                }
            }
            if p.is_negative() {
                return Err(Error::InvalidDistribution(format!("negative weight {}", format_compact(&p))));
            }
            total += &p;
            if !p.is_zero() {
                dist.insert(u, p);
            }
        }
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!("weights sum to {}", format_compact(&total))));
        }
        Ok(Sem { sig, laws, order, exogenous, exo_dist: dist })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn laws(&self) -> &FunctionComponent {
        &self.laws
    }

    /// Exogenous variables in signature order.
    pub fn exogenous(&self) -> &[usize] {
        &self.exogenous
    }

    /// Tuples with positive weight.
    pub fn exo_dist(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.exo_dist
    }
}

/// The full assignment determined by the exogenous tuple `u`.
pub fn solve_endogenous(sem: &Sem, u: &[u32]) -> Assignment {
    let mut row = vec![0u32; sem.sig.len()];
    for (&v, &x) in sem.exogenous.iter().zip(u) {
        row[v] = x;
    }
    for &v in &sem.order {
        let f = sem.laws.get(v).expect("ordered variable has a law");
        row[v] = f.eval(&row);
    }
    Assignment::new(row)
}

/// Probability of the conjunction of `event` under the distribution the SEM
/// induces on full assignments.
pub fn joint_prob(sem: &Sem, event: &[Pair]) -> Result<Rational> {
    let event = event.iter().map(|(v, x)| sem.sig.pair(v, x)).collect::<Result<Vec<_>>>()?;
    let mut total = Rational::zero();
    for (u, p) in &sem.exo_dist {
        let s = solve_endogenous(sem, u);
        if event.iter().all(|&(v, x)| s.get(v) == x) {
            total += p;
        }
    }
    Ok(total)
}

/// Each tuple of weight `a/b`, with `b` the least common denominator,
/// becomes `a` copies of its solution.
pub fn sem_to_multiteam(sem: &Sem) -> Result<CausalMultiteam> {
    let b = sem.exo_dist.values().fold(num_bigint::BigInt::one(), |acc, p| acc.lcm(p.denom()));
    let mut team = Multiteam::new();
    for (u, p) in &sem.exo_dist {
        let a = (p * Rational::from_integer(b.clone())).to_integer();
        let a = a.to_u64().ok_or_else(|| Error::InvalidDistribution("denominators too large".into()))?;
        team.insert(solve_endogenous(sem, u), a);
    }
    CausalMultiteam::new(Arc::clone(&sem.sig), team, sem.laws.clone())
}

/// Counting marginal on the exogenous variables, laws copied.
pub fn multiteam_to_sem(m: &CausalMultiteam) -> Result<Sem> {
    if m.is_empty() {
        return Err(Error::EmptyModel);
    }
    let exogenous = m.laws().exogenous(m.signature());
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for (a, &c) in m.team().iter() {
        *counts.entry(exogenous.iter().map(|&v| a.get(v)).collect()).or_default() += c;
    }
    let n = m.len();
    let dist = counts.into_iter().map(|(u, c)| (u, ratio(c, n))).collect();
    Sem::new(Arc::clone(m.signature_arc()), m.laws().clone(), dist)
}

/// A pair of exogenous events whose joint probability is not the product of
/// the marginals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovViolation {
    pub left: Pair,
    pub right: Pair,
    pub joint: Rational,
    pub product: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovReport {
    pub violations: Vec<MarkovViolation>,
}

impl MarkovReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Pairwise independence of the exogenous variables. Lists every violating
/// pair of values, in signature order.
pub fn markov_check(m: &CausalMultiteam) -> Result<MarkovReport> {
    if m.is_empty() {
        return Err(Error::EmptyModel);
    }
    let sig = m.signature();
    let exo = m.laws().exogenous(sig);
    let n = m.len();
    let marginal = |v: usize, x: u32| -> u64 { m.team().iter().filter(|(a, _)| a.get(v) == x).map(|(_, c)| c).sum() };
    let mut violations = Vec::new();
    for (i, &u) in exo.iter().enumerate() {
        for &w in &exo[i + 1..] {
            for x in 0..sig.range_len(u) as u32 {
                for y in 0..sig.range_len(w) as u32 {
                    let both: u64 =
                        m.team().iter().filter(|(a, _)| a.get(u) == x && a.get(w) == y).map(|(_, c)| c).sum();
                    let joint = ratio(both, n);
                    let product = ratio(marginal(u, x), n) * ratio(marginal(w, y), n);
                    if joint != product {
                        violations.push(MarkovViolation {
                            left: (sig.name(u).to_string(), sig.value(u, x).to_string()),
                            right: (sig.name(w).to_string(), sig.value(w, y).to_string()),
                            joint,
                            product,
                        });
                    }
                }
            }
        }
    }
    Ok(MarkovReport { violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{coin, inc, multiteam};
    use crate::formula::pairs;
    use crate::model::CausalFunction;

    fn inc_sem() -> Sem {
        let m = inc();
        let dist = [(vec![0], ratio(1, 6)), (vec![1], ratio(2, 6)), (vec![2], ratio(3, 6))].into_iter().collect();
        Sem::new(Arc::clone(m.signature_arc()), m.laws().clone(), dist).unwrap()
    }

    #[test]
    fn solves() {
        let s = inc_sem();
        assert_eq!(solve_endogenous(&s, &[2]).values(), [2, 2]);
        let c = multiteam_to_sem(&coin()).unwrap();
        assert_eq!(solve_endogenous(&c, &[1, 0]).values(), [1, 0]);
    }

    #[test]
    fn chain() {
        let sig = Signature::new([("X", vec!["0", "1"]), ("Y", vec!["0", "1"]), ("Z", vec!["0", "1"])]).unwrap();
        let id = |t, a| CausalFunction::from_tokens(&sig, t, &[a], [(vec!["0"], "0"), (vec!["1"], "1")]).unwrap();
        let laws = FunctionComponent::from_functions([id("Y", "X"), id("Z", "Y")]).unwrap();
        let dist = [(vec![1], ratio(1, 1))].into_iter().collect();
        let s = Sem::new(sig, laws, dist).unwrap();
        assert_eq!(solve_endogenous(&s, &[1]).values(), [1, 1, 1]);
    }

    #[test]
    fn joint_probabilities() {
        let s = inc_sem();
        assert_eq!(joint_prob(&s, &pairs(&[("Y", "3")])).unwrap(), ratio(1, 2));
        assert_eq!(joint_prob(&s, &[]).unwrap(), ratio(1, 1));
        assert_eq!(joint_prob(&s, &pairs(&[("X", "0"), ("Y", "2")])).unwrap(), ratio(0, 1));
    }

    #[test]
    fn round_trips() {
        let m = sem_to_multiteam(&inc_sem()).unwrap();
        assert_eq!(m, inc());
        let s = multiteam_to_sem(&inc()).unwrap();
        assert_eq!(s.exo_dist()[&vec![1]], ratio(1, 3));
        let c = multiteam_to_sem(&coin()).unwrap();
        assert!(c.exo_dist().values().all(|p| *p == ratio(1, 4)));
        assert_eq!(c.exo_dist().len(), 4);

        let sig = coin().signature_arc().clone();
        let point = Sem::new(Arc::clone(&sig), FunctionComponent::new(), [(vec![0, 1], ratio(1, 1))].into()).unwrap();
        let m = sem_to_multiteam(&point).unwrap();
        assert_eq!((m.len(), m.team().support_len()), (1, 1));
    }

    #[test]
    fn rejects_bad_distributions() {
        let sig = coin().signature_arc().clone();
        let half = [(vec![0, 0], ratio(1, 2))].into();
        assert!(matches!(Sem::new(Arc::clone(&sig), FunctionComponent::new(), half), Err(Error::InvalidDistribution(_))));
        let neg = [(vec![0, 0], ratio(3, 2)), (vec![0, 1], -ratio(1, 2))].into();
        assert!(matches!(Sem::new(Arc::clone(&sig), FunctionComponent::new(), neg), Err(Error::InvalidDistribution(_))));
        let short = [(vec![0], ratio(1, 1))].into();
        assert!(matches!(Sem::new(sig, FunctionComponent::new(), short), Err(Error::InvalidDistribution(_))));
    }

    #[test]
    fn markov() {
        assert!(markov_check(&coin()).unwrap().holds());
        assert!(markov_check(&inc()).unwrap().holds());
        let sig = Signature::new([("X", vec!["0", "1"]), ("Y", vec!["0", "1"])]).unwrap();
        let team = multiteam(&sig, &[(&["0", "0"], 1), (&["1", "1"], 1)]);
        let m = CausalMultiteam::new(sig, team, FunctionComponent::new()).unwrap();
        let r = markov_check(&m).unwrap();
        assert_eq!(r.violations.len(), 4);
        let w = &r.violations[1];
        assert_eq!((w.left.clone(), w.right.clone()), (("X".into(), "0".into()), ("Y".into(), "1".into())));
        assert_eq!((w.joint.clone(), w.product.clone()), (ratio(0, 1), ratio(1, 4)));
    }
}
