use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::{Assignment, FunctionComponent, Multiteam, Signature};
use crate::error::{Error, Result};
use crate::rational::{parse_decimal, Rational};

/// A multiteam paired with structural laws, validated for compatibility,
/// non-constancy of every law and acyclicity.
#[derive(Debug, Clone)]
pub struct CausalMultiteam {
    sig: Arc<Signature>,
    team: Multiteam,
    laws: Arc<FunctionComponent>,
    order: Arc<[usize]>,
}

impl PartialEq for CausalMultiteam {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.sig, &other.sig) || self.sig == other.sig)
            && self.team == other.team
            && self.laws == other.laws
    }
}

impl Eq for CausalMultiteam {}

/// Validates and assembles a causal multiteam. Laws are stored minimized, so
/// two models with the same laws on the full argument tuples compare equal.
pub fn new_causal_multiteam(
    sig: impl Into<Arc<Signature>>,
    team: Multiteam,
    laws: FunctionComponent,
) -> Result<CausalMultiteam> {
    let sig = sig.into();
    for a in team.assignments() {
        if a.values().len() != sig.len() {
            return Err(Error::Format(format!(
                "assignment has {} values, signature has {} variables",
                a.values().len(),
                sig.len()
            )));
        }
        for (var, &v) in a.values().iter().enumerate() {
            if v as usize >= sig.range_len(var) {
                return Err(Error::RangeError { variable: sig.name(var).to_string(), value: format!("#{v}") });
            }
        }
    }
    let laws = laws.minimized(&sig);
    for f in laws.functions() {
        if f.target() >= sig.len() || f.args().iter().any(|&a| a >= sig.len()) {
            return Err(Error::Format("law refers to a variable outside the signature".into()));
        }
        if f.is_constant() {
            return Err(Error::ConstantFunction(sig.name(f.target()).to_string()));
        }
    }
    let order = laws.topological_order(&sig)?;
    for a in team.assignments() {
        for f in laws.functions() {
            if f.eval(a.values()) != a.get(f.target()) {
                return Err(Error::CompatibilityViolation {
                    assignment: a.display(&sig).to_string(),
                    variable: sig.name(f.target()).to_string(),
                });
            }
        }
    }
    Ok(CausalMultiteam { sig, team, laws: Arc::new(laws), order: order.into() })
}

impl CausalMultiteam {
    pub fn new(sig: impl Into<Arc<Signature>>, team: Multiteam, laws: FunctionComponent) -> Result<Self> {
        new_causal_multiteam(sig, team, laws)
    }

    /// The empty multiteam with the given laws.
    pub fn empty(sig: impl Into<Arc<Signature>>, laws: FunctionComponent) -> Result<Self> {
        new_causal_multiteam(sig, Multiteam::new(), laws)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn signature_arc(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn team(&self) -> &Multiteam {
        &self.team
    }

    pub fn laws(&self) -> &FunctionComponent {
        &self.laws
    }

    /// Endogenous variables in evaluation order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> u64 {
        self.team.len()
    }

    pub fn is_empty(&self) -> bool {
        self.team.is_empty()
    }

    /// Same laws, different multiteam. The caller guarantees compatibility.
    pub(crate) fn with_team(&self, team: Multiteam) -> CausalMultiteam {
        CausalMultiteam {
            sig: Arc::clone(&self.sig),
            team,
            laws: Arc::clone(&self.laws),
            order: Arc::clone(&self.order),
        }
    }

    /// Same laws and signature with a new multiteam, checked for compatibility.
    pub fn replace_team(&self, team: Multiteam) -> Result<CausalMultiteam> {
        for a in team.assignments() {
            for f in self.laws.functions() {
                if f.eval(a.values()) != a.get(f.target()) {
                    return Err(Error::CompatibilityViolation {
                        assignment: a.display(&self.sig).to_string(),
                        variable: self.sig.name(f.target()).to_string(),
                    });
                }
            }
        }
        Ok(self.with_team(team))
    }

    /// Rebuilds through full validation.
    pub fn revalidate(&self) -> Result<CausalMultiteam> {
        new_causal_multiteam(Arc::clone(&self.sig), self.team.clone(), (*self.laws).clone())
    }

    /// Applies `do(pairs)` by index. Pairs must be consistent.
    pub(crate) fn intervene_indices(&self, pairs: &[(usize, u32)]) -> CausalMultiteam {
        let fixed: Vec<usize> = pairs.iter().map(|&(v, _)| v).collect();
        let laws = self.laws.without(&fixed);
        let order: Vec<usize> = self.order.iter().copied().filter(|v| !fixed.contains(v)).collect();
        let mut team = Multiteam::new();
        for (a, &c) in self.team.iter() {
            let mut row = a.values().to_vec();
            for &(v, x) in pairs {
                row[v] = x;
            }
            for &v in &order {
                let f = laws.get(v).expect("ordered variable has a law");
                row[v] = f.eval(&row);
            }
            team.insert(Assignment::new(row), c);
        }
        CausalMultiteam { sig: Arc::clone(&self.sig), team, laws: Arc::new(laws), order: order.into() }
    }
}

/// Directed edges parent → child over minimized parent sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalGraph {
    pub edges: Vec<(usize, usize)>,
}

impl CausalGraph {
    pub fn named<'a>(&'a self, sig: &'a Signature) -> Vec<(&'a str, &'a str)> {
        self.edges.iter().map(|&(p, c)| (sig.name(p), sig.name(c))).collect()
    }
}

pub fn causal_graph(m: &CausalMultiteam) -> CausalGraph {
    let mut edges: Vec<(usize, usize)> =
        m.laws().functions().flat_map(|f| f.args().iter().map(move |&p| (p, f.target()))).collect();
    edges.sort_unstable();
    CausalGraph { edges }
}

/// Distinct assignments with positive count.
pub fn support(m: &CausalMultiteam) -> BTreeSet<Assignment> {
    m.team().assignments().cloned().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToleranceViolation {
    pub assignment: Assignment,
    pub variable: usize,
}

/// Lists every `(assignment, variable)` whose value is farther than `delta`
/// from what its law predicts. Distance is absolute difference of decimal
/// readings; with `delta = 0` values are compared as tokens.
///
/// `team` and `laws` are not required to form a valid causal multiteam.
pub fn check_compatibility_tolerant(
    sig: &Signature,
    team: &Multiteam,
    laws: &FunctionComponent,
    delta: &Rational,
) -> Result<Vec<ToleranceViolation>> {
    if delta.is_negative() {
        return Err(Error::Format("tolerance must be nonnegative".into()));
    }
    let numeric = |var: usize, value: u32| -> Result<Rational> {
        let token = sig.value(var, value);
        parse_decimal(token)
            .ok_or_else(|| Error::NonNumericValue { variable: sig.name(var).to_string(), value: token.to_string() })
    };
    let mut out = Vec::new();
    for a in team.assignments() {
        for f in laws.functions() {
            let y = f.target();
            let predicted = f.eval(a.values());
            let actual = a.get(y);
            let violates = if delta.is_zero() {
                predicted != actual
            } else {
                let diff = numeric(y, actual)? - numeric(y, predicted)?;
                diff.abs() > *delta
            };
            if violates {
                out.push(ToleranceViolation { assignment: a.clone(), variable: y });
            }
        }
    }
    Ok(out)
}

/// One line per law (`Y <- X: 0->1, 1->2`), then one line per row with its
/// count.
impl std::fmt::Display for CausalMultiteam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sig = &*self.sig;
        let mut laws: Vec<_> = self.laws.functions().collect();
        laws.sort_by_key(|l| l.target());
        for law in laws {
            let args: Vec<&str> = law.args().iter().map(|&a| sig.name(a)).collect();
            write!(f, "{} <- {}:", sig.name(law.target()), args.join(","))?;
            for (i, (tuple, &out)) in sig.tuples(law.args()).zip(law.table()).enumerate() {
                let key: Vec<&str> = tuple.iter().zip(law.args()).map(|(&x, &a)| sig.value(a, x)).collect();
                let sep = if i == 0 { " " } else { ", " };
                write!(f, "{sep}{}->{}", key.join(","), sig.value(law.target(), out))?;
            }
            writeln!(f)?;
        }
        if self.team.is_empty() {
            return writeln!(f, "(empty)");
        }
        for (a, c) in self.team.iter() {
            writeln!(f, "{} x{c}", a.display(sig))?;
        }
        Ok(())
    }
}
