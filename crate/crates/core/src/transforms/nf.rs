use num_traits::One;

use crate::error::{Error, Result};
use crate::formula::{conflict, is_consistent_antecedent, CoFormula, Pair, PcoFormula, Rel};
use crate::rational::Rational;

/// Overwriting: outer pairs on variables the inner antecedent does not
/// mention, followed by the inner pairs.
fn overwrite(outer: &[Pair], inner: &[Pair]) -> Vec<Pair> {
    outer
        .iter()
        .filter(|(v, _)| !inner.iter().any(|(w, _)| w == v))
        .chain(inner)
        .cloned()
        .collect()
}

fn flatten_co(f: &CoFormula) -> CoFormula {
    match f {
        CoFormula::Cf(p, body) => match flatten_co(body) {
            CoFormula::Cf(q, inner) if is_consistent_antecedent(p) && is_consistent_antecedent(&q) => {
                CoFormula::Cf(overwrite(p, &q), inner)
            }
            body => CoFormula::cf(p.clone(), body),
        },
        CoFormula::And(a, b) => CoFormula::and(flatten_co(a), flatten_co(b)),
        CoFormula::Tensor(a, b) => CoFormula::tensor(flatten_co(a), flatten_co(b)),
        CoFormula::Sup(a, b) => CoFormula::sup(flatten_co(a), flatten_co(b)),
        CoFormula::Not(a) => CoFormula::not(flatten_co(a)),
        _ => f.clone(),
    }
}

/// Merges directly nested counterfactuals whose antecedents are both
/// consistent, bottom-up, in statements and in event arguments alike.
pub fn flatten_counterfactuals(phi: &PcoFormula) -> PcoFormula {
    let co = flatten_co;
    let p = flatten_counterfactuals;
    match phi {
        PcoFormula::Cf(outer, body) => match p(body) {
            PcoFormula::Cf(inner, chi) if is_consistent_antecedent(outer) && is_consistent_antecedent(&inner) => {
                PcoFormula::Cf(overwrite(outer, &inner), chi)
            }
            body => PcoFormula::cf(outer.clone(), body),
        },
        PcoFormula::Lit(_) | PcoFormula::Ne | PcoFormula::Bot | PcoFormula::Top | PcoFormula::Dep { .. } => {
            phi.clone()
        }
        PcoFormula::PrConst { arg, rel, eps } => PcoFormula::PrConst { arg: co(arg), rel: *rel, eps: eps.clone() },
        PcoFormula::PrStar { arg, rel, eps } => PcoFormula::PrStar { arg: co(arg), rel: *rel, eps: eps.clone() },
        PcoFormula::PrCmp { left, rel, right } => PcoFormula::PrCmp { left: co(left), rel: *rel, right: co(right) },
        PcoFormula::CondPrConst { arg, cond, rel, eps } => {
            PcoFormula::CondPrConst { arg: co(arg), cond: co(cond), rel: *rel, eps: eps.clone() }
        }
        PcoFormula::CondPrCmp { left, left_cond, rel, right, right_cond } => PcoFormula::CondPrCmp {
            left: co(left),
            left_cond: left_cond.as_ref().map(co),
            rel: *rel,
            right: co(right),
            right_cond: right_cond.as_ref().map(co),
        },
        PcoFormula::CIndep { left, right, cond } => {
            PcoFormula::CIndep { left: co(left), right: co(right), cond: co(cond) }
        }
        PcoFormula::And(a, b) => PcoFormula::and(p(a), p(b)),
        PcoFormula::StrictTensor(a, b) => PcoFormula::strict(p(a), p(b)),
        PcoFormula::Implies(a, b) => PcoFormula::implies(p(a), p(b)),
        PcoFormula::CNeg(a) => PcoFormula::cneg(p(a)),
        PcoFormula::Gdisj(v) => PcoFormula::Gdisj(v.iter().map(p).collect()),
        PcoFormula::Sup(a, b) => PcoFormula::sup(co(a), p(b)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LeafKind {
    /// A probability atom.
    BareAtom,
    /// `g => atom`.
    Rung1,
    /// `X=x ~> atom`.
    Rung2,
    /// `g => (X=x ~> atom)`.
    Rung3,
}

impl LeafKind {
    pub fn rung(self) -> u8 {
        match self {
            LeafKind::BareAtom | LeafKind::Rung1 => 1,
            LeafKind::Rung2 => 2,
            LeafKind::Rung3 => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NfLeaf {
    pub kind: LeafKind,
    pub formula: PcoFormula,
}

/// A conjunction/global-disjunction tree over tagged leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalForm {
    And(Vec<NormalForm>),
    Or(Vec<NormalForm>),
    Leaf(NfLeaf),
}

impl NormalForm {
    pub fn to_formula(&self) -> PcoFormula {
        match self {
            NormalForm::Leaf(l) => l.formula.clone(),
            NormalForm::And(v) => PcoFormula::and_all(v.iter().map(NormalForm::to_formula)).expect("nonempty"),
            NormalForm::Or(v) => PcoFormula::gdisj_all(v.iter().map(NormalForm::to_formula)).expect("nonempty"),
        }
    }

    pub fn leaves(&self) -> Vec<&NfLeaf> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a NfLeaf>) {
        match self {
            NormalForm::Leaf(l) => out.push(l),
            NormalForm::And(v) | NormalForm::Or(v) => v.iter().for_each(|n| n.collect(out)),
        }
    }

    /// Structural check of the two shape conditions: every counterfactual
    /// has a probability atom as consequent, and every selective implication
    /// has a counterfactual or a probability atom as consequent. Event
    /// arguments are not inspected.
    pub fn satisfies_shape(&self) -> bool {
        self.leaves().iter().all(|l| shape_ok(&l.formula) && leaf_kind(&l.formula) == Some(l.kind))
    }
}

fn is_pr_atom(f: &PcoFormula) -> bool {
    matches!(f, PcoFormula::PrConst { rel: Rel::Ge | Rel::Gt, .. } | PcoFormula::PrCmp { rel: Rel::Ge | Rel::Gt, .. })
}

fn shape_ok(f: &PcoFormula) -> bool {
    match f {
        PcoFormula::Cf(_, b) => is_pr_atom(b),
        PcoFormula::Sup(_, b) => is_pr_atom(b) || (matches!(&**b, PcoFormula::Cf(..)) && shape_ok(b)),
        PcoFormula::And(a, b) => shape_ok(a) && shape_ok(b),
        PcoFormula::Gdisj(v) => v.iter().all(shape_ok),
        f => is_pr_atom(f),
    }
}

fn leaf_kind(f: &PcoFormula) -> Option<LeafKind> {
    match f {
        f if is_pr_atom(f) => Some(LeafKind::BareAtom),
        PcoFormula::Cf(_, b) if is_pr_atom(b) => Some(LeafKind::Rung2),
        PcoFormula::Sup(_, b) if is_pr_atom(b) => Some(LeafKind::Rung1),
        PcoFormula::Sup(_, b) => match &**b {
            PcoFormula::Cf(_, c) if is_pr_atom(c) => Some(LeafKind::Rung3),
            _ => None,
        },
        _ => None,
    }
}

fn reject(f: &PcoFormula) -> Error {
    Error::UnsupportedNode(format!("normal form needs a core formula without abbreviations, found `{f}`"))
}

/// Pass 1: push counterfactuals down to atoms.
fn push_cf(pairs: &[Pair], f: &PcoFormula) -> Result<PcoFormula> {
    if let Some((v, x)) = conflict(pairs) {
        return Ok(PcoFormula::cf(pairs.to_vec(), PcoFormula::lit(v.clone(), x.clone())));
    }
    let wrap = |leaf: PcoFormula| if pairs.is_empty() { leaf } else { PcoFormula::cf(pairs.to_vec(), leaf) };
    Ok(match f {
        PcoFormula::Lit(_) => wrap(f.clone()),
        f if is_pr_atom(f) => wrap(f.clone()),
        PcoFormula::And(a, b) => PcoFormula::and(push_cf(pairs, a)?, push_cf(pairs, b)?),
        PcoFormula::Gdisj(v) => PcoFormula::Gdisj(v.iter().map(|g| push_cf(pairs, g)).collect::<Result<_>>()?),
        PcoFormula::Sup(alpha, chi) => {
            let alpha = if pairs.is_empty() { alpha.clone() } else { CoFormula::cf(pairs.to_vec(), alpha.clone()) };
            PcoFormula::sup(alpha, push_cf(pairs, chi)?)
        }
        PcoFormula::Cf(inner, chi) => push_cf(&overwrite(pairs, inner), chi)?,
        other => return Err(reject(other)),
    })
}

/// Pass 2: literal `X=x` becomes `Pr(X=x) >= 1`.
fn wrap_literals(f: PcoFormula) -> PcoFormula {
    match f {
        PcoFormula::Lit(l) => PcoFormula::pr(l.to_co(), Rel::Ge, Rational::one()),
        PcoFormula::And(a, b) => PcoFormula::and(wrap_literals(*a), wrap_literals(*b)),
        PcoFormula::Gdisj(v) => PcoFormula::Gdisj(v.into_iter().map(wrap_literals).collect()),
        PcoFormula::Sup(a, b) => PcoFormula::sup(a, wrap_literals(*b)),
        PcoFormula::Cf(p, b) => PcoFormula::cf(p, wrap_literals(*b)),
        f => f,
    }
}

/// Pass 3: push selective implications down, merging nested antecedents,
/// and build the tagged tree.
fn push_sup(cond: Option<&CoFormula>, f: &PcoFormula) -> NormalForm {
    let leaf = |formula: PcoFormula| {
        let formula = match cond {
            Some(c) => PcoFormula::sup(c.clone(), formula),
            None => formula,
        };
        let kind = leaf_kind(&formula).expect("pass 1 leaves only atoms under counterfactuals");
        NormalForm::Leaf(NfLeaf { kind, formula })
    };
    match f {
        PcoFormula::And(..) => {
            let mut parts = Vec::new();
            flatten_and(f, &mut parts);
            NormalForm::And(parts.into_iter().map(|g| push_sup(cond, g)).collect())
        }
        PcoFormula::Gdisj(v) => {
            let mut parts = Vec::new();
            for g in v {
                match push_sup(cond, g) {
                    NormalForm::Or(inner) => parts.extend(inner),
                    other => parts.push(other),
                }
            }
            NormalForm::Or(parts)
        }
        PcoFormula::Sup(alpha, chi) => {
            let merged = match cond {
                Some(c) => CoFormula::and(c.clone(), alpha.clone()),
                None => alpha.clone(),
            };
            push_sup(Some(&merged), chi)
        }
        f => leaf(f.clone()),
    }
}

fn flatten_and<'a>(f: &'a PcoFormula, out: &mut Vec<&'a PcoFormula>) {
    match f {
        PcoFormula::And(a, b) => {
            flatten_and(a, out);
            flatten_and(b, out);
        }
        f => out.push(f),
    }
}

fn flatten_nf(nf: NormalForm) -> NormalForm {
    match nf {
        NormalForm::And(v) => {
            let mut out = Vec::new();
            for n in v.into_iter().map(flatten_nf) {
                match n {
                    NormalForm::And(inner) => out.extend(inner),
                    n => out.push(n),
                }
            }
            if out.len() == 1 {
                out.pop().unwrap()
            } else {
                NormalForm::And(out)
            }
        }
        NormalForm::Or(v) => {
            let mut out = Vec::new();
            for n in v.into_iter().map(flatten_nf) {
                match n {
                    NormalForm::Or(inner) => out.extend(inner),
                    n => out.push(n),
                }
            }
            if out.len() == 1 {
                out.pop().unwrap()
            } else {
                NormalForm::Or(out)
            }
        }
        leaf => leaf,
    }
}

/// Rewrites a core formula into a Boolean combination of probability atoms,
/// conditioned atoms, interventional atoms and conditioned interventional
/// atoms. Abbreviations and extension atoms are rejected.
pub fn normal_form(phi: &PcoFormula) -> Result<NormalForm> {
    if !phi.is_core() {
        return Err(reject(phi));
    }
    let pushed = push_cf(&[], phi)?;
    let wrapped = wrap_literals(pushed);
    Ok(flatten_nf(push_sup(None, &wrapped)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RungReport {
    pub tags: Vec<LeafKind>,
    pub max_rung: u8,
}

pub fn classify_rung(nf: &NormalForm) -> RungReport {
    let tags: Vec<LeafKind> = nf.leaves().iter().map(|l| l.kind).collect();
    let max_rung = tags.iter().map(|k| k.rung()).max().unwrap_or(1);
    RungReport { tags, max_rung }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{expand_sugar, parse_pco};
    use crate::model::Signature;

    fn nf(text: &str) -> NormalForm {
        normal_form(&parse_pco(text).unwrap()).unwrap()
    }

    #[test]
    fn counterfactual_over_selective_implication() {
        let n = nf("X=1 ~> (Z=0 => Pr(Y=1) >= 1/2)");
        assert_eq!(n.to_formula().to_string(), "(X=1 ~> Z=0) => X=1 ~> Pr(Y=1) >= 1/2");
        assert_eq!(classify_rung(&n).tags, vec![LeafKind::Rung3]);
        assert!(n.satisfies_shape());
    }

    #[test]
    fn bare_atom_is_unchanged() {
        let n = nf("Pr(X=1) >= 1/2");
        assert_eq!(n.to_formula().to_string(), "Pr(X=1) >= 1/2");
        assert_eq!(classify_rung(&n), RungReport { tags: vec![LeafKind::BareAtom], max_rung: 1 });
    }

    #[test]
    fn nested_implications_merge() {
        let n = nf("A=0 => B=0 => X=1 ~> Pr(G=1) >= 1/2");
        assert_eq!(n.to_formula().to_string(), "A=0 & B=0 => X=1 ~> Pr(G=1) >= 1/2");
        assert_eq!(classify_rung(&n).max_rung, 3);
    }

    #[test]
    fn inconsistent_antecedent() {
        let n = nf("X=1 & X=0 ~> Y=1 \\/ Pr(Y=1) > 0").to_formula();
        assert_eq!(n.to_string(), "X=1 & X=0 ~> Pr(X=0) >= 1");
    }

    #[test]
    fn overwriting() {
        assert_eq!(nf("X=1 ~> X=0 ~> Y=1").to_formula().to_string(), "X=0 ~> Pr(Y=1) >= 1");
        assert_eq!(nf("X=1 ~> Y=2 ~> Z=1").to_formula().to_string(), "X=1 & Y=2 ~> Pr(Z=1) >= 1");
        let f = parse_pco("X=1 ~> X=0 & X=1 ~> NE").unwrap();
        assert_eq!(flatten_counterfactuals(&f), f);
        let f = parse_pco("X=1 ~> Y=2 ~> NE").unwrap();
        assert_eq!(flatten_counterfactuals(&f).to_string(), "X=1 & Y=2 ~> NE");
    }

    #[test]
    fn rungs_of_sugar_examples() {
        let sig = Signature::new([
            ("Treated", vec!["0", "1"]),
            ("Dies", vec!["0", "1"]),
            ("X", vec!["0", "1"]),
            ("Y", vec!["0", "1"]),
        ])
        .unwrap();
        let rung = |text: &str| {
            let f = expand_sugar(&parse_pco(text).unwrap(), Some(&sig)).unwrap();
            classify_rung(&normal_form(&f).unwrap()).max_rung
        };
        assert_eq!(rung("Dies=1 & Treated=1 => Treated=0 ~> Pr(Dies=0) == 1/3"), 3);
        assert_eq!(rung("X=1 ~> Pr(Y=1) >= 1/2"), 2);
        assert_eq!(rung("Pr(Y=1 | X=1) >= 1/2"), 1);
    }

    #[test]
    fn sugar_is_rejected() {
        assert!(normal_form(&parse_pco("Pr(X=1) <= 1/2").unwrap()).is_err());
        assert!(normal_form(&parse_pco("NE").unwrap()).is_err());
    }
}
