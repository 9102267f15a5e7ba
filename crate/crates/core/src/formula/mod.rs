//! Formula syntax: the event language (CO), the probabilistic language (PCO)
//! with finite global disjunctions, and a handful of extension atoms.

mod parse;
mod print;
mod sugar;

use std::cmp::Ordering;

use crate::rational::Rational;

pub use parse::{parse, parse_co, parse_co_with, parse_pco, parse_pco_with, parse_with, ParseError, ParseErrorKind};
pub use print::quote_token;
pub use sugar::{bot_co, bot_pco, expand_sugar, expand_sugar_co, top_co, top_pco};

/// An antecedent conjunct `X=x`.
pub type Pair = (String, String);

/// Builds antecedent pairs from string slices.
pub fn pairs(items: &[(&str, &str)]) -> Vec<Pair> {
    items.iter().map(|&(v, x)| (v.to_string(), x.to_string())).collect()
}

/// False iff some variable occurs with two distinct values.
pub fn is_consistent_antecedent(pairs: &[Pair]) -> bool {
    conflict(pairs).is_none()
}

/// The first pair clashing with an earlier pair on the same variable.
pub(crate) fn conflict(pairs: &[Pair]) -> Option<&Pair> {
    pairs
        .iter()
        .enumerate()
        .find(|(i, (v, x))| pairs[..*i].iter().any(|(w, y)| w == v && y != x))
        .map(|(_, p)| p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Ge,
    Gt,
    Le,
    Lt,
    Eq,
    Ne,
}

impl Rel {
    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Ge => ">=",
            Rel::Gt => ">",
            Rel::Le => "<=",
            Rel::Lt => "<",
            Rel::Eq => "==",
            Rel::Ne => "!=",
        }
    }

    /// Whether `lhs rel rhs` holds given `lhs.cmp(rhs)`.
    pub fn holds(self, ord: Ordering) -> bool {
        match self {
            Rel::Ge => ord != Ordering::Less,
            Rel::Gt => ord == Ordering::Greater,
            Rel::Le => ord != Ordering::Greater,
            Rel::Lt => ord == Ordering::Less,
            Rel::Eq => ord == Ordering::Equal,
            Rel::Ne => ord != Ordering::Equal,
        }
    }

    /// The relation with its sides swapped: `a rel b` iff `b rel.converse() a`.
    pub fn converse(self) -> Rel {
        match self {
            Rel::Ge => Rel::Le,
            Rel::Gt => Rel::Lt,
            Rel::Le => Rel::Ge,
            Rel::Lt => Rel::Gt,
            r => r,
        }
    }

    /// `>=` and `>` are primitive, the rest are abbreviations.
    pub fn is_core(self) -> bool {
        matches!(self, Rel::Ge | Rel::Gt)
    }
}

impl std::fmt::Display for Rel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Event-level formulas. Evaluated row by row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoFormula {
    Eq(String, String),
    Neq(String, String),
    And(Box<CoFormula>, Box<CoFormula>),
    /// Tensor disjunction.
    Tensor(Box<CoFormula>, Box<CoFormula>),
    /// Selective implication.
    Sup(Box<CoFormula>, Box<CoFormula>),
    /// Interventionist counterfactual.
    Cf(Vec<Pair>, Box<CoFormula>),
    /// Dual negation (sugar for `a => bot`).
    Not(Box<CoFormula>),
    Bot,
    Top,
}

impl CoFormula {
    pub fn eq(var: impl Into<String>, value: impl Into<String>) -> Self {
        CoFormula::Eq(var.into(), value.into())
    }

    pub fn neq(var: impl Into<String>, value: impl Into<String>) -> Self {
        CoFormula::Neq(var.into(), value.into())
    }

    pub fn and(a: CoFormula, b: CoFormula) -> Self {
        CoFormula::And(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: CoFormula, b: CoFormula) -> Self {
        CoFormula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn sup(a: CoFormula, b: CoFormula) -> Self {
        CoFormula::Sup(Box::new(a), Box::new(b))
    }

    pub fn cf(pairs: Vec<Pair>, body: CoFormula) -> Self {
        CoFormula::Cf(pairs, Box::new(body))
    }

    pub fn not(a: CoFormula) -> Self {
        CoFormula::Not(Box::new(a))
    }

    /// Left-nested conjunction; `None` for an empty list.
    pub fn and_all<I: IntoIterator<Item = CoFormula>>(items: I) -> Option<CoFormula> {
        items.into_iter().reduce(CoFormula::and)
    }

    /// Conjunction of equalities, e.g. the antecedent pairs as a formula.
    pub fn conj_of(pairs: &[Pair]) -> Option<CoFormula> {
        CoFormula::and_all(pairs.iter().map(|(v, x)| CoFormula::eq(v.clone(), x.clone())))
    }

    pub fn has_tensor(&self) -> bool {
        match self {
            CoFormula::Tensor(..) => true,
            CoFormula::And(a, b) | CoFormula::Sup(a, b) => a.has_tensor() || b.has_tensor(),
            CoFormula::Cf(_, a) | CoFormula::Not(a) => a.has_tensor(),
            _ => false,
        }
    }

    pub fn is_sugar_free(&self) -> bool {
        match self {
            CoFormula::Not(_) | CoFormula::Bot | CoFormula::Top => false,
            CoFormula::Eq(..) | CoFormula::Neq(..) => true,
            CoFormula::And(a, b) | CoFormula::Tensor(a, b) | CoFormula::Sup(a, b) => {
                a.is_sugar_free() && b.is_sugar_free()
            }
            CoFormula::Cf(_, a) => a.is_sugar_free(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            CoFormula::And(a, b) | CoFormula::Tensor(a, b) | CoFormula::Sup(a, b) => 1 + a.size() + b.size(),
            CoFormula::Cf(_, a) | CoFormula::Not(a) => 1 + a.size(),
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: String,
    pub value: String,
    pub positive: bool,
}

impl Literal {
    pub fn to_co(&self) -> CoFormula {
        if self.positive {
            CoFormula::eq(self.var.clone(), self.value.clone())
        } else {
            CoFormula::neq(self.var.clone(), self.value.clone())
        }
    }
}

/// Probabilistic formulas.
///
/// The first group of variants is the core language; `CondPrConst` through
/// `StrictTensor` are extension atoms with their own semantics; the rest are
/// abbreviations removed by [`expand_sugar`]. `PrConst`/`PrCmp` with a
/// relation other than `>=`/`>` are abbreviations too.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PcoFormula {
    Lit(Literal),
    PrConst { arg: CoFormula, rel: Rel, eps: Rational },
    PrCmp { left: CoFormula, rel: Rel, right: CoFormula },
    And(Box<PcoFormula>, Box<PcoFormula>),
    /// Global disjunction, n-ary. Built with at least two members.
    Gdisj(Vec<PcoFormula>),
    Sup(CoFormula, Box<PcoFormula>),
    Cf(Vec<Pair>, Box<PcoFormula>),

    CondPrConst { arg: CoFormula, cond: CoFormula, rel: Rel, eps: Rational },
    CondPrCmp { left: CoFormula, left_cond: Option<CoFormula>, rel: Rel, right: CoFormula, right_cond: Option<CoFormula> },
    PrStar { arg: CoFormula, rel: Rel, eps: Rational },
    Ne,
    StrictTensor(Box<PcoFormula>, Box<PcoFormula>),

    Bot,
    Top,
    /// Material implication.
    Implies(Box<PcoFormula>, Box<PcoFormula>),
    /// Weak contradictory negation.
    CNeg(Box<PcoFormula>),
    Dep { determinants: Vec<String>, dependent: String },
    CIndep { left: CoFormula, right: CoFormula, cond: CoFormula },
}

impl PcoFormula {
    pub fn lit(var: impl Into<String>, value: impl Into<String>) -> Self {
        PcoFormula::Lit(Literal { var: var.into(), value: value.into(), positive: true })
    }

    pub fn nlit(var: impl Into<String>, value: impl Into<String>) -> Self {
        PcoFormula::Lit(Literal { var: var.into(), value: value.into(), positive: false })
    }

    pub fn pr(arg: CoFormula, rel: Rel, eps: Rational) -> Self {
        PcoFormula::PrConst { arg, rel, eps }
    }

    pub fn pr_cmp(left: CoFormula, rel: Rel, right: CoFormula) -> Self {
        PcoFormula::PrCmp { left, rel, right }
    }

    pub fn and(a: PcoFormula, b: PcoFormula) -> Self {
        PcoFormula::And(Box::new(a), Box::new(b))
    }

    pub fn sup(a: CoFormula, b: PcoFormula) -> Self {
        PcoFormula::Sup(a, Box::new(b))
    }

    pub fn cf(pairs: Vec<Pair>, body: PcoFormula) -> Self {
        PcoFormula::Cf(pairs, Box::new(body))
    }

    pub fn strict(a: PcoFormula, b: PcoFormula) -> Self {
        PcoFormula::StrictTensor(Box::new(a), Box::new(b))
    }

    pub fn implies(a: PcoFormula, b: PcoFormula) -> Self {
        PcoFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn cneg(a: PcoFormula) -> Self {
        PcoFormula::CNeg(Box::new(a))
    }

    /// Binary global disjunction.
    pub fn or(a: PcoFormula, b: PcoFormula) -> Self {
        PcoFormula::Gdisj(vec![a, b])
    }

    /// Left-nested conjunction; `None` for an empty list.
    pub fn and_all<I: IntoIterator<Item = PcoFormula>>(items: I) -> Option<PcoFormula> {
        items.into_iter().reduce(PcoFormula::and)
    }

    /// Global disjunction of the items; a single item is returned as is.
    pub fn gdisj_all<I: IntoIterator<Item = PcoFormula>>(items: I) -> Option<PcoFormula> {
        let mut items: Vec<PcoFormula> = items.into_iter().collect();
        match items.len() {
            0 => None,
            1 => items.pop(),
            _ => Some(PcoFormula::Gdisj(items)),
        }
    }

    /// Reads a CO formula as a PCO formula. Fails on `|`, which is not
    /// allowed outside event positions.
    pub fn try_from_co(co: &CoFormula) -> Option<PcoFormula> {
        Some(match co {
            CoFormula::Eq(v, x) => PcoFormula::lit(v.clone(), x.clone()),
            CoFormula::Neq(v, x) => PcoFormula::nlit(v.clone(), x.clone()),
            CoFormula::And(a, b) => PcoFormula::and(Self::try_from_co(a)?, Self::try_from_co(b)?),
            CoFormula::Tensor(..) => return None,
            CoFormula::Sup(a, b) => PcoFormula::sup((**a).clone(), Self::try_from_co(b)?),
            CoFormula::Cf(p, a) => PcoFormula::cf(p.clone(), Self::try_from_co(a)?),
            CoFormula::Not(a) => PcoFormula::sup((**a).clone(), PcoFormula::Bot),
            CoFormula::Bot => PcoFormula::Bot,
            CoFormula::Top => PcoFormula::Top,
        })
    }

    pub fn is_extension_atom(&self) -> bool {
        matches!(
            self,
            PcoFormula::CondPrConst { .. }
                | PcoFormula::CondPrCmp { .. }
                | PcoFormula::PrStar { .. }
                | PcoFormula::Ne
                | PcoFormula::StrictTensor(..)
        )
    }

    /// Whether this node (not its children) is an abbreviation.
    pub fn is_sugar_node(&self) -> bool {
        match self {
            PcoFormula::PrConst { rel, .. } | PcoFormula::PrCmp { rel, .. } => !rel.is_core(),
            PcoFormula::Bot
            | PcoFormula::Top
            | PcoFormula::Implies(..)
            | PcoFormula::CNeg(_)
            | PcoFormula::Dep { .. }
            | PcoFormula::CIndep { .. } => true,
            _ => false,
        }
    }

    /// True when no abbreviation occurs anywhere, including inside event
    /// arguments.
    pub fn is_sugar_free(&self) -> bool {
        if self.is_sugar_node() {
            return false;
        }
        match self {
            PcoFormula::Lit(_) | PcoFormula::Ne => true,
            PcoFormula::PrConst { arg, .. } | PcoFormula::PrStar { arg, .. } => arg.is_sugar_free(),
            PcoFormula::PrCmp { left, right, .. } => left.is_sugar_free() && right.is_sugar_free(),
            PcoFormula::CondPrConst { arg, cond, .. } => arg.is_sugar_free() && cond.is_sugar_free(),
            PcoFormula::CondPrCmp { left, left_cond, right, right_cond, .. } => {
                left.is_sugar_free()
                    && right.is_sugar_free()
                    && left_cond.as_ref().is_none_or(CoFormula::is_sugar_free)
                    && right_cond.as_ref().is_none_or(CoFormula::is_sugar_free)
            }
            PcoFormula::And(a, b) | PcoFormula::StrictTensor(a, b) => a.is_sugar_free() && b.is_sugar_free(),
            PcoFormula::Gdisj(v) => v.iter().all(PcoFormula::is_sugar_free),
            PcoFormula::Sup(a, b) => a.is_sugar_free() && b.is_sugar_free(),
            PcoFormula::Cf(_, b) => b.is_sugar_free(),
            _ => false,
        }
    }

    /// Core PCO: sugar-free and without extension atoms.
    pub fn is_core(&self) -> bool {
        self.is_sugar_free() && !self.contains(&|f| f.is_extension_atom())
    }

    /// Whether some PCO-level node satisfies `pred`.
    pub fn contains(&self, pred: &dyn Fn(&PcoFormula) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            PcoFormula::And(a, b) | PcoFormula::StrictTensor(a, b) | PcoFormula::Implies(a, b) => {
                a.contains(pred) || b.contains(pred)
            }
            PcoFormula::Gdisj(v) => v.iter().any(|f| f.contains(pred)),
            PcoFormula::Sup(_, b) | PcoFormula::Cf(_, b) | PcoFormula::CNeg(b) => b.contains(pred),
            _ => false,
        }
    }

    /// Number of PCO-level nodes.
    pub fn size(&self) -> usize {
        match self {
            PcoFormula::And(a, b) | PcoFormula::StrictTensor(a, b) | PcoFormula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
            PcoFormula::Gdisj(v) => 1 + v.iter().map(PcoFormula::size).sum::<usize>(),
            PcoFormula::Sup(_, b) | PcoFormula::Cf(_, b) | PcoFormula::CNeg(b) => 1 + b.size(),
            _ => 1,
        }
    }
}

/// Result of parsing: an event formula or a probabilistic one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Co(CoFormula),
    Pco(PcoFormula),
}

impl Formula {
    /// The formula as PCO. Fails if a CO formula uses `|` at top level.
    pub fn to_pco(&self) -> Option<PcoFormula> {
        match self {
            Formula::Co(c) => PcoFormula::try_from_co(c),
            Formula::Pco(p) => Some(p.clone()),
        }
    }
}

impl From<CoFormula> for Formula {
    fn from(f: CoFormula) -> Self {
        Formula::Co(f)
    }
}

impl From<PcoFormula> for Formula {
    fn from(f: PcoFormula) -> Self {
        Formula::Pco(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antecedent_consistency() {
        assert!(is_consistent_antecedent(&pairs(&[("X", "1"), ("Y", "0")])));
        assert!(!is_consistent_antecedent(&pairs(&[("X", "1"), ("X", "0")])));
        assert!(is_consistent_antecedent(&pairs(&[("X", "1"), ("X", "1")])));
    }

    #[test]
    fn rel_holds() {
        use Ordering::*;
        assert!(Rel::Ge.holds(Equal) && !Rel::Gt.holds(Equal));
        assert!(Rel::Ne.holds(Less) && Rel::Le.holds(Less));
        for r in [Rel::Ge, Rel::Gt, Rel::Le, Rel::Lt, Rel::Eq, Rel::Ne] {
            for o in [Less, Equal, Greater] {
                assert_eq!(r.holds(o), r.converse().holds(o.reverse()));
            }
        }
    }

    #[test]
    fn tensor_does_not_convert() {
        let co = CoFormula::tensor(CoFormula::eq("X", "0"), CoFormula::eq("Y", "0"));
        assert!(PcoFormula::try_from_co(&co).is_none());
        let co = CoFormula::sup(co, CoFormula::eq("Y", "0"));
        assert!(PcoFormula::try_from_co(&co).is_some());
    }
}
