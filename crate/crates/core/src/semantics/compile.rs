//! Resolves names to indices and fixes, for every counterfactual, which laws
//! are recomputed after it.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{CoFormula, Pair, PcoFormula, Rel};
use crate::model::{CausalFunction, FunctionComponent, Signature};
use crate::rational::Rational;
use crate::transforms::compile_cneg;

/// Event formula over index-resolved rows.
#[derive(Debug, Clone)]
pub(crate) enum CExpr {
    Lit { var: usize, val: u32, pos: bool },
    Const(bool),
    And(Box<CExpr>, Box<CExpr>),
    Or(Box<CExpr>, Box<CExpr>),
    Sup(Box<CExpr>, Box<CExpr>),
    Cf { fix: Vec<(usize, u32)>, laws: Vec<Arc<CausalFunction>>, body: Box<CExpr> },
}

impl CExpr {
    /// Truth on the singleton of `row`.
    pub(crate) fn eval(&self, row: &[u32]) -> bool {
        match self {
            CExpr::Lit { var, val, pos } => (row[*var] == *val) == *pos,
            CExpr::Const(b) => *b,
            CExpr::And(a, b) => a.eval(row) && b.eval(row),
            CExpr::Or(a, b) => a.eval(row) || b.eval(row),
            CExpr::Sup(a, b) => !a.eval(row) || b.eval(row),
            CExpr::Cf { fix, laws, body } => {
                let mut buf = [0u32; 16];
                if row.len() <= buf.len() {
                    let buf = &mut buf[..row.len()];
                    buf.copy_from_slice(row);
                    apply(buf, fix, laws);
                    body.eval(buf)
                } else {
                    let mut buf = row.to_vec();
                    apply(&mut buf, fix, laws);
                    body.eval(&buf)
                }
            }
        }
    }
}

#[inline]
pub(crate) fn apply(row: &mut [u32], fix: &[(usize, u32)], laws: &[Arc<CausalFunction>]) {
    for &(v, x) in fix {
        row[v] = x;
    }
    for f in laws {
        row[f.target()] = f.eval(row);
    }
}

#[derive(Debug, Clone)]
pub(crate) struct PNode {
    pub id: usize,
    pub expr: PExpr,
}

#[derive(Debug, Clone)]
pub(crate) enum PExpr {
    Lit { var: usize, val: u32, pos: bool },
    PrConst { arg: CExpr, rel: Rel, eps: Rational },
    PrCmp { left: CExpr, rel: Rel, right: CExpr },
    And(Box<PNode>, Box<PNode>),
    Gdisj(Vec<PNode>),
    Sup(CExpr, Box<PNode>),
    Cf { fix: Vec<(usize, u32)>, laws: Vec<Arc<CausalFunction>>, body: Box<PNode> },
    /// A counterfactual with an inconsistent antecedent.
    Vacuous,
    CondPrConst { arg: CExpr, cond: CExpr, rel: Rel, eps: Rational },
    CondPrCmp { left: CExpr, left_cond: Option<CExpr>, rel: Rel, right: CExpr, right_cond: Option<CExpr> },
    PrStar { arg: CExpr, rel: Rel, eps: Rational },
    Ne,
    Strict(Box<PNode>, Box<PNode>),
    Bot,
    Top,
    Dep { determinants: Vec<usize>, dependent: usize },
    CIndep { right: CExpr, cond: CExpr, both: CExpr },
}

pub(crate) struct Compiler<'a> {
    sig: &'a Signature,
    laws: &'a FunctionComponent,
    order: &'a [usize],
    /// Variables fixed by enclosing counterfactuals.
    cut: Vec<bool>,
    next_id: usize,
    pub labels: Option<Vec<String>>,
}

impl<'a> Compiler<'a> {
    pub(crate) fn new(sig: &'a Signature, laws: &'a FunctionComponent, order: &'a [usize], labels: bool) -> Self {
        Compiler { sig, laws, order, cut: vec![false; sig.len()], next_id: 0, labels: labels.then(Vec::new) }
    }

    fn resolve(&self, pairs: &[Pair]) -> Result<Option<Vec<(usize, u32)>>> {
        let mut fix: Vec<(usize, u32)> = Vec::with_capacity(pairs.len());
        let mut consistent = true;
        for (v, x) in pairs {
            let (var, val) = self.sig.pair(v, x)?;
            match fix.iter().find(|&&(w, _)| w == var) {
                Some(&(_, y)) if y != val => consistent = false,
                Some(_) => {}
                None => fix.push((var, val)),
            }
        }
        Ok(consistent.then_some(fix))
    }

    /// Laws still in force below a counterfactual fixing `fix`, in
    /// evaluation order.
    fn recompute(&self, fix: &[(usize, u32)]) -> Vec<Arc<CausalFunction>> {
        self.order
            .iter()
            .filter(|&&v| !self.cut[v] && !fix.iter().any(|&(w, _)| w == v))
            .map(|&v| Arc::clone(self.laws.get_arc(v).expect("ordered variables have laws")))
            .collect()
    }

    fn with_cut<T>(&mut self, fix: &[(usize, u32)], f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        let saved: Vec<(usize, bool)> = fix.iter().map(|&(v, _)| (v, self.cut[v])).collect();
        for &(v, _) in fix {
            self.cut[v] = true;
        }
        let out = f(self);
        for (v, was) in saved.into_iter().rev() {
            self.cut[v] = was;
        }
        out
    }

    fn literal(&self, var: &str, value: &str) -> Result<(usize, u32)> {
        self.sig.pair(var, value)
    }

    pub(crate) fn co(&mut self, f: &CoFormula) -> Result<CExpr> {
        Ok(match f {
            CoFormula::Eq(v, x) => {
                let (var, val) = self.literal(v, x)?;
                CExpr::Lit { var, val, pos: true }
            }
            CoFormula::Neq(v, x) => {
                let (var, val) = self.literal(v, x)?;
                CExpr::Lit { var, val, pos: false }
            }
            CoFormula::And(a, b) => CExpr::And(Box::new(self.co(a)?), Box::new(self.co(b)?)),
            CoFormula::Tensor(a, b) => CExpr::Or(Box::new(self.co(a)?), Box::new(self.co(b)?)),
            CoFormula::Sup(a, b) => CExpr::Sup(Box::new(self.co(a)?), Box::new(self.co(b)?)),
            CoFormula::Not(a) => CExpr::Sup(Box::new(self.co(a)?), Box::new(CExpr::Const(false))),
            CoFormula::Bot => CExpr::Const(false),
            CoFormula::Top => CExpr::Const(true),
            CoFormula::Cf(pairs, body) => match self.resolve(pairs)? {
                None => {
                    // still check names below
                    self.co(body)?;
                    CExpr::Const(true)
                }
                Some(fix) => {
                    let laws = self.recompute(&fix);
                    let body = self.with_cut(&fix, |c| c.co(body))?;
                    CExpr::Cf { fix, laws, body: Box::new(body) }
                }
            },
        })
    }

    fn node(&mut self, f: &PcoFormula, expr: impl FnOnce(&mut Self) -> Result<PExpr>) -> Result<PNode> {
        let id = self.next_id;
        self.next_id += 1;
        if let Some(labels) = &mut self.labels {
            labels.push(f.to_string());
        }
        Ok(PNode { id, expr: expr(self)? })
    }

    pub(crate) fn pco(&mut self, f: &PcoFormula) -> Result<PNode> {
        self.node(f, |c| {
            Ok(match f {
                PcoFormula::Lit(l) => {
                    let (var, val) = c.literal(&l.var, &l.value)?;
                    PExpr::Lit { var, val, pos: l.positive }
                }
                PcoFormula::PrConst { arg, rel, eps } => {
                    PExpr::PrConst { arg: c.co(arg)?, rel: *rel, eps: eps.clone() }
                }
                PcoFormula::PrCmp { left, rel, right } => {
                    PExpr::PrCmp { left: c.co(left)?, rel: *rel, right: c.co(right)? }
                }
                PcoFormula::And(a, b) => PExpr::And(Box::new(c.pco(a)?), Box::new(c.pco(b)?)),
                PcoFormula::Gdisj(items) => {
                    if items.is_empty() {
                        return Err(Error::UnsupportedNode("empty global disjunction".into()));
                    }
                    PExpr::Gdisj(items.iter().map(|g| c.pco(g)).collect::<Result<_>>()?)
                }
                PcoFormula::Sup(a, b) => PExpr::Sup(c.co(a)?, Box::new(c.pco(b)?)),
                PcoFormula::Cf(pairs, body) => match c.resolve(pairs)? {
                    None => {
                        c.pco(body)?;
                        PExpr::Vacuous
                    }
                    Some(fix) => {
                        let laws = c.recompute(&fix);
                        let body = c.with_cut(&fix, |c| c.pco(body))?;
                        PExpr::Cf { fix, laws, body: Box::new(body) }
                    }
                },
                PcoFormula::CondPrConst { arg, cond, rel, eps } => {
                    PExpr::CondPrConst { arg: c.co(arg)?, cond: c.co(cond)?, rel: *rel, eps: eps.clone() }
                }
                PcoFormula::CondPrCmp { left, left_cond, rel, right, right_cond } => PExpr::CondPrCmp {
                    left: c.co(left)?,
                    left_cond: left_cond.as_ref().map(|g| c.co(g)).transpose()?,
                    rel: *rel,
                    right: c.co(right)?,
                    right_cond: right_cond.as_ref().map(|g| c.co(g)).transpose()?,
                },
                PcoFormula::PrStar { arg, rel, eps } => PExpr::PrStar { arg: c.co(arg)?, rel: *rel, eps: eps.clone() },
                PcoFormula::Ne => PExpr::Ne,
                PcoFormula::StrictTensor(a, b) => PExpr::Strict(Box::new(c.pco(a)?), Box::new(c.pco(b)?)),
                PcoFormula::Bot => PExpr::Bot,
                PcoFormula::Top => PExpr::Top,
                PcoFormula::Implies(a, b) => {
                    let neg = compile_cneg(a, Some(c.sig))?;
                    PExpr::Gdisj(vec![c.pco(&neg)?, c.pco(b)?])
                }
                PcoFormula::CNeg(a) => {
                    let neg = compile_cneg(a, Some(c.sig))?;
                    c.pco(&neg)?.expr
                }
                PcoFormula::Dep { determinants, dependent } => PExpr::Dep {
                    determinants: determinants.iter().map(|d| c.sig.var(d)).collect::<Result<_>>()?,
                    dependent: c.sig.var(dependent)?,
                },
                PcoFormula::CIndep { left, right, cond } => {
                    let both = CoFormula::and(left.clone(), cond.clone());
                    PExpr::CIndep { right: c.co(right)?, cond: c.co(cond)?, both: c.co(&both)? }
                }
            })
        })
    }
}
