//! Satisfaction, restriction, intervention and probabilities.
//!
//! CO formulas are flat, so they are evaluated row by row on the support.
//! Only the strict tensor needs to look at sub-multiteams.

mod compile;

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::formula::{CoFormula, Formula, Pair, PcoFormula, Rel};
use crate::model::{Assignment, CausalFunction, CausalMultiteam, FunctionComponent, Signature};
use crate::rational::{cmp_count, cmp_fractions, format_compact, ratio, Rational};
use compile::{apply, CExpr, Compiler, PExpr, PNode};

/// Verdict of a satisfaction check, with an optional explanation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalResult {
    pub verdict: bool,
    pub trace: Option<Trace>,
}

/// One evaluated node. `detail` carries the numbers the clause looked at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub clause: &'static str,
    pub formula: String,
    pub detail: String,
    pub verdict: bool,
    pub children: Vec<Trace>,
}

impl Trace {
    fn write(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        write!(f, "{:indent$}[{}] {}: {}", "", if self.verdict { "T" } else { "F" }, self.clause, self.formula, indent = depth * 2)?;
        if !self.detail.is_empty() {
            write!(f, "  ({})", self.detail)?;
        }
        writeln!(f)?;
        for c in &self.children {
            c.write(f, depth + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

type Row = Rc<[u32]>;
/// Distinct rows with positive counts, sorted.
type Team = Vec<(Row, u64)>;

fn team_of(m: &CausalMultiteam) -> Team {
    m.team().iter().map(|(a, &c)| (Rc::from(a.values()), c)).collect()
}

fn size(t: &Team) -> u64 {
    t.iter().map(|(_, c)| c).sum()
}

fn count(t: &Team, e: &CExpr) -> u64 {
    t.iter().filter(|(r, _)| e.eval(r)).map(|(_, c)| c).sum()
}

fn count_if(t: &Team, e: &CExpr, cond: Option<&CExpr>) -> u64 {
    t.iter().filter(|(r, _)| e.eval(r) && cond.is_none_or(|g| g.eval(r))).map(|(_, c)| c).sum()
}

fn filter(t: &Team, e: &CExpr) -> Team {
    t.iter().filter(|(r, _)| e.eval(r)).cloned().collect()
}

fn intervene_team(t: &Team, fix: &[(usize, u32)], laws: &[Arc<CausalFunction>]) -> Team {
    let mut out: Vec<(Row, u64)> = t
        .iter()
        .map(|(r, c)| {
            let mut row = r.to_vec();
            apply(&mut row, fix, laws);
            (Rc::from(row), *c)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.dedup_by(|next, kept| {
        if next.0 == kept.0 {
            kept.1 += next.1;
            true
        } else {
            false
        }
    });
    out
}

fn frac(num: u64, den: u64) -> String {
    format_compact(&ratio(num, den))
}

struct Evaluator<'a> {
    labels: Option<&'a [String]>,
    memo: HashMap<(usize, Team), bool>,
    /// Children and detail of each open node while tracing.
    frames: Vec<(Vec<Trace>, String)>,
    done: Option<Trace>,
}

impl<'a> Evaluator<'a> {
    fn new(labels: Option<&'a [String]>) -> Self {
        Evaluator { labels, memo: HashMap::new(), frames: Vec::new(), done: None }
    }

    fn tracing(&self) -> bool {
        self.labels.is_some()
    }

    fn note(&mut self, f: impl FnOnce() -> String) {
        if self.tracing() {
            if let Some(frame) = self.frames.last_mut() {
                frame.1 = f();
            }
        }
    }

    fn eval(&mut self, n: &PNode, t: &Team) -> bool {
        let Some(labels) = self.labels else {
            return self.clause(n, t).1;
        };
        self.frames.push((Vec::new(), String::new()));
        let (clause, verdict) = self.clause(n, t);
        let (children, detail) = self.frames.pop().unwrap_or_default();
        let node = Trace { clause, formula: labels[n.id].clone(), detail, verdict, children };
        if let Some(parent) = self.frames.last_mut() {
            parent.0.push(node);
        } else {
            self.done = Some(node);
        }
        verdict
    }

    fn take_trace(&mut self) -> Option<Trace> {
        self.done.take()
    }

    fn eval_memo(&mut self, n: &PNode, t: &Team) -> bool {
        if let Some(&v) = self.memo.get(&(n.id, t.clone())) {
            return v;
        }
        let v = self.eval(n, t);
        self.memo.insert((n.id, t.clone()), v);
        v
    }

    fn clause(&mut self, n: &PNode, t: &Team) -> (&'static str, bool) {
        match &n.expr {
            PExpr::Lit { var, val, pos } => {
                let bad = t.iter().filter(|(r, _)| (r[*var] == *val) != *pos).count();
                self.note(|| format!("{bad} of {} rows fail", t.len()));
                ("literal", bad == 0)
            }
            PExpr::PrConst { arg, rel, eps } => {
                let total = size(t);
                if total == 0 {
                    self.note(|| "empty".into());
                    return ("probability", true);
                }
                let k = count(t, arg);
                self.note(|| format!("P = {}", frac(k, total)));
                ("probability", rel.holds(cmp_count(k, total, eps)))
            }
            PExpr::PrCmp { left, rel, right } => {
                let total = size(t);
                if total == 0 {
                    self.note(|| "empty".into());
                    return ("comparison", true);
                }
                let (a, b) = (count(t, left), count(t, right));
                self.note(|| format!("P = {} vs {}", frac(a, total), frac(b, total)));
                ("comparison", rel.holds(a.cmp(&b)))
            }
            PExpr::And(a, b) => ("conjunction", self.eval(a, t) && self.eval(b, t)),
            PExpr::Gdisj(items) => ("global disjunction", items.iter().any(|g| self.eval(g, t))),
            PExpr::Sup(alpha, body) => {
                let sub = filter(t, alpha);
                self.note(|| format!("{} of {} rows kept", size(&sub), size(t)));
                ("selective implication", self.eval(body, &sub))
            }
            PExpr::Cf { fix, laws, body } => {
                let sub = intervene_team(t, fix, laws);
                ("counterfactual", self.eval(body, &sub))
            }
            PExpr::Vacuous => {
                self.note(|| "inconsistent antecedent".into());
                ("counterfactual", true)
            }
            PExpr::CondPrConst { arg, cond, rel, eps } => {
                let g = count(t, cond);
                if g == 0 {
                    self.note(|| "condition empty".into());
                    return ("conditional probability", true);
                }
                let k = count_if(t, arg, Some(cond));
                self.note(|| format!("P = {}", frac(k, g)));
                ("conditional probability", rel.holds(cmp_count(k, g, eps)))
            }
            PExpr::CondPrCmp { left, left_cond, rel, right, right_cond } => {
                let g = left_cond.as_ref().map_or(size(t), |c| count(t, c));
                let d = right_cond.as_ref().map_or(size(t), |c| count(t, c));
                if g == 0 || d == 0 {
                    self.note(|| "a condition is empty".into());
                    return ("conditional comparison", true);
                }
                let a = count_if(t, left, left_cond.as_ref());
                let b = count_if(t, right, right_cond.as_ref());
                self.note(|| format!("P = {} vs {}", frac(a, g), frac(b, d)));
                ("conditional comparison", rel.holds(cmp_fractions(a, g, b, d)))
            }
            PExpr::PrStar { arg, rel, eps } => {
                let total = size(t);
                if total == 0 {
                    let one = eps.is_one();
                    let v = match rel {
                        Rel::Ge => true,
                        Rel::Le | Rel::Eq => one,
                        Rel::Gt | Rel::Ne => !one,
                        Rel::Lt => false,
                    };
                    self.note(|| "empty".into());
                    return ("liberal probability", v);
                }
                let k = count(t, arg);
                self.note(|| format!("P = {}", frac(k, total)));
                ("liberal probability", rel.holds(cmp_count(k, total, eps)))
            }
            PExpr::Ne => ("nonempty", !t.is_empty()),
            PExpr::Strict(a, b) => {
                let found = self.split(a, b, t);
                if let (Some((t1, t2)), true) = (&found, self.tracing()) {
                    self.note(|| format!("split {} + {}", size(t1), size(t2)));
                    self.eval(a, t1);
                    self.eval(b, t2);
                }
                ("strict tensor", found.is_some())
            }
            PExpr::Bot => ("bottom", t.is_empty()),
            PExpr::Top => ("top", true),
            PExpr::Dep { determinants, dependent } => {
                let mut seen: HashMap<Vec<u32>, u32> = HashMap::new();
                let ok = t.iter().all(|(r, _)| {
                    let key: Vec<u32> = determinants.iter().map(|&d| r[d]).collect();
                    *seen.entry(key).or_insert(r[*dependent]) == r[*dependent]
                });
                ("dependence", ok)
            }
            PExpr::CIndep { right, cond, both } => {
                let g = count(t, cond);
                let ag = count(t, both);
                if g == 0 || ag == 0 {
                    self.note(|| "a condition is empty".into());
                    return ("conditional independence", true);
                }
                let bag = count_if(t, right, Some(both));
                let bg = count_if(t, right, Some(cond));
                self.note(|| format!("P = {} vs {}", frac(bag, ag), frac(bg, g)));
                ("conditional independence", cmp_fractions(bag, ag, bg, g).is_eq())
            }
        }
    }

    /// Finds `t = t1 + t2` with `t1 |= a` and `t2 |= b`, splitting counts of
    /// equal rows.
    fn split(&mut self, a: &PNode, b: &PNode, t: &Team) -> Option<(Team, Team)> {
        let saved = self.labels.take();
        let saved_frames = std::mem::take(&mut self.frames);
        let mut ks = vec![0u64; t.len()];
        let result = loop {
            let t1: Team = t.iter().zip(&ks).filter(|(_, &k)| k > 0).map(|((r, _), &k)| (r.clone(), k)).collect();
            let t2: Team =
                t.iter().zip(&ks).filter(|((_, c), &k)| *c > k).map(|((r, c), &k)| (r.clone(), c - k)).collect();
            if self.eval_memo(a, &t1) && self.eval_memo(b, &t2) {
                break Some((t1, t2));
            }
            // odometer over 0..=c per row
            let mut i = 0;
            loop {
                if i == ks.len() {
                    break;
                }
                if ks[i] < t[i].1 {
                    ks[i] += 1;
                    break;
                }
                ks[i] = 0;
                i += 1;
            }
            if i == ks.len() {
                break None;
            }
        };
        self.labels = saved;
        self.frames = saved_frames;
        result
    }
}

/// A formula compiled against one signature and one set of laws. Reusable
/// across multiteams that share them.
#[derive(Debug, Clone)]
pub struct Checker {
    sig: Arc<Signature>,
    laws: FunctionComponent,
    root: PNode,
    labels: Vec<String>,
}

impl Checker {
    /// Compiles `phi` for the signature and laws of `m`.
    pub fn new(m: &CausalMultiteam, phi: &PcoFormula) -> Result<Self> {
        let mut c = Compiler::new(m.signature(), m.laws(), m.order(), true);
        let root = c.pco(phi)?;
        let labels = c.labels.take().unwrap_or_default();
        Ok(Checker { sig: Arc::clone(m.signature_arc()), laws: m.laws().clone(), root, labels })
    }

    fn check_model(&self, m: &CausalMultiteam) -> Result<()> {
        if *m.signature() != *self.sig || *m.laws() != self.laws {
            return Err(Error::SignatureMismatch);
        }
        Ok(())
    }

    pub fn check(&self, m: &CausalMultiteam) -> Result<bool> {
        self.check_model(m)?;
        Ok(Evaluator::new(None).eval(&self.root, &team_of(m)))
    }

    pub fn check_traced(&self, m: &CausalMultiteam) -> Result<EvalResult> {
        self.check_model(m)?;
        let mut ev = Evaluator::new(Some(&self.labels));
        let verdict = ev.eval(&self.root, &team_of(m));
        Ok(EvalResult { verdict, trace: ev.take_trace() })
    }
}

/// A CO formula compiled for row-wise evaluation.
#[derive(Debug, Clone)]
pub struct EventChecker {
    expr: CExpr,
}

impl EventChecker {
    pub fn new(m: &CausalMultiteam, alpha: &CoFormula) -> Result<Self> {
        let mut c = Compiler::new(m.signature(), m.laws(), m.order(), false);
        Ok(EventChecker { expr: c.co(alpha)? })
    }

    /// Truth on the singleton of `a`.
    pub fn holds_at(&self, a: &Assignment) -> bool {
        self.expr.eval(a.values())
    }
}

pub fn satisfies(m: &CausalMultiteam, phi: &PcoFormula) -> Result<EvalResult> {
    let mut c = Compiler::new(m.signature(), m.laws(), m.order(), false);
    let root = c.pco(phi)?;
    let verdict = Evaluator::new(None).eval(&root, &team_of(m));
    Ok(EvalResult { verdict, trace: None })
}

/// Like [`satisfies`], with a trace of every evaluated node.
pub fn satisfies_traced(m: &CausalMultiteam, phi: &PcoFormula) -> Result<EvalResult> {
    Checker::new(m, phi)?.check_traced(m)
}

/// CO satisfaction by flatness: every row of the support satisfies `alpha`.
pub fn satisfies_co(m: &CausalMultiteam, alpha: &CoFormula) -> Result<bool> {
    let e = EventChecker::new(m, alpha)?;
    Ok(m.team().assignments().all(|a| e.holds_at(a)))
}

pub fn satisfies_formula(m: &CausalMultiteam, phi: &Formula) -> Result<EvalResult> {
    match phi {
        Formula::Co(a) => Ok(EvalResult { verdict: satisfies_co(m, a)?, trace: None }),
        Formula::Pco(p) => satisfies(m, p),
    }
}

/// `m^alpha`: the rows whose singleton satisfies `alpha`, counts kept.
pub fn restrict(m: &CausalMultiteam, alpha: &CoFormula) -> Result<CausalMultiteam> {
    let e = EventChecker::new(m, alpha)?;
    Ok(m.with_team(m.team().filter(|a| e.holds_at(a))))
}

fn resolve_pairs(sig: &Signature, pairs: &[Pair]) -> Result<Vec<(usize, u32)>> {
    let mut fix: Vec<(usize, u32)> = Vec::with_capacity(pairs.len());
    for (v, x) in pairs {
        let (var, val) = sig.pair(v, x)?;
        match fix.iter().find(|&&(w, _)| w == var) {
            Some(&(_, y)) if y != val => return Err(Error::InconsistentIntervention(v.clone())),
            Some(_) => {}
            None => fix.push((var, val)),
        }
    }
    Ok(fix)
}

/// `do(pairs)`: fixes the variables, drops their laws and recomputes the
/// remaining endogenous variables.
pub fn intervene(m: &CausalMultiteam, pairs: &[Pair]) -> Result<CausalMultiteam> {
    let fix = resolve_pairs(m.signature(), pairs)?;
    Ok(m.intervene_indices(&fix))
}

/// `P_m(alpha)`.
pub fn prob(m: &CausalMultiteam, alpha: &CoFormula) -> Result<Rational> {
    if m.is_empty() {
        return Err(Error::EmptyModel);
    }
    let e = EventChecker::new(m, alpha)?;
    let k: u64 = m.team().iter().filter(|(a, _)| e.holds_at(a)).map(|(_, c)| c).sum();
    Ok(ratio(k, m.len()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CondProb {
    Value(Rational),
    /// The condition has probability zero.
    Undefined,
}

impl fmt::Display for CondProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CondProb::Value(r) => f.write_str(&format_compact(r)),
            CondProb::Undefined => f.write_str("undefined"),
        }
    }
}

/// `P_m(alpha | gamma)`.
pub fn cond_prob(m: &CausalMultiteam, alpha: &CoFormula, gamma: &CoFormula) -> Result<CondProb> {
    if m.is_empty() {
        return Err(Error::EmptyModel);
    }
    let a = EventChecker::new(m, alpha)?;
    let g = EventChecker::new(m, gamma)?;
    let (mut ng, mut nag) = (0u64, 0u64);
    for (s, &c) in m.team().iter() {
        if g.holds_at(s) {
            ng += c;
            if a.holds_at(s) {
                nag += c;
            }
        }
    }
    Ok(if ng == 0 { CondProb::Undefined } else { CondProb::Value(ratio(nag, ng)) })
}

/// Right-hand side of a probability atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Threshold {
    Const(Rational),
    Pr(CoFormula),
}

/// Both readings of an intervention combined with an observation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedReport {
    /// `pairs ~> (gamma => Pr(alpha) rel t)`
    pub do_form: bool,
    /// `gamma => (pairs ~> Pr(alpha) rel t)`
    pub pearl_form: bool,
    /// `P_{m_do}(alpha | gamma)`, `None` on an empty model.
    pub do_prob: Option<CondProb>,
    /// `P_m(pairs ~> alpha | gamma)`, `None` on an empty model.
    pub pearl_prob: Option<CondProb>,
}

pub fn satisfies_mixed(
    m: &CausalMultiteam,
    gamma: &CoFormula,
    pairs: &[Pair],
    alpha: &CoFormula,
    rel: Rel,
    t: &Threshold,
) -> Result<MixedReport> {
    let atom = match t {
        Threshold::Const(eps) => PcoFormula::pr(alpha.clone(), rel, eps.clone()),
        Threshold::Pr(beta) => PcoFormula::pr_cmp(alpha.clone(), rel, beta.clone()),
    };
    let do_form = PcoFormula::cf(pairs.to_vec(), PcoFormula::sup(gamma.clone(), atom.clone()));
    let pearl_form = PcoFormula::sup(gamma.clone(), PcoFormula::cf(pairs.to_vec(), atom));
    let intervened = intervene(m, pairs)?;
    let (do_prob, pearl_prob) = if m.is_empty() {
        (None, None)
    } else {
        let cf_alpha = CoFormula::cf(pairs.to_vec(), alpha.clone());
        (Some(cond_prob(&intervened, alpha, gamma)?), Some(cond_prob(m, &cf_alpha, gamma)?))
    };
    Ok(MixedReport {
        do_form: satisfies(m, &do_form)?.verdict,
        pearl_form: satisfies(m, &pearl_form)?.verdict,
        do_prob,
        pearl_prob,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{coin, inc, multiteam, s3};
    use crate::formula::{pairs, parse_co, parse_pco};

    fn co(text: &str) -> CoFormula {
        parse_co(text).unwrap()
    }

    fn holds(m: &CausalMultiteam, text: &str) -> bool {
        satisfies(m, &parse_pco(text).unwrap()).unwrap().verdict
    }

    #[test]
    fn restriction() {
        assert_eq!(restrict(&coin(), &co("X=tails")).unwrap().len(), 2);
        assert_eq!(restrict(&coin(), &CoFormula::Top).unwrap(), coin());
        let r = restrict(&inc(), &co("Y=2")).unwrap();
        assert_eq!(r.team().support_len(), 1);
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn intervention() {
        let m = intervene(&inc(), &pairs(&[("X", "0")])).unwrap();
        assert_eq!(m.len(), 6);
        assert_eq!(m.team().support_len(), 1);
        assert_eq!(m.laws().len(), 1);

        let m = intervene(&inc(), &pairs(&[("Y", "3")])).unwrap();
        assert!(m.laws().is_empty());
        assert_eq!(m.len(), 6);
        assert!(m.team().assignments().all(|a| a.get(1) == 2));
        let xs: Vec<u64> = (0..3).map(|x| m.team().count(&Assignment::new(vec![x, 2]))).collect();
        assert_eq!(xs, [1, 2, 3]);

        assert_eq!(intervene(&inc(), &pairs(&[("X", "1"), ("X", "1")])).unwrap().len(), 6);
        assert!(matches!(
            intervene(&inc(), &pairs(&[("X", "1"), ("X", "2")])),
            Err(Error::InconsistentIntervention(_))
        ));
        assert!(matches!(intervene(&inc(), &pairs(&[("X", "7")])), Err(Error::RangeError { .. })));
    }

    #[test]
    fn intervention_keeps_rows_that_already_comply() {
        let m = intervene(&inc(), &pairs(&[("X", "0")])).unwrap();
        let again = intervene(&m, &pairs(&[("X", "0")])).unwrap();
        assert_eq!(again.team(), m.team());
    }

    #[test]
    fn probabilities() {
        assert_eq!(prob(&s3(), &co("Y=0")).unwrap(), ratio(2, 3));
        assert_eq!(prob(&coin(), &co("X=heads | Y=tails")).unwrap(), ratio(3, 4));
        assert_eq!(prob(&inc(), &CoFormula::Top).unwrap(), ratio(1, 1));
        let empty = restrict(&coin(), &CoFormula::Bot).unwrap();
        assert_eq!(prob(&empty, &co("X=heads")), Err(Error::EmptyModel));
    }

    #[test]
    fn conditional_probabilities() {
        assert_eq!(cond_prob(&coin(), &co("Y=tails"), &co("X=tails")).unwrap(), CondProb::Value(ratio(1, 2)));
        assert_eq!(
            cond_prob(&inc(), &co("Y=2"), &CoFormula::Top).unwrap(),
            CondProb::Value(prob(&inc(), &co("Y=2")).unwrap())
        );
        assert_eq!(cond_prob(&inc(), &co("Y=2"), &co("X=0 & X=1")).unwrap(), CondProb::Undefined);
        assert!(matches!(cond_prob(&coin(), &co("Y=tails"), &co("X=1")), Err(Error::RangeError { .. })));
    }

    #[test]
    fn coin_statements() {
        assert!(holds(&coin(), "Pr(X=heads) == 1/2 \\/ Pr(Y=tails) == 1/2"));
        assert!(holds(&coin(), "Pr((X=heads | Y=tails)) == 3/4"));
        assert!(holds(&coin(), "Pr(X=heads | Y=tails) == 1/2"));
        assert!(holds(&coin(), "Pr(X=tails) <= 1/2"));
        let tails = restrict(&coin(), &co("X=tails")).unwrap();
        assert!(!holds(&tails, "Pr(X=tails) <= 1/2"));
    }

    #[test]
    fn empty_model_satisfies_core_formulas() {
        let empty = restrict(&coin(), &CoFormula::Bot).unwrap();
        for text in ["X=heads & X=tails", "Pr(X=heads) > 1/2", "bot", "Pr(X=heads) < Pr(X=heads)", "X=heads ~> Y!=tails"] {
            assert!(holds(&empty, text), "{text}");
        }
        assert!(!holds(&empty, "NE"));
        assert!(!holds(&empty, "Pr*(X=heads) < 1"));
    }

    #[test]
    fn counterfactuals() {
        assert!(holds(&inc(), "X=0 ~> Y=1"));
        assert!(holds(&inc(), "X=0 & X=1 ~> Y=3"));
        assert!(holds(&inc(), "Y=3 ~> Pr(X=2) == 1/2"));
        assert!(holds(&inc(), "X=2 ~> (X=2 ~> Pr(Y=3) >= 1)"));
        // CO counterfactuals inside probabilities
        assert_eq!(prob(&inc(), &co("X=1 ~> Y=2")).unwrap(), ratio(1, 1));
        assert_eq!(prob(&inc(), &co("Y=1 ~> X=2")).unwrap(), ratio(1, 2));
    }

    #[test]
    fn nested_interventions_keep_fixed_variables() {
        // after do(Y=1), do(X=2) must not recompute Y
        assert!(holds(&inc(), "Y=1 ~> X=2 ~> Pr(Y=1) >= 1"));
        assert_eq!(prob(&inc(), &co("Y=1 ~> X=2 ~> Y=1")).unwrap(), ratio(1, 1));
    }

    #[test]
    fn liberal_atoms_on_empty() {
        let empty = restrict(&coin(), &CoFormula::Bot).unwrap();
        let cases = [
            ("Pr*(X=heads) >= 1/2", true),
            ("Pr*(X=heads) <= 1/2", false),
            ("Pr*(X=heads) <= 1", true),
            ("Pr*(X=heads) > 1/2", true),
            ("Pr*(X=heads) > 1", false),
            ("Pr*(X=heads) < 1", false),
            ("Pr*(X=heads) == 1", true),
            ("Pr*(X=heads) != 1/2", true),
        ];
        for (text, want) in cases {
            assert_eq!(holds(&empty, text), want, "{text}");
        }
        assert!(holds(&coin(), "Pr*(X=heads) < 3/4"));
    }

    #[test]
    fn strict_tensor_splits_copies() {
        let sig = coin().signature_arc().clone();
        let one = coin().with_team(multiteam(&sig, &[(&["heads", "heads"], 1)]));
        let three = coin().with_team(multiteam(&sig, &[(&["heads", "heads"], 3)]));
        let theta3 = "NE <|> NE <|> NE";
        assert!(!holds(&one, theta3));
        assert!(holds(&three, theta3));
        assert!(holds(&coin(), "Pr(X=heads) >= 1 <|> Pr(X=tails) >= 1"));
        assert!(!holds(&coin(), "(Pr(X=heads) >= 1 & NE) <|> (Pr(X=heads) >= 1 & NE)"));
    }

    #[test]
    fn dependence_and_independence() {
        assert!(holds(&inc(), "dep(X; Y)"));
        assert!(!holds(&coin(), "dep(X; Y)"));
        assert!(holds(&coin(), "dep(X, Y; Y)"));
        assert!(holds(&coin(), "cindep(X=heads; Y=heads | top)"));
        assert!(!holds(&inc(), "cindep(X=1; Y=2 | top)"));
    }

    #[test]
    fn mixed_statement_orders_differ() {
        let sig = Signature::new([("X", vec!["0", "1"]), ("Y", vec!["0", "1"])]).unwrap();
        let f = CausalFunction::from_tokens(&sig, "Y", &["X"], [(vec!["0"], "0"), (vec!["1"], "1")]).unwrap();
        let team = multiteam(&sig, &[(&["0", "0"], 1), (&["1", "1"], 1)]);
        let m = CausalMultiteam::new(sig, team, FunctionComponent::from_functions([f]).unwrap()).unwrap();
        let (g, a, p) = (co("Y=0"), co("Y=1"), pairs(&[("X", "1")]));

        let r = satisfies_mixed(&m, &g, &p, &a, Rel::Ge, &Threshold::Const(ratio(1, 1))).unwrap();
        assert!(r.do_form && r.pearl_form);
        assert_eq!(r.do_prob, Some(CondProb::Undefined));
        assert_eq!(r.pearl_prob, Some(CondProb::Value(ratio(1, 1))));

        let r = satisfies_mixed(&m, &g, &p, &a, Rel::Le, &Threshold::Const(ratio(0, 1))).unwrap();
        assert!(r.do_form);
        assert!(!r.pearl_form);
    }

    #[test]
    fn trace_reports_clauses() {
        let r = satisfies_traced(&coin(), &parse_pco("Pr(X=heads) == 1/2 \\/ X=heads").unwrap()).unwrap();
        assert!(r.verdict);
        let t = r.trace.unwrap();
        assert_eq!(t.clause, "global disjunction");
        assert_eq!(t.children.len(), 1);
        assert_eq!(t.children[0].detail, "P = 1/2");
        assert!(t.to_string().contains("[T] probability"));

        let sig = coin().signature_arc().clone();
        let two = coin().with_team(multiteam(&sig, &[(&["heads", "heads"], 2)]));
        let t = satisfies_traced(&two, &parse_pco("NE <|> NE").unwrap()).unwrap().trace.unwrap();
        assert_eq!(t.detail, "split 1 + 1");
        assert_eq!(t.children.len(), 2);
    }

    #[test]
    fn checker_rejects_other_laws() {
        let c = Checker::new(&coin(), &parse_pco("NE").unwrap()).unwrap();
        assert!(c.check(&coin()).unwrap());
        assert_eq!(c.check(&inc()), Err(Error::SignatureMismatch));
    }

    #[test]
    fn unknown_names_are_errors() {
        assert!(matches!(satisfies(&coin(), &parse_pco("Z=1").unwrap()), Err(Error::UnknownVariable(_))));
        assert!(matches!(satisfies_co(&coin(), &co("X=3")), Err(Error::RangeError { .. })));
    }
}
