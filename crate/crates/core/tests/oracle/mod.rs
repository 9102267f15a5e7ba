//! Reference semantics written directly from the definitions: rows are
//! plain value vectors with counts, interventions recompute every
//! non-fixed endogenous variable until nothing changes, probabilities are
//! compared by cross-multiplication.

#![allow(dead_code)]

use std::cmp::Ordering;

use causalteam::{CausalFunction, CausalMultiteam, CoFormula, Pair, PcoFormula, Rational, Rel, Signature};
use num_traits::ToPrimitive;

#[derive(Clone)]
pub struct OModel<'a> {
    pub sig: &'a Signature,
    /// `laws[v]` is the structural function of `v`, if endogenous.
    pub laws: Vec<Option<CausalFunction>>,
    pub rows: Vec<(Vec<u32>, u64)>,
}

impl<'a> OModel<'a> {
    pub fn of(m: &'a CausalMultiteam) -> Self {
        let sig = m.signature();
        OModel {
            sig,
            laws: (0..sig.len()).map(|v| m.laws().get(v).cloned()).collect(),
            rows: m.team().iter().map(|(a, &c)| (a.values().to_vec(), c)).collect(),
        }
    }

    pub fn total(&self) -> u64 {
        self.rows.iter().map(|r| r.1).sum()
    }
}

fn resolve(sig: &Signature, pairs: &[Pair]) -> Option<Vec<(usize, u32)>> {
    let mut out: Vec<(usize, u32)> = Vec::new();
    for (v, x) in pairs {
        let p = sig.pair(v, x).expect("names resolve");
        if out.iter().any(|&(w, y)| w == p.0 && y != p.1) {
            return None;
        }
        out.push(p);
    }
    Some(out)
}

/// Row after fixing `fix`, and the laws with the fixed variables cut.
pub fn intervene_row(
    laws: &[Option<CausalFunction>],
    row: &[u32],
    fix: &[(usize, u32)],
) -> (Vec<u32>, Vec<Option<CausalFunction>>) {
    let mut laws = laws.to_vec();
    let mut s = row.to_vec();
    for &(v, x) in fix {
        s[v] = x;
        laws[v] = None;
    }
    for _ in 0..=s.len() {
        let mut changed = false;
        for v in 0..s.len() {
            if let Some(f) = &laws[v] {
                let y = f.eval(&s);
                if y != s[v] {
                    s[v] = y;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (s, laws)
}

/// Truth of an event formula at a single assignment.
pub fn co_row(sig: &Signature, laws: &[Option<CausalFunction>], s: &[u32], f: &CoFormula) -> bool {
    match f {
        CoFormula::Eq(v, x) => {
            let (v, x) = sig.pair(v, x).expect("names resolve");
            s[v] == x
        }
        CoFormula::Neq(v, x) => {
            let (v, x) = sig.pair(v, x).expect("names resolve");
            s[v] != x
        }
        CoFormula::And(a, b) => co_row(sig, laws, s, a) && co_row(sig, laws, s, b),
        // a one-row team splits into itself and the empty team
        CoFormula::Tensor(a, b) => co_row(sig, laws, s, a) || co_row(sig, laws, s, b),
        CoFormula::Sup(a, b) => !co_row(sig, laws, s, a) || co_row(sig, laws, s, b),
        CoFormula::Not(a) => !co_row(sig, laws, s, a),
        CoFormula::Cf(p, body) => match resolve(sig, p) {
            None => true,
            Some(fix) => {
                let (t, l) = intervene_row(laws, s, &fix);
                co_row(sig, &l, &t, body)
            }
        },
        CoFormula::Bot => false,
        CoFormula::Top => true,
    }
}

/// `a/b` against `c/d`.
pub fn cmp_frac(a: u64, b: u64, c: u128, d: u128) -> Ordering {
    (a as u128 * d).cmp(&(c * b as u128))
}

pub fn holds(rel: Rel, o: Ordering) -> bool {
    match rel {
        Rel::Ge => o != Ordering::Less,
        Rel::Gt => o == Ordering::Greater,
        Rel::Le => o != Ordering::Greater,
        Rel::Lt => o == Ordering::Less,
        Rel::Eq => o == Ordering::Equal,
        Rel::Ne => o != Ordering::Equal,
    }
}

pub fn frac_parts(e: &Rational) -> (u128, u128) {
    (e.numer().to_u128().expect("small"), e.denom().to_u128().expect("small"))
}

pub fn count(m: &OModel, f: &CoFormula) -> u64 {
    m.rows.iter().filter(|(s, _)| co_row(m.sig, &m.laws, s, f)).map(|r| r.1).sum()
}

/// Team-level truth of an event formula: every row satisfies it.
pub fn co(m: &OModel, f: &CoFormula) -> bool {
    m.rows.iter().all(|(s, _)| co_row(m.sig, &m.laws, s, f))
}

pub fn restrict<'a>(m: &OModel<'a>, f: &CoFormula) -> OModel<'a> {
    OModel {
        sig: m.sig,
        laws: m.laws.clone(),
        rows: m.rows.iter().filter(|(s, _)| co_row(m.sig, &m.laws, s, f)).cloned().collect(),
    }
}

/// `None` for an inconsistent antecedent.
pub fn intervene<'a>(m: &OModel<'a>, pairs: &[Pair]) -> Option<OModel<'a>> {
    let fix = resolve(m.sig, pairs)?;
    let mut laws = m.laws.clone();
    let mut rows: Vec<(Vec<u32>, u64)> = Vec::new();
    for (s, c) in &m.rows {
        let (t, l) = intervene_row(&m.laws, s, &fix);
        laws = l;
        match rows.iter_mut().find(|r| r.0 == t) {
            Some(r) => r.1 += c,
            None => rows.push((t, *c)),
        }
    }
    if m.rows.is_empty() {
        for &(v, _) in &fix {
            laws[v] = None;
        }
    }
    Some(OModel { sig: m.sig, laws, rows })
}

/// Core language plus every comparison relation.
pub fn pco(m: &OModel, f: &PcoFormula) -> bool {
    let n = m.total();
    match f {
        PcoFormula::Lit(l) => co(m, &l.to_co()),
        PcoFormula::PrConst { arg, rel, eps } => {
            if n == 0 {
                return true;
            }
            let (c, d) = frac_parts(eps);
            holds(*rel, cmp_frac(count(m, arg), n, c, d))
        }
        PcoFormula::PrCmp { left, rel, right } => {
            if n == 0 {
                return true;
            }
            holds(*rel, count(m, left).cmp(&count(m, right)))
        }
        PcoFormula::And(a, b) => pco(m, a) && pco(m, b),
        PcoFormula::Gdisj(items) => items.iter().any(|g| pco(m, g)),
        PcoFormula::Sup(a, b) => pco(&restrict(m, a), b),
        PcoFormula::Cf(p, b) => match intervene(m, p) {
            None => true,
            Some(t) => pco(&t, b),
        },
        other => panic!("reference semantics does not cover `{other}`"),
    }
}

/// `a` and `b` are multiples of one count vector (over the same rows).
pub fn proportional(a: &OModel, b: &OModel) -> bool {
    let (na, nb) = (a.total() as u128, b.total() as u128);
    let get = |m: &OModel, s: &Vec<u32>| m.rows.iter().find(|r| &r.0 == s).map_or(0, |r| r.1) as u128;
    a.rows.iter().chain(&b.rows).all(|(s, _)| get(a, s) * nb == get(b, s) * na)
}
