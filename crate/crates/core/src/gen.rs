//! Seeded random formulas and models for property checks.

use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::compatible_assignments;
use crate::formula::{CoFormula, Pair, PcoFormula, Rel};
use crate::model::{CausalMultiteam, FunctionComponent, Multiteam, Signature};
use crate::rational::{ratio, Rational};

/// Which constructors a generated PCO formula may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fragment {
    /// Literals, `>=`/`>` atoms, `&`, `\/`, `=>`, `~>`.
    Core,
    /// Core plus the abbreviations: all six relations, conditional atoms,
    /// `->`, `cneg`, `dep`, `cindep`, `bot`, `top`.
    Sugar,
}

pub struct Gen {
    rng: ChaCha8Rng,
    sig: Arc<Signature>,
}

impl Gen {
    pub fn new(seed: u64, sig: Arc<Signature>) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), sig }
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn var(&mut self) -> usize {
        self.rng.random_range(0..self.sig.len())
    }

    fn pair(&mut self) -> Pair {
        let v = self.var();
        let x = self.rng.random_range(0..self.sig.range_len(v)) as u32;
        (self.sig.name(v).to_string(), self.sig.value(v, x).to_string())
    }

    /// One or two pairs; about one in eight antecedents is inconsistent.
    pub fn antecedent(&mut self) -> Vec<Pair> {
        let mut out = vec![self.pair()];
        if self.rng.random_bool(0.3) {
            let p = self.pair();
            if p.0 != out[0].0 || self.rng.random_bool(0.5) {
                out.push(p);
            }
        }
        out
    }

    pub fn literal(&mut self) -> CoFormula {
        let (v, x) = self.pair();
        if self.rng.random_bool(0.5) {
            CoFormula::eq(v, x)
        } else {
            CoFormula::neq(v, x)
        }
    }

    /// CO formula of depth at most `depth` (literals have depth 1).
    pub fn co(&mut self, depth: usize) -> CoFormula {
        if depth <= 1 || self.rng.random_bool(0.25) {
            return self.literal();
        }
        let d = depth - 1;
        match self.rng.random_range(0..4) {
            0 => CoFormula::and(self.co(d), self.co(d)),
            1 => CoFormula::tensor(self.co(d), self.co(d)),
            2 => CoFormula::sup(self.co(d), self.co(d)),
            _ => CoFormula::cf(self.antecedent(), self.co(d)),
        }
    }

    /// A rational in [0,1] with a small denominator.
    pub fn eps(&mut self) -> Rational {
        let den = self.rng.random_range(1..=6u64);
        let num = self.rng.random_range(0..=den);
        ratio(num, den)
    }

    /// `negatable` leaves out the atoms that have no contradictory negation.
    fn atom(&mut self, fragment: Fragment, negatable: bool) -> PcoFormula {
        let rels: &[Rel] = match fragment {
            Fragment::Core => &[Rel::Ge, Rel::Gt],
            Fragment::Sugar => &[Rel::Ge, Rel::Gt, Rel::Le, Rel::Lt, Rel::Eq, Rel::Ne],
        };
        let rel = *rels.choose(&mut self.rng).expect("nonempty");
        let arg = self.co(2);
        let kind = match fragment {
            Fragment::Core => self.rng.random_range(0..3),
            Fragment::Sugar if negatable => self.rng.random_range(0..6),
            Fragment::Sugar => self.rng.random_range(0..7),
        };
        match kind {
            0 => {
                let (v, x) = self.pair();
                if self.rng.random_bool(0.5) {
                    PcoFormula::lit(v, x)
                } else {
                    PcoFormula::nlit(v, x)
                }
            }
            1 => PcoFormula::pr(arg, rel, self.eps()),
            2 => PcoFormula::pr_cmp(arg, rel, self.co(2)),
            3 => PcoFormula::CondPrConst { arg, cond: self.co(2), rel, eps: self.eps() },
            4 => {
                let cond = self.co(2);
                let same = negatable || self.rng.random_bool(0.5);
                PcoFormula::CondPrCmp {
                    left: arg,
                    left_cond: Some(cond.clone()),
                    rel,
                    right: self.co(2),
                    right_cond: Some(if same { cond } else { self.co(2) }),
                }
            }
            5 => {
                let n = self.rng.random_range(0..self.sig.len());
                let dependent = self.var();
                let mut determinants: Vec<String> = Vec::new();
                for _ in 0..n {
                    let v = self.var();
                    let name = self.sig.name(v).to_string();
                    if !determinants.contains(&name) {
                        determinants.push(name);
                    }
                }
                PcoFormula::Dep { determinants, dependent: self.sig.name(dependent).to_string() }
            }
            _ => PcoFormula::CIndep { left: arg, right: self.co(2), cond: self.co(2) },
        }
    }

    /// PCO formula of depth at most `depth` in the given fragment.
    pub fn pco(&mut self, depth: usize, fragment: Fragment) -> PcoFormula {
        self.pco_inner(depth, fragment, false)
    }

    fn pco_inner(&mut self, depth: usize, fragment: Fragment, negatable: bool) -> PcoFormula {
        if depth <= 1 || self.rng.random_bool(0.2) {
            return self.atom(fragment, negatable);
        }
        let d = depth - 1;
        let choices = match fragment {
            Fragment::Core => 4,
            Fragment::Sugar => 7,
        };
        match self.rng.random_range(0..choices) {
            0 => PcoFormula::and(self.pco_inner(d, fragment, negatable), self.pco_inner(d, fragment, negatable)),
            1 => {
                let n = self.rng.random_range(2..=3);
                PcoFormula::Gdisj((0..n).map(|_| self.pco_inner(d, fragment, negatable)).collect())
            }
            2 => PcoFormula::sup(self.co(2), self.pco_inner(d, fragment, negatable)),
            3 => PcoFormula::cf(self.antecedent(), self.pco_inner(d, fragment, negatable)),
            4 => PcoFormula::implies(self.pco_inner(d, fragment, true), self.pco_inner(d, fragment, negatable)),
            5 => PcoFormula::cneg(self.pco_inner(d, fragment, true)),
            _ => {
                if self.rng.random_bool(0.5) {
                    PcoFormula::Bot
                } else {
                    PcoFormula::Top
                }
            }
        }
    }

    /// A model with laws drawn from `fcs` and between `min_rows` and
    /// `max_rows` rows. Falls back to fewer rows when the laws admit no
    /// assignment.
    pub fn model(&mut self, fcs: &[FunctionComponent], min_rows: u64, max_rows: u64) -> CausalMultiteam {
        let fc = fcs.choose(&mut self.rng).cloned().unwrap_or_default();
        let items = compatible_assignments(&self.sig, &fc);
        let n = self.rng.random_range(min_rows..=max_rows);
        let mut team = Multiteam::new();
        if !items.is_empty() {
            for _ in 0..n {
                team.insert(items.choose(&mut self.rng).expect("nonempty").clone(), 1);
            }
        }
        CausalMultiteam::new(Arc::clone(&self.sig), team, fc).expect("compatible by construction")
    }
}
