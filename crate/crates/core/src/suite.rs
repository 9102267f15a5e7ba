//! Seeded property suite, run by the command-line `suite` subcommand.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::enumerate::{all_models, function_components};
use crate::error::Result;
use crate::formula::{CoFormula, Pair, PcoFormula};
use crate::gen::{Fragment, Gen};
use crate::model::{CausalMultiteam, FunctionComponent, Multiteam, Signature};
use crate::rescaling::{canonical, is_rescaling, scale, theta_k_formula};
use crate::sem::{joint_prob, multiteam_to_sem, sem_to_multiteam};
use crate::semantics::{intervene, prob, restrict, satisfies, satisfies_co};
use crate::transforms::{compile_cneg, normal_form};

#[derive(Debug, Clone)]
pub struct PropertyResult {
    pub name: &'static str,
    pub cases: usize,
    /// First few counterexamples, rendered.
    pub failures: Vec<String>,
    pub failed: usize,
    pub elapsed: Duration,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failed: usize,
    failures: Vec<String>,
    start: Instant,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, cases: 0, failed: 0, failures: Vec::new(), start: Instant::now() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 5 {
                self.failures.push(what());
            }
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            failed: self.failed,
            elapsed: self.start.elapsed(),
        }
    }
}

fn binary2() -> Arc<Signature> {
    Arc::new(Signature::new([("X", vec!["0", "1"]), ("Y", vec!["0", "1"])]).expect("valid"))
}

fn mixed2() -> Arc<Signature> {
    Arc::new(Signature::new([("X", vec!["0", "1"]), ("Y", vec!["0", "1", "2"])]).expect("valid"))
}

fn show(m: &CausalMultiteam) -> String {
    m.to_string().replace('\n', "; ")
}

/// Statement built from literals and connectives only, no probability atoms.
fn probability_free(g: &mut Gen, depth: usize) -> PcoFormula {
    if depth <= 1 || g.rng().random_bool(0.25) {
        return PcoFormula::try_from_co(&g.literal()).expect("literal");
    }
    let d = depth - 1;
    match g.rng().random_range(0..4) {
        0 => PcoFormula::and(probability_free(g, d), probability_free(g, d)),
        1 => PcoFormula::or(probability_free(g, d), probability_free(g, d)),
        2 => {
            let a = g.co(2);
            PcoFormula::sup(a, probability_free(g, d))
        }
        _ => {
            let p = g.antecedent();
            PcoFormula::cf(p, probability_free(g, d))
        }
    }
}

fn singleton(m: &CausalMultiteam, a: &crate::model::Assignment) -> Result<CausalMultiteam> {
    m.replace_team(Multiteam::from_rows([(a.clone(), 1)]))
}

/// A consistent antecedent of one or two pairs.
fn consistent_pairs(g: &mut Gen) -> Vec<Pair> {
    loop {
        let p = g.antecedent();
        if crate::formula::is_consistent_antecedent(&p) {
            return p;
        }
    }
}

/// Runs every property with the given seed. `scale_factor` multiplies the
/// number of random cases (1 is the default size).
pub fn run_suite(seed: u64, scale_factor: usize) -> Result<SuiteReport> {
    let k = scale_factor.max(1);
    let b2 = binary2();
    let all_b2 = all_models(&b2, 4, 1_000_000)?;
    let sigs = [Arc::clone(&b2), mixed2()];
    let fcs: Vec<Vec<FunctionComponent>> =
        sigs.iter().map(|s| function_components(s, 1_000_000)).collect::<Result<_>>()?;
    let mut properties = Vec::new();

    // flatness of event formulas
    let mut t = Tally::new("event flatness");
    let mut g = Gen::new(seed, Arc::clone(&b2));
    let events: Vec<CoFormula> = (0..40 * k).map(|_| g.co(3)).collect();
    for m in &all_b2 {
        for alpha in &events {
            let whole = satisfies_co(m, alpha)?;
            let mut each = true;
            for a in m.team().assignments() {
                each &= satisfies_co(&singleton(m, a)?, alpha)?;
            }
            t.check(whole == each, || format!("{alpha} on {}", show(m)));
        }
    }
    properties.push(t.finish());

    // empty-team property
    let mut t = Tally::new("empty-team property");
    for (i, s) in sigs.iter().enumerate() {
        let mut g = Gen::new(seed.wrapping_add(1 + i as u64), Arc::clone(s));
        let empties: Vec<CausalMultiteam> =
            fcs[i].iter().map(|fc| CausalMultiteam::empty(Arc::clone(s), fc.clone())).collect::<Result<_>>()?;
        for _ in 0..100 * k {
            let phi = g.pco(4, Fragment::Sugar);
            let m = empties.choose(g.rng()).expect("nonempty");
            t.check(satisfies(m, &phi)?.verdict, || format!("{phi}"));
        }
    }
    properties.push(t.finish());

    // normal form and contradictory negation
    let mut nf_t = Tally::new("normal form equivalence");
    let mut neg_t = Tally::new("contradictory negation");
    for (i, s) in sigs.iter().enumerate() {
        let mut g = Gen::new(seed.wrapping_add(10 + i as u64), Arc::clone(s));
        for _ in 0..60 * k {
            let phi = g.pco(4, Fragment::Core);
            let nf = normal_form(&phi)?;
            let nf_phi = nf.to_formula();
            nf_t.check(nf.satisfies_shape(), || format!("{phi}: bad shape {nf_phi}"));
            let neg = compile_cneg(&phi, Some(s))?;
            for _ in 0..5 {
                let m = g.model(&fcs[i], 0, 5);
                let v = satisfies(&m, &phi)?.verdict;
                nf_t.check(v == satisfies(&m, &nf_phi)?.verdict, || format!("{phi} on {}", show(&m)));
                if !m.is_empty() {
                    let w = satisfies(&m, &neg)?.verdict;
                    neg_t.check(v != w, || format!("{phi} on {}", show(&m)));
                }
            }
        }
    }
    properties.push(nf_t.finish());
    properties.push(neg_t.finish());

    // rescaling
    let mut inv = Tally::new("rescaling invariance");
    let mut int = Tally::new("rescaling commutes with intervention");
    let mut res = Tally::new("rescaling commutes with restriction");
    let mut tra = Tally::new("support transfer");
    let mut eqv = Tally::new("rescaling is an equivalence");
    for (i, s) in sigs.iter().enumerate() {
        let mut g = Gen::new(seed.wrapping_add(20 + i as u64), Arc::clone(s));
        for _ in 0..50 * k {
            let m = g.model(&fcs[i], 1, 5);
            let n = *[2u64, 3, 5].choose(g.rng()).expect("nonempty");
            let big = scale(&m, n);
            let phi = g.pco(4, Fragment::Core);
            inv.check(satisfies(&m, &phi)?.verdict == satisfies(&big, &phi)?.verdict, || {
                format!("{phi} on {} times {n}", show(&m))
            });
            let p = consistent_pairs(&mut g);
            int.check(canonical(&intervene(&m, &p)?) == canonical(&intervene(&big, &p)?), || {
                format!("{p:?} on {}", show(&m))
            });
            let alpha = g.co(2);
            let (r1, r2) = (restrict(&m, &alpha)?, restrict(&big, &alpha)?);
            let ok = if r1.is_empty() || r2.is_empty() {
                r1.is_empty() && r2.is_empty()
            } else {
                is_rescaling(&r1, &r2)?
            };
            res.check(ok, || format!("{alpha} on {}", show(&m)));
            let flat = probability_free(&mut g, 4);
            let support = m.replace_team(m.team().map_counts(|_| 1))?;
            tra.check(satisfies(&m, &flat)?.verdict == satisfies(&support, &flat)?.verdict, || {
                format!("{flat} on {}", show(&m))
            });
            let other = g.model(std::slice::from_ref(m.laws()), 1, 5);
            let ab = is_rescaling(&m, &other)?;
            let ba = is_rescaling(&other, &m)?;
            let via = is_rescaling(&big, &other)?;
            eqv.check(is_rescaling(&m, &m)? && ab == ba && ab == via, || {
                format!("{} vs {}", show(&m), show(&other))
            });
        }
    }
    properties.push(inv.finish());
    properties.push(int.finish());
    properties.push(res.finish());
    properties.push(tra.finish());
    properties.push(eqv.finish());

    // SEM bridge
    let mut rt = Tally::new("SEM round trip");
    let mut jp = Tally::new("SEM joint probabilities");
    for (i, s) in sigs.iter().enumerate() {
        let mut g = Gen::new(seed.wrapping_add(30 + i as u64), Arc::clone(s));
        for _ in 0..25 * k {
            let m = g.model(&fcs[i], 1, 6);
            let sem = multiteam_to_sem(&m)?;
            rt.check(canonical(&sem_to_multiteam(&sem)?) == canonical(&m), || show(&m));
            for v in 0..s.len() {
                for x in 0..s.range_len(v) as u32 {
                    let e1: Pair = (s.name(v).into(), s.value(v, x).into());
                    let one = joint_prob(&sem, std::slice::from_ref(&e1))? == prob(&m, &CoFormula::eq(&e1.0, &e1.1))?;
                    jp.check(one, || format!("{e1:?} on {}", show(&m)));
                    for w in v + 1..s.len() {
                        for y in 0..s.range_len(w) as u32 {
                            let e2: Pair = (s.name(w).into(), s.value(w, y).into());
                            let alpha = CoFormula::and(CoFormula::eq(&e1.0, &e1.1), CoFormula::eq(&e2.0, &e2.1));
                            let ok = joint_prob(&sem, &[e1.clone(), e2.clone()])? == prob(&m, &alpha)?;
                            jp.check(ok, || format!("{e1:?},{e2:?} on {}", show(&m)));
                        }
                    }
                }
            }
        }
    }
    properties.push(rt.finish());
    properties.push(jp.finish());

    // counterexamples to closure properties outside the core language
    let mut ce = Tally::new("extension atom counterexamples");
    let one_row = all_b2.iter().find(|m| m.len() == 1).expect("a one-row model");
    let theta3 = theta_k_formula(3);
    ce.check(!satisfies(one_row, &theta3)?.verdict, || "one row satisfies theta_3".into());
    ce.check(satisfies(&scale(one_row, 3), &theta3)?.verdict, || "tripled row fails theta_3".into());
    let empty = CausalMultiteam::empty(Arc::clone(&b2), FunctionComponent::new())?;
    ce.check(!satisfies(&empty, &PcoFormula::Ne)?.verdict, || "empty model satisfies NE".into());
    properties.push(ce.finish());

    Ok(SuiteReport { seed, properties })
}
