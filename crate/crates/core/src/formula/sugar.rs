use num_traits::One;

use super::{CoFormula, Literal, PcoFormula, Rel};
use crate::error::{Error, Result};
use crate::model::Signature;
use crate::rational::Rational;
use crate::transforms::compile_cneg;

fn first_pair(sig: Option<&Signature>, what: &str) -> Result<(String, String)> {
    let sig = sig.ok_or_else(|| Error::SignatureRequired(what.to_string()))?;
    Ok((sig.name(0).to_string(), sig.value(0, 0).to_string()))
}

/// `X0=x0 ~> X0!=x0` for the first variable and its first value.
pub fn bot_co(sig: Option<&Signature>) -> Result<CoFormula> {
    let (x, v) = first_pair(sig, "bot")?;
    Ok(CoFormula::cf(vec![(x.clone(), v.clone())], CoFormula::Neq(x, v)))
}

/// `X0=x0 ~> X0=x0`.
pub fn top_co(sig: Option<&Signature>) -> Result<CoFormula> {
    let (x, v) = first_pair(sig, "top")?;
    Ok(CoFormula::cf(vec![(x.clone(), v.clone())], CoFormula::Eq(x, v)))
}

pub fn bot_pco(sig: Option<&Signature>) -> Result<PcoFormula> {
    let (x, v) = first_pair(sig, "bot")?;
    Ok(PcoFormula::cf(vec![(x.clone(), v.clone())], PcoFormula::nlit(x, v)))
}

pub fn top_pco(sig: Option<&Signature>) -> Result<PcoFormula> {
    let (x, v) = first_pair(sig, "top")?;
    Ok(PcoFormula::cf(vec![(x.clone(), v.clone())], PcoFormula::lit(x, v)))
}

/// Removes `!`, `bot` and `top` from an event formula.
pub fn expand_sugar_co(f: &CoFormula, sig: Option<&Signature>) -> Result<CoFormula> {
    let e = |g: &CoFormula| expand_sugar_co(g, sig);
    Ok(match f {
        CoFormula::Eq(..) | CoFormula::Neq(..) => f.clone(),
        CoFormula::And(a, b) => CoFormula::and(e(a)?, e(b)?),
        CoFormula::Tensor(a, b) => CoFormula::tensor(e(a)?, e(b)?),
        CoFormula::Sup(a, b) => CoFormula::sup(e(a)?, e(b)?),
        CoFormula::Cf(p, a) => CoFormula::cf(p.clone(), e(a)?),
        CoFormula::Not(a) => CoFormula::sup(e(a)?, bot_co(sig)?),
        CoFormula::Bot => bot_co(sig)?,
        CoFormula::Top => top_co(sig)?,
    })
}

fn one_minus(eps: &Rational) -> Rational {
    Rational::one() - eps
}

/// `Pr(a) rel eps` with `a` already expanded.
fn pr_const(arg: CoFormula, rel: Rel, eps: Rational, sig: Option<&Signature>) -> Result<PcoFormula> {
    let negated = |arg: &CoFormula| -> Result<CoFormula> { Ok(CoFormula::sup(arg.clone(), bot_co(sig)?)) };
    Ok(match rel {
        Rel::Ge | Rel::Gt => PcoFormula::pr(arg, rel, eps),
        Rel::Le => PcoFormula::pr(negated(&arg)?, Rel::Ge, one_minus(&eps)),
        Rel::Lt => PcoFormula::pr(negated(&arg)?, Rel::Gt, one_minus(&eps)),
        Rel::Eq => PcoFormula::and(
            pr_const(arg.clone(), Rel::Ge, eps.clone(), sig)?,
            pr_const(arg, Rel::Le, eps, sig)?,
        ),
        Rel::Ne => PcoFormula::or(
            pr_const(arg.clone(), Rel::Gt, eps.clone(), sig)?,
            pr_const(arg, Rel::Lt, eps, sig)?,
        ),
    })
}

fn pr_cmp(left: CoFormula, rel: Rel, right: CoFormula) -> PcoFormula {
    match rel {
        Rel::Ge | Rel::Gt => PcoFormula::pr_cmp(left, rel, right),
        Rel::Le => PcoFormula::pr_cmp(right, Rel::Ge, left),
        Rel::Lt => PcoFormula::pr_cmp(right, Rel::Gt, left),
        Rel::Eq => PcoFormula::and(
            PcoFormula::pr_cmp(left.clone(), Rel::Ge, right.clone()),
            PcoFormula::pr_cmp(right, Rel::Ge, left),
        ),
        Rel::Ne => PcoFormula::or(
            PcoFormula::pr_cmp(left.clone(), Rel::Gt, right.clone()),
            PcoFormula::pr_cmp(right, Rel::Gt, left),
        ),
    }
}

fn pr_star(arg: CoFormula, rel: Rel, eps: Rational) -> PcoFormula {
    let atom = |rel, eps| PcoFormula::PrStar { arg: arg.clone(), rel, eps };
    match rel {
        Rel::Eq => PcoFormula::and(atom(Rel::Ge, eps.clone()), atom(Rel::Le, eps)),
        Rel::Ne => PcoFormula::or(atom(Rel::Gt, eps.clone()), atom(Rel::Lt, eps)),
        rel => atom(rel, eps),
    }
}

/// Rewrites every abbreviation into core constructors. Extension atoms stay,
/// with their event arguments expanded. Idempotent.
///
/// A signature is needed for `bot`, `top`, `!`, `dep`, and for the `<=`/`<`
/// forms of probability atoms, whose expansion uses `bot`.
pub fn expand_sugar(f: &PcoFormula, sig: Option<&Signature>) -> Result<PcoFormula> {
    let co = |g: &CoFormula| expand_sugar_co(g, sig);
    let e = |g: &PcoFormula| expand_sugar(g, sig);
    Ok(match f {
        PcoFormula::Lit(_) | PcoFormula::Ne => f.clone(),
        PcoFormula::PrConst { arg, rel, eps } => pr_const(co(arg)?, *rel, eps.clone(), sig)?,
        PcoFormula::PrCmp { left, rel, right } => pr_cmp(co(left)?, *rel, co(right)?),
        PcoFormula::And(a, b) => PcoFormula::and(e(a)?, e(b)?),
        PcoFormula::Gdisj(items) => PcoFormula::Gdisj(items.iter().map(e).collect::<Result<_>>()?),
        PcoFormula::Sup(a, b) => PcoFormula::sup(co(a)?, e(b)?),
        PcoFormula::Cf(p, b) => PcoFormula::cf(p.clone(), e(b)?),
        PcoFormula::CondPrConst { arg, cond, rel, eps } => {
            PcoFormula::sup(co(cond)?, pr_const(co(arg)?, *rel, eps.clone(), sig)?)
        }
        PcoFormula::CondPrCmp { left, left_cond, rel, right, right_cond } => {
            let (left, right) = (co(left)?, co(right)?);
            let left_cond = left_cond.as_ref().map(co).transpose()?;
            let right_cond = right_cond.as_ref().map(co).transpose()?;
            match (left_cond, right_cond) {
                (None, None) => pr_cmp(left, *rel, right),
                (Some(g), Some(d)) if g == d => PcoFormula::sup(g, pr_cmp(left, *rel, right)),
                (left_cond, right_cond) => PcoFormula::CondPrCmp { left, left_cond, rel: *rel, right, right_cond },
            }
        }
        PcoFormula::PrStar { arg, rel, eps } => pr_star(co(arg)?, *rel, eps.clone()),
        PcoFormula::StrictTensor(a, b) => PcoFormula::strict(e(a)?, e(b)?),
        PcoFormula::Bot => bot_pco(sig)?,
        PcoFormula::Top => top_pco(sig)?,
        PcoFormula::Implies(a, b) => PcoFormula::or(compile_cneg(a, sig)?, e(b)?),
        PcoFormula::CNeg(a) => compile_cneg(a, sig)?,
        PcoFormula::Dep { determinants, dependent } => dep(determinants, dependent, sig)?,
        PcoFormula::CIndep { left, right, cond } => {
            let (a, b, g) = (co(left)?, co(right)?, co(cond)?);
            let ag = CoFormula::and(a, g.clone());
            let zero = Rational::from_integer(0.into());
            PcoFormula::Gdisj(vec![
                pr_const(g.clone(), Rel::Eq, zero.clone(), sig)?,
                pr_const(ag.clone(), Rel::Eq, zero, sig)?,
                PcoFormula::CondPrCmp { left: b.clone(), left_cond: Some(ag), rel: Rel::Eq, right: b, right_cond: Some(g) },
            ])
        }
    })
}

/// `dep(X1..Xn; Y)`: for every tuple x, `X=x => \/_y Y=y`.
fn dep(determinants: &[String], dependent: &str, sig: Option<&Signature>) -> Result<PcoFormula> {
    let sig = sig.ok_or_else(|| Error::SignatureRequired("dep".into()))?;
    let xs = determinants.iter().map(|d| sig.var(d)).collect::<Result<Vec<_>>>()?;
    let y = sig.var(dependent)?;
    let values = || {
        PcoFormula::gdisj_all(sig.range(y).iter().map(|v| {
            PcoFormula::Lit(Literal { var: dependent.to_string(), value: v.clone(), positive: true })
        }))
        .expect("ranges are nonempty")
    };
    if xs.is_empty() {
        return Ok(values());
    }
    let conjuncts = sig.tuples(&xs).map(|t| {
        let cond = CoFormula::and_all(xs.iter().zip(&t).map(|(&x, &v)| CoFormula::eq(sig.name(x), sig.value(x, v))))
            .expect("at least one determinant");
        PcoFormula::sup(cond, values())
    });
    Ok(PcoFormula::and_all(conjuncts).expect("at least one tuple"))
}
