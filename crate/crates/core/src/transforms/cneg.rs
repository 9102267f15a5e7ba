use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::formula::{bot_co, bot_pco, expand_sugar, is_consistent_antecedent, CoFormula, PcoFormula, Rel};
use crate::model::Signature;
use crate::rational::Rational;

/// `true` if `f` is `X=x ~> X!=x`, the shape `bot` expands to.
fn is_bot(f: &CoFormula) -> bool {
    match f {
        CoFormula::Bot => true,
        CoFormula::Cf(p, body) if p.len() == 1 => {
            matches!(&**body, CoFormula::Neq(v, x) if *v == p[0].0 && *x == p[0].1)
        }
        _ => false,
    }
}

/// `Pr(!arg) rel eps`, unwrapping an argument that is already a negation.
fn negated_pr(arg: &CoFormula, rel: Rel, eps: Rational, sig: Option<&Signature>) -> Result<PcoFormula> {
    if let CoFormula::Sup(inner, b) = arg {
        if is_bot(b) {
            return Ok(PcoFormula::pr((**inner).clone(), rel, eps));
        }
    }
    Ok(PcoFormula::pr(CoFormula::sup(arg.clone(), bot_co(sig)?), rel, eps))
}

/// Weak contradictory negation. On nonempty multiteams the result holds
/// exactly when `phi` fails; on empty ones both hold.
///
/// Sugar is expanded first. Extension atoms have no counterpart and are
/// rejected. A counterfactual with an inconsistent antecedent is always
/// true, so its negation is `bot`.
pub fn compile_cneg(phi: &PcoFormula, sig: Option<&Signature>) -> Result<PcoFormula> {
    let phi = expand_sugar(phi, sig)?;
    cneg(&phi, sig)
}

fn cneg(phi: &PcoFormula, sig: Option<&Signature>) -> Result<PcoFormula> {
    let one_minus = |e: &Rational| Rational::one() - e;
    Ok(match phi {
        PcoFormula::Lit(l) => PcoFormula::pr(CoFormula::sup(l.to_co(), bot_co(sig)?), Rel::Gt, Rational::zero()),
        PcoFormula::PrConst { arg, rel: Rel::Ge, eps } => negated_pr(arg, Rel::Gt, one_minus(eps), sig)?,
        PcoFormula::PrConst { arg, rel: Rel::Gt, eps } => negated_pr(arg, Rel::Ge, one_minus(eps), sig)?,
        PcoFormula::PrCmp { left, rel: Rel::Ge, right } => PcoFormula::pr_cmp(right.clone(), Rel::Gt, left.clone()),
        PcoFormula::PrCmp { left, rel: Rel::Gt, right } => PcoFormula::pr_cmp(right.clone(), Rel::Ge, left.clone()),
        PcoFormula::And(a, b) => PcoFormula::or(cneg(a, sig)?, cneg(b, sig)?),
        PcoFormula::Gdisj(items) => {
            let parts = items.iter().map(|f| cneg(f, sig)).collect::<Result<Vec<_>>>()?;
            PcoFormula::and_all(parts).ok_or_else(|| Error::UnsupportedNode("empty global disjunction".into()))?
        }
        PcoFormula::Sup(alpha, chi) => PcoFormula::and(
            PcoFormula::pr(alpha.clone(), Rel::Gt, Rational::zero()),
            PcoFormula::sup(alpha.clone(), cneg(chi, sig)?),
        ),
        PcoFormula::Cf(p, chi) if is_consistent_antecedent(p) => PcoFormula::cf(p.clone(), cneg(chi, sig)?),
        PcoFormula::Cf(..) => bot_pco(sig)?,
        other => return Err(Error::UnsupportedNode(format!("no contradictory negation for `{other}`"))),
    })
}

/// `psi -> chi`, that is `cneg(psi) \/ chi`, with `chi` expanded.
pub fn material_implication(psi: &PcoFormula, chi: &PcoFormula, sig: Option<&Signature>) -> Result<PcoFormula> {
    Ok(PcoFormula::or(compile_cneg(psi, sig)?, expand_sugar(chi, sig)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_pco;

    fn sig() -> Signature {
        Signature::new([("X", vec!["0", "1"]), ("Y", vec!["0", "1"])]).unwrap()
    }

    fn c(text: &str) -> String {
        compile_cneg(&parse_pco(text).unwrap(), Some(&sig())).unwrap().to_string()
    }

    #[test]
    fn atoms() {
        assert_eq!(c("Pr(X=1) >= 1/3"), "Pr(X=1 => X=0 ~> X!=0) > 2/3");
        assert_eq!(c("X=1"), "Pr(X=1 => X=0 ~> X!=0) > 0");
        assert_eq!(c("Pr(X=1) <= 1/3"), "Pr(X=1) > 1/3");
        assert_eq!(c("Pr(X=1) > Pr(Y=0)"), "Pr(Y=0) >= Pr(X=1)");
    }

    #[test]
    fn connectives() {
        assert_eq!(c("X=1 => Pr(Y=1) > 0"), "Pr(X=1) > 0 & (X=1 => Pr(Y=1 => X=0 ~> X!=0) >= 1)");
        assert_eq!(c("X=1 ~> Y=0"), "X=1 ~> Pr(Y=0 => X=0 ~> X!=0) > 0");
        assert_eq!(c("X=1 & X=0 ~> Y=0"), "X=0 ~> X!=0");
    }

    #[test]
    fn double_negation_of_atoms_is_identity() {
        for text in ["Pr(X=1) >= 1/3", "Pr(X=1) < 1/2", "Pr(X=1) > Pr(Y=1)"] {
            let f = expand_sugar(&parse_pco(text).unwrap(), Some(&sig())).unwrap();
            let twice = compile_cneg(&compile_cneg(&f, Some(&sig())).unwrap(), Some(&sig())).unwrap();
            assert_eq!(twice, f, "{text}");
        }
    }

    #[test]
    fn extension_atoms_are_rejected() {
        let f = parse_pco("NE").unwrap();
        assert!(matches!(compile_cneg(&f, Some(&sig())), Err(Error::UnsupportedNode(_))));
    }
}
