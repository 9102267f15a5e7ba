use std::fmt::{self, Display, Formatter, Write};

use super::parse::is_word_char;
use super::{CoFormula, Formula, Pair, PcoFormula, Rel};
use crate::rational::{format_compact, Rational};

// binding levels, loosest first
const IMP: u8 = 0;
const GDISJ: u8 = 1;
const STRICT: u8 = 2;
const TENSOR: u8 = 3;
const CONJ: u8 = 4;
const UNARY: u8 = 5;
const ATOM: u8 = 6;

/// Writes a variable or value token, quoting it when it would not lex as a
/// single word.
pub fn quote_token(token: &str) -> String {
    let mut chars = token.chars();
    let plain = match chars.next() {
        None => false,
        Some('-') => chars.next().is_some_and(|c| c.is_ascii_digit()) && token[1..].chars().all(is_word_char),
        Some(c) => is_word_char(c) && chars.all(is_word_char),
    };
    if plain {
        token.to_string()
    } else {
        let mut s = String::with_capacity(token.len() + 2);
        s.push('"');
        for c in token.chars() {
            if c == '"' || c == '\\' {
                s.push('\\');
            }
            s.push(c);
        }
        s.push('"');
        s
    }
}

fn co_level(f: &CoFormula) -> u8 {
    match f {
        CoFormula::Sup(..) | CoFormula::Cf(..) => IMP,
        CoFormula::Tensor(..) => TENSOR,
        CoFormula::And(..) => CONJ,
        CoFormula::Not(_) => UNARY,
        _ => ATOM,
    }
}

fn pco_level(f: &PcoFormula) -> u8 {
    match f {
        PcoFormula::Sup(..) | PcoFormula::Cf(..) | PcoFormula::Implies(..) => IMP,
        PcoFormula::Gdisj(_) => GDISJ,
        PcoFormula::StrictTensor(..) => STRICT,
        PcoFormula::And(..) => CONJ,
        _ => ATOM,
    }
}

fn write_pairs(out: &mut Formatter<'_>, pairs: &[Pair]) -> fmt::Result {
    for (i, (v, x)) in pairs.iter().enumerate() {
        if i > 0 {
            out.write_str(" & ")?;
        }
        write!(out, "{}={}", quote_token(v), quote_token(x))?;
    }
    Ok(())
}

/// `nt`: a bare `|` would be read as the condition bar of an enclosing `Pr`.
fn co(out: &mut Formatter<'_>, f: &CoFormula, min: u8, nt: bool) -> fmt::Result {
    let level = co_level(f);
    let wrap = level < min || (nt && matches!(f, CoFormula::Tensor(..)));
    if wrap {
        out.write_char('(')?;
    }
    let nt = nt && !wrap;
    match f {
        CoFormula::Eq(v, x) => write!(out, "{}={}", quote_token(v), quote_token(x))?,
        CoFormula::Neq(v, x) => write!(out, "{}!={}", quote_token(v), quote_token(x))?,
        CoFormula::And(a, b) => {
            co(out, a, CONJ, nt)?;
            out.write_str(" & ")?;
            co(out, b, UNARY, nt)?;
        }
        CoFormula::Tensor(a, b) => {
            co(out, a, TENSOR, nt)?;
            out.write_str(" | ")?;
            co(out, b, CONJ, nt)?;
        }
        CoFormula::Sup(a, b) => {
            co(out, a, GDISJ, nt)?;
            out.write_str(" => ")?;
            co(out, b, IMP, nt)?;
        }
        CoFormula::Cf(p, b) => {
            write_pairs(out, p)?;
            out.write_str(" ~> ")?;
            co(out, b, IMP, nt)?;
        }
        CoFormula::Not(a) => {
            out.write_char('!')?;
            co(out, a, UNARY, nt)?;
        }
        CoFormula::Bot => out.write_str("bot")?,
        CoFormula::Top => out.write_str("top")?,
    }
    if wrap {
        out.write_char(')')?;
    }
    Ok(())
}

fn pr_body(out: &mut Formatter<'_>, arg: &CoFormula, cond: Option<&CoFormula>) -> fmt::Result {
    out.write_char('(')?;
    co(out, arg, IMP, true)?;
    if let Some(c) = cond {
        out.write_str(" | ")?;
        co(out, c, IMP, false)?;
    }
    out.write_char(')')
}

fn eps(out: &mut Formatter<'_>, rel: Rel, e: &Rational) -> fmt::Result {
    write!(out, " {rel} {}", format_compact(e))
}

fn pco(out: &mut Formatter<'_>, f: &PcoFormula, min: u8) -> fmt::Result {
    let level = pco_level(f);
    let wrap = level < min;
    if wrap {
        out.write_char('(')?;
    }
    match f {
        PcoFormula::Lit(l) => {
            let op = if l.positive { "=" } else { "!=" };
            write!(out, "{}{op}{}", quote_token(&l.var), quote_token(&l.value))?;
        }
        PcoFormula::PrConst { arg, rel, eps: e } => {
            out.write_str("Pr")?;
            pr_body(out, arg, None)?;
            eps(out, *rel, e)?;
        }
        PcoFormula::PrCmp { left, rel, right } => {
            out.write_str("Pr")?;
            pr_body(out, left, None)?;
            write!(out, " {rel} Pr")?;
            pr_body(out, right, None)?;
        }
        PcoFormula::CondPrConst { arg, cond, rel, eps: e } => {
            out.write_str("Pr")?;
            pr_body(out, arg, Some(cond))?;
            eps(out, *rel, e)?;
        }
        PcoFormula::CondPrCmp { left, left_cond, rel, right, right_cond } => {
            out.write_str("Pr")?;
            pr_body(out, left, left_cond.as_ref())?;
            write!(out, " {rel} Pr")?;
            pr_body(out, right, right_cond.as_ref())?;
        }
        PcoFormula::PrStar { arg, rel, eps: e } => {
            out.write_str("Pr*")?;
            pr_body(out, arg, None)?;
            eps(out, *rel, e)?;
        }
        PcoFormula::Ne => out.write_str("NE")?,
        PcoFormula::Bot => out.write_str("bot")?,
        PcoFormula::Top => out.write_str("top")?,
        PcoFormula::And(a, b) => {
            pco(out, a, CONJ)?;
            out.write_str(" & ")?;
            pco(out, b, ATOM)?;
        }
        PcoFormula::Gdisj(items) => {
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.write_str(" \\/ ")?;
                }
                pco(out, item, STRICT)?;
            }
        }
        PcoFormula::StrictTensor(a, b) => {
            pco(out, a, STRICT)?;
            out.write_str(" <|> ")?;
            pco(out, b, CONJ)?;
        }
        PcoFormula::Sup(a, b) => {
            co(out, a, GDISJ, false)?;
            out.write_str(" => ")?;
            pco(out, b, IMP)?;
        }
        PcoFormula::Cf(p, b) => {
            write_pairs(out, p)?;
            out.write_str(" ~> ")?;
            pco(out, b, IMP)?;
        }
        PcoFormula::Implies(a, b) => {
            pco(out, a, GDISJ)?;
            out.write_str(" -> ")?;
            pco(out, b, IMP)?;
        }
        PcoFormula::CNeg(a) => {
            out.write_str("cneg(")?;
            pco(out, a, IMP)?;
            out.write_char(')')?;
        }
        PcoFormula::Dep { determinants, dependent } => {
            out.write_str("dep(")?;
            let names: Vec<String> = determinants.iter().map(|d| quote_token(d)).collect();
            out.write_str(&names.join(", "))?;
            write!(out, "; {})", quote_token(dependent))?;
        }
        PcoFormula::CIndep { left, right, cond } => {
            out.write_str("cindep(")?;
            co(out, left, IMP, false)?;
            out.write_str("; ")?;
            co(out, right, IMP, true)?;
            out.write_str(" | ")?;
            co(out, cond, IMP, false)?;
            out.write_char(')')?;
        }
    }
    if wrap {
        out.write_char(')')?;
    }
    Ok(())
}

impl Display for CoFormula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        co(f, self, IMP, false)
    }
}

impl Display for PcoFormula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        pco(f, self, IMP)
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Co(c) => c.fmt(f),
            Formula::Pco(p) => p.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::formula::{parse_co, parse_pco, CoFormula, PcoFormula};

    fn canon(s: &str) -> String {
        parse_pco(s).unwrap().to_string()
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(canon("(X=1 & (Y=0)) \\/ (Z=1)"), "X=1 & Y=0 \\/ Z=1");
        assert_eq!(canon("X=1 => (Y=1 => Pr(Z=1) >= 1/2)"), "X=1 => Y=1 => Pr(Z=1) >= 1/2");
        assert_eq!(canon("(X=1 => Y=1) => Pr(Z=1) >= 0.5"), "(X=1 => Y=1) => Pr(Z=1) >= 1/2");
        assert_eq!(canon("X=1 & (NE \\/ NE)"), "X=1 & (NE \\/ NE)");
    }

    #[test]
    fn gdisj_is_flat() {
        let f = parse_pco("NE \\/ X=1 \\/ Pr(Y=1) > 0").unwrap();
        assert!(matches!(&f, PcoFormula::Gdisj(v) if v.len() == 3));
        assert_eq!(f.to_string(), "NE \\/ X=1 \\/ Pr(Y=1) > 0");
        assert_eq!(canon("(NE \\/ NE) \\/ NE"), "(NE \\/ NE) \\/ NE");
    }

    #[test]
    fn tensor_inside_pr_is_parenthesized() {
        let arg = CoFormula::sup(CoFormula::eq("X", "1"), CoFormula::tensor(CoFormula::eq("Y", "1"), CoFormula::eq("Y", "0")));
        let f = PcoFormula::pr(arg, super::Rel::Ge, crate::rational::ratio(1, 2));
        let text = f.to_string();
        assert_eq!(text, "Pr(X=1 => (Y=1 | Y=0)) >= 1/2");
        assert_eq!(parse_pco(&text).unwrap(), f);
    }

    #[test]
    fn odd_tokens_are_quoted() {
        let f = CoFormula::eq("my var", "a\"b");
        let text = f.to_string();
        assert_eq!(text, "\"my var\"=\"a\\\"b\"");
        assert_eq!(parse_co(&text).unwrap(), f);
        assert_eq!(CoFormula::eq("T", "-1").to_string(), "T=-1");
    }
}
