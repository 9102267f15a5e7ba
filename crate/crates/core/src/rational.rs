//! Exact rationals. All probabilities and thresholds live here; nothing in
//! the crate touches floating point.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

/// Parses `a/b`, a plain integer, or a finite decimal such as `1.02` or
/// `-0.5` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = parse_int(num)?;
        let den: BigInt = parse_int(den)?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    parse_decimal(text)
}

/// Parses a finite decimal (no fraction bar).
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    if negative {
        num = -num;
    }
    let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
    Some(Rational::new(num, den))
}

fn parse_int(text: &str) -> Option<BigInt> {
    let text = text.trim();
    if text.is_empty() || !text.trim_start_matches('-').bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Always `p/q`, even for integers, so output is uniform for scripts.
pub fn format_fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `p/q`, or just `p` when the denominator is one. Used by the formula printer.
pub fn format_compact(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format_fraction(r)
    }
}

pub fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn in_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

/// Compares `a/b` against `c/d` for positive `b`, `d` without building
/// rationals.
pub(crate) fn cmp_fractions(a: u64, b: u64, c: u64, d: u64) -> std::cmp::Ordering {
    (u128::from(a) * u128::from(d)).cmp(&(u128::from(c) * u128::from(b)))
}

/// Compares `num/den` against `r` (den > 0).
pub(crate) fn cmp_count(num: u64, den: u64, r: &Rational) -> std::cmp::Ordering {
    let lhs = BigInt::from(num) * r.denom();
    let rhs = r.numer() * BigInt::from(den);
    lhs.cmp(&rhs)
}
