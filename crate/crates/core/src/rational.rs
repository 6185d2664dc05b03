//! Exact rational numbers for endpoints, costs and path lengths.
//!
//! Literals are accepted as integers (`7`), decimals (`-1.25`) or fractions
//! (`3/4`) and converted without rounding. Rendering is canonical: values
//! whose reduced denominator divides a power of ten print as terminating
//! decimals with no trailing zeros, everything else prints as `p/q`.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Rational = Ratio<i128>;

const MAX_FRACTION_DIGITS: u32 = 30;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v as i128)
}

/// Parses an integer, decimal or `p/q` literal. Returns `None` on anything
/// malformed (including a zero denominator or overflow).
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: i128 = parse_int(num)?;
        let den: i128 = parse_int(den)?;
        if den == 0 {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    let (negative, body) = match text.as_bytes()[0] {
        b'-' => (true, &text[1..]),
        b'+' => (false, &text[1..]),
        _ => (false, text),
    };
    let (whole, frac) = match body.split_once('.') {
        Some((w, f)) => (w, f),
        None => (body, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if frac.len() as u32 > MAX_FRACTION_DIGITS {
        return None;
    }
    let scale = 10i128.checked_pow(frac.len() as u32)?;
    let whole_val: i128 = if whole.is_empty() { 0 } else { whole.parse().ok()? };
    let frac_val: i128 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    let mag = whole_val.checked_mul(scale)?.checked_add(frac_val)?;
    let num = if negative { -mag } else { mag };
    Some(Rational::new(num, scale))
}

fn parse_int(s: &str) -> Option<i128> {
    let s = s.trim();
    let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical text form; `parse(&render(x)) == Some(x)` for every value.
pub fn render(value: &Rational) -> String {
    if value.is_integer() {
        return value.numer().to_string();
    }
    let den = *value.denom();
    let (mut twos, mut fives, mut rest) = (0u32, 0u32, den);
    while rest.is_even() {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    let digits = twos.max(fives);
    if rest != 1 || digits > MAX_FRACTION_DIGITS {
        return format!("{}/{}", value.numer(), den);
    }
    let scale = 10i128.pow(digits);
    let scaled = (value * Rational::from_integer(scale)).to_integer();
    let sign = if value.is_negative() { "-" } else { "" };
    let mag = scaled.abs();
    let whole = mag / scale;
    let mut frac = format!("{:0width$}", mag % scale, width = digits as usize);
    while frac.ends_with('0') {
        frac.pop();
    }
    if frac.is_empty() {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}
