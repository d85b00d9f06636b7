//! Exact fractions for distance thresholds and grid coordinates.

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serializer};

pub type Fraction = Ratio<i64>;

/// Parses `"p/r"`, an integer, or a finite decimal such as `"0.55"`.
pub fn parse_fraction(text: &str) -> Result<Fraction, String> {
    let t = text.trim();
    let bad = || format!("`{text}` is not a fraction (expected p/r or a decimal)");
    if let Some((p, r)) = t.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let r: i64 = r.trim().parse().map_err(|_| bad())?;
        if r == 0 {
            return Err(format!("`{text}` has a zero denominator"));
        }
        return Ok(Fraction::new(p, r));
    }
    let (sign, digits) = match t.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, t),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() || frac.len() > 15 {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let den = 10i64.pow(frac.len() as u32);
    let w: i64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
    let f: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let num = w
        .checked_mul(den)
        .and_then(|x| x.checked_add(f))
        .ok_or_else(bad)?;
    Ok(Fraction::new(sign * num, den))
}

pub fn format_fraction(f: &Fraction) -> String {
    if *f.denom() == 1 {
        f.numer().to_string()
    } else {
        format!("{}/{}", f.numer(), f.denom())
    }
}

pub fn to_f64(f: &Fraction) -> f64 {
    *f.numer() as f64 / *f.denom() as f64
}

/// `ceil(f * n)`, the least distance that counts as "at least `f·n`".
pub fn ceil_times(f: &Fraction, n: usize) -> i64 {
    let num = *f.numer() as i128 * n as i128;
    let den = *f.denom() as i128;
    num.div_euclid(den) as i64 + i64::from(num.rem_euclid(den) != 0)
}

/// Serde adapter storing a [`Fraction`] as its `"p/r"` string.
pub mod as_string {
    use super::*;

    pub fn serialize<S: Serializer>(f: &Fraction, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_fraction(f))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Fraction, D::Error> {
        let text = String::deserialize(d)?;
        parse_fraction(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for lists of fractions.
pub mod vec_as_string {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Fraction], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_fraction))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Fraction>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_fraction(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
