//! Exact rational numbers and their textual forms.
//!
//! Decimal literals such as `-0.97` are read as the exact rational `-97/100`;
//! nothing in this crate ever rounds a parameter through binary floating point
//! before a sign decision.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Result, TlnError};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"-0.97"`, `"0.40"`, `"3/4"`, `"12"`, `"1e-4"` or `"−1.5"` (Unicode minus) exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim().replace('\u{2212}', "-");
    let s = trimmed.as_str();
    if s.is_empty() {
        return Err(TlnError::Parse("empty number".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_decimal(num.trim())?;
        let den = parse_decimal(den.trim())?;
        if den.is_zero() {
            return Err(TlnError::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(num / den);
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || TlnError::Parse(format!("not an exact decimal: {s:?}"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numerator: BigInt = if all_digits.is_empty() {
        BigInt::zero()
    } else {
        all_digits.parse().map_err(|_| bad())?
    };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(numerator * num::pow(ten, scale as usize))
    } else {
        Rational::new(numerator, num::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Exact decimal form when the denominator is `2^a·5^b`, otherwise `p/q`.
pub fn format_exact(value: &Rational) -> String {
    let mut den = value.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0usize;
    let mut fives = 0usize;
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", value.numer(), value.denom());
    }
    let places = twos.max(fives);
    format_fixed(value, places)
}

/// Decimal rendering rounded half away from zero to `places` digits.
pub fn format_fixed(value: &Rational, places: usize) -> String {
    let scale = num::pow(BigInt::from(10), places);
    let scaled = value.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if value.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = places)
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Nearest rational with denominator `den` (round half away from zero).
pub fn round_to_denominator(value: f64, den: i64) -> Rational {
    let scaled = (value * den as f64).round();
    Rational::new(BigInt::from(scaled as i64), BigInt::from(den))
}
