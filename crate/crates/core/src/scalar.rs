//! Scalar contract shared by the exact and floating-point instantiations.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, the exact instantiation.
pub type Rational = BigRational;

/// Field operations plus equality and zero-test.
///
/// Implemented for [`Rational`] and `f64`. Every route in the crate is generic
/// over this trait unless it needs exact arithmetic.
pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    fn pow_u(&self, e: usize) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

/// Product of a sequence of scalars; the empty product is one.
pub fn product<S: Scalar>(values: impl IntoIterator<Item = S>) -> S {
    values.into_iter().fold(S::one(), |acc, v| acc * v)
}

/// Sign and natural log of the magnitude of a real number.
///
/// A zero value has `sign == 0` and `log_abs == -inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDet {
    pub sign: i8,
    pub log_abs: f64,
}

impl LogDet {
    pub const ONE: LogDet = LogDet { sign: 1, log_abs: 0.0 };
    pub const ZERO: LogDet = LogDet { sign: 0, log_abs: f64::NEG_INFINITY };

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else {
            LogDet { sign: if v > 0.0 { 1 } else { -1 }, log_abs: v.abs().ln() }
        }
    }

    /// Value scaled by `exp(log_scale)`.
    pub fn from_scaled(v: f64, log_scale: f64) -> Self {
        let mut out = Self::from_f64(v);
        if out.sign != 0 {
            out.log_abs += log_scale;
        }
        out
    }

    pub fn from_rational(v: &Rational) -> Self {
        if v.is_zero() {
            return Self::ZERO;
        }
        let sign = if v.is_negative() { -1 } else { 1 };
        LogDet { sign, log_abs: log_abs_bigint(v.numer()) - log_abs_bigint(v.denom()) }
    }

    pub fn powu(self, e: usize) -> LogDet {
        if e == 0 {
            return Self::ONE;
        }
        if self.sign == 0 {
            return Self::ZERO;
        }
        let sign = if self.sign < 0 && e % 2 == 1 { -1 } else { 1 };
        LogDet { sign, log_abs: self.log_abs * e as f64 }
    }

    pub fn product(values: impl IntoIterator<Item = LogDet>) -> LogDet {
        values.into_iter().fold(Self::ONE, |a, b| a * b)
    }

    pub fn product_f64(values: impl IntoIterator<Item = f64>) -> LogDet {
        Self::product(values.into_iter().map(Self::from_f64))
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }
}

impl std::ops::Mul for LogDet {
    type Output = LogDet;

    fn mul(self, other: LogDet) -> LogDet {
        if self.sign == 0 || other.sign == 0 {
            return LogDet::ZERO;
        }
        LogDet { sign: self.sign * other.sign, log_abs: self.log_abs + other.log_abs }
    }
}

fn log_abs_bigint(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits < 1000 {
        return v.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    // keep the top 64 bits and add the shifted-out exponent back in
    let shift = bits - 64;
    let top: BigInt = v.abs() >> shift;
    top.to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Parses `"p/q"`, integers, and decimal literals (optionally with an exponent) exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str_radix(&all_digits, 10).ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= ten.pow_u(scale as usize);
    } else {
        value /= ten.pow_u((-scale) as usize);
    }
    if negative {
        value = -value;
    }
    Some(value)
}

/// Canonical `"p/q"` form (`"p"` when the denominator is one).
pub fn format_rational(v: &Rational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn rational_to_f64(v: &Rational) -> f64 {
    let ld = LogDet::from_rational(v);
    if ld.sign == 0 {
        0.0
    } else {
        f64::from(ld.sign) * ld.log_abs.exp()
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_i64(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/2"), Some(rat(1, 2)));
        assert_eq!(parse_rational(" -6/4 "), Some(rat(-3, 2)));
        assert_eq!(parse_rational("0.25"), Some(rat(1, 4)));
        assert_eq!(parse_rational("-1.5e2"), Some(int(-150)));
        assert_eq!(parse_rational("3e-1"), Some(rat(3, 10)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&int(16)), "16");
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
    }

    #[test]
    fn logdet_of_huge_rational() {
        let big = int(3).pow_u(2000) / int(2).pow_u(10);
        let ld = LogDet::from_rational(&big);
        let expected = 2000.0 * 3f64.ln() - 10.0 * 2f64.ln();
        assert_eq!(ld.sign, 1);
        assert!((ld.log_abs - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn logdet_powers_track_sign() {
        let m = LogDet::from_f64(-2.0);
        assert_eq!(m.powu(3).sign, -1);
        assert_eq!(m.powu(2).sign, 1);
        assert!((m.powu(3).log_abs - 8f64.ln()).abs() < 1e-12);
        assert_eq!(LogDet::ZERO.powu(0), LogDet::ONE);
    }

    #[test]
    fn integer_power() {
        assert_eq!(int(3).pow_u(0), int(1));
        assert_eq!(rat(-1, 2).pow_u(3), rat(-1, 8));
        assert_eq!(2.0f64.pow_u(10), 1024.0);
    }
}
