//! Exact rationals over arbitrary-precision integers.

use alloc::format;
use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn half() -> Rat {
    rat(1, 2)
}

/// `"a/b"` with the denominator always written, even when it is 1.
pub fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatError(pub String);

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}: expected a/b or an integer", self.0)
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let err = || ParseRatError(String::from(s));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rat::new(n, d))
}

pub fn floor(r: &Rat) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &Rat) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

/// Fractional part in `[0, 1)`.
pub fn fracp(r: &Rat) -> Rat {
    r - Rat::from_integer(floor(r))
}

pub fn is_half_integral(r: &Rat) -> bool {
    (r * int(2)).is_integer()
}

pub fn to_i64(r: &BigInt) -> Option<i64> {
    r.to_i64()
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

pub fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}

pub fn one() -> Rat {
    Rat::one()
}

pub fn zero() -> Rat {
    Rat::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("15/11").unwrap(), rat(15, 11));
        assert_eq!(parse_rat("2").unwrap(), int(2));
        assert_eq!(parse_rat(" 6/4 ").unwrap(), rat(3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn floor_ceil_frac() {
        assert_eq!(floor(&rat(-1, 2)), BigInt::from(-1));
        assert_eq!(ceil(&rat(-1, 2)), BigInt::from(0));
        assert_eq!(ceil(&rat(7, 2)), BigInt::from(4));
        assert_eq!(fracp(&rat(-1, 4)), rat(3, 4));
        assert_eq!(fmt_rat(&int(2)), "2/1");
    }
}
