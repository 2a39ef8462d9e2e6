//! Exact arithmetic on rationals with odd numerator and odd denominator.
//!
//! The Collatz step `a -> (3a + 1) / 2^v` keeps this set closed: if `a = x/y`
//! with `x`, `y` odd, the reduced numerator of `3a + 1` is even and its
//! denominator is `y` or `y/3`, both odd. The one exception is `a = -1/3`,
//! where `3a + 1 = 0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Parses `-?digits`, `-?digits/digits` or `-?digits.digits` into an exact rational.
///
/// Decimal literals are converted exactly (`-3.5` is `-7/2`).
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let err = || Error::Parse {
        what: "rational",
        token: text.to_string(),
    };
    let t = text.trim();
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());

    let value = if let Some((num, den)) = body.split_once('/') {
        if !digits(num) || !digits(den) {
            return Err(err());
        }
        let den: BigInt = den.parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        BigRational::new(num.parse().map_err(|_| err())?, den)
    } else if let Some((int, frac)) = body.split_once('.') {
        if !digits(int) || !digits(frac) {
            return Err(err());
        }
        let scale = BigInt::from(10u8).pow(frac.len() as u32);
        let whole: BigInt = format!("{int}{frac}").parse().map_err(|_| err())?;
        BigRational::new(whole, scale)
    } else {
        if !digits(body) {
            return Err(err());
        }
        BigRational::from_integer(body.parse().map_err(|_| err())?)
    };
    Ok(if negative { -value } else { value })
}

/// Largest `v` with `2^v | n`.
pub fn two_adic_valuation(n: &BigInt) -> Result<u64> {
    n.trailing_zeros().ok_or(Error::ZeroValuation)
}

/// Renders a rational as `p/q`, always with an explicit denominator.
pub fn exact_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Renders `r` with `precision` significant digits, rounding half away from zero.
///
/// Uses plain notation for moderate exponents and `e` notation otherwise;
/// trailing zeros are dropped.
pub fn decimal_string(r: &BigRational, precision: usize) -> String {
    let precision = precision.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();

    // exponent e with 10^e <= |r| < 10^(e+1)
    let mut exp: i64 = abs.numer().to_string().len() as i64 - abs.denom().to_string().len() as i64;
    while pow10(exp) > abs {
        exp -= 1;
    }
    while pow10(exp + 1) <= abs {
        exp += 1;
    }

    let shift = precision as i64 - 1 - exp;
    let scaled = &abs * pow10(shift);
    let mut mantissa = round_half_up(&scaled);
    if mantissa == BigInt::from(10u8).pow(precision as u32) {
        mantissa /= 10;
        exp += 1;
    }

    let digits = mantissa.to_string();
    let body = if (-5..precision as i64).contains(&exp) {
        if exp >= 0 {
            let split = exp as usize + 1;
            let (int, frac) = digits.split_at(split);
            join_fraction(int, frac)
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            join_fraction("0", &format!("{zeros}{digits}"))
        }
    } else {
        let (lead, rest) = digits.split_at(1);
        format!("{}e{}", join_fraction(lead, rest), exp)
    };
    format!("{sign}{body}")
}

fn join_fraction(int: &str, frac: &str) -> String {
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    }
}

fn pow10(e: i64) -> BigRational {
    let p = BigInt::from(10u8).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Nearest integer to a nonnegative rational, halves rounded up.
pub(crate) fn round_half_up(r: &BigRational) -> BigInt {
    let twice: BigInt = r.numer() * 2 + r.denom();
    twice.div_floor(&(r.denom() * 2))
}

/// A partial quotient: the power of two removed in one Collatz step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialQuotient(u64);

impl PartialQuotient {
    pub fn new(value: u64) -> Result<Self> {
        if value == 0 {
            Err(Error::ZeroQuotient(value))
        } else {
            Ok(PartialQuotient(value))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for PartialQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A reduced fraction with odd numerator and odd positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddRational(BigRational);

impl OddRational {
    /// Builds `numer/denom`, reducing and normalizing the sign first.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::NotOdd("x/0".to_string()));
        }
        Self::from_ratio(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Result<Self> {
        Self::from_ratio(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(r: BigRational) -> Result<Self> {
        if r.numer().is_odd() && r.denom().is_odd() {
            Ok(OddRational(r))
        } else {
            Err(Error::NotOdd(r.to_string()))
        }
    }

    pub fn one() -> Self {
        OddRational(BigRational::one())
    }

    pub fn minus_one() -> Self {
        OddRational(-BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `p/q` with the denominator always written out.
    pub fn exact_string(&self) -> String {
        exact_string(&self.0)
    }
}

impl fmt::Display for OddRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for OddRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_ratio(parse_rational(s)?)
    }
}

impl From<OddRational> for BigRational {
    fn from(a: OddRational) -> Self {
        a.0
    }
}

/// One step of the Collatz algorithm: `a -> (q, (3a + 1) / 2^q)`.
///
/// Fails only at `a = -1/3`.
pub fn collatz_step(a: &OddRational) -> Result<(PartialQuotient, OddRational)> {
    let (x, y) = (a.numer(), a.denom());
    // 3x/y + 1 = (3x + y)/y, and gcd(3x + y, y) = gcd(3x, y) is 1 or 3.
    let (num, den) = if (y % 3u8).is_zero() {
        (x + y / 3u8, y / 3u8)
    } else {
        (x * 3u8 + y, y.clone())
    };
    if num.is_zero() {
        return Err(Error::Vanishing);
    }
    let q = two_adic_valuation(&num)?;
    let b = BigRational::new_raw(num >> q, den);
    Ok((PartialQuotient(q), OddRational(b)))
}

/// The `a` with `collatz_step(a) = (q, b)`, i.e. `(2^q b - 1) / 3`.
pub fn inverse_step(b: &OddRational, q: PartialQuotient) -> OddRational {
    let num = (b.numer() << q.get()) - b.denom();
    OddRational(BigRational::new(num, b.denom() * 3u8))
}
