//! Helpers around [`BigRational`]: construction, exact decimal parsing,
//! floors, dyadic rounding and decimal rendering.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseNumberError;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// `n/d` from machine integers. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

pub fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// Parses `17`, `-3/4`, `0.8` or `1.25e-3` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, ParseNumberError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseNumberError::Empty);
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_decimal(n)?;
        let d = parse_decimal(d)?;
        if d.is_zero() {
            return Err(ParseNumberError::ZeroDenominator);
        }
        return Ok(n / d);
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational, ParseNumberError> {
    let s = s.trim();
    let (neg, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = body[i + 1..]
                .parse()
                .map_err(|_| ParseNumberError::Invalid(s.to_string()))?;
            (&body[..i], e)
        }
        None => (body, 0),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(ParseNumberError::Invalid(s.to_string()));
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(ParseNumberError::Invalid(s.to_string()));
    }
    let digits = format!("{whole}{frac}");
    let n: BigInt = digits
        .parse()
        .map_err(|_| ParseNumberError::Invalid(s.to_string()))?;
    let scale = exp - frac.len() as i32;
    let mut r = Rational::from_integer(n);
    if scale >= 0 {
        r *= Rational::from_integer(pow10(scale as u32));
    } else {
        r /= Rational::from_integer(pow10((-scale) as u32));
    }
    Ok(if neg { -r } else { r })
}

pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &Rational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

pub fn sign(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Rounds down to a multiple of `2^-bits`.
pub fn round_down(r: &Rational, bits: u32) -> Rational {
    let scale = pow2(bits);
    Rational::new(floor(&(r * Rational::from_integer(scale.clone()))), scale)
}

/// Rounds up to a multiple of `2^-bits`.
pub fn round_up(r: &Rational, bits: u32) -> Rational {
    let scale = pow2(bits);
    Rational::new(ceil(&(r * Rational::from_integer(scale.clone()))), scale)
}

/// Lower and upper dyadic bounds on `sqrt(x)` for `x >= 0`, with spacing `2^-bits`.
pub fn sqrt_bounds(x: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(!x.is_negative(), "sqrt of negative rational");
    let scale = pow2(bits);
    let sq = Rational::from_integer(&scale * &scale);
    let scaled = x * sq;
    let lo_int = floor(&scaled);
    let hi_int = ceil(&scaled);
    let lo = isqrt(&lo_int);
    let mut hi = isqrt(&hi_int);
    if BigInt::from(&hi * &hi) < hi_int {
        hi += 1u32;
    }
    (
        Rational::new(BigInt::from(lo), scale.clone()),
        Rational::new(BigInt::from(hi), scale),
    )
}

fn isqrt(n: &BigInt) -> BigUint {
    n.to_biguint().expect("non-negative").sqrt()
}

/// Midpoint of two rationals.
pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // huge numerators/denominators: scale through the bit lengths
        let nb = r.numer().bits() as i64;
        let db = r.denom().bits() as i64;
        let shift = (nb - db - 60).max(0) as u32;
        let scaled = r / Rational::from_integer(pow2(shift));
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

/// Truncated decimal rendering with `digits` places after the point.
pub fn to_decimal(r: &Rational, digits: u32) -> String {
    let neg = r.is_negative();
    let scaled = r.abs() * Rational::from_integer(pow10(digits));
    let n = floor(&scaled);
    let s = n.to_string();
    let d = digits as usize;
    let body = if d == 0 {
        s
    } else if s.len() <= d {
        format!("0.{}{}", "0".repeat(d - s.len()), s)
    } else {
        format!("{}.{}", &s[..s.len() - d], &s[s.len() - d..])
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Smallest `k` with `2^-k <= eps` (`eps > 0`).
pub fn bits_for(eps: &Rational) -> u32 {
    let mut k = 0u32;
    let mut step = Rational::one();
    while &step > eps {
        step /= int(2);
        k += 1;
    }
    k
}
