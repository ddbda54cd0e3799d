//! x-intervals as rational multiples of π, their images under `y = cos x`,
//! and rigorous enclosures of `cos(qπ)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::IntervalError;
use crate::exactnum::rational::{self, int, rat, Rational};
use crate::exactnum::{serde_rational, Enclosure, SurdExpr};

/// Default width of the outward rounding used for irrational cosine endpoints.
pub fn default_cover_width() -> Rational {
    rat(1, 1_000_000)
}

/// `[q_lo·π, q_hi·π]` with `0 <= q_lo < q_hi <= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XInterval {
    #[serde(with = "serde_rational")]
    lo: Rational,
    #[serde(with = "serde_rational")]
    hi: Rational,
}

impl XInterval {
    pub fn new(q_lo: Rational, q_hi: Rational) -> Result<Self, IntervalError> {
        if q_lo.is_negative() || q_hi > Rational::one() || q_lo >= q_hi {
            return Err(IntervalError::OutOfRange);
        }
        Ok(Self { lo: q_lo, hi: q_hi })
    }

    /// `[0, π]`.
    pub fn full() -> Self {
        Self {
            lo: Rational::zero(),
            hi: Rational::one(),
        }
    }

    /// Parses endpoint tokens such as `0`, `pi/2`, `9pi/64`.
    pub fn parse(lo: &str, hi: &str) -> Result<Self, IntervalError> {
        Self::new(parse_pi_multiple(lo)?, parse_pi_multiple(hi)?)
    }

    pub fn q_lo(&self) -> &Rational {
        &self.lo
    }

    pub fn q_hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_full(&self) -> bool {
        self.lo.is_zero() && self.hi.is_one()
    }
}

impl fmt::Display for XInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", render_pi_multiple(&self.lo), render_pi_multiple(&self.hi))
    }
}

/// Closed y-interval with `-1 <= lo < hi <= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct YInterval {
    #[serde(with = "serde_rational")]
    lo: Rational,
    #[serde(with = "serde_rational")]
    hi: Rational,
}

impl YInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, IntervalError> {
        if lo < int(-1) || hi > int(1) || lo >= hi {
            return Err(IntervalError::BadYInterval);
        }
        Ok(Self { lo, hi })
    }

    /// `[-1, 1]`.
    pub fn full() -> Self {
        Self { lo: int(-1), hi: int(1) }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn contains(&self, y: &Rational) -> bool {
        &self.lo <= y && y <= &self.hi
    }

    pub fn contains_interval(&self, o: &YInterval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }
}

impl fmt::Display for YInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMode {
    /// Both cosine endpoints must be rational.
    Exact,
    /// Irrational endpoints are rounded outward.
    Outer,
}

/// Image of an x-interval in y, with outer and inner rational bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Covering {
    /// Superset of the true y-interval.
    pub outer: YInterval,
    /// Subset of the true y-interval, when the enclosures leave room for one.
    pub inner: Option<YInterval>,
    /// True when `outer` is the exact image.
    pub exact: bool,
    /// Enclosure of `cos(x_hi)`, the lower y end.
    pub lo_enclosure: Enclosure,
    /// Enclosure of `cos(x_lo)`, the upper y end.
    pub hi_enclosure: Enclosure,
}

/// Maps `[x_lo, x_hi]` to `[cos x_hi, cos x_lo]`.
pub fn x_to_y(iv: &XInterval, mode: CoverMode) -> Result<YInterval, IntervalError> {
    match mode {
        CoverMode::Exact => {
            let lo = exact_rational_cos(&iv.hi)?;
            let hi = exact_rational_cos(&iv.lo)?;
            YInterval::new(lo, hi)
        }
        CoverMode::Outer => Ok(cover(iv, &default_cover_width()).outer),
    }
}

fn exact_rational_cos(q: &Rational) -> Result<Rational, IntervalError> {
    cos_pi_exact(q)
        .and_then(|c| c.as_rational())
        .ok_or_else(|| IntervalError::NotRational(q.to_string()))
}

/// Outer and inner y-coverings of `iv`; irrational endpoints are enclosed to `width`.
pub fn cover(iv: &XInterval, width: &Rational) -> Covering {
    let lo_enc = cos_pi_enclosure(&iv.hi, width);
    let hi_enc = cos_pi_enclosure(&iv.lo, width);
    let exact = lo_enc.width().is_zero() && hi_enc.width().is_zero();
    let clamp = |r: &Rational| r.clone().max(int(-1)).min(int(1));
    let outer = YInterval::new(clamp(lo_enc.lo()), clamp(hi_enc.hi()))
        .expect("cosine is strictly decreasing on [0, pi]");
    let inner = YInterval::new(lo_enc.hi().clone(), hi_enc.lo().clone()).ok();
    Covering {
        outer,
        inner,
        exact,
        lo_enclosure: lo_enc,
        hi_enclosure: hi_enc,
    }
}

/// Parses `0`, `pi`, `pi/2`, `2pi/3`, `2*pi/3`, `3/4*pi` or `9pi/64` to the multiple of π.
pub fn parse_pi_multiple(token: &str) -> Result<Rational, IntervalError> {
    let bad = || IntervalError::BadToken(token.to_string());
    let t: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(at) = t.find("pi").or_else(|| t.find('π')) else {
        let v = rational::parse_rational(&t).map_err(|_| bad())?;
        return if v.is_zero() { Ok(v) } else { Err(bad()) };
    };
    let plen = if t[at..].starts_with("pi") { 2 } else { 'π'.len_utf8() };
    let before = t[..at].trim_end_matches('*');
    let after = &t[at + plen..];
    let coef = if before.is_empty() {
        Rational::one()
    } else {
        rational::parse_rational(before).map_err(|_| bad())?
    };
    let q = if after.is_empty() {
        coef
    } else {
        let d = after.strip_prefix('/').ok_or_else(bad)?;
        let d = rational::parse_rational(d).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        coef / d
    };
    Ok(q)
}

/// Renders `q` as `0`, `pi`, `pi/2`, `9pi/64`.
pub fn render_pi_multiple(q: &Rational) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let n = q.numer();
    let d = q.denom();
    let head = if n.is_one() {
        "pi".to_string()
    } else if (-n).is_one() {
        "-pi".to_string()
    } else {
        format!("{n}pi")
    };
    if d.is_one() {
        head
    } else {
        format!("{head}/{d}")
    }
}

/// Exact `cos(qπ)` for `q ∈ {0, 1/6, 1/4, 1/3, 1/2, 2/3, 3/4, 5/6, 1}`.
pub fn cos_pi_exact(q: &Rational) -> Option<SurdExpr> {
    let n = q.numer().to_i64()?;
    let d = q.denom().to_i64()?;
    let v = match (n, d) {
        (0, 1) => SurdExpr::one(),
        (1, 6) => SurdExpr::term(rat(1, 2), 3),
        (1, 4) => SurdExpr::term(rat(1, 2), 2),
        (1, 3) => SurdExpr::from_rational(rat(1, 2)),
        (1, 2) => SurdExpr::zero(),
        (2, 3) => SurdExpr::from_rational(rat(-1, 2)),
        (3, 4) => SurdExpr::term(rat(-1, 2), 2),
        (5, 6) => SurdExpr::term(rat(-1, 2), 3),
        (1, 1) => SurdExpr::from_int(-1),
        _ => return None,
    };
    Some(v)
}

/// Enclosure of `cos(qπ)` for `0 <= q <= 1` with width at most `width`.
pub fn cos_pi_enclosure(q: &Rational, width: &Rational) -> Enclosure {
    if let Some(c) = cos_pi_exact(q) {
        return c.enclose(width);
    }
    let mut bits = rational::bits_for(width) + 4;
    loop {
        let e = cos_pi_halfangle(q, bits).unwrap_or_else(|| cos_pi_taylor(q, bits));
        if &e.width() <= width {
            return e;
        }
        bits += 8;
    }
}

/// Half-angle route: available when the odd part of the denominator of `q` is 1 or 3.
pub fn cos_pi_halfangle(q: &Rational, bits: u32) -> Option<Enclosure> {
    let mut d = q.denom().clone();
    while d.is_even() {
        d >>= 1;
    }
    if d != BigInt::from(1) && d != BigInt::from(3) {
        return None;
    }
    Some(halfangle(q, bits))
}

fn halfangle(q: &Rational, bits: u32) -> Enclosure {
    if let Some(c) = cos_pi_exact(q) {
        return c.enclose(&Rational::new(BigInt::one(), rational::pow2(bits)));
    }
    let half = rat(1, 2);
    if q > &half {
        return halfangle(&(Rational::one() - q), bits).neg();
    }
    // cos θ = sqrt((1 + cos 2θ)/2) for θ in [0, π/2]
    let c2 = halfangle(&(q * int(2)), bits + 2);
    let arg = c2.add(&Enclosure::point(Rational::one())).scale(&half);
    let e = arg.sqrt(bits + 2);
    let hi = e.hi().clone().min(Rational::one());
    Enclosure::new(e.lo().clone().min(hi.clone()), hi).round_out(bits + 2)
}

/// Enclosure of π from Machin's formula, width about `2^-bits`.
pub fn pi_enclosure(bits: u32) -> Enclosure {
    let a5 = atan_inv(5, bits + 8);
    let a239 = atan_inv(239, bits + 8);
    a5.scale(&int(16))
        .add(&a239.scale(&int(-4)))
        .round_out(bits + 2)
}

/// `atan(1/x)` by its alternating series.
fn atan_inv(x: i64, bits: u32) -> Enclosure {
    let eps = Rational::new(BigInt::one(), rational::pow2(bits));
    let x2 = int(x * x);
    let mut power = Rational::new(BigInt::one(), BigInt::from(x));
    let mut sum = Rational::zero();
    let mut k = 0i64;
    loop {
        let term = &power / int(2 * k + 1);
        if term < eps {
            // remainder lies between 0 and the first omitted term, with its sign
            return if k % 2 == 0 {
                Enclosure::new(sum.clone(), &sum + &term)
            } else {
                Enclosure::new(&sum - &term, sum)
            };
        }
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power /= &x2;
        k += 1;
    }
}

/// Taylor route: encloses `qπ` then uses monotonicity of cos on `[0, π]`.
pub fn cos_pi_taylor(q: &Rational, bits: u32) -> Enclosure {
    let pi = pi_enclosure(bits + 8);
    let theta_lo = rational::round_down(&(pi.lo() * q), bits + 8);
    let theta_hi = rational::round_up(&(pi.hi() * q), bits + 8);
    let (lo, _) = cos_series(&theta_hi, bits + 4);
    let (_, hi) = cos_series(&theta_lo, bits + 4);
    let lo = lo.max(int(-1));
    let hi = hi.min(int(1));
    Enclosure::new(lo, hi).round_out(bits + 2)
}

/// Bounds on `cos t` for `0 <= t <= 4`.
fn cos_series(t: &Rational, bits: u32) -> (Rational, Rational) {
    let eps = Rational::new(BigInt::one(), rational::pow2(bits));
    let t2 = t * t;
    let mut term = Rational::one();
    let mut sum = Rational::one();
    let mut k = 1i64;
    loop {
        term = -(&term * &t2) / int((2 * k - 1) * (2 * k));
        // terms decrease in magnitude from k = 2 on when t <= 4
        if k >= 2 && term.abs() < eps {
            return if term.is_negative() {
                (&sum + &term, sum)
            } else {
                (sum.clone(), &sum + &term)
            };
        }
        sum += &term;
        k += 1;
    }
}
