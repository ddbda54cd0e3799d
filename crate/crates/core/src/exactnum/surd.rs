//! Quadratic surds: finite sums `Σ r_d·√d` over squarefree radicands `d`.
//!
//! Distinct square roots of squarefree integers are linearly independent
//! over the rationals, so an expression is zero exactly when its term map
//! is empty. That makes equality and the zero test purely syntactic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::enclosure::Enclosure;
use super::rational::{self, Rational};

/// Largest radicand accepted by [`SurdExpr::sqrt`]; trial division stays cheap below it.
pub const MAX_RADICAND: u64 = 1 << 40;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SurdExpr {
    terms: BTreeMap<u64, Rational>,
}

impl SurdExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(1, r);
        }
        Self { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rational::int(n))
    }

    /// `coef · √n`, with `n` reduced to its squarefree part.
    pub fn term(coef: Rational, n: u64) -> Self {
        if n == 0 || coef.is_zero() {
            return Self::zero();
        }
        let (outside, d) = squarefree_split(n);
        let mut terms = BTreeMap::new();
        terms.insert(d, coef * rational::int(outside as i64));
        Self { terms }
    }

    /// `√n` for a natural `n`.
    pub fn sqrt(n: u64) -> Self {
        Self::term(Rational::one(), n)
    }

    /// Square root of a non-negative rational `p/q`, i.e. `√(pq)/q`.
    /// Returns `None` when the rational is negative or its parts are out of range.
    pub fn sqrt_rational(r: &Rational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        if r.is_zero() {
            return Some(Self::zero());
        }
        let p: u64 = r.numer().try_into().ok()?;
        let q: u64 = r.denom().try_into().ok()?;
        let pq = p.checked_mul(q)?;
        if pq > MAX_RADICAND {
            return None;
        }
        Some(Self::term(Rational::new(1.into(), q.into()), pq))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&d| d == 1)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.rational_part())
        } else {
            None
        }
    }

    pub fn rational_part(&self) -> Rational {
        self.terms.get(&1).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates `(radicand, coefficient)` pairs in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn from_terms<I: IntoIterator<Item = (u64, Rational)>>(it: I) -> Self {
        it.into_iter()
            .fold(Self::zero(), |acc, (d, c)| acc + Self::term(c, d))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(d, c)| (*d, c * k)).collect(),
        }
    }

    /// Exact inverse for single-term expressions `c·√d`; `None` otherwise.
    pub fn inverse_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&d, c) = self.terms.iter().next()?;
        // 1/(c√d) = √d/(c·d)
        let k = Rational::one() / (c * rational::int(d as i64));
        Some(Self::term(k, d))
    }

    /// Rational interval of width at most `eps` around the exact value.
    pub fn enclose(&self, eps: &Rational) -> Enclosure {
        assert!(eps.is_positive(), "enclosure width must be positive");
        let rational = self.rational_part();
        let weight: Rational = self
            .terms
            .iter()
            .filter(|(d, _)| **d != 1)
            .map(|(_, c)| c.abs())
            .fold(Rational::zero(), |a, b| a + b);
        if weight.is_zero() {
            return Enclosure::point(rational);
        }
        let bits = rational::bits_for(&(eps / weight));
        let mut acc = Enclosure::point(rational);
        for (&d, c) in self.terms.iter().filter(|(d, _)| **d != 1) {
            let (lo, hi) = rational::sqrt_bounds(&rational::int(d as i64), bits);
            acc = acc.add(&Enclosure::new(lo, hi).scale(c));
        }
        acc
    }

    /// Exact sign, by refining enclosures until zero is excluded.
    pub fn sign(&self) -> i8 {
        if let Some(r) = self.as_rational() {
            return rational::sign(&r);
        }
        let mut bits = 16u32;
        loop {
            let eps = Rational::new(1.into(), rational::pow2(bits));
            let e = self.enclose(&eps);
            if e.lo().is_positive() {
                return 1;
            }
            if e.hi().is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, c)| rational::to_f64(c) * (*d as f64).sqrt())
            .sum()
    }

    /// Exact `floor(self)`; terminates because a non-integer surd has a
    /// positive distance to the nearest integer.
    pub fn floor(&self) -> num_bigint::BigInt {
        if let Some(r) = self.as_rational() {
            return rational::floor(&r);
        }
        let mut bits = 32u32;
        loop {
            let e = self.enclose(&Rational::new(1.into(), rational::pow2(bits)));
            let lo = rational::floor(e.lo());
            if lo == rational::floor(e.hi()) {
                return lo;
            }
            bits *= 2;
        }
    }
}

/// Splits `n = outside² · d` with `d` squarefree.
pub fn squarefree_split(mut n: u64) -> (u64, u64) {
    assert!(n <= MAX_RADICAND, "radicand {n} out of range");
    let mut outside = 1u64;
    let mut d = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        outside *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (outside, d * n)
}

fn merge(terms: &mut BTreeMap<u64, Rational>, d: u64, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = terms.entry(d).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        terms.remove(&d);
    }
}

impl Add for &SurdExpr {
    type Output = SurdExpr;
    fn add(self, rhs: &SurdExpr) -> SurdExpr {
        let mut terms = self.terms.clone();
        for (d, c) in &rhs.terms {
            merge(&mut terms, *d, c.clone());
        }
        SurdExpr { terms }
    }
}

impl Sub for &SurdExpr {
    type Output = SurdExpr;
    fn sub(self, rhs: &SurdExpr) -> SurdExpr {
        let mut terms = self.terms.clone();
        for (d, c) in &rhs.terms {
            merge(&mut terms, *d, -c);
        }
        SurdExpr { terms }
    }
}

impl Mul for &SurdExpr {
    type Output = SurdExpr;
    fn mul(self, rhs: &SurdExpr) -> SurdExpr {
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                // √a·√b = g·√((a/g)(b/g)) with g = gcd(a, b); the cofactor stays squarefree
                let g = a.gcd(b);
                let d = (a / g)
                    .checked_mul(b / g)
                    .expect("radicand product overflow");
                merge(&mut terms, d, ca * cb * rational::int(g as i64));
            }
        }
        SurdExpr { terms }
    }
}

impl Neg for &SurdExpr {
    type Output = SurdExpr;
    fn neg(self) -> SurdExpr {
        SurdExpr {
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for SurdExpr {
            type Output = SurdExpr;
            fn $m(self, rhs: SurdExpr) -> SurdExpr {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&SurdExpr> for SurdExpr {
            type Output = SurdExpr;
            fn $m(self, rhs: &SurdExpr) -> SurdExpr {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SurdExpr {
    type Output = SurdExpr;
    fn neg(self) -> SurdExpr {
        -&self
    }
}

impl num_traits::Zero for SurdExpr {
    fn zero() -> Self {
        SurdExpr::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl num_traits::One for SurdExpr {
    fn one() -> Self {
        SurdExpr::one()
    }
}

impl From<Rational> for SurdExpr {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Display for SurdExpr {
    /// Renders in the expression grammar, e.g. `3/2*sqrt(2) + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = (c.is_negative(), c.abs());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *d == 1 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "sqrt({d})")?;
            } else {
                write!(f, "{mag}*sqrt({d})")?;
            }
        }
        Ok(())
    }
}
