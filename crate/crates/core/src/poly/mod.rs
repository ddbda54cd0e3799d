//! Dense univariate polynomials with exact coefficients.
//!
//! [`Poly`] is generic over the coefficient ring: rationals for everything
//! that needs division (Euclid, gcd, discriminants), quadratic surds for
//! the expansion of trigonometric polynomials with irrational coefficients.

mod disc;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::PolyError;
use crate::exactnum::{rational, serde_rational, Rational, SurdExpr};

pub use disc::{disc_affine_family, discriminant, resultant};

/// Coefficient ring for [`Poly`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + Zero + One {
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;
}

impl Coeff for Rational {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Coeff for SurdExpr {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        SurdExpr::from_rational(r.clone())
    }
}

/// Coefficients in ascending degree order, never with a trailing zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C = Rational> {
    coeffs: Vec<C>,
}

pub type SurdPoly = Poly<SurdExpr>;

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    /// The identity polynomial `y`.
    pub fn var() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    /// `c · y^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        let mut v = vec![C::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `y^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.times(k)).collect())
    }

    pub fn scale_rational(&self, k: &Rational) -> Self {
        self.scale(&C::from_rational(k))
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc.times(x).plus(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&C::from_rational(&rational::int(i as i64))))
                .collect(),
        )
    }

    /// `q(z) = p(z + c)` by Horner composition.
    pub fn shift(&self, c: &Rational) -> Self {
        let lin = Self::new(vec![C::from_rational(c), C::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| &(&acc * &lin) + &Self::constant(a.clone()))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Renders with the given variable name, highest degree first.
    pub fn fmt_var(&self, var: &str) -> String
    where
        C: fmt::Display,
    {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let compound = s.contains(" + ") || s.contains(" - ");
            let body = if compound { format!("({s})") } else { s };
            let (neg, body) = match body.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, body),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = body == "1";
            match i {
                0 => out.push_str(&body),
                1 if unit => out.push_str(var),
                1 => out.push_str(&format!("{body}*{var}")),
                _ if unit => out.push_str(&format!("{var}^{i}")),
                _ => out.push_str(&format!("{body}*{var}^{i}")),
            }
        }
        out
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).plus(&o.coeff(i))).collect())
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).minus(&o.coeff(i))).collect())
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: &Poly<C>) -> Poly<C> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![C::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].plus(&a.times(b));
            }
        }
        Poly::new(v)
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::new(self.coeffs.iter().map(|c| c.negated()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, o: Poly<C>) -> Poly<C> {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("y"))
    }
}

impl<C: Coeff + fmt::Display> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Poly<Rational> {
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| rational::int(x)).collect())
    }

    /// Exact Euclidean division `a = q·b + r`, `deg r < deg b`.
    pub fn divrem(&self, b: &Self) -> Result<(Self, Self), PolyError> {
        let db = b.degree().ok_or(PolyError::DivisionByZero)?;
        let lb = b.coeffs[db].clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(db)];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let f = r.last().unwrap() / &lb;
            if !Zero::is_zero(&f) {
                for (j, bc) in b.coeffs.iter().enumerate() {
                    r[k + j] -= &f * bc;
                }
                q[k] = f;
            }
            r.pop();
        }
        Ok((Self::new(q), Self::new(r)))
    }

    /// Exact quotient; `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        let (q, r) = self.divrem(b).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&(Rational::one() / l)),
            None => Self::zero(),
        }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, sf)` with `g = gcd(p, p')` monic and `sf = p / g`.
    pub fn gcd_squarefree(&self) -> Result<(Self, Self), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        let g = if g.is_zero() { Self::one() } else { g };
        let sf = self.div_exact(&g).expect("gcd divides");
        Ok((g, sf))
    }

    /// Positive rational multiple with coprime integer coefficients.
    /// Sign-preserving, so it can stand in for `self` in sign evaluations.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Exact sign of `self(x)`.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        rational::sign(&self.eval(x))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational::to_f64(c))
    }

    /// Cauchy bound: every real root lies strictly inside `(-B, B)`.
    pub fn root_bound(&self) -> Rational {
        let Some(l) = self.lead() else {
            return Rational::one();
        };
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / l).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        m + rational::int(1)
    }
}

/// Sign of an integer-coefficient polynomial at `n/d`, via the homogenized
/// form `Σ c_i n^i d^(k-i)` which has the same sign (`d > 0`).
pub fn sign_at_integer(coeffs: &[BigInt], x: &Rational) -> i8 {
    if coeffs.is_empty() {
        return 0;
    }
    let (n, d) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    // Horner in n with growing powers of d: acc = Σ c_i n^i d^(k-i)
    for c in coeffs.iter().rev() {
        acc = acc * n + c * &dpow;
        dpow *= d;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

impl SurdPoly {
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(SurdExpr::is_rational)
    }

    pub fn to_rational(&self) -> Option<Poly<Rational>> {
        self.coeffs
            .iter()
            .map(SurdExpr::as_rational)
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }

    pub fn from_rational_poly(p: &Poly<Rational>) -> Self {
        p.map(|c| SurdExpr::from_rational(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    /// Removes a factor `y` when the constant coefficient vanishes exactly.
    pub fn strip_var(&self) -> Option<Self> {
        match self.coeffs.first() {
            Some(c) if c.is_zero() => Some(Self::new(self.coeffs[1..].to_vec())),
            _ => None,
        }
    }
}

impl Serialize for Poly<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_rational::vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Poly<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Self::new(serde_rational::vec::deserialize(d)?))
    }
}

impl Serialize for SurdPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SurdPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Self::new(Vec::<SurdExpr>::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn arithmetic() {
        assert!((&p(&[1, 1]) + &p(&[-1, -1])).is_zero());
        assert_eq!(
            &p(&[1, 1]) * &p(&[5, 14, -28, -56, 80]),
            p(&[5, 19, -14, -84, 24, 80])
        );
        let s = p(&[5, 7, 20, 16]).scale(&rat(2, 5));
        assert_eq!(s.coeffs(), &[int(2), rat(14, 5), int(8), rat(32, 5)]);
    }

    #[test]
    fn evaluation_matches_chain_values() {
        let x = p(&[5, 14, -28, -56, 80]);
        assert_eq!(x.eval(&int(-1)), int(99));
        assert_eq!(x.eval(&int(1)), int(15));
        assert_eq!(Poly::zero().eval(&int(7)), int(0));
        assert_eq!(sign_at_integer(&x.primitive_integer(), &rat(-1, 3)), x.sign_at(&rat(-1, 3)));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p(&[5, 14, -28, -56, 80]).derivative(), p(&[14, -56, -168, 320]));
        assert_eq!(p(&[5, 7, 20, 16]).derivative(), p(&[7, 40, 48]));
        assert!(p(&[9]).derivative().is_zero());
    }

    #[test]
    fn shifts() {
        assert_eq!(p(&[0, 0, 1]).shift(&int(-1)), p(&[1, -2, 1]));
        let q = p(&[3, -1, 4, 1, -5]);
        assert_eq!(q.shift(&int(-1)).shift(&int(1)), q);
    }

    #[test]
    fn division() {
        let (q, r) = p(&[5, 19, -14, -84, 24, 80]).divrem(&p(&[1, 1])).unwrap();
        assert_eq!(q, p(&[5, 14, -28, -56, 80]));
        assert!(r.is_zero());

        let x = p(&[5, 14, -28, -56, 80]);
        let (_, r) = x.divrem(&x.derivative()).unwrap();
        // remainder is -X2 with X2 = 427/20 y^2 - 161/20 y - 449/80
        assert_eq!(r, Poly::new(vec![rat(449, 80), rat(161, 20), rat(-427, 20)]));

        let (q, r) = x.divrem(&x).unwrap();
        assert_eq!((q, r), (Poly::one(), Poly::zero()));
        assert_eq!(x.divrem(&Poly::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn squarefree_parts() {
        let h = Poly::new(vec![rat(-1, 2), int(1)]);
        let (g, sf) = (&h * &h).gcd_squarefree().unwrap();
        assert_eq!((g, sf), (h.clone(), h));
        let (g, _) = p(&[2, -8, 6, 16]).gcd_squarefree().unwrap();
        assert_eq!(g, Poly::one());
        assert!(Poly::zero().gcd_squarefree().is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[5, 14, -28, -56, 80]).to_string(), "80*y^4 - 56*y^3 - 28*y^2 + 14*y + 5");
        assert_eq!(p(&[0, -1]).to_string(), "-y");
        assert_eq!(Poly::<Rational>::zero().to_string(), "0");
    }

    #[test]
    fn surd_shift_reproduces_shifted_form() {
        let r2 = |c: Rational| SurdExpr::term(c, 2);
        // 3√2 y³ + 2√2 y² + (1 − 3/√2) y + (1 − 1/√2)
        let p3 = SurdPoly::new(vec![
            SurdExpr::one() - r2(rat(1, 2)),
            SurdExpr::one() - r2(rat(3, 2)),
            r2(int(2)),
            r2(int(3)),
        ]);
        let p4 = p3.shift(&int(-1));
        assert_eq!(
            p4,
            SurdPoly::new(vec![
                SurdExpr::zero(),
                r2(rat(7, 2)) + SurdExpr::one(),
                r2(int(-7)),
                r2(int(3)),
            ])
        );
        assert!(p4.strip_var().is_some());
    }
}
