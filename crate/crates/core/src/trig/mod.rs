//! Trigonometric polynomials `a0 + Σ (a_k cos kx + b_k sin kx)` and their
//! expansion into `B(y) + sin(x)·A(y)` with `y = cos x`.

mod interval;

use std::fmt;
use std::ops::{Add, Sub};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::exactnum::{rational, SurdExpr};
use crate::poly::{Poly, SurdPoly};

pub use interval::{
    cos_pi_enclosure, cos_pi_exact, cos_pi_halfangle, cos_pi_taylor, cover, default_cover_width,
    parse_pi_multiple, pi_enclosure, render_pi_multiple, x_to_y, CoverMode, Covering, XInterval,
    YInterval,
};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawTrig", into = "RawTrig")]
pub struct TrigPoly {
    a0: SurdExpr,
    // cos[k-1] and sin[k-1] hold the coefficients of frequency k
    cos: Vec<SurdExpr>,
    sin: Vec<SurdExpr>,
}

#[derive(Serialize, Deserialize)]
struct RawTrig {
    a0: SurdExpr,
    cos: Vec<SurdExpr>,
    sin: Vec<SurdExpr>,
}

impl From<RawTrig> for TrigPoly {
    fn from(r: RawTrig) -> Self {
        TrigPoly::new(r.a0, r.cos, r.sin)
    }
}

impl From<TrigPoly> for RawTrig {
    fn from(t: TrigPoly) -> Self {
        RawTrig {
            a0: t.a0,
            cos: t.cos,
            sin: t.sin,
        }
    }
}

/// Shape of a trigonometric polynomial after trimming zero terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrigKind {
    Zero,
    /// No sine terms (constants included).
    Cosine,
    /// Only sine terms.
    Sine,
    Mixed,
}

impl TrigPoly {
    pub fn new(a0: SurdExpr, mut cos: Vec<SurdExpr>, mut sin: Vec<SurdExpr>) -> Self {
        let n = cos.len().max(sin.len());
        cos.resize(n, SurdExpr::zero());
        sin.resize(n, SurdExpr::zero());
        while cos.last().is_some_and(SurdExpr::is_zero) && sin.last().is_some_and(SurdExpr::is_zero)
        {
            cos.pop();
            sin.pop();
        }
        Self { a0, cos, sin }
    }

    pub fn zero() -> Self {
        Self::new(SurdExpr::zero(), vec![], vec![])
    }

    pub fn constant(c: SurdExpr) -> Self {
        Self::new(c, vec![], vec![])
    }

    /// `c · cos(kx)`; `k = 0` gives the constant `c`.
    pub fn cos_term(k: usize, c: SurdExpr) -> Self {
        if k == 0 {
            return Self::constant(c);
        }
        let mut v = vec![SurdExpr::zero(); k];
        v[k - 1] = c;
        Self::new(SurdExpr::zero(), v, vec![])
    }

    /// `c · sin(kx)`; `k = 0` gives zero.
    pub fn sin_term(k: usize, c: SurdExpr) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let mut v = vec![SurdExpr::zero(); k];
        v[k - 1] = c;
        Self::new(SurdExpr::zero(), vec![], v)
    }

    pub fn degree(&self) -> usize {
        self.cos.len()
    }

    pub fn a0(&self) -> &SurdExpr {
        &self.a0
    }

    /// `a_k` for `k >= 1`.
    pub fn cos_coeff(&self, k: usize) -> SurdExpr {
        self.cos.get(k.wrapping_sub(1)).cloned().unwrap_or_default()
    }

    /// `b_k` for `k >= 1`.
    pub fn sin_coeff(&self, k: usize) -> SurdExpr {
        self.sin.get(k.wrapping_sub(1)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.cos.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.coefficients().all(SurdExpr::is_rational)
    }

    fn coefficients(&self) -> impl Iterator<Item = &SurdExpr> {
        std::iter::once(&self.a0).chain(&self.cos).chain(&self.sin)
    }

    pub fn kind(&self) -> TrigKind {
        let has_sin = self.sin.iter().any(|c| !c.is_zero());
        let has_cos = !self.a0.is_zero() || self.cos.iter().any(|c| !c.is_zero());
        match (has_cos, has_sin) {
            (false, false) => TrigKind::Zero,
            (_, false) => TrigKind::Cosine,
            (false, true) => TrigKind::Sine,
            (true, true) => TrigKind::Mixed,
        }
    }

    pub fn scale(&self, k: &SurdExpr) -> Self {
        Self::new(
            &self.a0 * k,
            self.cos.iter().map(|c| c * k).collect(),
            self.sin.iter().map(|c| c * k).collect(),
        )
    }

    /// Term-wise `d/dx`.
    pub fn derivative(&self) -> Self {
        let k = |i: usize| SurdExpr::from_int(i as i64 + 1);
        Self::new(
            SurdExpr::zero(),
            self.sin.iter().enumerate().map(|(i, b)| b * &k(i)).collect(),
            self.cos.iter().enumerate().map(|(i, a)| -(a * &k(i))).collect(),
        )
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut s = self.a0.to_f64();
        for (i, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let k = (i + 1) as f64;
            if !a.is_zero() {
                s += a.to_f64() * (k * x).cos();
            }
            if !b.is_zero() {
                s += b.to_f64() * (k * x).sin();
            }
        }
        s
    }

    /// Splits `t(x) = B(cos x) + sin(x)·A(cos x)`.
    pub fn expand(&self) -> Expansion {
        let n = self.degree();
        let mut cos_part = SurdPoly::constant(self.a0.clone());
        let mut sin_part = SurdPoly::zero();
        let (mut t_prev, mut t_cur) = (Poly::one(), Poly::var());
        let (mut v_prev, mut v_cur) = (Poly::zero(), Poly::one());
        let two_y = Poly::from_ints(&[0, 2]);
        for k in 1..=n {
            if k > 1 {
                let t_next = &(&two_y * &t_cur) - &t_prev;
                t_prev = std::mem::replace(&mut t_cur, t_next);
                let v_next = &(&two_y * &v_cur) - &v_prev;
                v_prev = std::mem::replace(&mut v_cur, v_next);
            }
            let (a, b) = (&self.cos[k - 1], &self.sin[k - 1]);
            if !a.is_zero() {
                cos_part = &cos_part + &SurdPoly::from_rational_poly(&t_cur).scale(a);
            }
            if !b.is_zero() {
                sin_part = &sin_part + &SurdPoly::from_rational_poly(&v_cur).scale(b);
            }
        }
        Expansion { cos_part, sin_part }
    }

    /// Renders in the expression grammar accepted by the parser.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut push = |coef: &SurdExpr, atom: Option<String>| {
            if coef.is_zero() {
                return;
            }
            let simple_neg = coef.len() == 1 && coef.terms().next().is_some_and(|(_, c)| c.is_negative());
            let (sign, mag) = if simple_neg { ("-", -coef) } else { ("+", coef.clone()) };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let body = mag.to_string();
            let wrapped = if mag.len() > 1 { format!("({body})") } else { body };
            match atom {
                None => out.push_str(&wrapped),
                Some(a) if mag == SurdExpr::one() => out.push_str(&a),
                Some(a) => out.push_str(&format!("{wrapped}*{a}")),
            }
        };
        push(&self.a0, None);
        for (i, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let k = i + 1;
            let arg = if k == 1 { "x".to_string() } else { format!("{k}*x") };
            push(a, Some(format!("cos({arg})")));
            push(b, Some(format!("sin({arg})")));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, o: &TrigPoly) -> TrigPoly {
        let n = self.degree().max(o.degree());
        TrigPoly::new(
            &self.a0 + &o.a0,
            (1..=n).map(|k| self.cos_coeff(k) + o.cos_coeff(k)).collect(),
            (1..=n).map(|k| self.sin_coeff(k) + o.sin_coeff(k)).collect(),
        )
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, o: &TrigPoly) -> TrigPoly {
        self + &o.scale(&SurdExpr::from_int(-1))
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TrigPoly({})", self.render())
    }
}

/// `t(x) = B(cos x) + sin(x)·A(cos x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    /// `B`, collecting the constant and cosine terms.
    pub cos_part: SurdPoly,
    /// `A`, the cofactor of `sin x`.
    pub sin_part: SurdPoly,
}

impl Expansion {
    pub fn eval_f64(&self, x: f64) -> f64 {
        let y = x.cos();
        self.cos_part.eval_f64(y) + x.sin() * self.sin_part.eval_f64(y)
    }

    pub fn rational(&self) -> Option<(Poly, Poly)> {
        Some((self.cos_part.to_rational()?, self.sin_part.to_rational()?))
    }
}

/// `T_k` with `cos(kx) = T_k(cos x)`.
pub fn cheb_cos(k: usize) -> Poly {
    let (mut prev, mut cur) = (Poly::one(), Poly::var());
    if k == 0 {
        return prev;
    }
    let two_y = Poly::from_ints(&[0, 2]);
    for _ in 1..k {
        let next = &(&two_y * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `V_k` with `sin(kx) = sin(x)·V_k(cos x)`; `None` for `k = 0`.
pub fn cheb_sin(k: usize) -> Option<Poly> {
    if k == 0 {
        return None;
    }
    let (mut prev, mut cur) = (Poly::zero(), Poly::one());
    let two_y = Poly::from_ints(&[0, 2]);
    for _ in 1..k {
        let next = &(&two_y * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Some(cur)
}

/// Rational coefficient shortcut used throughout the corpus builders.
pub fn q(n: i64, d: i64) -> SurdExpr {
    SurdExpr::from_rational(rational::rat(n, d))
}

/// Sum of `coef_k · sin(kx)` for `k = 1..`.
pub fn sine_poly(coefs: &[SurdExpr]) -> TrigPoly {
    TrigPoly::new(SurdExpr::zero(), vec![], coefs.to_vec())
}

/// `a0 + Σ coef_k cos(kx)`.
pub fn cosine_poly(a0: SurdExpr, coefs: &[SurdExpr]) -> TrigPoly {
    TrigPoly::new(a0, coefs.to_vec(), vec![])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn chebyshev_cosines() {
        assert_eq!(cheb_cos(0), Poly::one());
        assert_eq!(cheb_cos(2), Poly::from_ints(&[-1, 0, 2]));
        assert_eq!(cheb_cos(3), Poly::from_ints(&[0, -3, 0, 4]));
    }

    #[test]
    fn chebyshev_sines() {
        assert_eq!(cheb_sin(1), Some(Poly::one()));
        assert_eq!(cheb_sin(3), Some(Poly::from_ints(&[-1, 0, 4])));
        assert_eq!(cheb_sin(4), Some(Poly::from_ints(&[0, -4, 0, 8])));
        assert_eq!(cheb_sin(0), None);
    }

    #[test]
    fn cosine_expansion() {
        let c1 = cosine_poly(q(5, 1), &[q(4, 1), q(3, 1), q(4, 1)]);
        let e = c1.expand();
        assert_eq!(e.cos_part.to_rational().unwrap(), Poly::from_ints(&[2, -8, 6, 16]));
        assert!(e.sin_part.is_zero());
    }

    #[test]
    fn derivative_swaps_families() {
        assert!(TrigPoly::constant(q(3, 1)).derivative().is_zero());
        let d = TrigPoly::sin_term(2, SurdExpr::one()).derivative();
        assert_eq!(d, TrigPoly::cos_term(2, q(2, 1)));
        let d = TrigPoly::cos_term(3, q(1, 2)).derivative();
        assert_eq!(d, TrigPoly::sin_term(3, q(-3, 2)));
    }

    #[test]
    fn kinds() {
        assert_eq!(TrigPoly::zero().kind(), TrigKind::Zero);
        assert_eq!(TrigPoly::constant(q(1, 1)).kind(), TrigKind::Cosine);
        assert_eq!(TrigPoly::sin_term(2, q(1, 1)).kind(), TrigKind::Sine);
        let m = &TrigPoly::constant(q(1, 1)) + &TrigPoly::sin_term(1, q(1, 1));
        assert_eq!(m.kind(), TrigKind::Mixed);
        // trailing zero pairs are trimmed
        let t = &TrigPoly::sin_term(3, q(1, 1)) - &TrigPoly::sin_term(3, q(1, 1));
        assert_eq!(t.degree(), 0);
    }

    #[test]
    fn render_shapes() {
        let t = &TrigPoly::constant(q(7, 5)) + &TrigPoly::sin_term(2, SurdExpr::term(rat(-1, 2), 2));
        assert_eq!(t.render(), "7/5 - 1/2*sqrt(2)*sin(2*x)");
        assert_eq!(TrigPoly::zero().render(), "0");
    }
}
