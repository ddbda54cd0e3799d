//! Sturm chains, sign variations, distinct-root counting on half-open
//! intervals `(a, b]`, and root isolation by exact bisection.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::PolyError;
use crate::exactnum::{rational, serde_rational, Rational};
use crate::poly::{sign_at_integer, Poly};

/// `X, X', -rem(X, X'), ...` down to the last nonzero remainder.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<Poly>,
    // Integer forms used for counting. For non-squarefree X every member is
    // first divided by the final gcd, so counts stay valid at multiple roots.
    counting: Vec<Vec<BigInt>>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Result<Self, PolyError> {
        match p.degree() {
            None => return Err(PolyError::ZeroPolynomial),
            Some(0) => return Err(PolyError::ConstantPolynomial),
            _ => {}
        }
        let mut polys = vec![p.clone(), p.derivative()];
        loop {
            let n = polys.len();
            let (_, r) = polys[n - 2].divrem(&polys[n - 1])?;
            if r.is_zero() {
                break;
            }
            polys.push(-r);
        }
        Ok(Self::from_polys(polys))
    }

    fn from_polys(polys: Vec<Poly>) -> Self {
        let last = polys.last().unwrap();
        let counting = if last.degree() == Some(0) {
            polys.iter().map(Poly::primitive_integer).collect()
        } else {
            polys
                .iter()
                .map(|q| q.div_exact(last).expect("gcd divides chain").primitive_integer())
                .collect()
        };
        Self { polys, counting }
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn into_polys(self) -> Vec<Poly> {
        self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// True when the final member is a constant, i.e. `gcd(X, X') = 1`.
    pub fn is_squarefree(&self) -> bool {
        self.polys.last().and_then(Poly::degree) == Some(0)
    }

    /// Chain members evaluated at `x`.
    pub fn values_at(&self, x: &Rational) -> Vec<Rational> {
        self.polys.iter().map(|p| p.eval(x)).collect()
    }

    pub fn signs_at(&self, x: &Rational) -> Vec<i8> {
        self.counting.iter().map(|c| sign_at_integer(c, x)).collect()
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        sign_changes_of(&self.signs_at(x))
    }

    /// Distinct real roots of the first member in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        let va = self.variations_at(a);
        let vb = self.variations_at(b);
        va.saturating_sub(vb)
    }

    /// Sign of the (squarefree-reduced) first member at `x`.
    fn head_sign(&self, x: &Rational) -> i8 {
        sign_at_integer(&self.counting[0], x)
    }

    /// Midpoint of `(l, r)`, nudged right by `(r - l)/2^32` while it is a root.
    fn split_point(&self, l: &Rational, r: &Rational) -> Rational {
        let mut m = rational::midpoint(l, r);
        let nudge = (r - l) / Rational::from_integer(rational::pow2(32));
        while self.head_sign(&m) == 0 {
            m += &nudge;
        }
        m
    }

    /// Halves a box holding exactly one root, keeping the half with the root.
    pub fn refine(&self, b: &RootBox) -> RootBox {
        let m = self.split_point(&b.lo, &b.hi);
        if self.count(&b.lo, &m) == 1 {
            RootBox::new(b.lo.clone(), m)
        } else {
            RootBox::new(m, b.hi.clone())
        }
    }

    /// One box per distinct root in `(a, b]`, each of width at most
    /// `max_width`, sorted and pairwise separated by a positive gap.
    pub fn isolate(&self, a: &Rational, b: &Rational, max_width: &Rational) -> Vec<RootBox> {
        let mut out = Vec::new();
        let mut stack = vec![(a.clone(), b.clone())];
        while let Some((l, r)) = stack.pop() {
            let n = self.count(&l, &r);
            if n == 0 {
                continue;
            }
            if n == 1 && &(&r - &l) <= max_width {
                out.push(RootBox::new(l, r));
                continue;
            }
            let m = self.split_point(&l, &r);
            // right half pushed first so boxes come out in increasing order
            stack.push((m.clone(), r));
            stack.push((l, m));
        }
        for i in 1..out.len() {
            while out[i - 1].hi >= out[i].lo {
                out[i - 1] = self.refine(&out[i - 1]);
                out[i] = self.refine(&out[i]);
            }
        }
        out
    }
}

/// Adjacent sign alternations after dropping zeros.
pub fn sign_changes(values: &[Rational]) -> usize {
    let signs: Vec<i8> = values.iter().map(rational::sign).collect();
    sign_changes_of(&signs)
}

pub fn sign_changes_of(signs: &[i8]) -> usize {
    let mut prev = 0i8;
    let mut n = 0;
    for &s in signs.iter().filter(|s| **s != 0) {
        if prev != 0 && s != prev {
            n += 1;
        }
        prev = s;
    }
    n
}

/// Distinct real roots of `p` in `(a, b]`; multiple roots count once.
pub fn count_roots(p: &Poly, a: &Rational, b: &Rational) -> Result<usize, PolyError> {
    if a >= b {
        return Err(PolyError::EmptyInterval);
    }
    match p.degree() {
        None => Err(PolyError::ZeroPolynomial),
        Some(0) => Ok(0),
        _ => Ok(SturmChain::new(p)?.count(a, b)),
    }
}

pub fn isolate_roots(
    p: &Poly,
    a: &Rational,
    b: &Rational,
    max_width: &Rational,
) -> Result<Vec<RootBox>, PolyError> {
    if a >= b {
        return Err(PolyError::EmptyInterval);
    }
    if !max_width.is_positive() {
        return Err(PolyError::NonPositiveWidth);
    }
    match p.degree() {
        None => Err(PolyError::ZeroPolynomial),
        Some(0) => Ok(Vec::new()),
        _ => Ok(SturmChain::new(p)?.isolate(a, b, max_width)),
    }
}

/// Closed rational interval certified to hold exactly one distinct root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBox {
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
}

impl RootBox {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// True when this box lies inside `[lo, hi]`.
    pub fn within(&self, lo: &Rational, hi: &Rational) -> bool {
        lo <= &self.lo && &self.hi <= hi
    }

    pub fn mid(&self) -> Rational {
        rational::midpoint(&self.lo, &self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rational::to_f64(&self.lo), rational::to_f64(&self.hi))
    }
}

impl std::fmt::Display for RootBox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let w = self.width();
        let digits = if w.is_one() { 3 } else { rational::bits_for(&w).div_ceil(3) + 2 };
        write!(
            f,
            "[{}, {}]",
            rational::to_decimal(&self.lo, digits),
            rational::to_decimal(&self.hi, digits)
        )
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
    fn quartic_chain_is_bit_exact() {
        let c = SturmChain::new(&p(&[5, 14, -28, -56, 80])).unwrap();
        let polys = c.polys();
        assert_eq!(polys.len(), 5);
        assert_eq!(polys[1], p(&[14, -56, -168, 320]));
        assert_eq!(polys[2], Poly::new(vec![rat(-449, 80), rat(-161, 20), rat(427, 20)]));
        assert_eq!(polys[3], Poly::new(vec![rat(-40480, 26047), rat(-267520, 26047)]));
        // positive, matching the endpoint sequences below
        assert_eq!(polys[4], Poly::new(vec![rat(360937, 92416)]));
        let at_lo = c.values_at(&int(-1));
        let at_hi = c.values_at(&int(1));
        assert_eq!(
            at_lo,
            vec![int(99), int(-418), rat(1903, 80), rat(227040, 26047), rat(360937, 92416)]
        );
        assert_eq!(
            at_hi,
            vec![int(15), int(110), rat(123, 16), rat(-44000, 3721), rat(360937, 92416)]
        );
        assert_eq!(sign_changes(&at_lo), 2);
        assert_eq!(sign_changes(&at_hi), 2);
    }

    #[test]
    fn cubic_chain() {
        let c = SturmChain::new(&p(&[5, 7, 20, 16])).unwrap();
        assert_eq!(c.polys()[1], p(&[7, 40, 48]));
        assert_eq!(c.polys()[2], Poly::new(vec![rat(-145, 36), rat(8, 9)]));
        assert_eq!(c.polys()[3], Poly::new(vec![rat(-75123, 64)]));
        assert_eq!(sign_changes_of(&c.signs_at(&int(-1))), 1);
        assert_eq!(c.signs_at(&int(-1)), vec![1, 1, -1, -1]);
        assert_eq!(c.signs_at(&int(1)), vec![1, 1, -1, -1]);
    }

    #[test]
    fn non_squarefree_chain_stops_at_gcd() {
        let c = SturmChain::new(&p(&[0, 0, 1])).unwrap();
        assert_eq!(c.polys(), &[p(&[0, 0, 1]), p(&[0, 2])]);
        assert!(!c.is_squarefree());
    }

    #[test]
    fn zeros_are_dropped() {
        assert_eq!(sign_changes(&[int(1), int(0), int(-1), int(0), int(2)]), 2);
        assert_eq!(sign_changes(&[]), 0);
    }

    #[test]
    fn half_open_counting() {
        let y = p(&[0, 1]);
        assert_eq!(count_roots(&y, &int(-1), &int(1)).unwrap(), 1);
        assert_eq!(count_roots(&y, &int(0), &int(1)).unwrap(), 0);
        assert_eq!(count_roots(&y, &int(-1), &int(0)).unwrap(), 1);
        assert_eq!(count_roots(&p(&[5, 14, -28, -56, 80]), &int(-1), &int(1)).unwrap(), 0);
        assert_eq!(count_roots(&p(&[3]), &int(-1), &int(1)).unwrap(), 0);
        assert!(count_roots(&Poly::zero(), &int(-1), &int(1)).is_err());
        assert!(count_roots(&y, &int(1), &int(1)).is_err());
    }

    #[test]
    fn multiplicities_collapse() {
        let a = Poly::new(vec![rat(-1, 3), int(1)]);
        let b = Poly::new(vec![rat(1, 3), int(1)]);
        let q = &(&(&a * &a) * &a) * &b;
        assert_eq!(count_roots(&q, &int(-1), &int(1)).unwrap(), 2);
        // multiple root sitting on an endpoint
        assert_eq!(count_roots(&q, &rat(1, 3), &int(1)).unwrap(), 0);
        assert_eq!(count_roots(&q, &int(0), &rat(1, 3)).unwrap(), 1);
    }

    #[test]
    fn isolation_around_half() {
        let q = Poly::new(vec![rat(-1, 4), int(0), int(1)]);
        let boxes = isolate_roots(&q, &int(-1), &int(1), &rat(1, 100)).unwrap();
        assert_eq!(boxes.len(), 2);
        assert!(boxes[0].contains(&rat(-1, 2)) && boxes[1].contains(&rat(1, 2)));
        assert!(boxes.iter().all(|b| b.width() <= rat(1, 100)));
        assert!(boxes[0].hi < boxes[1].lo);
        assert!(isolate_roots(&p(&[5, 14, -28, -56, 80]), &int(-1), &int(1), &int(1))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn isolation_includes_right_endpoint_root() {
        let q = p(&[-1, 0, 1]);
        let boxes = isolate_roots(&q, &int(-1), &int(1), &rat(1, 8)).unwrap();
        assert_eq!(boxes.len(), 1);
        assert_eq!(boxes[0].hi, int(1));
    }
}
