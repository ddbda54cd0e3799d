//! Irrational coefficients: shift to `z = y + 1`, divide out factors `z`,
//! bound the result from below by a rational polynomial and decide that.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{settle, CertKind, PfloorData, Proof, ProveOptions, Status, Verdict};
use crate::error::ProverError;
use crate::exactnum::rational::{self, Rational};
use crate::exactnum::SurdExpr;
use crate::poly::{Poly, SurdPoly};
use crate::trig::{cover, TrigKind, TrigPoly, XInterval};

/// Smallest and largest precision tried when none is given.
const M_RANGE: (u32, u32) = (2, 12);

/// Coefficientwise `(floor(c·10^m) - 1) / 10^m`; zero coefficients stay zero.
pub fn pfloor(p: &SurdPoly, m: u32) -> Poly {
    let scale = Rational::from_integer(rational::pow10(m));
    Poly::new(
        p.coeffs()
            .iter()
            .map(|c| floor_coeff(c, &scale))
            .collect(),
    )
}

fn floor_coeff(c: &SurdExpr, scale: &Rational) -> Rational {
    if c.is_zero() {
        return Rational::zero();
    }
    let f = c.scale(scale).floor() - BigInt::one();
    Rational::from_integer(f) / scale
}

/// Like [`pfloor`] but keeps rational coefficients exactly. Returns the
/// bound and the degrees that were kept.
pub fn lower_bound(p: &SurdPoly, m: u32) -> (Poly, Vec<usize>) {
    let scale = Rational::from_integer(rational::pow10(m));
    let mut exempt = Vec::new();
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| match c.as_rational() {
            Some(r) if !r.is_zero() => {
                exempt.push(i);
                r
            }
            _ => floor_coeff(c, &scale),
        })
        .collect();
    (Poly::new(coeffs), exempt)
}

/// `p(z - 1)` with every exact factor `z` removed.
fn lift(p: &SurdPoly) -> (SurdPoly, usize) {
    let mut q = p.shift(&rational::int(-1));
    let mut stripped = 0;
    while q.degree().is_some_and(|d| d > 0) {
        match q.strip_var() {
            Some(s) => {
                q = s;
                stripped += 1;
            }
            None => break,
        }
    }
    (q, stripped)
}

/// One-sided decision for pure sine or cosine polynomials with surd
/// coefficients. Nonnegative is certain; a negative value of the bound is
/// upgraded to Negative only when the original is exactly negative there.
pub fn decide_surd(
    t: &TrigPoly,
    iv: &XInterval,
    opts: &ProveOptions,
) -> Result<Proof, ProverError> {
    let kind = t.kind();
    if kind == TrigKind::Mixed {
        return Err(ProverError::IrrationalMixed);
    }
    if opts.m == Some(0) {
        return Err(ProverError::BadPrecision);
    }
    let e = t.expand();
    let original = if kind == TrigKind::Sine { e.sin_part } else { e.cos_part };
    let cov = cover(iv, &opts.cover_width);
    let ylo = cov.outer.lo().clone();
    let yhi = cov.outer.hi().clone();
    let one = Rational::one();
    let (zlo, zhi) = (&ylo + &one, &yhi + &one);
    let (lifted, stripped) = lift(&original);
    let ms: Vec<u32> = match opts.m {
        Some(m) => vec![m],
        None => (M_RANGE.0..=M_RANGE.1).collect(),
    };
    let mut attempts = Vec::new();
    let mut last = None;
    for m in ms {
        attempts.push(m);
        let (bound, exempt) = lower_bound(&lifted, m);
        let (verdict, mut cert) = super::decide_poly_range(&bound, &zlo, &zhi, &opts.box_width)?;
        let verdict = match verdict.witness {
            None => verdict,
            Some(z) => {
                let y = &z - &one;
                if original.eval(&SurdExpr::from_rational(y.clone())).sign() < 0 {
                    Verdict::negative(y)
                } else {
                    cert.notes.push(format!(
                        "lower bound is negative at z = {z} but the original is not"
                    ));
                    Verdict::inconclusive()
                }
            }
        };
        cert.kind = CertKind::Pfloor;
        if !exempt.is_empty() {
            cert.notes.push(format!(
                "rational coefficients kept exactly at degrees {exempt:?}"
            ));
        }
        cert.notes.push(format!(
            "{} part decided in z = y + 1 after removing {stripped} factor(s) z",
            if kind == TrigKind::Sine { "sine cofactor" } else { "cosine" }
        ));
        cert.pfloor = Some(PfloorData {
            m,
            original: original.clone(),
            stripped,
            lifted: lifted.clone(),
            bound,
            exempt,
        });
        let done = verdict.status != Status::Inconclusive;
        last = Some((verdict, cert));
        if done {
            break;
        }
    }
    let (verdict, mut cert) = last.expect("at least one precision is tried");
    let verdict = settle(verdict, &mut cert, &cov);
    Ok(Proof {
        verdict,
        certificate: cert,
        interval: iv.clone(),
        covering: cov,
        cover_width: opts.cover_width.clone(),
        attempts,
    })
}

#[cfg(test)]
pub(super) fn lift_for_tests(p: &SurdPoly) -> (SurdPoly, usize) {
    lift(p)
}
