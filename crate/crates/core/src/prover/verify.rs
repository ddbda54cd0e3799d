//! Independent re-checking of certificates from their exact data alone.

use num_traits::{One, Zero};

use super::{exact_sign_mixed, resolvent, scan, CertKind, Certificate, Proof, Status, Verdict};
use crate::error::VerifyError;
use crate::exactnum::rational::{self, Rational};
use crate::exactnum::SurdExpr;
use crate::poly::SurdPoly;
use crate::sturm::SturmChain;
use crate::trig::{cover, TrigKind, TrigPoly};

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), VerifyError> {
    if ok {
        Ok(())
    } else {
        Err(VerifyError(what()))
    }
}

/// Re-checks every sign claim of `cert` and that `verdict` follows from them.
pub fn verify_certificate(cert: &Certificate, verdict: &Verdict) -> Result<(), VerifyError> {
    let (lo, hi) = (&cert.lo, &cert.hi);
    check(lo < hi, || "empty range".into())?;

    let sign: Box<dyn Fn(&Rational) -> i8> = match cert.kind {
        CertKind::Mixed => {
            let parts = cert
                .mixed
                .as_ref()
                .ok_or_else(|| VerifyError("mixed certificate without parts".into()))?;
            check(cert.roots_of == resolvent(&parts.a, &parts.b), || {
                "root polynomial is not the squared resolvent".into()
            })?;
            Box::new(move |y| exact_sign_mixed(&parts.a, &parts.b, y))
        }
        _ => {
            let target = cert
                .target
                .as_ref()
                .ok_or_else(|| VerifyError("certificate without target".into()))?;
            check(&cert.roots_of == target, || "root polynomial differs from target".into())?;
            Box::new(move |x| target.sign_at(x))
        }
    };

    if cert.kind == CertKind::Pfloor {
        check_pfloor(cert)?;
    }

    if cert.roots_of.is_zero() {
        check(cert.samples.iter().all(|s| s.sign == 0), || "zero target with nonzero sample".into())?;
        return check(verdict.status == Status::Nonnegative, || "zero target must be nonnegative".into());
    }

    check_roots(cert)?;

    let expected = scan::sample_points(lo, hi, &cert.root_boxes);
    check(expected.len() == cert.samples.len(), || {
        format!("expected {} samples, found {}", expected.len(), cert.samples.len())
    })?;
    for (p, s) in expected.iter().zip(&cert.samples) {
        check(p == &s.point, || format!("sample {} is not the gap point {p}", s.point))?;
        let actual = sign(p);
        check(actual == s.sign, || format!("sign at {p} is {actual}, certificate says {}", s.sign))?;
    }

    let all_nonneg = cert.samples.iter().all(|s| s.sign >= 0);
    match verdict.status {
        Status::Nonnegative => check(all_nonneg, || "negative sample under a nonnegative verdict".into()),
        Status::Negative => {
            let w = verdict
                .witness
                .as_ref()
                .ok_or_else(|| VerifyError("negative verdict without witness".into()))?;
            check(!all_nonneg, || "negative verdict but every sample is nonnegative".into())?;
            let neg = match (&cert.kind, &cert.pfloor) {
                (CertKind::Pfloor, Some(d)) => {
                    d.original.eval(&SurdExpr::from_rational(w.clone())).sign() < 0
                }
                _ => lo <= w && w <= hi && sign(w) < 0,
            };
            check(neg, || format!("witness {w} is not negative"))
        }
        Status::Inconclusive => check(cert.kind == CertKind::Pfloor || !all_nonneg, || {
            "inconclusive verdict on a complete decision".into()
        }),
    }
}

fn check_roots(cert: &Certificate) -> Result<(), VerifyError> {
    let (lo, hi) = (&cert.lo, &cert.hi);
    if cert.roots_of.degree() == Some(0) {
        check(cert.chain.is_empty() && cert.root_boxes.is_empty(), || {
            "constant root polynomial with a chain or boxes".into()
        })?;
        return Ok(());
    }
    let chain = SturmChain::new(&cert.roots_of).map_err(|e| VerifyError(e.to_string()))?;
    check(chain.polys() == cert.chain.as_slice(), || "Sturm chain does not recompute".into())?;
    check(
        cert.endpoint_signs.len() == 2
            && chain.signs_at(lo) == cert.endpoint_signs[0]
            && chain.signs_at(hi) == cert.endpoint_signs[1],
        || "endpoint sign sequences do not recompute".into(),
    )?;
    let total = chain.count(lo, hi);
    check(total == cert.root_boxes.len(), || {
        format!("{total} roots in (lo, hi] but {} boxes", cert.root_boxes.len())
    })?;
    let root_at_hi = cert.roots_of.sign_at(hi) == 0;
    for (i, b) in cert.root_boxes.iter().enumerate() {
        check(lo < &b.lo && b.lo < b.hi && &b.hi <= hi, || format!("box {i} out of range"))?;
        check(&b.hi < hi || root_at_hi, || format!("box {i} touches hi without a root there"))?;
        check(chain.count(&b.lo, &b.hi) == 1, || format!("box {i} does not hold exactly one root"))?;
        if i > 0 {
            check(cert.root_boxes[i - 1].hi < b.lo, || format!("boxes {} and {i} overlap", i - 1))?;
        }
    }
    Ok(())
}

fn check_pfloor(cert: &Certificate) -> Result<(), VerifyError> {
    let d = cert
        .pfloor
        .as_ref()
        .ok_or_else(|| VerifyError("pfloor certificate without data".into()))?;
    check(cert.target.as_ref() == Some(&d.bound), || "target is not the bound".into())?;
    let z_power = SurdPoly::monomial(SurdExpr::one(), d.stripped);
    check(d.original.shift(&rational::int(-1)) == &d.lifted * &z_power, || {
        "lifted polynomial does not match the shifted original".into()
    })?;
    let n = d.lifted.coeffs().len().max(d.bound.coeffs().len());
    for i in 0..n {
        let c = d.lifted.coeff(i);
        let q = SurdExpr::from_rational(d.bound.coeff(i));
        let diff = &c - &q;
        let ok = match diff.sign() {
            1 => true,
            0 => c.is_rational() && d.exempt.contains(&i),
            _ => false,
        };
        check(ok, || format!("coefficient {i} of the bound is not below the original"))?;
    }
    check(cert.lo >= Rational::zero(), || "z-range must start at or above 0".into())
}

/// Re-checks a proof against the polynomial it claims to decide.
pub fn verify_proof(proof: &Proof, t: &TrigPoly) -> Result<(), VerifyError> {
    let cov = cover(&proof.interval, &proof.cover_width);
    check(cov == proof.covering, || "covering does not recompute".into())?;
    let cert = &proof.certificate;
    let e = t.expand();
    let one = Rational::one();
    let (lo, hi) = if cert.kind == CertKind::Pfloor {
        (cov.outer.lo() + &one, cov.outer.hi() + &one)
    } else {
        (cov.outer.lo().clone(), cov.outer.hi().clone())
    };
    check(cert.lo == lo && cert.hi == hi, || "certificate range is not the covering".into())?;
    let rational_of = |p: &SurdPoly| p.to_rational();
    let linked = match cert.kind {
        CertKind::Cp | CertKind::Poly => {
            t.kind() != TrigKind::Sine
                && t.kind() != TrigKind::Mixed
                && rational_of(&e.cos_part).as_ref() == cert.target.as_ref()
        }
        CertKind::Sp => t.kind() == TrigKind::Sine && rational_of(&e.sin_part).as_ref() == cert.target.as_ref(),
        CertKind::Mixed => cert.mixed.as_ref().is_some_and(|m| {
            rational_of(&e.sin_part).as_ref() == Some(&m.a)
                && rational_of(&e.cos_part).as_ref() == Some(&m.b)
        }),
        CertKind::Pfloor => cert.pfloor.as_ref().is_some_and(|d| {
            let part = if t.kind() == TrigKind::Sine { &e.sin_part } else { &e.cos_part };
            &d.original == part
        }),
    };
    check(linked, || "certificate does not belong to this polynomial".into())?;

    // the certificate's own verdict, before settling against the covering
    let own = match (&proof.verdict.status, cert.kind) {
        (Status::Inconclusive, k) if k != CertKind::Pfloor => {
            let w = scan::witness(&cert.samples);
            match w {
                Some(w) => Verdict::negative(w),
                None => Verdict::nonnegative(),
            }
        }
        _ => proof.verdict.clone(),
    };
    verify_certificate(cert, &own)?;
    if proof.verdict.status == Status::Negative && !cov.exact {
        let w = proof.verdict.witness.as_ref().expect("checked above");
        check(cov.inner.as_ref().is_some_and(|i| i.contains(w)), || {
            "witness outside the inner covering".into()
        })?;
    }
    Ok(())
}
