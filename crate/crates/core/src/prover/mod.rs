//! Nonnegativity decisions for polynomials on y-intervals and for
//! trigonometric polynomials on x-intervals, with exact certificates.
//!
//! Every decision is a gap scan: the roots of a polynomial that vanishes
//! wherever the decided function does are isolated, and one exact sign is
//! taken at each end and inside each root-free gap. The function cannot
//! change sign inside a gap, so the samples settle nonnegativity.

mod scan;
mod surd;
mod verify;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{PolyError, ProverError};
use crate::exactnum::rational::{self, Rational};
use crate::exactnum::serde_rational;
use crate::poly::{Poly, SurdPoly};
use crate::sturm::RootBox;
use crate::trig::{cover, default_cover_width, Covering, TrigKind, TrigPoly, XInterval, YInterval};

pub use surd::{decide_surd, lower_bound, pfloor};
pub use crate::error::VerifyError;
pub use verify::{verify_certificate, verify_proof};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Nonnegative,
    Negative,
    Inconclusive,
}

impl Status {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Nonnegative => 0,
            Status::Negative => 1,
            Status::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Nonnegative => "nonnegative",
            Status::Negative => "negative",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of a decision. `witness` is a y-point with a certified negative
/// value and is present exactly when the status is `Negative`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(with = "serde_rational::option", default)]
    pub witness: Option<Rational>,
}

impl Verdict {
    pub fn nonnegative() -> Self {
        Self {
            status: Status::Nonnegative,
            witness: None,
        }
    }

    pub fn negative(witness: Rational) -> Self {
        Self {
            status: Status::Negative,
            witness: Some(witness),
        }
    }

    pub fn inconclusive() -> Self {
        Self {
            status: Status::Inconclusive,
            witness: None,
        }
    }

    fn from_samples(samples: &[Sample]) -> Self {
        match scan::witness(samples) {
            Some(w) => Self::negative(w),
            None => Self::nonnegative(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    /// A rational polynomial on a y-interval.
    Poly,
    /// Cosine polynomial: the constant-and-cosine part `B`.
    Cp,
    /// Sine polynomial: the cofactor `A` of `sin x`.
    Sp,
    /// Mixed: `B + A·sqrt(1 - y²)` through the squared resolvent.
    Mixed,
    /// Irrational coefficients: a rational lower bound in `z = y + 1`.
    Pfloor,
}

/// An exact sign at a rational point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    #[serde(with = "serde_rational")]
    pub point: Rational,
    pub sign: i8,
}

/// The two parts of a mixed expansion, `t = B(y) + sin(x)·A(y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedParts {
    pub a: Poly,
    pub b: Poly,
}

/// Data of the lower-bound step for irrational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfloorData {
    pub m: u32,
    /// The decided surd polynomial in `y`.
    pub original: SurdPoly,
    /// How many factors `z` were divided out after shifting.
    pub stripped: usize,
    /// `original(z - 1) / z^stripped`.
    pub lifted: SurdPoly,
    /// Rational lower bound, coefficientwise below `lifted`.
    pub bound: Poly,
    /// Degrees whose rational coefficient was kept exactly (zero difference).
    pub exempt: Vec<usize>,
}

/// Exact audit trail of one decision. The sign claims refer to the range
/// `[lo, hi]` of the variable of `roots_of` (`y`, or `z` for `Pfloor`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertKind,
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
    /// Polynomial whose sign is decided; absent for `Mixed`.
    pub target: Option<Poly>,
    pub mixed: Option<MixedParts>,
    /// Polynomial whose roots were isolated.
    pub roots_of: Poly,
    pub chain: Vec<Poly>,
    /// Chain signs at `lo` and at `hi`.
    pub endpoint_signs: Vec<Vec<i8>>,
    pub root_boxes: Vec<RootBox>,
    pub samples: Vec<Sample>,
    pub pfloor: Option<PfloorData>,
    pub notes: Vec<String>,
}

impl Certificate {
    /// Sign changes of the chain at `lo` and at `hi`.
    pub fn endpoint_variations(&self) -> (usize, usize) {
        let v = |i: usize| {
            self.endpoint_signs
                .get(i)
                .map(|s| crate::sturm::sign_changes_of(s))
                .unwrap_or(0)
        };
        (v(0), v(1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProveOptions {
    /// Fixed pfloor precision; escalates from 2 to 12 when `None`.
    pub m: Option<u32>,
    /// Maximal width of root boxes.
    pub box_width: Rational,
    /// Width of the enclosures of irrational cosine endpoints.
    pub cover_width: Rational,
}

impl Default for ProveOptions {
    fn default() -> Self {
        Self {
            m: None,
            box_width: default_box_width(),
            cover_width: default_cover_width(),
        }
    }
}

/// `2^-20`.
pub fn default_box_width() -> Rational {
    Rational::new(BigInt::one(), rational::pow2(20))
}

/// Full result of deciding a trigonometric polynomial on an x-interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proof {
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub interval: XInterval,
    pub covering: Covering,
    #[serde(with = "serde_rational")]
    pub cover_width: Rational,
    /// pfloor precisions tried, in order.
    pub attempts: Vec<u32>,
}

/// Complete decision of `p >= 0` on `[lo, hi]`. Never inconclusive.
pub fn decide_poly_range(
    p: &Poly,
    lo: &Rational,
    hi: &Rational,
    width: &Rational,
) -> Result<(Verdict, Certificate), PolyError> {
    if lo >= hi {
        return Err(PolyError::EmptyInterval);
    }
    if p.is_zero() {
        let samples = [lo, hi]
            .iter()
            .map(|&x| Sample {
                point: x.clone(),
                sign: 0,
            })
            .collect();
        let cert = Certificate {
            kind: CertKind::Poly,
            lo: lo.clone(),
            hi: hi.clone(),
            target: Some(Poly::zero()),
            mixed: None,
            roots_of: Poly::zero(),
            chain: Vec::new(),
            endpoint_signs: vec![Vec::new(), Vec::new()],
            root_boxes: Vec::new(),
            samples,
            pfloor: None,
            notes: vec!["identically zero".into()],
        };
        return Ok((Verdict::nonnegative(), cert));
    }
    let sc = scan::scan(p, lo, hi, width, |x| p.sign_at(x))?;
    let verdict = Verdict::from_samples(&sc.samples);
    let cert = Certificate {
        kind: CertKind::Poly,
        lo: lo.clone(),
        hi: hi.clone(),
        target: Some(p.clone()),
        mixed: None,
        roots_of: p.clone(),
        chain: sc.chain,
        endpoint_signs: sc.endpoint_signs,
        root_boxes: sc.root_boxes,
        samples: sc.samples,
        pfloor: None,
        notes: Vec::new(),
    };
    Ok((verdict, cert))
}

/// Complete decision of `p >= 0` on a y-interval, with boxes of width `2^-20`.
pub fn decide_poly_nonneg(p: &Poly, iv: &YInterval) -> (Verdict, Certificate) {
    decide_poly_range(p, iv.lo(), iv.hi(), &default_box_width())
        .expect("valid interval and width")
}

/// Exact sign of `B(y) + A(y)·sqrt(1 - y²)` for `-1 <= y <= 1`.
pub fn exact_sign_mixed(a: &Poly, b: &Poly, y: &Rational) -> i8 {
    let bv = b.eval(y);
    let sb = rational::sign(&bv);
    let s = Rational::one() - y * y;
    if s.is_zero() {
        return sb;
    }
    let av = a.eval(y);
    let sa = rational::sign(&av);
    if sa == 0 || sa == sb {
        return if sa == 0 { sb } else { sa };
    }
    if sb == 0 {
        return sa;
    }
    // opposite signs: the larger magnitude wins
    let lhs = &av * &av * &s;
    let rhs = &bv * &bv;
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => sa,
        std::cmp::Ordering::Less => sb,
        std::cmp::Ordering::Equal => 0,
    }
}

/// `A²·(1 - y²) - B²`, whose real roots contain those of `B + A·sqrt(1 - y²)`.
pub fn resolvent(a: &Poly, b: &Poly) -> Poly {
    let one_minus = Poly::from_ints(&[1, 0, -1]);
    &(&(a * a) * &one_minus) - &(b * b)
}

fn covering(iv: &XInterval, opts: &ProveOptions) -> Covering {
    cover(iv, &opts.cover_width)
}

/// Turns a verdict on the outer y-covering into one about the x-interval.
/// A negative witness counts only inside the inner covering.
fn settle(mut verdict: Verdict, cert: &mut Certificate, cov: &Covering) -> Verdict {
    if cov.exact || verdict.status != Status::Negative {
        if !cov.exact && verdict.status == Status::Nonnegative {
            cert.notes.push("decided on an outer covering of the y-interval".into());
        }
        return verdict;
    }
    let w = verdict.witness.as_ref().expect("negative verdicts carry a witness");
    let inside = cov.inner.as_ref().is_some_and(|i| i.contains(w));
    if !inside {
        cert.notes
            .push(format!("negative witness {w} lies outside the inner covering"));
        verdict = Verdict::inconclusive();
    }
    verdict
}

fn rational_parts(t: &TrigPoly) -> Result<(Poly, Poly), ProverError> {
    t.expand().rational().ok_or(ProverError::IrrationalCoefficients)
}

/// Pure cosine or pure sine polynomial with rational coefficients.
pub fn decide_cp_sp(
    t: &TrigPoly,
    iv: &XInterval,
    opts: &ProveOptions,
) -> Result<Proof, ProverError> {
    let kind = t.kind();
    if kind == TrigKind::Mixed {
        return Err(ProverError::Mixed);
    }
    let (b, a) = rational_parts(t)?;
    let cov = covering(iv, opts);
    let (lo, hi) = (cov.outer.lo(), cov.outer.hi());
    let (p, cert_kind) = if kind == TrigKind::Sine { (a, CertKind::Sp) } else { (b, CertKind::Cp) };
    let (verdict, mut cert) = decide_poly_range(&p, lo, hi, &opts.box_width)?;
    cert.kind = cert_kind;
    if cert_kind == CertKind::Sp {
        cert.notes
            .push("sin(x) >= 0 on [0, pi]; the sine polynomial vanishes at x = 0 and x = pi".into());
    }
    let verdict = settle(verdict, &mut cert, &cov);
    Ok(Proof {
        verdict,
        certificate: cert,
        interval: iv.clone(),
        covering: cov,
        cover_width: opts.cover_width.clone(),
        attempts: Vec::new(),
    })
}

/// Mixed sine/cosine polynomial with rational coefficients.
pub fn decide_mixed(
    t: &TrigPoly,
    iv: &XInterval,
    opts: &ProveOptions,
) -> Result<Proof, ProverError> {
    let (b, a) = rational_parts(t)?;
    let cov = covering(iv, opts);
    let (lo, hi) = (cov.outer.lo().clone(), cov.outer.hi().clone());
    let x = resolvent(&a, &b);
    if x.is_zero() {
        // A²(1 - y²) = B² forces A = B = 0
        return decide_cp_sp(&TrigPoly::zero(), iv, opts);
    }
    let sc = scan::scan(&x, &lo, &hi, &opts.box_width, |y| exact_sign_mixed(&a, &b, y))?;
    let verdict = Verdict::from_samples(&sc.samples);
    let mut cert = Certificate {
        kind: CertKind::Mixed,
        lo,
        hi,
        target: None,
        mixed: Some(MixedParts { a, b }),
        roots_of: x,
        chain: sc.chain,
        endpoint_signs: sc.endpoint_signs,
        root_boxes: sc.root_boxes,
        samples: sc.samples,
        pfloor: None,
        notes: Vec::new(),
    };
    let verdict = settle(verdict, &mut cert, &cov);
    Ok(Proof {
        verdict,
        certificate: cert,
        interval: iv.clone(),
        covering: cov,
        cover_width: opts.cover_width.clone(),
        attempts: Vec::new(),
    })
}

/// Routes to the cosine/sine, mixed or irrational-coefficient decision.
pub fn decide_trig(
    t: &TrigPoly,
    iv: &XInterval,
    opts: &ProveOptions,
) -> Result<Proof, ProverError> {
    match (t.kind(), t.is_rational()) {
        (TrigKind::Mixed, true) => decide_mixed(t, iv, opts),
        (TrigKind::Mixed, false) => Err(ProverError::IrrationalMixed),
        (_, true) => decide_cp_sp(t, iv, opts),
        (_, false) => decide_surd(t, iv, opts),
    }
}
