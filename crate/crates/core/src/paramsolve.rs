//! Maximal parameter intervals for affine families `t_a = base + a·direction`.
//!
//! The nonnegative parameters form a closed interval. Its ends are among the
//! breakpoints: roots in `a` of the family at the two y-ends, roots of the
//! discriminant in `y`, and values where the degree in `y` drops. One
//! rational sample per cell between breakpoints decides each cell.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::ParamError;
use crate::exactnum::rational::{self, Rational};
use crate::exactnum::serde_rational;
use crate::poly::{disc_affine_family, Poly};
use crate::prover::{decide_poly_nonneg, Status};
use crate::sturm::{RootBox, SturmChain};
use crate::trig::{TrigKind, TrigPoly, YInterval};

/// `base + a·direction`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamFamily {
    pub base: TrigPoly,
    pub direction: TrigPoly,
}

/// Expansion `X(y; a) = X0(y) + a·X1(y)` of a pure sine or cosine family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffinePoly {
    pub kind: TrigKind,
    pub x0: Poly,
    pub x1: Poly,
}

impl AffinePoly {
    pub fn at(&self, a: &Rational) -> Poly {
        &self.x0 + &self.x1.scale(a)
    }
}

impl ParamFamily {
    pub fn new(base: TrigPoly, direction: TrigPoly) -> Self {
        Self { base, direction }
    }

    pub fn at(&self, a: &Rational) -> TrigPoly {
        &self.base + &self.direction.scale(&crate::exactnum::SurdExpr::from_rational(a.clone()))
    }

    pub fn affine(&self) -> Result<AffinePoly, ParamError> {
        if self.direction.is_zero() {
            return Err(ParamError::ConstantFamily);
        }
        if !self.base.is_rational() || !self.direction.is_rational() {
            return Err(ParamError::UnsupportedFamily);
        }
        let kind = match (self.base.kind(), self.direction.kind()) {
            (TrigKind::Sine | TrigKind::Zero, TrigKind::Sine) => TrigKind::Sine,
            (TrigKind::Cosine | TrigKind::Zero, TrigKind::Cosine) => TrigKind::Cosine,
            _ => return Err(ParamError::UnsupportedFamily),
        };
        let pick = |t: &TrigPoly| {
            let (b, a) = t.expand().rational().expect("rational coefficients");
            if kind == TrigKind::Sine {
                a
            } else {
                b
            }
        };
        let x1 = pick(&self.direction);
        if x1.is_zero() {
            return Err(ParamError::ConstantFamily);
        }
        Ok(AffinePoly {
            kind,
            x0: pick(&self.base),
            x1,
        })
    }
}

/// Why a parameter value is a breakpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointKind {
    /// The family vanishes at an end of the y-interval.
    EndpointConstraint,
    /// The discriminant in `y` vanishes.
    Discriminant,
    /// The degree in `y` drops.
    DegreeDrop,
    /// No finite end.
    Unbounded,
}

/// A real parameter value: exact, or a root of `defining` isolated in `(lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AlgebraicEndpoint {
    Exact {
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    Algebraic {
        defining: Poly,
        #[serde(with = "serde_rational")]
        lo: Rational,
        #[serde(with = "serde_rational")]
        hi: Rational,
    },
}

impl AlgebraicEndpoint {
    /// Lower and upper rational bounds.
    pub fn bounds(&self) -> (&Rational, &Rational) {
        match self {
            Self::Exact { value } => (value, value),
            Self::Algebraic { lo, hi, .. } => (lo, hi),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.bounds();
        rational::to_f64(&rational::midpoint(lo, hi))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Self::Exact { value } => Some(value),
            Self::Algebraic { .. } => None,
        }
    }

    /// Decimal rendering; algebraic values show the digits their box fixes.
    pub fn to_decimal(&self) -> String {
        match self {
            Self::Exact { value } if value.is_integer() => value.to_string(),
            Self::Exact { value } => format!("{value} ({})", rational::to_decimal(value, 10)),
            Self::Algebraic { lo, hi, .. } => {
                let w = hi - lo;
                let digits = rational::bits_for(&w) * 3 / 10;
                format!("{}...", rational::to_decimal(lo, digits.max(1)))
            }
        }
    }
}

impl fmt::Display for AlgebraicEndpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact { value } => write!(f, "{value}"),
            Self::Algebraic { lo, hi, .. } => write!(
                f,
                "{} in [{}, {}]",
                self.to_decimal(),
                rational::to_decimal(lo, 12),
                rational::to_decimal(hi, 12)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Breakpoint {
    pub value: AlgebraicEndpoint,
    pub kinds: Vec<EndpointKind>,
}

/// One tested cell of the parameter line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellTest {
    #[serde(with = "serde_rational")]
    pub sample: Rational,
    pub status: Status,
}

/// Closed maximal interval; `None` ends are unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamInterval {
    pub lo: Option<AlgebraicEndpoint>,
    pub hi: Option<AlgebraicEndpoint>,
    pub lo_kind: EndpointKind,
    pub hi_kind: EndpointKind,
    pub breakpoints: Vec<Breakpoint>,
    pub cells: Vec<CellTest>,
}

impl ParamInterval {
    /// True when `a` lies in the interval (algebraic ends by their boxes,
    /// so values inside an end box are undecided and reported as `None`).
    pub fn contains(&self, a: &Rational) -> Option<bool> {
        let left = match &self.lo {
            None => Some(true),
            Some(e) => {
                let (l, h) = e.bounds();
                if a >= h {
                    Some(true)
                } else if a < l {
                    Some(false)
                } else {
                    None
                }
            }
        };
        let right = match &self.hi {
            None => Some(true),
            Some(e) => {
                let (l, h) = e.bounds();
                if a <= l {
                    Some(true)
                } else if a > h {
                    Some(false)
                } else {
                    None
                }
            }
        };
        match (left, right) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        }
    }
}

impl fmt::Display for ParamInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |e: &Option<AlgebraicEndpoint>, inf: &str| match e {
            None => inf.to_string(),
            Some(e) => e.to_decimal(),
        };
        write!(f, "[{}, {}]", end(&self.lo, "-inf"), end(&self.hi, "+inf"))
    }
}

/// Width of the boxes around irrational breakpoints.
pub fn breakpoint_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u64.pow(10)))
}

enum Raw {
    Exact(Rational, EndpointKind),
    Box(RootBox),
}

/// Sorted breakpoints with pairwise separated rational bounds.
pub fn breakpoints(f: &ParamFamily, iv: &YInterval) -> Result<Vec<Breakpoint>, ParamError> {
    let fam = f.affine()?;
    breakpoints_of(&fam, iv)
}

fn breakpoints_of(fam: &AffinePoly, iv: &YInterval) -> Result<Vec<Breakpoint>, ParamError> {
    let mut raw = Vec::new();
    for y in [iv.lo(), iv.hi()] {
        let c1 = fam.x1.eval(y);
        if !c1.is_zero() {
            raw.push(Raw::Exact(-fam.x0.eval(y) / c1, EndpointKind::EndpointConstraint));
        }
    }
    let n = fam.x0.degree().max(fam.x1.degree()).unwrap_or(0);
    let (l0, l1) = (fam.x0.coeff(n), fam.x1.coeff(n));
    if !l1.is_zero() {
        raw.push(Raw::Exact(-l0 / l1, EndpointKind::DegreeDrop));
    }
    let disc = disc_affine_family(&fam.x0, &fam.x1)?;
    if disc.is_zero() {
        return Err(ParamError::DegenerateDiscriminant);
    }
    let mut chain = None;
    if disc.degree().is_some_and(|d| d > 0) {
        let c = SturmChain::new(&disc)?;
        let b = disc.root_bound();
        for bx in c.isolate(&-&b, &b, &breakpoint_width()) {
            if disc.sign_at(&bx.hi) == 0 {
                raw.push(Raw::Exact(bx.hi.clone(), EndpointKind::Discriminant));
            } else {
                raw.push(Raw::Box(bx));
            }
        }
        chain = Some(c);
    }
    Ok(merge(raw, &disc, chain.as_ref()))
}

fn merge(raw: Vec<Raw>, disc: &Poly, chain: Option<&SturmChain>) -> Vec<Breakpoint> {
    let mut exact: Vec<(Rational, Vec<EndpointKind>)> = Vec::new();
    let mut boxes = Vec::new();
    for r in raw {
        match r {
            Raw::Exact(v, k) => match exact.iter_mut().find(|(e, _)| *e == v) {
                Some((_, ks)) => ks.push(k),
                None => exact.push((v, vec![k])),
            },
            Raw::Box(b) => boxes.push(b),
        }
    }
    // a rational discriminant root inside a box is that box's root
    for (v, ks) in exact.iter_mut() {
        if disc.sign_at(v) == 0 && !ks.contains(&EndpointKind::Discriminant) {
            ks.push(EndpointKind::Discriminant);
        }
    }
    boxes.retain(|b| !exact.iter().any(|(v, _)| disc.sign_at(v) == 0 && b.contains(v)));
    if let Some(chain) = chain {
        for b in boxes.iter_mut() {
            while exact.iter().any(|(v, _)| &b.lo <= v && v <= &b.hi) {
                *b = chain.refine(b);
            }
        }
    }
    let mut out: Vec<Breakpoint> = exact
        .into_iter()
        .map(|(value, mut kinds)| {
            kinds.sort();
            kinds.dedup();
            Breakpoint {
                value: AlgebraicEndpoint::Exact { value },
                kinds,
            }
        })
        .chain(boxes.into_iter().map(|b| Breakpoint {
            value: AlgebraicEndpoint::Algebraic {
                defining: disc.clone(),
                lo: b.lo,
                hi: b.hi,
            },
            kinds: vec![EndpointKind::Discriminant],
        }))
        .collect();
    out.sort_by(|a, b| a.value.bounds().0.cmp(b.value.bounds().0));
    out
}

fn nonneg(fam: &AffinePoly, iv: &YInterval, a: &Rational) -> Status {
    decide_poly_nonneg(&fam.at(a), iv).0.status
}

/// One rational per cell; cell `i` lies between breakpoints `i-1` and `i`.
fn cell_samples(bps: &[Breakpoint], fallback: &Rational) -> Vec<Rational> {
    let one = Rational::one();
    let mut samples = Vec::with_capacity(bps.len() + 1);
    match bps.first() {
        None => samples.push(fallback.clone()),
        Some(b) => samples.push(b.value.bounds().0 - &one),
    }
    for w in bps.windows(2) {
        samples.push(rational::midpoint(w[0].value.bounds().1, w[1].value.bounds().0));
    }
    if let Some(b) = bps.last() {
        samples.push(b.value.bounds().1 + &one);
    }
    samples
}

/// The whole set of parameters keeping the family nonnegative on `iv`,
/// found without a seed. `None` when no cell and no rational breakpoint
/// passes; a single irrational parameter value is not detected.
pub fn nonnegative_set(f: &ParamFamily, iv: &YInterval) -> Result<Option<ParamInterval>, ParamError> {
    let fam = f.affine()?;
    let bps = breakpoints_of(&fam, iv)?;
    let samples = cell_samples(&bps, &Rational::zero());
    let hit = samples.par_iter().find_first(|a| nonneg(&fam, iv, a) == Status::Nonnegative);
    let seed = match hit {
        Some(a) => Some(a.clone()),
        None => bps
            .iter()
            .filter_map(|b| b.value.as_rational())
            .find(|r| nonneg(&fam, iv, r) == Status::Nonnegative)
            .cloned(),
    };
    seed.map(|s| maximal_interval(f, iv, &s)).transpose()
}

/// Maximal closed interval of parameters around `seed` keeping the family
/// nonnegative on `iv`.
pub fn maximal_interval(
    f: &ParamFamily,
    iv: &YInterval,
    seed: &Rational,
) -> Result<ParamInterval, ParamError> {
    let fam = f.affine()?;
    if nonneg(&fam, iv, seed) != Status::Nonnegative {
        return Err(ParamError::SeedFails(seed.to_string()));
    }
    let bps = breakpoints_of(&fam, iv)?;
    let samples = cell_samples(&bps, seed);
    let statuses: Vec<Status> = samples.par_iter().map(|a| nonneg(&fam, iv, a)).collect();
    let pass: Vec<bool> = statuses.iter().map(|s| *s == Status::Nonnegative).collect();

    // cells touching the seed: strictly inside one cell, or both sides of a breakpoint
    let mut seed_cells = Vec::new();
    for i in 0..samples.len() {
        let above_prev = i == 0 || bps[i - 1].value.bounds().1 < seed;
        let below_next = i == bps.len() || seed < bps[i].value.bounds().0;
        if above_prev && below_next {
            seed_cells.push(i);
        }
    }
    if seed_cells.is_empty() {
        // the seed sits on a breakpoint (exact, or inside its box)
        let j = bps
            .iter()
            .position(|b| {
                let (l, h) = b.value.bounds();
                l <= seed && seed <= h
            })
            .expect("seed is in a cell or on a breakpoint");
        seed_cells.extend([j, j + 1].into_iter().filter(|&c| pass[c]));
        if seed_cells.is_empty() {
            let bp = &bps[j];
            return Ok(ParamInterval {
                lo: Some(bp.value.clone()),
                hi: Some(bp.value.clone()),
                lo_kind: bp.kinds[0],
                hi_kind: bp.kinds[0],
                breakpoints: bps.clone(),
                cells: cells(samples, statuses),
            });
        }
    }
    let mut left = *seed_cells.iter().min().unwrap();
    let mut right = *seed_cells.iter().max().unwrap();
    debug_assert!(pass[left] && pass[right]);
    while left > 0 && pass[left - 1] {
        left -= 1;
    }
    while right + 1 < pass.len() && pass[right + 1] {
        right += 1;
    }
    let (lo, lo_kind) = if left == 0 {
        (None, EndpointKind::Unbounded)
    } else {
        let b = &bps[left - 1];
        (Some(b.value.clone()), b.kinds[0])
    };
    let (hi, hi_kind) = if right == bps.len() {
        (None, EndpointKind::Unbounded)
    } else {
        let b = &bps[right];
        (Some(b.value.clone()), b.kinds[0])
    };
    Ok(ParamInterval {
        lo,
        hi,
        lo_kind,
        hi_kind,
        breakpoints: bps,
        cells: cells(samples, statuses),
    })
}

fn cells(samples: Vec<Rational>, statuses: Vec<Status>) -> Vec<CellTest> {
    samples
        .into_iter()
        .zip(statuses)
        .map(|(sample, status)| CellTest { sample, status })
        .collect()
}

/// Rational points spread over `[lo, hi]` of a bounded interval, taking
/// the inner box ends for algebraic values.
pub fn interior_points(iv: &ParamInterval, k: usize) -> Vec<Rational> {
    let (Some(lo), Some(hi)) = (&iv.lo, &iv.hi) else {
        return Vec::new();
    };
    let l = lo.bounds().1.clone();
    let h = hi.bounds().0.clone();
    if l > h {
        return vec![l];
    }
    (0..=k)
        .map(|i| &l + (&h - &l) * Rational::new(BigInt::from(i), BigInt::from(k.max(1))))
        .collect()
}

/// Whether `a` makes the family nonnegative on `iv`.
pub fn is_nonnegative_at(f: &ParamFamily, iv: &YInterval, a: &Rational) -> Result<bool, ParamError> {
    Ok(nonneg(&f.affine()?, iv, a) == Status::Nonnegative)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use crate::trig::{q, sine_poly};

    fn s8() -> ParamFamily {
        ParamFamily::new(sine_poly(&[q(2, 1), q(1, 1)]), sine_poly(&[q(0, 1), q(0, 1), q(1, 1)]))
    }

    fn s9() -> ParamFamily {
        ParamFamily::new(
            sine_poly(&[q(2, 1), q(1, 1), q(0, 1), q(1, 1)]),
            sine_poly(&[q(0, 1), q(0, 1), q(1, 1)]),
        )
    }

    #[test]
    fn s8_affine_form() {
        let fam = s8().affine().unwrap();
        assert_eq!(fam.x0, Poly::from_ints(&[2, 2]));
        assert_eq!(fam.x1, Poly::from_ints(&[-1, 0, 4]));
    }

    #[test]
    fn s8_interval() {
        let r = maximal_interval(&s8(), &YInterval::full(), &int(1)).unwrap();
        assert_eq!(r.lo.as_ref().unwrap().as_rational(), Some(&int(0)));
        assert_eq!(r.lo_kind, EndpointKind::EndpointConstraint);
        assert_eq!(r.hi_kind, EndpointKind::Discriminant);
        let hi = r.hi.unwrap().to_f64();
        assert!((hi - (1.0 + 3f64.sqrt() / 2.0)).abs() < 1e-9);
    }

    #[test]
    fn s9_interval() {
        let fam = s9().affine().unwrap();
        assert_eq!(fam.x0, Poly::from_ints(&[2, -2, 0, 8]));
        assert_eq!(fam.x1, Poly::from_ints(&[-1, 0, 4]));
        let r = maximal_interval(&s9(), &YInterval::full(), &rat(3, 2)).unwrap();
        assert_eq!(r.lo.as_ref().unwrap().as_rational(), Some(&rat(4, 3)));
        let hi = r.hi.unwrap();
        let (l, h) = hi.bounds();
        assert!(h - l <= breakpoint_width());
        assert!((hi.to_f64() - 1.881648914).abs() < 1e-9);
    }

    #[test]
    fn seed_must_pass() {
        assert!(matches!(
            maximal_interval(&s8(), &YInterval::full(), &int(-1)),
            Err(ParamError::SeedFails(_))
        ));
    }

    #[test]
    fn seed_on_breakpoint() {
        let r = maximal_interval(&s8(), &YInterval::full(), &int(0)).unwrap();
        assert_eq!(r.lo.as_ref().unwrap().as_rational(), Some(&int(0)));
        assert!((r.hi.unwrap().to_f64() - 1.8660254).abs() < 1e-6);
    }

    #[test]
    fn unsupported_families() {
        let mixed = ParamFamily::new(
            crate::trig::cosine_poly(q(1, 1), &[]),
            sine_poly(&[q(1, 1)]),
        );
        assert_eq!(mixed.affine().unwrap_err(), ParamError::UnsupportedFamily);
        let flat = ParamFamily::new(sine_poly(&[q(1, 1)]), TrigPoly::zero());
        assert_eq!(flat.affine().unwrap_err(), ParamError::ConstantFamily);
    }

    fn s10() -> ParamFamily {
        ParamFamily::new(
            sine_poly(&[q(36, 1), q(18, 1), q(28, 1), q(21, 1)]),
            sine_poly(&[q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(1, 1)]),
        )
    }

    fn s11() -> ParamFamily {
        ParamFamily::new(
            sine_poly(&[q(4, 1), q(3, 1), q(2, 1), q(1, 1)]),
            sine_poly(&[q(1, 1), q(1, 1), q(1, 1), q(1, 1), q(1, 1)]),
        )
    }

    #[test]
    fn s10_interval() {
        let fam = s10().affine().unwrap();
        assert_eq!(fam.x1, Poly::from_ints(&[1, 0, -12, 0, 16]));
        let r = maximal_interval(&s10(), &YInterval::full(), &int(24)).unwrap();
        assert_eq!(r.lo.as_ref().unwrap().as_rational(), Some(&int(0)));
        assert!((r.hi.unwrap().to_f64() - 31.513).abs() < 1e-3);
    }

    #[test]
    fn s11_intervals() {
        let half = YInterval::new(int(0), int(1)).unwrap();
        let r = maximal_interval(&s11(), &half, &int(0)).unwrap();
        assert_eq!(r.lo.as_ref().unwrap().as_rational(), Some(&rat(-4, 3)));
        assert!((r.hi.unwrap().to_f64() - 28.98537710).abs() < 1e-7);
        let r = maximal_interval(&s11(), &YInterval::full(), &int(1)).unwrap();
        assert_eq!(r.lo.as_ref().unwrap().as_rational(), Some(&int(0)));
        assert!((r.hi.unwrap().to_f64() - 4.1864302648).abs() < 1e-8);
    }

    #[test]
    fn seedless_search() {
        let r = nonnegative_set(&s9(), &YInterval::full()).unwrap().unwrap();
        assert_eq!(r.lo.as_ref().unwrap().as_rational(), Some(&rat(4, 3)));
        // -1 - a sin x is never nonnegative on (0, pi)
        let f = ParamFamily::new(crate::trig::cosine_poly(q(-1, 1), &[]), sine_poly(&[q(1, 1)]));
        assert_eq!(f.affine().unwrap_err(), ParamError::UnsupportedFamily);
        let g = ParamFamily::new(sine_poly(&[q(0, 1), q(1, 1)]), sine_poly(&[q(0, 1), q(0, 1), q(0, 1), q(1, 1)]));
        let none = nonnegative_set(&g, &YInterval::full()).unwrap();
        assert!(none.is_none(), "{none:?}");
    }

    #[test]
    fn containment() {
        let r = maximal_interval(&s8(), &YInterval::full(), &int(1)).unwrap();
        assert_eq!(r.contains(&int(1)), Some(true));
        assert_eq!(r.contains(&int(-1)), Some(false));
        assert_eq!(r.contains(&int(2)), Some(false));
        let _ = r.to_string();
    }
}
