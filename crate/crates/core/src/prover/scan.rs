//! Gap sampling: isolate the roots of a polynomial that contains every zero
//! of the decided function, then take one exact sign per root-free gap.

use num_traits::Signed;

use super::Sample;
use crate::error::PolyError;
use crate::exactnum::rational::{self, Rational};
use crate::poly::Poly;
use crate::sturm::{RootBox, SturmChain};

pub(crate) struct Scan {
    pub chain: Vec<Poly>,
    pub endpoint_signs: Vec<Vec<i8>>,
    pub root_boxes: Vec<RootBox>,
    pub samples: Vec<Sample>,
}

/// Boxes for the roots of `roots` in `(lo, hi]`, each with `box.lo > lo`,
/// and `box.hi < hi` unless the root sits at `hi`.
pub(crate) fn root_boxes(
    chain: &SturmChain,
    lo: &Rational,
    hi: &Rational,
    width: &Rational,
) -> Vec<RootBox> {
    let mut boxes = chain.isolate(lo, hi, width);
    let head = &chain.polys()[0];
    let root_at_hi = head.sign_at(hi) == 0;
    if let Some(first) = boxes.first_mut() {
        while &first.lo == lo {
            *first = chain.refine(first);
        }
    }
    if !root_at_hi {
        if let Some(last) = boxes.last_mut() {
            while &last.hi == hi {
                *last = chain.refine(last);
            }
        }
    }
    boxes
}

/// Points at `lo`, one rational midpoint per open gap, and `hi`.
pub(crate) fn sample_points(lo: &Rational, hi: &Rational, boxes: &[RootBox]) -> Vec<Rational> {
    let mut pts = vec![lo.clone()];
    let mut prev = lo.clone();
    for b in boxes {
        if prev < b.lo {
            pts.push(rational::midpoint(&prev, &b.lo));
        }
        prev = b.hi.clone();
    }
    if &prev < hi {
        pts.push(rational::midpoint(&prev, hi));
    }
    pts.push(hi.clone());
    pts
}

/// Runs the scan; `roots` must vanish wherever the decided function does.
pub(crate) fn scan(
    roots: &Poly,
    lo: &Rational,
    hi: &Rational,
    width: &Rational,
    sign: impl Fn(&Rational) -> i8,
) -> Result<Scan, PolyError> {
    if lo >= hi {
        return Err(PolyError::EmptyInterval);
    }
    if !width.is_positive() {
        return Err(PolyError::NonPositiveWidth);
    }
    let (chain, endpoint_signs, root_boxes) = match roots.degree() {
        None => return Err(PolyError::ZeroPolynomial),
        Some(0) => (Vec::new(), vec![Vec::new(), Vec::new()], Vec::new()),
        Some(_) => {
            let chain = SturmChain::new(roots)?;
            let boxes = root_boxes(&chain, lo, hi, width);
            let ends = vec![chain.signs_at(lo), chain.signs_at(hi)];
            (chain.into_polys(), ends, boxes)
        }
    };
    let samples = sample_points(lo, hi, &root_boxes)
        .into_iter()
        .map(|point| Sample {
            sign: sign(&point),
            point,
        })
        .collect();
    Ok(Scan {
        chain,
        endpoint_signs,
        root_boxes,
        samples,
    })
}

/// First negative sample, preferring interior points over the ends.
pub(crate) fn witness(samples: &[Sample]) -> Option<Rational> {
    let n = samples.len();
    samples
        .iter()
        .enumerate()
        .filter(|(i, s)| s.sign < 0 && *i != 0 && *i + 1 != n)
        .chain(samples.iter().enumerate().filter(|(_, s)| s.sign < 0))
        .map(|(_, s)| s.point.clone())
        .next()
}
