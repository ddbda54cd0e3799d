//! Resultants, discriminants, and the discriminant of an affine family
//! `X0(y) + a·X1(y)` as a polynomial in `a`.

use num_traits::{One, Zero};

use super::Poly;
use crate::error::PolyError;
use crate::exactnum::{int, Rational};

/// Sylvester-determinant resultant `res(p, q)`, computed by exact
/// fraction Gaussian elimination.
pub fn resultant(p: &Poly, q: &Poly) -> Rational {
    let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
        return Rational::zero();
    };
    let size = m + n;
    if size == 0 {
        return Rational::one();
    }
    let mut a = vec![vec![Rational::zero(); size]; size];
    // highest coefficient first along each row
    for i in 0..n {
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            a[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in q.coeffs().iter().rev().enumerate() {
            a[n + i][i + j] = c.clone();
        }
    }
    determinant(a)
}

fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        let pivot_row = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pv;
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * p;
            }
        }
    }
    det
}

/// `disc(p) = (-1)^(n(n-1)/2) · res(p, p') / lc(p)` for `deg p = n >= 1`.
pub fn discriminant(p: &Poly) -> Result<Rational, PolyError> {
    let n = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    if n == 0 {
        return Err(PolyError::ConstantPolynomial);
    }
    let r = resultant(p, &p.derivative()) / p.lead().unwrap();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

/// `D(a) = disc_y(X0(y) + a·X1(y))` by evaluation at `2n+1` rational
/// parameter values followed by Lagrange interpolation. Parameter values
/// at which the `y`-degree drops are skipped.
pub fn disc_affine_family(x0: &Poly, x1: &Poly) -> Result<Poly, PolyError> {
    let n = x0
        .degree()
        .into_iter()
        .chain(x1.degree())
        .max()
        .ok_or(PolyError::ZeroPolynomial)?;
    if n == 0 {
        return Err(PolyError::ConstantPolynomial);
    }
    let needed = 2 * n + 1;
    let mut xs = Vec::with_capacity(needed);
    let mut ys = Vec::with_capacity(needed);
    // 0, 1, -1, 2, -2, ...; at most one value can drop the degree
    let mut k: i64 = 0;
    while xs.len() < needed {
        if k > 4 * needed as i64 + 8 {
            return Err(PolyError::TooFewSamples {
                found: xs.len(),
                needed,
            });
        }
        let a = int(if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) });
        k += 1;
        let fam = x0 + &x1.scale(&a);
        if fam.degree() != Some(n) {
            continue;
        }
        ys.push(discriminant(&fam)?);
        xs.push(a);
    }
    Ok(interpolate(&xs, &ys))
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
pub(crate) fn interpolate(xs: &[Rational], ys: &[Rational]) -> Poly {
    let mut out = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut denom = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly::new(vec![-xj, Rational::one()]);
                denom *= xi - xj;
            }
        }
        out = &out + &basis.scale(&(yi / denom));
    }
    out
}
