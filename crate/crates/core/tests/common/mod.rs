//! Oracles that share no code with the library's decision procedures.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub type Q = BigRational;

pub fn r(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Horner evaluation, coefficients low to high.
pub fn eval(c: &[Q], x: &Q) -> Q {
    c.iter().rev().fold(Q::zero(), |acc, k| acc * x + k)
}

fn trim(mut c: Vec<Q>) -> Vec<Q> {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

fn deriv(c: &[Q]) -> Vec<Q> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, k)| k * Q::from_integer(BigInt::from(i)))
        .collect()
}

/// Schoolbook remainder of `a` by `b`.
fn rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut a = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lb = b.last().expect("nonzero divisor").clone();
    while a.len() >= b.len() && !a.is_empty() {
        let shift = a.len() - b.len();
        let f = a.last().unwrap() / &lb;
        for (i, bc) in b.iter().enumerate() {
            a[i + shift] = &a[i + shift] - &f * bc;
        }
        a = trim(a);
    }
    a
}

/// p, p', then negated remainders until zero.
pub fn naive_sturm(p: &[Q]) -> Vec<Vec<Q>> {
    let mut out = vec![trim(p.to_vec()), trim(deriv(p))];
    loop {
        let n = out.len();
        let r = rem(&out[n - 2], &out[n - 1]);
        if r.is_empty() {
            return out;
        }
        out.push(r.into_iter().map(|x| -x).collect());
    }
}

pub fn variations(vals: &[Q]) -> usize {
    let s: Vec<i32> = vals
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| if v.is_positive() { 1 } else { -1 })
        .collect();
    s.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Coefficients of `p(m + t)` in `t`.
fn taylor_at(c: &[Q], m: &Q) -> Vec<Q> {
    let mut a = c.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &a[j + 1] * m;
            a[j] = &a[j] + t;
        }
    }
    a
}

/// `Some(true)` when `p >= 0` is proven on `[lo, hi]` by Taylor bounds,
/// `Some(false)` when a negative value is found, `None` when undecided.
pub fn taylor_nonneg(c: &[Q], lo: &Q, hi: &Q, depth: u32) -> Option<bool> {
    if c.iter().all(|x| x.is_zero()) {
        return Some(true);
    }
    if eval(c, lo).is_negative() || eval(c, hi).is_negative() {
        return Some(false);
    }
    let mut stack = vec![(lo.clone(), hi.clone(), 0u32)];
    let two = Q::from_integer(2.into());
    let mut undecided = false;
    while let Some((a, b, d)) = stack.pop() {
        let m = (&a + &b) / &two;
        let rad = (&b - &a) / &two;
        let t = taylor_at(c, &m);
        if t[0].is_negative() {
            return Some(false);
        }
        let mut bound = t[0].clone();
        let mut pw = Q::one();
        for k in &t[1..] {
            pw *= &rad;
            bound -= k.abs() * &pw;
        }
        if !bound.is_negative() {
            continue;
        }
        if d >= depth {
            undecided = true;
            continue;
        }
        stack.push((a, m.clone(), d + 1));
        stack.push((m, b, d + 1));
    }
    if undecided {
        None
    } else {
        Some(true)
    }
}

/// First negative value on a uniform grid of `n + 1` points.
pub fn grid_negative(c: &[Q], lo: &Q, hi: &Q, n: i64) -> Option<Q> {
    (0..=n).find_map(|i| {
        let x = lo + (hi - lo) * r(i, n);
        eval(c, &x).is_negative().then_some(x)
    })
}

/// `lead · Π (y - root)^mult · Π (y² + s)` with `s > 0`.
#[derive(Clone, Debug)]
pub struct Planted {
    pub lead: Q,
    pub roots: Vec<(Q, u32)>,
    pub quads: Vec<Q>,
}

impl Planted {
    pub fn random(rng: &mut impl Rng, max_degree: usize) -> Self {
        let mut deg = 0;
        let mut roots = Vec::new();
        let mut quads = Vec::new();
        let target = rng.gen_range(1..=max_degree);
        while deg < target {
            if target - deg >= 2 && rng.gen_bool(0.25) {
                quads.push(r(rng.gen_range(1..=20), rng.gen_range(1..=10)));
                deg += 2;
            } else {
                let mult = if target - deg >= 2 && rng.gen_bool(0.4) { 2 } else { 1 };
                roots.push((r(rng.gen_range(-12..=12), rng.gen_range(1..=8)), mult));
                deg += mult as usize;
            }
        }
        let lead = r(rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=4));
        Planted { lead, roots, quads }
    }

    pub fn coeffs(&self) -> Vec<Q> {
        let mul = |a: &[Q], b: &[Q]| {
            let mut out = vec![Q::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        };
        let mut p = vec![self.lead.clone()];
        for (root, m) in &self.roots {
            for _ in 0..*m {
                p = mul(&p, &[-root.clone(), Q::one()]);
            }
        }
        for s in &self.quads {
            p = mul(&p, &[s.clone(), Q::zero(), Q::one()]);
        }
        p
    }

    /// Sign from the factored form.
    pub fn sign_at(&self, y: &Q) -> i32 {
        let mut s = if self.lead.is_positive() { 1 } else { -1 };
        for (root, m) in &self.roots {
            let d = y - root;
            if d.is_zero() {
                return 0;
            }
            if d.is_negative() && m % 2 == 1 {
                s = -s;
            }
        }
        s
    }

    /// Nonnegativity on `[lo, hi]` from the known roots: the sign is constant
    /// between consecutive roots, so ends and gap midpoints decide it.
    pub fn nonneg_on(&self, lo: &Q, hi: &Q) -> bool {
        let mut pts: Vec<Q> = self
            .roots
            .iter()
            .map(|(x, _)| x.clone())
            .filter(|x| lo < x && x < hi)
            .collect();
        pts.sort();
        pts.dedup();
        let mut probes = vec![lo.clone(), hi.clone()];
        let mut prev = lo.clone();
        for p in pts.iter().chain(std::iter::once(hi)) {
            probes.push((&prev + p) / Q::from_integer(2.into()));
            prev = p.clone();
        }
        probes.iter().all(|y| self.sign_at(y) >= 0)
    }
}

/// Direct float evaluation of `a0 + Σ a_k cos kx + b_k sin kx`.
pub fn trig_direct(a0: f64, cos: &[f64], sin: &[f64], x: f64) -> f64 {
    let mut s = a0;
    for (i, c) in cos.iter().enumerate() {
        s += c * ((i + 1) as f64 * x).cos();
    }
    for (i, c) in sin.iter().enumerate() {
        s += c * ((i + 1) as f64 * x).sin();
    }
    s
}

pub fn to_f64(q: &Q) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}
