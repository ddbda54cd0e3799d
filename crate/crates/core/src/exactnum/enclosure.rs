use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::rational::{self, Rational};
use super::serde_rational;

/// Closed rational interval `[lo, hi]` known to contain some real value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enclosure {
    #[serde(with = "serde_rational")]
    lo: Rational,
    #[serde(with = "serde_rational")]
    hi: Rational,
}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted enclosure");
        Self { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        Self { lo: v.clone(), hi: v }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn add(&self, o: &Enclosure) -> Enclosure {
        Enclosure::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure::new(-&self.hi, -&self.lo)
    }

    pub fn scale(&self, k: &Rational) -> Enclosure {
        if k.is_negative() {
            Enclosure::new(&self.hi * k, &self.lo * k)
        } else {
            Enclosure::new(&self.lo * k, &self.hi * k)
        }
    }

    pub fn mul(&self, o: &Enclosure) -> Enclosure {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Enclosure::new(lo, hi)
    }

    /// Widens outward to the dyadic grid `2^-bits`, keeping numbers small.
    pub fn round_out(&self, bits: u32) -> Enclosure {
        Enclosure::new(
            rational::round_down(&self.lo, bits),
            rational::round_up(&self.hi, bits),
        )
    }

    /// Square root of a non-negative enclosure (negative parts clamp to 0).
    pub fn sqrt(&self, bits: u32) -> Enclosure {
        let zero = rational::int(0);
        let lo = if self.lo.is_negative() { zero.clone() } else { self.lo.clone() };
        let hi = if self.hi.is_negative() { zero } else { self.hi.clone() };
        let (l, _) = rational::sqrt_bounds(&lo, bits);
        let (_, h) = rational::sqrt_bounds(&hi, bits);
        Enclosure::new(l, h)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rational::to_f64(&self.lo), rational::to_f64(&self.hi))
    }
}
