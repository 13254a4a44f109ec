//! Closed intervals with rational endpoints and exact rational square-root
//! bounds.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::ratio_to_f64;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "crate::io::rational_str")]
    pub lo: BigRational,
    #[serde(with = "crate::io::rational_str")]
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_int(n: &BigInt) -> Self {
        Self::point(BigRational::from_integer(n.clone()))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().cloned().unwrap();
        let hi = c.iter().max().cloned().unwrap();
        Interval { lo, hi }
    }

    pub fn scale(&self, k: &BigRational) -> Interval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    /// Interval Horner evaluation of `Σ c_i x^i`.
    pub fn eval_poly(&self, coeffs: &[BigRational]) -> Interval {
        coeffs
            .iter()
            .rev()
            .fold(Interval::point(BigRational::zero()), |acc, c| {
                acc.mul(self).add(&Interval::point(c.clone()))
            })
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (ratio_to_f64(&self.lo), ratio_to_f64(&self.hi))
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_f64();
        write!(f, "[{a:.12e}, {b:.12e}]")
    }
}

/// `2^-bits` as a rational.
pub fn pow2_neg(bits: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// Rational `q` with `q <= sqrt(x)`, accurate to about `2^-bits`.
pub fn sqrt_lower(x: &BigRational, bits: u64) -> BigRational {
    assert!(!x.is_negative());
    let scaled = (x * BigRational::from_integer(BigInt::one() << (2 * bits as usize))).floor();
    let r = scaled.to_integer().sqrt();
    BigRational::new(r, BigInt::one() << bits as usize)
}

/// Rational `q` with `q >= sqrt(x)`, accurate to about `2^-bits`.
pub fn sqrt_upper(x: &BigRational, bits: u64) -> BigRational {
    assert!(!x.is_negative());
    let lo = sqrt_lower(x, bits);
    if &lo * &lo == *x {
        lo
    } else {
        lo + pow2_neg(bits)
    }
}

/// Rounds to the nearest multiple of `2^-bits`.
pub fn round_dyadic(x: &BigRational, bits: u64) -> BigRational {
    let s = BigInt::one() << bits as usize;
    let n = (x * BigRational::from_integer(s.clone())).round().to_integer();
    BigRational::new(n, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_bounds_bracket() {
        let two = r(2, 1);
        let lo = sqrt_lower(&two, 64);
        let hi = sqrt_upper(&two, 64);
        assert!(&lo * &lo <= two && &hi * &hi >= two);
        assert!(hi - lo <= pow2_neg(64));
        let four = r(4, 1);
        assert_eq!(sqrt_upper(&four, 10), r(2, 1));
    }

    #[test]
    fn product_contains_products() {
        let a = Interval::new(r(-1, 2), r(3, 1));
        let b = Interval::new(r(-2, 1), r(1, 3));
        let p = a.mul(&b);
        for x in [r(-1, 2), r(0, 1), r(3, 1)] {
            for y in [r(-2, 1), r(1, 3)] {
                assert!(p.contains(&(&x * &y)));
            }
        }
    }

    #[test]
    fn horner_encloses() {
        let x = Interval::new(r(3, 1), r(4, 1));
        let v = x.eval_poly(&[r(-2, 1), r(-3, 1), r(1, 1)]);
        assert!(v.contains(&r(-2, 1)) && v.contains(&r(2, 1)));
    }
}
