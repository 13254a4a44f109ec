//! Scalar abstraction shared by the exact and floating-point code paths.
//!
//! Lattice vectors, companion matrices and the linear-programming kernels
//! are written once over [`Scalar`]; the crate root fixes the concrete
//! instantiations (`BigInt` for lattice points, `BigRational` for cone
//! coordinates, `f64` for advisory numerics).

use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive};

/// A ring element usable as a coordinate.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Num + Signed {
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// Best-effort conversion for reporting; exact types round to nearest.
    fn to_f64_lossy(&self) -> f64;
}

/// Scalars that form an ordered field, as required by the simplex and
/// Fourier–Motzkin kernels.
pub trait OrderedField: Scalar + PartialOrd {}

impl<T: Scalar + PartialOrd> OrderedField for T {}

impl Scalar for BigInt {
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        Ratio::from_integer(n.clone())
    }

    fn to_f64_lossy(&self) -> f64 {
        ratio_to_f64(self)
    }
}

impl Scalar for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }

    fn to_f64_lossy(&self) -> f64 {
        f64::from(*self)
    }
}

/// Converts a big rational to the nearest double without overflowing on
/// huge numerators and denominators.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits() as i64 - d.bits() as i64;
    // scale into a range where both parts convert cleanly
    let (n2, d2) = if shift > 0 {
        (n.clone(), d.clone() << (shift as usize))
    } else {
        (n.clone() << ((-shift) as usize), d.clone())
    };
    let top = n2.bits().saturating_sub(60);
    let nf = (n2 >> top as usize).to_f64().unwrap_or(f64::NAN);
    let df = (d2 >> top as usize).to_f64().unwrap_or(f64::NAN);
    (nf / df) * 2f64.powi(shift as i32)
}
