//! Certified isolation of all complex roots of a square-free integer
//! polynomial.
//!
//! Seeds come from double-precision companion eigenvalues; they are polished
//! by Weierstrass (Durand–Kerner) iteration in fixed-point big-integer
//! arithmetic and then certified in exact rational arithmetic with the
//! Weierstrass inclusion disks `|z - z_i| <= d·|W_i|`, where
//! `W_i = p(z_i) / Π_{j≠i}(z_i - z_j)`. When these disks are pairwise
//! disjoint each one holds exactly one root.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::interval::{sqrt_lower, sqrt_upper, Interval};
use crate::poly::Poly;
use crate::scalar::ratio_to_f64;

/// A disk in the complex plane certified to contain exactly one root.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBox {
    #[serde(with = "crate::io::rational_str")]
    pub re: BigRational,
    #[serde(with = "crate::io::rational_str")]
    pub im: BigRational,
    #[serde(with = "crate::io::rational_str")]
    pub radius: BigRational,
    /// The root is certified real (the disk is centred on the real axis).
    pub real: bool,
}

impl RootBox {
    /// Real enclosure of a certified real root.
    pub fn real_interval(&self) -> Interval {
        Interval::new(&self.re - &self.radius, &self.re + &self.radius)
    }

    /// Rational lower and upper bounds on the modulus of the enclosed root.
    pub fn modulus_bounds(&self, bits: u64) -> (BigRational, BigRational) {
        let sq = &self.re * &self.re + &self.im * &self.im;
        let lo = sqrt_lower(&sq, bits) - &self.radius;
        let hi = sqrt_upper(&sq, bits) + &self.radius;
        (if lo.is_negative() { BigRational::zero() } else { lo }, hi)
    }

    pub fn center_f64(&self) -> (f64, f64) {
        (ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }

    pub fn radius_f64(&self) -> f64 {
        ratio_to_f64(&self.radius)
    }
}

impl std::fmt::Debug for RootBox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (re, im) = self.center_f64();
        write!(f, "{re:.10}{im:+.10}i ± {:.2e}", self.radius_f64())
    }
}

/// Fixed-point complex number, both parts scaled by `2^prec`.
#[derive(Clone, Debug, PartialEq)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

impl Fx {
    fn sub(&self, o: &Fx) -> Fx {
        Fx {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &Fx, prec: u64) -> Fx {
        let p = prec as usize;
        Fx {
            re: (&self.re * &o.re - &self.im * &o.im) >> p,
            im: (&self.re * &o.im + &self.im * &o.re) >> p,
        }
    }

    fn div(&self, o: &Fx, prec: u64) -> Option<Fx> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let p = prec as usize;
        let nr = &self.re * &o.re + &self.im * &o.im;
        let ni = &self.im * &o.re - &self.re * &o.im;
        Some(Fx {
            re: (nr << p) / &den,
            im: (ni << p) / &den,
        })
    }

    fn rescale(&self, from: u64, to: u64) -> Fx {
        if to >= from {
            let s = (to - from) as usize;
            Fx {
                re: &self.re << s,
                im: &self.im << s,
            }
        } else {
            let s = (from - to) as usize;
            Fx {
                re: &self.re >> s,
                im: &self.im >> s,
            }
        }
    }

    fn to_rational(&self, prec: u64) -> (BigRational, BigRational) {
        let den = BigInt::one() << prec as usize;
        (
            BigRational::new(self.re.clone(), den.clone()),
            BigRational::new(self.im.clone(), den),
        )
    }
}

fn eval_fx(coeffs: &[BigInt], z: &Fx, prec: u64) -> Fx {
    let p = prec as usize;
    let mut acc = Fx {
        re: BigInt::zero(),
        im: BigInt::zero(),
    };
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, prec);
        acc.re += c << p;
    }
    acc
}

/// Double-precision approximations of all roots, used as iteration seeds.
pub(crate) fn float_seeds(p: &Poly<BigInt>) -> Vec<(f64, f64)> {
    let d = p.degree().unwrap_or(0);
    if d == 1 {
        return vec![(-p.coeff(0).to_f64().unwrap_or(0.0), 0.0)];
    }
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        m[(i, d - 1)] = -p.coeff(i).to_f64().unwrap_or(f64::NAN);
    }
    m.complex_eigenvalues()
        .iter()
        .map(|z| (z.re, z.im))
        .collect()
}

fn seeds_to_fx(seeds: &[(f64, f64)], prec: u64) -> Vec<Fx> {
    let conv = |x: f64| -> BigInt {
        let r = BigRational::from_float(if x.is_finite() { x } else { 0.0 })
            .unwrap_or_else(BigRational::zero);
        (r * BigRational::from_integer(BigInt::one() << prec as usize))
            .round()
            .to_integer()
    };
    let mut out: Vec<Fx> = seeds
        .iter()
        .map(|&(re, im)| Fx {
            re: conv(re),
            im: conv(im),
        })
        .collect();
    // nudge coincident seeds apart so the iteration is well defined
    let nudge = BigInt::one() << (prec.saturating_sub(30)) as usize;
    for i in 0..out.len() {
        while out[..i].contains(&out[i]) {
            out[i].im += &nudge;
        }
    }
    out
}

/// Weierstrass iteration to fixed-point convergence. Returns `None` if it
/// stalls on a coincident pair.
fn polish(coeffs: &[BigInt], mut z: Vec<Fx>, prec: u64) -> Option<Vec<Fx>> {
    let n = z.len();
    if n == 1 {
        let c0 = &coeffs[0];
        return Some(vec![Fx {
            re: -(c0 << prec as usize),
            im: BigInt::zero(),
        }]);
    }
    let tol = BigInt::from(1u32 << 8);
    let max_iter = 64 + 8 * prec as usize;
    for _ in 0..max_iter {
        let mut worst = BigInt::zero();
        for i in 0..n {
            let num = eval_fx(coeffs, &z[i], prec);
            let mut den = Fx {
                re: BigInt::one() << prec as usize,
                im: BigInt::zero(),
            };
            for j in 0..n {
                if j != i {
                    den = den.mul(&z[i].sub(&z[j]), prec);
                }
            }
            let w = num.div(&den, prec)?;
            let size = w.re.abs().max(w.im.abs());
            if size > worst {
                worst = size;
            }
            z[i] = z[i].sub(&w);
        }
        if worst <= tol {
            return Some(z);
        }
    }
    Some(z)
}

fn eval_exact(p: &Poly<BigRational>, re: &BigRational, im: &BigRational) -> (BigRational, BigRational) {
    let mut ar = BigRational::zero();
    let mut ai = BigRational::zero();
    for c in p.coeffs().iter().rev() {
        let nr = &ar * re - &ai * im + c;
        let ni = &ar * im + &ai * re;
        ar = nr;
        ai = ni;
    }
    (ar, ai)
}

/// Certifies the approximations at `prec` bits, snapping nearly real ones to
/// the real axis.
fn certify(p: &Poly<BigInt>, approx: &[Fx], prec: u64) -> Option<Vec<RootBox>> {
    let d = approx.len();
    let snap = BigInt::one() << (prec / 2) as usize;
    let pts: Vec<(BigRational, BigRational, bool)> = approx
        .iter()
        .map(|z| {
            let real = z.im.abs() <= snap;
            let zz = if real {
                Fx {
                    re: z.re.clone(),
                    im: BigInt::zero(),
                }
            } else {
                z.clone()
            };
            let (r, i) = zz.to_rational(prec);
            (r, i, real)
        })
        .collect();
    let q = p.to_rational();
    let sq_bits = 2 * prec + 16;
    let dd = BigRational::from_integer(BigInt::from(d));
    let mut boxes = Vec::with_capacity(d);
    for i in 0..d {
        let (re, im, real) = &pts[i];
        let (pr, pi) = eval_exact(&q, re, im);
        let num2 = &pr * &pr + &pi * &pi;
        let mut den2 = BigRational::one();
        for (j, (r2, i2, _)) in pts.iter().enumerate() {
            if j != i {
                let dr = re - r2;
                let di = im - i2;
                den2 *= &dr * &dr + &di * &di;
            }
        }
        if den2.is_zero() {
            return None;
        }
        let radius = if num2.is_zero() {
            BigRational::zero()
        } else {
            &dd * sqrt_upper(&(num2 / den2), sq_bits)
        };
        boxes.push(RootBox {
            re: re.clone(),
            im: im.clone(),
            radius,
            real: *real,
        });
    }
    for i in 0..d {
        // non-real roots need disks clear of the real axis
        if !boxes[i].real && boxes[i].im.abs() <= boxes[i].radius {
            return None;
        }
        for j in i + 1..d {
            let dr = &boxes[i].re - &boxes[j].re;
            let di = &boxes[i].im - &boxes[j].im;
            let gap = &boxes[i].radius + &boxes[j].radius;
            if &dr * &dr + &di * &di <= &gap * &gap {
                return None;
            }
        }
    }
    Some(boxes)
}

/// Isolation state that can be refined to higher precision.
#[derive(Clone)]
pub(crate) struct Isolation {
    approx: Vec<Fx>,
    pub prec: u64,
    pub boxes: Vec<RootBox>,
}

/// Isolates all roots starting at `prec` bits and doubling up to `cap`.
pub(crate) fn isolate(p: &Poly<BigInt>, prec: u64, cap: u64) -> Option<Isolation> {
    let seeds = float_seeds(p);
    let start = seeds_to_fx(&seeds, prec);
    run_from(p, start, prec, cap)
}

/// Re-isolates at precision `to` (not below the current one).
pub(crate) fn refine(p: &Poly<BigInt>, iso: &Isolation, to: u64) -> Option<Isolation> {
    let start = iso.approx.iter().map(|z| z.rescale(iso.prec, to)).collect();
    run_from(p, start, to, to)
}

fn run_from(p: &Poly<BigInt>, mut start: Vec<Fx>, mut prec: u64, cap: u64) -> Option<Isolation> {
    let coeffs = p.coeffs();
    loop {
        if let Some(z) = polish(coeffs, start.clone(), prec) {
            if let Some(mut boxes) = certify(p, &z, prec) {
                let mut order: Vec<usize> = (0..boxes.len()).collect();
                order.sort_by(|&a, &b| {
                    boxes[b]
                        .re
                        .cmp(&boxes[a].re)
                        .then(boxes[b].im.cmp(&boxes[a].im))
                });
                let approx = order.iter().map(|&i| z[i].clone()).collect();
                boxes = order.iter().map(|&i| boxes[i].clone()).collect();
                return Some(Isolation {
                    approx,
                    prec,
                    boxes,
                });
            }
            start = z;
        }
        if prec >= cap {
            return None;
        }
        let next = (prec * 2).min(cap);
        start = start.iter().map(|z| z.rescale(prec, next)).collect();
        prec = next;
    }
}
