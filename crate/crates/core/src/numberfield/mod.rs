//! Exact arithmetic in `Q(λ)` and `Z[λ]`, certified root classification and
//! the parity/power searches used by the star-map construction.

mod roots;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use roots::RootBox;

use crate::interval::{pow2_neg, round_dyadic, Interval};
use crate::linalg::{Coords, Matrix};
use crate::poly::{charpoly, square_free_part, IntPolynomial, Poly, PolyError};
use crate::scalar::{ratio_to_f64, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error("polynomial has no positive real root")]
    NoPositiveRealRoot,
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("root boxes could not be separated at {bits} bits")]
    PrecisionExhausted { bits: u64 },
    #[error("polynomial is reducible: it has the integer root {root}")]
    Reducible { root: BigInt },
    #[error("equal-modulus conjugates could not be resolved at {bits} bits")]
    UndecidedAtPrecision { bits: u64 },
    #[error("weak dominance holds but no power up to {n_max} is Perron")]
    NoPerronPower { n_max: u32 },
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl FieldError {
    fn from_poly(e: PolyError) -> Self {
        match e {
            PolyError::NotMonic => FieldError::NotMonic,
            PolyError::NotSquareFree => FieldError::NotSquareFree,
            other => FieldError::Poly(other),
        }
    }
}

/// Tunables for context construction and classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldOptions {
    pub precision: u64,
    /// Root isolation never goes above this many bits.
    pub precision_cap: u64,
    pub degree_cap: usize,
    pub n_max: u32,
}

impl Default for FieldOptions {
    fn default() -> Self {
        FieldOptions {
            precision: 256,
            precision_cap: 2048,
            degree_cap: 8,
            n_max: 64,
        }
    }
}

impl FieldOptions {
    pub fn with_precision(precision: u64) -> Self {
        FieldOptions {
            precision,
            precision_cap: (precision * 8).max(64),
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassKind {
    Perron,
    WeakPerron,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: ClassKind,
    /// For weak Perron numbers, the smallest verified `N` with `λ^N` Perron.
    pub witness: Option<u32>,
}

impl Classification {
    pub fn perron() -> Self {
        Classification {
            kind: ClassKind::Perron,
            witness: None,
        }
    }

    pub fn weak(n: u32) -> Self {
        Classification {
            kind: ClassKind::WeakPerron,
            witness: Some(n),
        }
    }

    pub fn neither() -> Self {
        Classification {
            kind: ClassKind::Neither,
            witness: None,
        }
    }
}

/// The arithmetic world of a real algebraic integer `λ`: its minimal
/// polynomial, companion matrix and certified root boxes.
#[derive(Clone)]
pub struct NumberFieldContext {
    minpoly: IntPolynomial,
    companion: Matrix<BigInt>,
    roots: Vec<RootBox>,
    lambda_index: usize,
    /// Isolating interval for `λ` of width at most `2^-precision`.
    lambda: Interval,
    precision: u64,
    options: FieldOptions,
    iso: roots::Isolation,
}

impl std::fmt::Debug for NumberFieldContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NumberFieldContext")
            .field("minpoly", &self.minpoly)
            .field("lambda", &self.lambda)
            .field("roots", &self.roots)
            .finish()
    }
}

/// Builds a context at the given working precision with default caps.
pub fn make_context(poly: &IntPolynomial, precision: u64) -> Result<NumberFieldContext, FieldError> {
    NumberFieldContext::new(poly, &FieldOptions::with_precision(precision))
}

/// Companion matrix: ones on the subdiagonal, last column `-c_0 … -c_{d-1}`.
pub fn companion_matrix(p: &IntPolynomial) -> Matrix<BigInt> {
    let d = p.degree();
    let mut m = Matrix::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = BigInt::one();
    }
    for i in 0..d {
        m[(i, d - 1)] = -p.coeffs()[i].clone();
    }
    m
}

impl NumberFieldContext {
    pub fn new(poly: &IntPolynomial, opts: &FieldOptions) -> Result<Self, FieldError> {
        Self::build(poly, opts, true)
    }

    /// Validates a raw polynomial before building.
    pub fn from_poly(p: Poly<BigInt>, opts: &FieldOptions) -> Result<Self, FieldError> {
        let ip = IntPolynomial::new(p).map_err(FieldError::from_poly)?;
        Self::new(&ip, opts)
    }

    fn build(poly: &IntPolynomial, opts: &FieldOptions, reject_reducible: bool) -> Result<Self, FieldError> {
        let d = poly.degree();
        if d > opts.degree_cap {
            return Err(FieldError::DegreeCapExceeded {
                degree: d,
                cap: opts.degree_cap,
            });
        }
        let cap = opts.precision_cap.max(opts.precision);
        let iso = roots::isolate(poly.poly(), opts.precision, cap)
            .ok_or(FieldError::PrecisionExhausted { bits: cap })?;
        if reject_reducible && d > 1 {
            for b in iso.boxes.iter().filter(|b| b.real) {
                let k = b.re.round();
                if (&k - &b.re).abs() <= b.radius && poly.poly().sign_at(&k) == 0 {
                    return Err(FieldError::Reducible {
                        root: k.to_integer(),
                    });
                }
            }
        }
        let lambda_index = iso
            .boxes
            .iter()
            .position(|b| b.real)
            .ok_or(FieldError::NoPositiveRealRoot)?;
        let lb = &iso.boxes[lambda_index];
        if !lb.real_interval().hi.is_positive() {
            return Err(FieldError::NoPositiveRealRoot);
        }
        let mut lambda = refine_real_root(poly.poly(), lb.real_interval(), opts.precision);
        if !lambda.lo.is_positive() {
            lambda = refine_real_root(poly.poly(), lambda, cap);
            if !lambda.lo.is_positive() {
                return Err(FieldError::NoPositiveRealRoot);
            }
        }
        Ok(NumberFieldContext {
            minpoly: poly.clone(),
            companion: companion_matrix(poly),
            roots: iso.boxes.clone(),
            lambda_index,
            lambda,
            precision: iso.prec.max(opts.precision),
            options: opts.clone(),
            iso,
        })
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn companion(&self) -> &Matrix<BigInt> {
        &self.companion
    }

    pub fn roots(&self) -> &[RootBox] {
        &self.roots
    }

    pub fn lambda_index(&self) -> usize {
        self.lambda_index
    }

    pub fn lambda_interval(&self) -> &Interval {
        &self.lambda
    }

    pub fn lambda_f64(&self) -> f64 {
        ratio_to_f64(&self.lambda.mid())
    }

    pub fn options(&self) -> &FieldOptions {
        &self.options
    }

    pub fn precision(&self) -> u64 {
        self.precision
    }

    fn check_dim<T>(&self, v: &Coords<T>) -> Result<(), FieldError> {
        if v.0.len() == self.degree() {
            Ok(())
        } else {
            Err(FieldError::DimensionMismatch {
                expected: self.degree(),
                got: v.0.len(),
            })
        }
    }

    /// `C_λ · v`, i.e. multiplication by `λ` in coordinates.
    pub fn mul_lambda<T: Scalar>(&self, v: &Coords<T>) -> Result<Coords<T>, FieldError> {
        self.check_dim(v)?;
        Ok(self.mul_lambda_unchecked(v))
    }

    pub(crate) fn mul_lambda_unchecked<T: Scalar>(&self, v: &Coords<T>) -> Coords<T> {
        let d = self.degree();
        let top = v.0[d - 1].clone();
        let c = self.minpoly.coeffs();
        Coords(
            (0..d)
                .map(|i| {
                    let shifted = if i == 0 { T::zero() } else { v.0[i - 1].clone() };
                    shifted - T::from_bigint(&c[i]) * top.clone()
                })
                .collect(),
        )
    }

    /// `λ^n · v`.
    pub fn mul_lambda_pow<T: Scalar>(&self, v: &Coords<T>, n: u64) -> Coords<T> {
        let p = self.power_lambda(n);
        self.mul_unchecked(&p.map(T::from_bigint), v)
    }

    pub fn add<T: Scalar>(&self, u: &Coords<T>, v: &Coords<T>) -> Result<Coords<T>, FieldError> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        Ok(u + v)
    }

    /// Product in the field: polynomial product reduced modulo the minimal
    /// polynomial.
    pub fn mul<T: Scalar>(&self, u: &Coords<T>, v: &Coords<T>) -> Result<Coords<T>, FieldError> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        Ok(self.mul_unchecked(u, v))
    }

    fn mul_unchecked<T: Scalar>(&self, u: &Coords<T>, v: &Coords<T>) -> Coords<T> {
        let pu = Poly::new(u.0.clone());
        let pv = Poly::new(v.0.clone());
        self.reduce(&pu.mul(&pv))
    }

    fn reduce<T: Scalar>(&self, p: &Poly<T>) -> Coords<T> {
        let m = Poly::new(self.minpoly.coeffs().iter().map(T::from_bigint).collect());
        let (_, r) = p.div_rem_monic(&m);
        Coords((0..self.degree()).map(|i| r.coeff(i)).collect())
    }

    pub fn one<T: Scalar>(&self) -> Coords<T> {
        Coords::unit(self.degree(), 0)
    }

    /// Coordinates of `λ^n`, computed by square-and-multiply modulo the
    /// minimal polynomial.
    pub fn power_lambda(&self, n: u64) -> Coords<BigInt> {
        let d = self.degree();
        let mut result = Poly::<BigInt>::one();
        let mut base = if d == 1 {
            Poly::new(vec![-self.minpoly.coeffs()[0].clone()])
        } else {
            Poly::new(vec![BigInt::zero(), BigInt::one()])
        };
        let m = self.minpoly.poly();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).div_rem_monic(m).1;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).div_rem_monic(m).1;
            }
        }
        Coords((0..d).map(|i| result.coeff(i)).collect())
    }

    /// Isolating interval for `λ` of width at most `2^-bits`.
    pub fn lambda_to(&self, bits: u64) -> Interval {
        if self.lambda.width() <= pow2_neg(bits) {
            self.lambda.clone()
        } else {
            refine_real_root(self.minpoly.poly(), self.lambda.clone(), bits)
        }
    }

    /// Certified enclosure of the real value `Σ v_i λ^i` of width at most
    /// `2^-precision`.
    pub fn real_embed(&self, v: &Coords<BigInt>, precision: u64) -> Result<Interval, FieldError> {
        self.check_dim(v)?;
        let coeffs: Vec<BigRational> = v.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        self.embed_rational(&coeffs, precision)
    }

    pub fn real_embed_field(&self, v: &Coords<BigRational>, precision: u64) -> Result<Interval, FieldError> {
        self.check_dim(v)?;
        self.embed_rational(&v.0, precision)
    }

    fn embed_rational(&self, coeffs: &[BigRational], precision: u64) -> Result<Interval, FieldError> {
        if coeffs.iter().skip(1).all(Zero::is_zero) {
            return Ok(Interval::point(coeffs.first().cloned().unwrap_or_else(BigRational::zero)));
        }
        let target = pow2_neg(precision);
        let limit = precision + 8192;
        let mut bits = precision + 16;
        loop {
            let lam = self.lambda_to(bits);
            let out = lam.eval_poly(coeffs);
            let w = out.width();
            if w <= target {
                return Ok(out);
            }
            if bits >= limit {
                return Err(FieldError::PrecisionExhausted { bits });
            }
            // overshoot bits by the log of the excess width
            let excess = ratio_to_f64(&(w / &target)).log2().ceil();
            let step = if excess.is_finite() { excess as u64 + 4 } else { bits };
            bits = (bits + step).min(limit);
        }
    }

    /// Float approximation of `Σ v_i λ^i`.
    pub fn embed_f64(&self, v: &Coords<BigInt>) -> f64 {
        match self.real_embed(v, 64) {
            Ok(iv) => ratio_to_f64(&iv.mid()),
            Err(_) => f64::NAN,
        }
    }

    /// Parity search: the lexicographically smallest `(n0, N)` with
    /// `N > n0 >= 1` and `λ^N ≡ λ^{n0} (mod 2 Z[λ])`, found by iterating the
    /// companion action on `(Z/2)^d` with memoization.
    pub fn even_lemma(&self) -> (u64, u64) {
        let d = self.degree();
        let c: Vec<u8> = self
            .minpoly
            .coeffs()
            .iter()
            .map(|x| u8::from(x.is_odd()))
            .collect();
        let step = |v: &[u8]| -> Vec<u8> {
            let top = v[d - 1];
            (0..d)
                .map(|i| {
                    let shifted = if i == 0 { 0 } else { v[i - 1] };
                    (shifted + c[i] * top) % 2
                })
                .collect()
        };
        let mut seen: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
        let mut v = vec![0u8; d];
        v[0] = 1;
        let mut n = 0u64;
        loop {
            v = step(&v);
            n += 1;
            if let Some(&n0) = seen.get(&v) {
                return (n0, n);
            }
            seen.insert(v.clone(), n);
        }
    }

    /// Minimal polynomial of `λ^N`: the square-free part of the
    /// characteristic polynomial of `C_λ^N`.
    pub fn minpoly_power(&self, n: u32) -> IntPolynomial {
        let cp = charpoly(&self.companion.pow(u64::from(n)));
        IntPolynomial::new(square_free_part(&cp)).expect("square-free part is monic and square-free")
    }

    /// Perron / weak Perron classification.
    pub fn classify(&self) -> Result<Classification, FieldError> {
        self.classify_inner(true)
    }

    fn classify_inner(&self, search_powers: bool) -> Result<Classification, FieldError> {
        if self.degree() == 1 {
            return Ok(Classification::perron());
        }
        let p = self.minpoly.poly();
        let cap = self.options.precision_cap.max(self.precision);
        let mut iso = self.iso.clone();
        loop {
            match dominance(&iso.boxes, self.lambda_index, iso.prec) {
                Dominance::Strict => return Ok(Classification::perron()),
                Dominance::Beaten => return Ok(Classification::neither()),
                Dominance::Unclear => {}
            }
            if iso.prec >= cap {
                break;
            }
            let next = (iso.prec * 2).min(cap);
            match roots::refine(p, &iso, next) {
                Some(r) => iso = r,
                None => return Err(FieldError::PrecisionExhausted { bits: next }),
            }
        }
        let bits = iso.prec;
        if !search_powers {
            return Err(FieldError::UndecidedAtPrecision { bits });
        }
        let real_tie = self.has_negated_conjugate();
        for n in 2..=self.options.n_max {
            if let Some(true) = self.power_is_perron(n) {
                return Ok(Classification::weak(n));
            }
        }
        if real_tie {
            Err(FieldError::NoPerronPower {
                n_max: self.options.n_max,
            })
        } else {
            Err(FieldError::UndecidedAtPrecision { bits })
        }
    }

    /// Exact test that `-λ` is also a root: `g = gcd(p(x), (-1)^d p(-x))` is
    /// nonconstant and `g(-x)` changes sign across the isolating interval of
    /// `λ`.
    pub fn has_negated_conjugate(&self) -> bool {
        let p = self.minpoly.poly().to_rational();
        let g = p.gcd(&p.reflect());
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let h = g.reflect();
        let a = h.eval_scalar(&self.lambda.lo);
        let b = h.eval_scalar(&self.lambda.hi);
        a.is_zero() || b.is_zero() || (a.is_positive() != b.is_positive())
    }

    /// Whether `λ^N` is Perron, or `None` if undecidable at the cap.
    fn power_is_perron(&self, n: u32) -> Option<bool> {
        let q = self.minpoly_power(n);
        let opts = FieldOptions {
            n_max: 1,
            ..self.options.clone()
        };
        let qctx = NumberFieldContext::build(&q, &opts, false).ok()?;
        // λ^N is a root of q; it is the designated one if its enclosure
        // misses every other real root box of q
        let mu = self.real_embed(&self.power_lambda(u64::from(n)), self.precision).ok()?;
        for (i, b) in qctx.roots.iter().enumerate() {
            if i != qctx.lambda_index && b.real {
                let other = b.real_interval();
                if other.lo <= mu.hi && mu.lo <= other.hi {
                    return Some(false);
                }
            }
        }
        match qctx.classify_inner(false) {
            Ok(c) => Some(c.kind == ClassKind::Perron),
            Err(_) => None,
        }
    }
}

enum Dominance {
    Strict,
    Beaten,
    Unclear,
}

fn dominance(boxes: &[RootBox], li: usize, prec: u64) -> Dominance {
    let lam = boxes[li].real_interval();
    let bits = 2 * prec;
    let mut strict = true;
    for (i, b) in boxes.iter().enumerate() {
        if i == li {
            continue;
        }
        let (lo, hi) = b.modulus_bounds(bits);
        if lo > lam.hi {
            return Dominance::Beaten;
        }
        if hi >= lam.lo {
            strict = false;
        }
    }
    if strict {
        Dominance::Strict
    } else {
        Dominance::Unclear
    }
}

/// Bisects an isolating interval of a simple real root down to width
/// `2^-bits`, using exact sign evaluation at dyadic points.
fn refine_real_root(p: &Poly<BigInt>, mut iv: Interval, bits: u64) -> Interval {
    let target = pow2_neg(bits);
    if iv.width().is_zero() {
        return iv;
    }
    // snap endpoints outward to a dyadic grid so midpoints stay short
    let grid = bits + 2;
    let lo = round_dyadic(&iv.lo, grid) - pow2_neg(grid);
    let hi = round_dyadic(&iv.hi, grid) + pow2_neg(grid);
    let mut s_lo = p.sign_at(&iv.lo);
    let s_hi = p.sign_at(&iv.hi);
    if s_lo == 0 {
        return Interval::point(iv.lo.clone());
    }
    if s_hi == 0 {
        return Interval::point(iv.hi.clone());
    }
    // widening must not capture another root; keep the snapped ends only if
    // the sign pattern is preserved
    if p.sign_at(&lo) == s_lo && p.sign_at(&hi) == s_hi && lo < iv.lo {
        iv = Interval::new(lo, hi);
    }
    while iv.width() > target {
        let m = iv.mid();
        let s = p.sign_at(&m);
        if s == 0 {
            return Interval::point(m);
        }
        if s == s_lo {
            iv.lo = m;
            s_lo = s;
        } else {
            iv.hi = m;
        }
    }
    iv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(c: &[i64]) -> NumberFieldContext {
        make_context(&IntPolynomial::from_i64s(c).unwrap(), 128).unwrap()
    }

    fn lat(c: &[i64]) -> Coords<BigInt> {
        Coords::from_i64s(c)
    }

    #[test]
    fn companion_layout() {
        let c = ctx(&[-2, -3, 1]);
        assert_eq!(c.companion(), &Matrix::from_i64_rows(&[&[0, 2], &[1, 3]]));
        assert_eq!(ctx(&[-5, 1]).companion(), &Matrix::from_i64_rows(&[&[5]]));
    }

    #[test]
    fn roots_of_quadratic() {
        let c = ctx(&[-2, -3, 1]);
        assert!((c.lambda_f64() - 3.561_552_812_808_830_3).abs() < 1e-12);
        let other = &c.roots()[1 - c.lambda_index()];
        assert!(other.real);
        assert!((other.center_f64().0 + 0.561_552_812_808_830_3).abs() < 1e-12);
    }

    #[test]
    fn construction_errors() {
        let o = FieldOptions::default();
        assert_eq!(
            NumberFieldContext::from_poly(Poly::new(vec![1.into(), 0.into(), 1.into()]), &o).unwrap_err(),
            FieldError::NoPositiveRealRoot
        );
        assert_eq!(
            NumberFieldContext::from_poly(Poly::new(vec![1.into(), 2.into()]), &o).unwrap_err(),
            FieldError::NotMonic
        );
        assert_eq!(
            NumberFieldContext::from_poly(Poly::new(vec![1.into(), (-2).into(), 1.into()]), &o).unwrap_err(),
            FieldError::NotSquareFree
        );
        let deg9 = IntPolynomial::from_i64s(&[-2, 0, 0, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        assert!(matches!(
            NumberFieldContext::new(&deg9, &o),
            Err(FieldError::DegreeCapExceeded { degree: 9, cap: 8 })
        ));
        let red = IntPolynomial::from_i64s(&[-6, 1, 1]).unwrap();
        assert!(matches!(NumberFieldContext::new(&red, &o), Err(FieldError::Reducible { .. })));
        let neg = IntPolynomial::from_i64s(&[3, 1]).unwrap();
        assert_eq!(NumberFieldContext::new(&neg, &o).unwrap_err(), FieldError::NoPositiveRealRoot);
    }

    #[test]
    fn lambda_multiplication() {
        let c = ctx(&[-2, -3, 1]);
        assert_eq!(c.mul_lambda(&lat(&[0, 1])).unwrap(), lat(&[2, 3]));
        assert_eq!(c.mul_lambda(&lat(&[0, 0])).unwrap(), lat(&[0, 0]));
        assert_eq!(ctx(&[-5, 1]).mul_lambda(&lat(&[1])).unwrap(), lat(&[5]));
        assert!(c.mul_lambda(&lat(&[1])).is_err());
    }

    #[test]
    fn field_operations() {
        let c = ctx(&[-2, -3, 1]);
        assert_eq!(c.mul(&lat(&[0, 1]), &lat(&[0, 1])).unwrap(), lat(&[2, 3]));
        assert_eq!(c.add(&lat(&[4, -1]), &lat(&[0, 0])).unwrap(), lat(&[4, -1]));
        assert_eq!(c.power_lambda(3), lat(&[6, 11]));
        assert_eq!(c.power_lambda(0), lat(&[1, 0]));
        assert_eq!(ctx(&[-5, 1]).power_lambda(4), lat(&[625]));
    }

    #[test]
    fn embedding() {
        let c = ctx(&[-2, -3, 1]);
        let iv = c.real_embed(&lat(&[0, 1]), 100).unwrap();
        assert!(iv.width() <= pow2_neg(100));
        let (a, b) = iv.to_f64();
        assert!((a - 3.561_552_812_808_83).abs() < 1e-12 && (b - a).abs() < 1e-20);
        assert_eq!(ctx(&[-5, 1]).real_embed(&lat(&[3]), 64).unwrap(), Interval::from_int(&3.into()));
        assert_eq!(c.real_embed(&lat(&[0, 0]), 64).unwrap(), Interval::from_int(&0.into()));
    }

    #[test]
    fn classification() {
        assert_eq!(ctx(&[-2, -3, 1]).classify().unwrap(), Classification::perron());
        assert_eq!(ctx(&[-2, 0, 1]).classify().unwrap(), Classification::weak(2));
        assert_eq!(ctx(&[-1, 1]).classify().unwrap(), Classification::perron());
        assert_eq!(ctx(&[-1, -1, 0, 1]).classify().unwrap(), Classification::perron());
        // golden-ratio conjugate: 0.618 is beaten by |-1.618|
        assert_eq!(ctx(&[-1, 1, 1]).classify().unwrap(), Classification::neither());
    }

    #[test]
    fn parity_search() {
        assert_eq!(ctx(&[-2, -3, 1]).even_lemma(), (1, 2));
        assert_eq!(ctx(&[-5, 1]).even_lemma(), (1, 2));
        assert_eq!(ctx(&[-2, 1]).even_lemma(), (1, 2));
    }

    #[test]
    fn power_minpolys() {
        let c = ctx(&[-2, 0, 1]);
        assert_eq!(c.minpoly_power(2), IntPolynomial::from_i64s(&[-2, 1]).unwrap());
        let q = ctx(&[-2, -3, 1]);
        assert_eq!(q.minpoly_power(1), q.minpoly().clone());
        assert_eq!(q.minpoly_power(2), IntPolynomial::from_i64s(&[4, -13, 1]).unwrap());
    }
}
