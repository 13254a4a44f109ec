//! Univariate polynomials, with a validated monic integer type for minimal
//! polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Dense polynomial, `coeffs[i]` is the coefficient of `x^i`. Trailing zeros
/// are always trimmed so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::new(vec![T::one()])
    }

    /// `x - a`
    pub fn linear(a: T) -> Self {
        Poly::new(vec![-a, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Horner evaluation in any ring the coefficients embed into.
    pub fn eval<U>(&self, x: &U) -> U
    where
        U: Clone + std::ops::Add<Output = U> + std::ops::Mul<Output = U> + From<T> + Zero,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(U::zero(), |acc, c| acc * x.clone() + U::from(c.clone()))
    }

    pub fn eval_scalar(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Division by a monic divisor; valid over any ring.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.lead().is_one(), "divisor must be monic");
        self.div_rem_by(divisor, |c| c.clone())
    }

    fn div_rem_by(&self, divisor: &Self, div_lead: impl Fn(&T) -> T) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = div_lead(&rem[k + dd]);
            if q.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * dc.clone();
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }
}

impl Poly<BigRational> {
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.lead();
        self.div_rem_by(divisor, |c| c / &lead)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.lead();
        Poly::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    /// Monic greatest common divisor over the rationals.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Poly<BigInt> {
    pub fn to_rational(&self) -> Poly<BigRational> {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Converts back from a rational polynomial whose coefficients happen to
    /// be integers.
    pub fn from_rational(p: &Poly<BigRational>) -> Option<Self> {
        p.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }

    /// Sign of `p(x)` at a rational point, computed exactly.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let v = self.to_rational().eval_scalar(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// Characteristic polynomial `det(xI - A)` by the Faddeev–LeVerrier
/// recurrence; every division is exact over the integers.
pub fn charpoly(a: &Matrix<BigInt>) -> Poly<BigInt> {
    assert!(a.is_square());
    let n = a.rows();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = Matrix::<BigInt>::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&m);
        for i in 0..n {
            next[(i, i)] += &c[n - k + 1];
        }
        m = next;
        let tr = a.mul(&m).trace();
        let (q, r) = (-tr).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        c[n - k] = q;
    }
    Poly::new(c)
}

impl<T: Scalar + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: Scalar + fmt::Display> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has degree 0")]
    Constant,
    #[error("polynomial is not square-free")]
    NotSquareFree,
}

/// A monic, square-free integer polynomial of degree at least one.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct IntPolynomial(Poly<BigInt>);

impl IntPolynomial {
    pub fn new(p: Poly<BigInt>) -> Result<Self, PolyError> {
        match p.degree() {
            None | Some(0) => return Err(PolyError::Constant),
            _ => {}
        }
        if !p.lead().is_one() {
            return Err(PolyError::NotMonic);
        }
        let q = p.to_rational();
        if q.gcd(&q.derivative()).degree() != Some(0) {
            return Err(PolyError::NotSquareFree);
        }
        Ok(IntPolynomial(p))
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self, PolyError> {
        Self::new(Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect()))
    }

    pub fn poly(&self) -> &Poly<BigInt> {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        self.0.coeffs()
    }

    /// Parses either the text form `x^2 - 3x - 2` or a JSON list of
    /// ascending coefficients such as `[-2, -3, 1]`.
    pub fn parse(s: &str) -> Result<Self, PolyError> {
        Self::new(parse_poly(s)?)
    }
}

impl FromStr for IntPolynomial {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({})", self.0)
    }
}

impl TryFrom<Vec<String>> for IntPolynomial {
    type Error = PolyError;
    fn try_from(v: Vec<String>) -> Result<Self, Self::Error> {
        let coeffs = v
            .iter()
            .map(|s| BigInt::from_str(s.trim()).map_err(|_| PolyError::Parse(s.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(Poly::new(coeffs))
    }
}

impl From<IntPolynomial> for Vec<String> {
    fn from(p: IntPolynomial) -> Self {
        p.0.coeffs.iter().map(ToString::to_string).collect()
    }
}

/// Parses a polynomial without checking monicity or square-freeness.
pub fn parse_poly(s: &str) -> Result<Poly<BigInt>, PolyError> {
    let s = s.trim();
    if s.starts_with('[') {
        let vals: Vec<serde_json::Value> =
            serde_json::from_str(s).map_err(|e| PolyError::Parse(e.to_string()))?;
        let coeffs = vals
            .iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => BigInt::from_str(&n.to_string()).ok(),
                serde_json::Value::String(t) => BigInt::from_str(t.trim()).ok(),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| PolyError::Parse(format!("bad coefficient list {s}")))?;
        return Ok(Poly::new(coeffs));
    }
    parse_text(s)
}

fn parse_text(s: &str) -> Result<Poly<BigInt>, PolyError> {
    let err = || PolyError::Parse(s.to_string());
    let compact: String = s
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .collect();
    if compact.is_empty() {
        return Err(err());
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in compact.char_indices() {
        if i > 0 && (ch == '+' || ch == '-') && !compact[..i].ends_with('^') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);

    let mut coeffs: Vec<BigInt> = Vec::new();
    for term in terms {
        let (neg, body) = match term.as_bytes().first() {
            Some(b'-') => (true, &term[1..]),
            Some(b'+') => (false, &term[1..]),
            _ => (false, term),
        };
        if body.is_empty() {
            return Err(err());
        }
        let (coef, exp) = match body.find(['x', 'X']) {
            None => (BigInt::from_str(body).map_err(|_| err())?, 0usize),
            Some(pos) => {
                let c = if pos == 0 {
                    BigInt::one()
                } else {
                    BigInt::from_str(&body[..pos]).map_err(|_| err())?
                };
                let rest = &body[pos + 1..];
                let e = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|r| r.parse::<usize>().ok())
                        .ok_or_else(err)?
                };
                (c, e)
            }
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += if neg { -coef } else { coef };
    }
    Ok(Poly::new(coeffs))
}

/// Square-free part of a monic integer polynomial, `p / gcd(p, p')`, monic
/// with integer coefficients.
pub fn square_free_part(p: &Poly<BigInt>) -> Poly<BigInt> {
    let q = p.to_rational();
    let g = q.gcd(&q.derivative());
    let (sf, r) = q.div_rem(&g);
    debug_assert!(r.is_zero());
    Poly::from_rational(&sf.monic()).expect("monic factor of a monic integer polynomial")
}
