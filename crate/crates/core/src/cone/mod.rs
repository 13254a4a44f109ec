//! Invariant rational polyhedral cones for the companion action, lattice
//! generators of their semigroups, and the star-map recipe search.

mod gordan;
mod recipe;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use gordan::{decompose, gordan_generators, recompose, zonotope_contains, SemigroupGenerators};
pub use recipe::{find_recipe, slim_cone_witness, verify_recipe, StarRecipe};

use crate::interval::Interval;
use crate::linalg::{rank, Coords, Matrix};
use crate::lp::{nonneg_solution, Method};
use crate::numberfield::{FieldError, NumberFieldContext};
use crate::scalar::ratio_to_f64;
use crate::LatticeElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("no certified invariant cone up to scale {cap}")]
    ConeSearchFailed { cap: u64 },
    #[error("bounding box holds {count} candidates, over the cap {cap}")]
    EnumerationCapExceeded { count: String, cap: u64 },
    #[error("{0} is not in the lattice semigroup")]
    DecompositionFailed(String),
    #[error("no recipe exponent found for p up to {p_cap}")]
    RecipeSearchExhausted { p_cap: u64 },
    #[error("the cone construction needs a Perron number")]
    NotPerron,
    #[error("precision exhausted while certifying the cone")]
    PrecisionExhausted,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Knobs for cone construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeOptions {
    pub scale_start: u64,
    pub scale_cap: u64,
    /// Half the number of polygon vertices used for each complex pair.
    pub polygon_k: usize,
}

impl Default for ConeOptions {
    fn default() -> Self {
        ConeOptions {
            scale_start: 1,
            scale_cap: 1 << 16,
            polygon_k: 4,
        }
    }
}

/// A real invariant subspace of the companion action other than the
/// dominant line.
#[derive(Clone, Debug)]
pub enum Subspace {
    /// Eigenline of a real conjugate.
    Real { basis: Vec<f64>, root: f64, modulus_hi: BigRational },
    /// Real and imaginary parts of the eigenvector of a complex pair.
    Complex {
        re: Vec<f64>,
        im: Vec<f64>,
        root: (f64, f64),
        modulus_hi: BigRational,
    },
}

impl Subspace {
    pub fn dim(&self) -> usize {
        match self {
            Subspace::Real { .. } => 1,
            Subspace::Complex { .. } => 2,
        }
    }

    pub fn modulus_hi(&self) -> &BigRational {
        match self {
            Subspace::Real { modulus_hi, .. } | Subspace::Complex { modulus_hi, .. } => modulus_hi,
        }
    }
}

/// Invariant-subspace decomposition of `R^d` under `C_λ`.
#[derive(Clone, Debug)]
pub struct EigenSplit {
    /// Entries of the `λ`-eigenvector, each an element of `Z[λ]`: the
    /// coefficients of `p(x) / (x - λ)`.
    pub dominant: Vec<LatticeElement>,
    /// Certified enclosures of the dominant entries.
    pub dominant_intervals: Vec<Interval>,
    pub subspaces: Vec<Subspace>,
    /// Lower bound for `λ`; every subspace modulus bound sits below it.
    pub lambda_lo: BigRational,
}

impl EigenSplit {
    pub fn dominant_f64(&self) -> Vec<f64> {
        self.dominant_intervals.iter().map(|iv| ratio_to_f64(&iv.mid())).collect()
    }
}

/// Coefficients of `p(x) / (x - ρ)` for a complex `ρ`.
fn deflate(coeffs: &[f64], re: f64, im: f64) -> Vec<(f64, f64)> {
    let d = coeffs.len() - 1;
    let mut out = vec![(0.0, 0.0); d];
    let mut acc = (0.0, 0.0);
    for i in (0..d).rev() {
        // acc <- acc*ρ + c_{i+1}
        acc = (acc.0 * re - acc.1 * im + coeffs[i + 1], acc.0 * im + acc.1 * re);
        out[i] = acc;
    }
    out
}

fn normalize(v: &mut [f64]) {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
}

/// Splits `R^d` into the dominant eigenline and the remaining real
/// invariant subspaces.
pub fn eigen_split(ctx: &NumberFieldContext) -> Result<EigenSplit, ConeError> {
    let d = ctx.degree();
    let coeffs = ctx.minpoly().coeffs();
    // synthetic division by x - λ in Z[λ]
    let mut dominant = vec![Coords::<BigInt>::zero(d); d];
    let mut acc = Coords::<BigInt>::zero(d);
    for i in (0..d).rev() {
        acc = ctx.mul_lambda_unchecked(&acc);
        acc.0[0] += &coeffs[i + 1];
        dominant[i] = acc.clone();
    }
    let dominant_intervals = dominant
        .iter()
        .map(|v| ctx.real_embed(v, 64))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| ConeError::PrecisionExhausted)?;

    let lambda_lo = ctx.lambda_interval().lo.clone();
    let cf: Vec<f64> = coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    let mut subspaces = Vec::new();
    for (i, b) in ctx.roots().iter().enumerate() {
        if i == ctx.lambda_index() {
            continue;
        }
        let (_, hi) = b.modulus_bounds(2 * ctx.precision());
        if hi >= lambda_lo {
            return Err(ConeError::NotPerron);
        }
        let (re, im) = b.center_f64();
        if b.real {
            let mut basis: Vec<f64> = deflate(&cf, re, 0.0).into_iter().map(|z| z.0).collect();
            normalize(&mut basis);
            subspaces.push(Subspace::Real { basis, root: re, modulus_hi: hi });
        } else if b.im.is_positive() {
            let w = deflate(&cf, re, im);
            let n = w.iter().map(|z| z.0 * z.0 + z.1 * z.1).sum::<f64>().sqrt();
            subspaces.push(Subspace::Complex {
                re: w.iter().map(|z| z.0 / n).collect(),
                im: w.iter().map(|z| z.1 / n).collect(),
                root: (re, im),
                modulus_hi: hi,
            });
        }
    }
    debug_assert_eq!(1 + subspaces.iter().map(Subspace::dim).sum::<usize>(), d);
    Ok(EigenSplit {
        dominant,
        dominant_intervals,
        subspaces,
        lambda_lo,
    })
}

/// A rational polyhedral cone with integer generators, certified invariant
/// under `C_λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalCone {
    pub generators: Vec<LatticeElement>,
    /// `certificate[j]` expresses `C_λ·u_j` as a nonnegative combination of
    /// the generators.
    pub certificate: Vec<Vec<String>>,
    pub scale: u64,
    pub polygon_k: Vec<usize>,
    /// Rational point near the dominant eigenvector and the `ℓ∞` radius of
    /// the box, centred there, known to contain the eigenvector.
    pub interior_center: Vec<String>,
    pub interior_radius: String,
}

impl RationalCone {
    pub fn dim(&self) -> usize {
        self.generators.first().map_or(0, Coords::dim)
    }

    fn matrix(&self) -> Matrix<BigRational> {
        let d = self.dim();
        Matrix::from_fn(d, self.generators.len(), |i, j| {
            BigRational::from_integer(self.generators[j][i].clone())
        })
    }

    pub fn certificate_rationals(&self) -> Vec<Vec<BigRational>> {
        self.certificate
            .iter()
            .map(|row| row.iter().map(|s| s.parse().expect("rational")).collect())
            .collect()
    }
}

/// Outcome of a membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Nonnegative coefficients reproducing the point exactly.
    Member(Vec<BigRational>),
    NotMember,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

/// Exact membership of an integer point.
pub fn cone_member(cone: &RationalCone, x: &LatticeElement) -> Membership {
    member_rational(cone, &x.map(|v| BigRational::from_integer(v.clone()))).0
}

/// Exact membership of a rational point, reporting the kernel used.
pub fn member_rational(cone: &RationalCone, x: &Coords<BigRational>) -> (Membership, Method) {
    let (sol, method) = nonneg_solution(&cone.matrix(), &x.0);
    let m = match sol {
        Some(c) => Membership::Member(c),
        None => Membership::NotMember,
    };
    (m, method)
}

/// Candidate directions: `v₁ ± v` for real conjugates and `v₁ + w` for `w`
/// running over a regular `2k`-gon in each complex subspace.
fn candidate_directions(split: &EigenSplit, lambda: f64, k_start: usize) -> Option<(Vec<Vec<f64>>, Vec<usize>)> {
    let mut v1 = split.dominant_f64();
    normalize(&mut v1);
    let mut dirs = Vec::new();
    let mut ks = Vec::new();
    for s in &split.subspaces {
        match s {
            Subspace::Real { basis, .. } => {
                for sign in [1.0, -1.0] {
                    dirs.push(v1.iter().zip(basis).map(|(a, b)| a + sign * b).collect());
                }
            }
            Subspace::Complex { re, im, modulus_hi, .. } => {
                let rho = ratio_to_f64(modulus_hi);
                // the inscribed polygon stays invariant once λ·cos(π/2k) > |ρ|
                let mut k = k_start.max(2);
                while lambda * (std::f64::consts::PI / (2 * k) as f64).cos() <= rho * (1.0 + 1e-9) {
                    k += 1;
                    if k > 4096 {
                        return None;
                    }
                }
                ks.push(k);
                for t in 0..2 * k {
                    let th = std::f64::consts::PI * t as f64 / k as f64;
                    let (c, sn) = (th.cos(), th.sin());
                    dirs.push(
                        v1.iter()
                            .zip(re.iter().zip(im))
                            .map(|(a, (x, y))| a + c * x + sn * y)
                            .collect(),
                    );
                }
            }
        }
    }
    if split.subspaces.is_empty() {
        dirs.push(v1);
    }
    Some((dirs, ks))
}

fn round_primitive(dir: &[f64], scale: u64) -> Option<LatticeElement> {
    let v: Vec<BigInt> = dir
        .iter()
        .map(|x| {
            let y = (x * scale as f64).round();
            BigInt::from(y as i64)
        })
        .collect();
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    Some(Coords(v.into_iter().map(|x| x / &g).collect()))
}

/// Builds and certifies an invariant cone, doubling the rounding scale on
/// failure.
pub fn build_rational_cone(
    ctx: &NumberFieldContext,
    split: &EigenSplit,
    opts: &ConeOptions,
) -> Result<RationalCone, ConeError> {
    let lambda = ctx.lambda_f64();
    let (dirs, ks) =
        candidate_directions(split, lambda, opts.polygon_k).ok_or(ConeError::ConeSearchFailed { cap: opts.scale_cap })?;
    let mut scale = opts.scale_start.max(1);
    while scale <= opts.scale_cap {
        if let Some(cone) = try_scale(ctx, split, &dirs, scale, &ks)? {
            return Ok(cone);
        }
        scale *= 2;
    }
    Err(ConeError::ConeSearchFailed { cap: opts.scale_cap })
}

fn try_scale(
    ctx: &NumberFieldContext,
    split: &EigenSplit,
    dirs: &[Vec<f64>],
    scale: u64,
    ks: &[usize],
) -> Result<Option<RationalCone>, ConeError> {
    let d = ctx.degree();
    let mut gens: Vec<LatticeElement> = Vec::new();
    for dir in dirs {
        if let Some(u) = round_primitive(dir, scale) {
            if !gens.contains(&u) {
                gens.push(u);
            }
        }
    }
    if gens.len() < d {
        return Ok(None);
    }
    let gm = Matrix::from_fn(d, gens.len(), |i, j| gens[j][i].clone());
    if rank(&gm) < d {
        return Ok(None);
    }
    for u in &gens {
        let iv = ctx.real_embed(u, 32).map_err(|_| ConeError::PrecisionExhausted)?;
        if !iv.is_positive() {
            return Ok(None);
        }
    }
    let mut cone = RationalCone {
        generators: gens.clone(),
        certificate: Vec::new(),
        scale,
        polygon_k: ks.to_vec(),
        interior_center: Vec::new(),
        interior_radius: String::new(),
    };
    let mut cert = Vec::with_capacity(gens.len());
    for u in &gens {
        match cone_member(&cone, &ctx.mul_lambda_unchecked(u)) {
            Membership::Member(c) => cert.push(c.iter().map(ToString::to_string).collect()),
            Membership::NotMember => return Ok(None),
        }
    }
    cone.certificate = cert;
    // interiority: the cross-polytope of ℓ1-radius 2dε about the rational
    // centre contains the ℓ∞ box of radius ε about the eigenvector
    let center: Vec<BigRational> = split.dominant_intervals.iter().map(Interval::mid).collect();
    let eps = split
        .dominant_intervals
        .iter()
        .map(|iv| iv.width())
        .max()
        .unwrap_or_else(BigRational::zero);
    let delta = &eps * BigRational::from_integer(BigInt::from(2 * d as i64)) + &eps;
    for i in 0..d {
        for sign in [1i64, -1] {
            let mut p = center.clone();
            p[i] += &delta * BigRational::from_integer(sign.into());
            if !member_rational(&cone, &Coords(p)).0.is_member() {
                return Ok(None);
            }
        }
    }
    cone.interior_center = center.iter().map(ToString::to_string).collect();
    cone.interior_radius = eps.to_string();
    Ok(Some(cone))
}

/// Re-checks the invariance certificate by direct substitution:
/// `Σ_i c_ij u_i = C_λ u_j` with every `c_ij >= 0`.
pub fn verify_invariance(ctx: &NumberFieldContext, cone: &RationalCone) -> bool {
    let cert = cone.certificate_rationals();
    if cert.len() != cone.generators.len() {
        return false;
    }
    let d = cone.dim();
    cone.generators.iter().zip(&cert).all(|(u, c)| {
        if c.len() != cone.generators.len() || c.iter().any(Signed::is_negative) {
            return false;
        }
        let image = ctx.mul_lambda_unchecked(u).map(|v| BigRational::from_integer(v.clone()));
        let mut sum = Coords::<BigRational>::zero(d);
        for (ci, ui) in c.iter().zip(&cone.generators) {
            sum = &sum + &ui.map(|v| BigRational::from_integer(v.clone())).scale(ci);
        }
        sum == image
    })
}

/// Salience witness: `u` and `-u` are never both members.
pub fn is_salient_on(cone: &RationalCone, u: &LatticeElement) -> bool {
    u.is_zero() || !(cone_member(cone, u).is_member() && cone_member(cone, &-u).is_member())
}
