//! Search for the exponent `M` and coefficients `e` of the key identity
//! `λ^M s_k = Σ_i (2e_i^{(k)} + 2) s_i + 2λ s_k + λ^{n0} s_k`.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gordan::{decompose, recompose, SemigroupGenerators};
use super::{ConeError, RationalCone};
use crate::linalg::Coords;
use crate::numberfield::NumberFieldContext;
use crate::LatticeElement;

/// Everything needed to write down the star map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarRecipe {
    /// Number of tips per fan.
    #[serde(rename = "M")]
    pub m: u64,
    pub n0: u64,
    #[serde(rename = "N")]
    pub n: u64,
    /// `p` with `M = p(N - n0) + N`.
    pub p: u64,
    /// `e[k][i] = e_i^{(k)}`.
    #[serde(with = "crate::io::bigint_rows")]
    pub e: Vec<Vec<BigInt>>,
    /// `T = s_1 + … + s_m`.
    pub t: LatticeElement,
    /// `g_k = λ^{n0} s_k + 2(T + λ s_k)`.
    pub g: Vec<LatticeElement>,
}

fn g_k(ctx: &NumberFieldContext, t: &LatticeElement, s: &LatticeElement, n0: u64) -> LatticeElement {
    let lam_s = ctx.mul_lambda_unchecked(s);
    let two = BigInt::from(2);
    &ctx.mul_lambda_pow(s, n0) + &(t + &lam_s).scale(&two)
}

/// `e^{(k)}` for exponent `m`, if `λ^m s_k - g_k` is a nonzero even lattice
/// element whose half lies in the semigroup.
fn try_tip(
    ctx: &NumberFieldContext,
    gens: &SemigroupGenerators,
    cone: &RationalCone,
    s: &LatticeElement,
    g: &LatticeElement,
    m: u64,
) -> Option<Vec<BigInt>> {
    let h = &ctx.mul_lambda_pow(s, m) - g;
    if h.is_zero() || h.iter().any(|x| x.is_odd()) {
        return None;
    }
    let half = Coords(h.iter().map(|x| x / 2).collect());
    decompose(gens, cone, &half).ok()
}

/// Searches `p = 0, 1, 2, …` and accepts the first `M = p(N - n0) + N` that
/// works for every generator.
pub fn find_recipe(
    ctx: &NumberFieldContext,
    gens: &SemigroupGenerators,
    cone: &RationalCone,
    n0: u64,
    n: u64,
    p_cap: u64,
) -> Result<StarRecipe, ConeError> {
    assert!(n > n0 && n0 >= 1);
    let t = gens.sum();
    let g: Vec<LatticeElement> = gens.elements.iter().map(|s| g_k(ctx, &t, s, n0)).collect();
    for p in 0..=p_cap {
        let m = p * (n - n0) + n;
        let tips: Vec<Option<Vec<BigInt>>> = gens
            .elements
            .par_iter()
            .zip(g.par_iter())
            .map(|(s, gk)| try_tip(ctx, gens, cone, s, gk, m))
            .collect();
        if tips.iter().all(Option::is_some) {
            let recipe = StarRecipe {
                m,
                n0,
                n,
                p,
                e: tips.into_iter().map(Option::unwrap).collect(),
                t,
                g,
            };
            assert!(verify_recipe(ctx, gens, &recipe), "key identity failed after acceptance");
            return Ok(recipe);
        }
    }
    Err(ConeError::RecipeSearchExhausted { p_cap })
}

/// Re-verifies the key identity as an exact integer-vector equation for
/// every `k`, along with the shape constraints on `M`.
pub fn verify_recipe(ctx: &NumberFieldContext, gens: &SemigroupGenerators, r: &StarRecipe) -> bool {
    if r.n <= r.n0 || r.m <= r.n0 || r.m != r.p * (r.n - r.n0) + r.n {
        return false;
    }
    if r.e.len() != gens.len() || r.e.iter().any(|row| row.len() != gens.len()) {
        return false;
    }
    let two = BigInt::from(2);
    gens.elements.iter().zip(&r.e).all(|(s, ek)| {
        if ek.iter().any(|x| x < &BigInt::from(0)) {
            return false;
        }
        let coeffs: Vec<BigInt> = ek.iter().map(|x| x * &two + &two).collect();
        let rhs = &(&recompose(gens, &coeffs) + &ctx.mul_lambda_unchecked(s).scale(&two)) + &ctx.mul_lambda_pow(s, r.n0);
        ctx.mul_lambda_pow(s, r.m) == rhs
    })
}

/// Stability evidence: `λ^M s_k - g_k` and `λ^{M + N - n0} s_k - g_k` both
/// decompose over the semigroup generators.
pub fn slim_cone_witness(
    ctx: &NumberFieldContext,
    gens: &SemigroupGenerators,
    cone: &RationalCone,
    r: &StarRecipe,
) -> bool {
    [r.m, r.m + (r.n - r.n0)].iter().all(|&m| {
        gens.elements.iter().zip(&r.g).all(|(s, g)| {
            let h = &ctx.mul_lambda_pow(s, m) - g;
            !h.is_zero() && decompose(gens, cone, &h).is_ok()
        })
    })
}
