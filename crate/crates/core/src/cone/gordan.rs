//! Lattice points of the half-open parallelepiped spanned by the cone
//! generators, and integer decomposition over them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{cone_member, ConeError, Membership, RationalCone};
use crate::linalg::{det, Coords, Matrix};
use crate::LatticeElement;

/// Generators `s_1, …, s_m` of the semigroup of lattice points in the cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupGenerators {
    pub elements: Vec<LatticeElement>,
    /// Number of lattice points examined in the bounding box.
    pub parallelepiped_count: u64,
}

impl SemigroupGenerators {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn sum(&self) -> LatticeElement {
        let d = self.elements.first().map_or(0, Coords::dim);
        self.elements.iter().fold(Coords::zero(d), |acc, s| &acc + s)
    }
}

/// Facet description of the zonotope `{Σ a_j u_j : 0 <= a_j <= 1}`:
/// integer normals with lower/upper bounds.
#[derive(Clone, Debug)]
pub struct Zonotope {
    facets: Vec<(Vec<BigInt>, BigInt, BigInt)>,
}

impl Zonotope {
    pub fn new(gens: &[LatticeElement]) -> Self {
        let d = gens.first().map_or(0, Coords::dim);
        let mut normals: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        if d == 1 {
            normals.insert(vec![BigInt::one()]);
        } else {
            for subset in combinations(gens.len(), d - 1) {
                if let Some(n) = cross(gens, &subset, d) {
                    normals.insert(n);
                }
            }
        }
        let facets = normals
            .into_iter()
            .map(|n| {
                let mut lo = BigInt::zero();
                let mut hi = BigInt::zero();
                for u in gens {
                    let v = dot(&n, u);
                    if v.is_negative() {
                        lo += v;
                    } else {
                        hi += v;
                    }
                }
                (n, lo, hi)
            })
            .collect();
        Zonotope { facets }
    }

    pub fn contains(&self, x: &LatticeElement) -> bool {
        self.facets.iter().all(|(n, lo, hi)| {
            let v = dot(n, x);
            lo <= &v && &v <= hi
        })
    }
}

fn dot(n: &[BigInt], x: &LatticeElement) -> BigInt {
    n.iter().zip(x.iter()).map(|(a, b)| a * b).sum()
}

/// Generalized cross product of `d-1` generators, primitive with a positive
/// leading entry, or `None` when they are dependent.
fn cross(gens: &[LatticeElement], subset: &[usize], d: usize) -> Option<Vec<BigInt>> {
    let mut n = Vec::with_capacity(d);
    for skip in 0..d {
        let rows: Vec<usize> = (0..d).filter(|&r| r != skip).collect();
        let m = Matrix::from_fn(d - 1, d - 1, |i, j| gens[subset[j]][rows[i]].clone());
        let c = det(&m);
        n.push(if skip % 2 == 0 { c } else { -c });
    }
    let g = n.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    let lead_neg = n.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative);
    Some(
        n.into_iter()
            .map(|x| if lead_neg { -(x / &g) } else { x / &g })
            .collect(),
    )
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Whether `x` lies in the closed zonotope spanned by the generators.
pub fn zonotope_contains(gens: &[LatticeElement], x: &LatticeElement) -> bool {
    Zonotope::new(gens).contains(x)
}

/// Enumerates the nonzero lattice points of `H = {Σ a_j u_j : a_j ∈ [0,1]}`.
/// Cone generators come first, the rest follow in lexicographic order.
pub fn gordan_generators(cone: &RationalCone, cap: u64) -> Result<SemigroupGenerators, ConeError> {
    let gens = &cone.generators;
    let d = cone.dim();
    let mut lo = vec![BigInt::zero(); d];
    let mut hi = vec![BigInt::zero(); d];
    for u in gens {
        for i in 0..d {
            if u[i].is_negative() {
                lo[i] += &u[i];
            } else {
                hi[i] += &u[i];
            }
        }
    }
    let mut count = BigInt::one();
    for i in 0..d {
        count *= &hi[i] - &lo[i] + 1;
    }
    if count > BigInt::from(cap) {
        return Err(ConeError::EnumerationCapExceeded {
            count: count.to_string(),
            cap,
        });
    }
    let z = Zonotope::new(gens);
    let mut elements: Vec<LatticeElement> = gens.clone();
    let mut point: Vec<BigInt> = lo.clone();
    let mut examined = 0u64;
    loop {
        examined += 1;
        let x = Coords(point.clone());
        if !x.is_zero() && z.contains(&x) && !gens.contains(&x) {
            elements.push(x);
        }
        // odometer increment, last coordinate fastest
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(SemigroupGenerators {
                    elements,
                    parallelepiped_count: examined,
                });
            }
            i -= 1;
            if point[i] < hi[i] {
                point[i] += 1;
                for (j, p) in point.iter_mut().enumerate().skip(i + 1) {
                    *p = lo[j].clone();
                }
                break;
            }
        }
    }
}

/// Nonnegative integer coefficients `c` with `t = Σ c_i s_i`.
///
/// Takes rational cone coordinates of `t`, splits off their integer parts,
/// and matches the lattice remainder, which lies in the parallelepiped,
/// against the generator list.
pub fn decompose(
    gens: &SemigroupGenerators,
    cone: &RationalCone,
    t: &LatticeElement,
) -> Result<Vec<BigInt>, ConeError> {
    let fail = || ConeError::DecompositionFailed(t.to_string());
    let Membership::Member(b) = cone_member(cone, t) else {
        return Err(fail());
    };
    let mut c = vec![BigInt::zero(); gens.len()];
    let mut rem = t.clone();
    for (j, (bj, u)) in b.iter().zip(&cone.generators).enumerate() {
        let n = bj.floor().to_integer();
        if n.is_zero() {
            continue;
        }
        let idx = gens.elements.iter().position(|s| s == u).unwrap_or(j);
        rem = &rem - &u.scale(&n);
        c[idx] += n;
    }
    if !rem.is_zero() {
        let idx = gens.elements.iter().position(|s| *s == rem).ok_or_else(fail)?;
        c[idx] += 1;
    }
    debug_assert_eq!(&recompose(gens, &c), t);
    Ok(c)
}

/// `Σ c_i s_i`.
pub fn recompose(gens: &SemigroupGenerators, c: &[BigInt]) -> LatticeElement {
    let d = gens.elements.first().map_or(0, Coords::dim);
    gens.elements
        .iter()
        .zip(c)
        .fold(Coords::zero(d), |acc, (s, k)| &acc + &s.scale(k))
}
