//! Transition matrices and their dynamics: irreducibility, primitivity,
//! Perron–Frobenius estimates, entropy and variation growth.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Float, One, ToPrimitive, Zero};
use serde::Serialize;

use super::{GraphError, GraphMap};
use crate::linalg::Matrix;

/// Entry `(i, j)` counts traversals of edge `i`, in either direction, in
/// the image of edge `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TransitionMatrix(pub Matrix<BigInt>);

impl TransitionMatrix {
    pub fn of(f: &GraphMap) -> Self {
        let n = f.graph().edge_count();
        let mut m = Matrix::zeros(n, n);
        for (j, p) in f.edge_images().iter().enumerate() {
            for s in p.steps() {
                m[(s.edge.0, j)] += 1;
            }
        }
        TransitionMatrix(m)
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix<BigInt> {
        &self.0
    }

    pub fn pow(&self, n: u64) -> Self {
        TransitionMatrix(self.0.pow(n))
    }

    pub fn column_sums(&self) -> Vec<BigInt> {
        (0..self.size())
            .map(|j| (0..self.size()).map(|i| self.0[(i, j)].clone()).sum())
            .collect()
    }

    /// Successor lists of the digraph with an arc `j -> i` when entry
    /// `(i, j)` is positive.
    fn successors(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut out = vec![Vec::new(); n];
        for (i, j, v) in self.0.entries() {
            if v > &BigInt::zero() {
                out[j].push(i);
            }
        }
        out
    }
}

fn reach(adj: &[Vec<usize>], from: usize) -> Vec<Option<usize>> {
    let mut level = vec![None; adj.len()];
    level[from] = Some(0);
    let mut q = VecDeque::from([from]);
    while let Some(u) = q.pop_front() {
        let lu = level[u].unwrap();
        for &w in &adj[u] {
            if level[w].is_none() {
                level[w] = Some(lu + 1);
                q.push_back(w);
            }
        }
    }
    level
}

/// Irreducibility: the transition digraph is strongly connected (and a
/// 1×1 matrix must be positive).
pub fn is_ergodic(t: &TransitionMatrix) -> bool {
    let n = t.size();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return t.0[(0, 0)] > BigInt::zero();
    }
    let succ = t.successors();
    let mut pred = vec![Vec::new(); n];
    for (u, ws) in succ.iter().enumerate() {
        for &w in ws {
            pred[w].push(u);
        }
    }
    reach(&succ, 0).iter().all(Option::is_some) && reach(&pred, 0).iter().all(Option::is_some)
}

/// Period of a strongly connected digraph: the gcd over arcs `u -> w` of
/// `level(u) + 1 - level(w)` for BFS levels from any vertex. Returns `None`
/// when the matrix is not ergodic.
pub fn period(t: &TransitionMatrix) -> Option<u64> {
    if !is_ergodic(t) {
        return None;
    }
    let succ = t.successors();
    let level = reach(&succ, 0);
    let mut g: i64 = 0;
    for (u, ws) in succ.iter().enumerate() {
        for &w in ws {
            let diff = level[u].unwrap() as i64 + 1 - level[w].unwrap() as i64;
            g = g.gcd(&diff);
        }
    }
    Some(g.unsigned_abs())
}

/// Same as [`period`]; name used where the digraph reading matters.
pub fn transition_digraph_period(t: &TransitionMatrix) -> Option<u64> {
    period(t)
}

/// Primitivity: ergodic with period one. Never powers the matrix.
pub fn is_mixing(t: &TransitionMatrix) -> bool {
    period(t) == Some(1)
}

/// Power-iteration estimate with Collatz–Wielandt bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PfEstimate<F> {
    pub value: F,
    pub lower: F,
    pub upper: F,
    pub iterations: usize,
}

/// Perron–Frobenius eigenvalue by power iteration on `A + I`.
///
/// For a positive vector `x` the ratios `(Bx)_i / x_i` bracket the spectral
/// radius of `B = A + I`; iteration stops once the bracket is narrower than
/// `tol` relative to its midpoint. The shift keeps periodic matrices from
/// oscillating without changing the eigenvector.
pub fn pf_eigenvalue<F: Float>(t: &TransitionMatrix, tol: F, max_iter: usize) -> Result<PfEstimate<F>, GraphError> {
    let n = t.size();
    if n == 0 {
        return Ok(PfEstimate {
            value: F::zero(),
            lower: F::zero(),
            upper: F::zero(),
            iterations: 0,
        });
    }
    let to_f = |v: &BigInt| F::from(v.to_f64().unwrap_or(f64::INFINITY)).unwrap_or_else(F::infinity);
    let rows: Vec<Vec<(usize, F)>> = (0..n)
        .map(|i| {
            (0..n)
                .filter_map(|j| {
                    let v = &t.0[(i, j)] + if i == j { BigInt::one() } else { BigInt::zero() };
                    (!v.is_zero()).then(|| (j, to_f(&v)))
                })
                .collect()
        })
        .collect();
    let mut x = vec![F::one(); n];
    let mut best = (F::zero(), F::infinity());
    for it in 1..=max_iter {
        let y: Vec<F> = rows
            .iter()
            .map(|r| r.iter().fold(F::zero(), |acc, &(j, a)| acc + a * x[j]))
            .collect();
        let mut lo = F::infinity();
        let mut hi = F::zero();
        for (yi, xi) in y.iter().zip(&x) {
            let r = *yi / *xi;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        best = (best.0.max(lo), best.1.min(hi));
        let one = F::one();
        let mid = (best.0 + best.1) / (one + one);
        if best.1 - best.0 <= tol * mid {
            return Ok(PfEstimate {
                value: mid - one,
                lower: best.0 - one,
                upper: best.1 - one,
                iterations: it,
            });
        }
        let norm = y.iter().fold(F::zero(), |a, &b| a.max(b));
        if norm.partial_cmp(&F::zero()) != Some(std::cmp::Ordering::Greater) || !norm.is_finite() {
            break;
        }
        // keep coordinates positive so the ratio bounds stay valid
        let floor = F::min_positive_value().sqrt();
        x = y.iter().map(|&v| (v / norm).max(floor)).collect();
    }
    let one = F::one();
    let two = one + one;
    Err(GraphError::NonConvergence {
        estimate: ((best.0 + best.1) / two - one).to_f64().unwrap_or(f64::NAN),
    })
}

/// Topological entropy `max(0, log ρ)` of a graph map from its transition
/// matrix.
pub fn entropy(f: &GraphMap, tol: f64) -> Result<f64, GraphError> {
    let pf = pf_eigenvalue::<f64>(&f.transition_matrix(), tol, 1_000_000)?;
    Ok(if pf.value > 1.0 { pf.value.ln() } else { 0.0 })
}

/// One row of the variation-growth table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VarGrowth<F> {
    pub k: usize,
    /// `(1/k) log Var(f^k)`.
    pub raw: F,
    /// `(1/k) (log Var(f^k) - log ℓ(Γ))`.
    pub corrected: F,
}

/// Growth of total length `Var(f^k) = ℓᵀ T^k 1` for `k = 1..=n`, computed
/// by iterating the row vector `ℓᵀ T` with log-scale renormalisation.
pub fn var_growth<F: Float>(t: &TransitionMatrix, lengths: &[F], n: usize) -> Vec<VarGrowth<F>> {
    let size = t.size();
    assert_eq!(lengths.len(), size);
    let to_f = |v: &BigInt| F::from(v.to_f64().unwrap_or(f64::INFINITY)).unwrap_or_else(F::infinity);
    let cols: Vec<Vec<(usize, F)>> = (0..size)
        .map(|j| {
            (0..size)
                .filter_map(|i| {
                    let v = &t.0[(i, j)];
                    (!v.is_zero()).then(|| (i, to_f(v)))
                })
                .collect()
        })
        .collect();
    let total = lengths.iter().fold(F::zero(), |a, &b| a + b);
    let log_total = total.ln();
    let mut w: Vec<F> = lengths.to_vec();
    let mut log_scale = F::zero();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        w = cols
            .iter()
            .map(|c| c.iter().fold(F::zero(), |acc, &(i, a)| acc + w[i] * a))
            .collect();
        let s = w.iter().fold(F::zero(), |a, &b| a + b);
        let log_var = log_scale + s.ln();
        let kf = F::from(k).unwrap();
        out.push(VarGrowth {
            k,
            raw: log_var / kf,
            corrected: (log_var - log_total) / kf,
        });
        if s > F::zero() && s.is_finite() {
            log_scale = log_scale + s.ln();
            w = w.iter().map(|&x| x / s).collect();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tm(rows: &[&[i64]]) -> TransitionMatrix {
        TransitionMatrix(Matrix::from_i64_rows(rows))
    }

    #[test]
    fn ergodic_and_mixing_cases() {
        let cyc = tm(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert!(is_ergodic(&cyc));
        assert_eq!(period(&cyc), Some(3));
        assert!(!is_mixing(&cyc));
        let blocks = tm(&[&[1, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 1, 1]]);
        assert!(!is_ergodic(&blocks));
        let two = tm(&[&[0, 1], &[1, 0]]);
        assert!(is_ergodic(&two) && !is_mixing(&two));
        let looped = tm(&[&[1, 1], &[1, 0]]);
        assert!(is_mixing(&looped));
        assert!(!is_ergodic(&tm(&[&[0]])));
        assert!(is_mixing(&tm(&[&[3]])));
    }

    #[test]
    fn pf_values() {
        let q = pf_eigenvalue::<f64>(&tm(&[&[0, 2], &[1, 3]]), 1e-12, 100_000).unwrap();
        let exact = (3.0 + 17f64.sqrt()) / 2.0;
        assert!((q.value - exact).abs() < 1e-10);
        assert!(q.lower <= exact + 1e-12 && exact - 1e-12 <= q.upper);
        let id = pf_eigenvalue::<f64>(&tm(&[&[1, 0], &[0, 1]]), 1e-12, 100).unwrap();
        assert!((id.value - 1.0).abs() < 1e-12);
        let f32v = pf_eigenvalue::<f32>(&tm(&[&[0, 2], &[1, 3]]), 1e-5, 100_000).unwrap();
        assert!((f64::from(f32v.value) - exact).abs() < 1e-3);
    }

    #[test]
    fn growth_of_uniform_matrix() {
        // column sums all 5, so unit lengths grow by exactly 5 per step
        let t = tm(&[&[2, 3], &[3, 2]]);
        let g = var_growth::<f64>(&t, &[1.0, 1.0], 40);
        assert!((g[39].corrected - 5f64.ln()).abs() < 1e-12);
        assert!((g[0].raw - 10f64.ln()).abs() < 1e-12);
    }
}
