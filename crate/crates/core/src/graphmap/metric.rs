//! Edge lengths in `Z[λ]` and exact uniform-expansion certificates.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{GraphError, GraphMap, TransitionMatrix};
use crate::linalg::Coords;
use crate::numberfield::NumberFieldContext;
use crate::LatticeElement;

/// Length of one edge. `coords` is the exact value in `Z[λ]`; for glued
/// maps `fan_exponent = k` records that the length is `λ^k` times a base
/// length, with the product already folded into `coords`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLength {
    pub coords: LatticeElement,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan_exponent: Option<u32>,
}

impl EdgeLength {
    pub fn plain(coords: LatticeElement) -> Self {
        EdgeLength {
            coords,
            fan_exponent: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicMetric {
    pub lengths: Vec<EdgeLength>,
}

impl SymbolicMetric {
    pub fn new(lengths: Vec<LatticeElement>) -> Self {
        SymbolicMetric {
            lengths: lengths.into_iter().map(EdgeLength::plain).collect(),
        }
    }

    /// Every edge of length one in a degree-`d` field.
    pub fn unit(edges: usize, d: usize) -> Self {
        Self::new(vec![Coords::unit(d, 0); edges])
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn coords(&self, i: usize) -> &LatticeElement {
        &self.lengths[i].coords
    }

    pub fn to_f64(&self, ctx: &NumberFieldContext) -> Vec<f64> {
        self.lengths.iter().map(|l| ctx.embed_f64(&l.coords)).collect()
    }
}

/// One checked edge: the length of its image and `λ` times its length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionRow {
    pub edge: String,
    pub image_length: LatticeElement,
    pub scaled_length: LatticeElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionCertificate {
    pub rows: Vec<ExpansionRow>,
}

fn length_of(metric: &SymbolicMetric, steps: &[super::SignedEdge], d: usize) -> LatticeElement {
    steps
        .iter()
        .fold(Coords::zero(d), |acc, s| &acc + metric.coords(s.edge.0))
}

/// Verifies `Σ_{steps of f(e)} ℓ = λ·ℓ(e)` for every edge in exact lattice
/// arithmetic, after certifying every length positive.
pub fn check_uniform_expansion(
    f: &GraphMap,
    metric: &SymbolicMetric,
    ctx: &NumberFieldContext,
) -> Result<ExpansionCertificate, GraphError> {
    let g = f.graph();
    if metric.len() != g.edge_count() {
        return Err(GraphError::MetricSize {
            expected: g.edge_count(),
            got: metric.len(),
        });
    }
    let d = ctx.degree();
    for (i, l) in metric.lengths.iter().enumerate() {
        let iv = ctx.real_embed(&l.coords, 32)?;
        if !iv.is_positive() {
            return Err(GraphError::MetricNotPositive {
                edge: g.label(super::EdgeId(i)).to_string(),
            });
        }
    }
    let mut rows = Vec::with_capacity(g.edge_count());
    for (i, p) in f.edge_images().iter().enumerate() {
        let image_length = length_of(metric, p.steps(), d);
        let scaled_length = ctx.mul_lambda(metric.coords(i))?;
        let label = g.label(super::EdgeId(i)).to_string();
        if image_length != scaled_length {
            return Err(GraphError::ExpansionViolation { edge: label });
        }
        rows.push(ExpansionRow {
            edge: label,
            image_length,
            scaled_length,
        });
    }
    Ok(ExpansionCertificate { rows })
}

/// The exact identity `ℓᵀ T = λ ℓᵀ` over `Z[λ]`.
pub fn left_eigen_identity(t: &TransitionMatrix, metric: &SymbolicMetric, ctx: &NumberFieldContext) -> bool {
    let n = t.size();
    if metric.len() != n {
        return false;
    }
    let d = ctx.degree();
    (0..n).all(|j| {
        let lhs = (0..n).fold(Coords::<BigInt>::zero(d), |acc, i| {
            &acc + &metric.coords(i).scale(&t.matrix()[(i, j)])
        });
        ctx.mul_lambda(metric.coords(j)).is_ok_and(|r| r == lhs)
    })
}
