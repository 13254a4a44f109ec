//! Split graphs `S(Γ)` and split maps `S(f)`.
//!
//! Every edge `x_i` of a bipartite graph is replaced by seven edges
//! `a_i … g_i`, labelled `a{i}` with 1-based `i`, each running from the
//! class-0 endpoint of `x_i` to its class-1 endpoint.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphmap::{Edge, EdgeId, EdgePath, Graph, GraphError, GraphMap, SignedEdge, SymbolicMetric, VertexId};
use crate::traintrack::{prototype_steps, PROTOTYPE_LETTERS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SplitError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("vertex classes must be 0 or 1 with every edge joining different classes")]
    BadClasses,
    #[error("image of edge {edge} has even length {length}")]
    EvenImageLength { edge: String, length: usize },
    #[error("edge {edge} maps to the empty path")]
    CollapsedEdge { edge: String },
    #[error("map moves vertex {vertex} to the other class")]
    BipartitionNotPreserved { vertex: String },
    #[error("map does not act on the graph that was split")]
    GraphMismatch,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Prototype letter index, `a = 0 … g = 6`.
    pub letter: usize,
    pub original: EdgeId,
    /// The copy runs against the orientation of the original edge.
    pub flipped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitGraph {
    original: Graph,
    classes: Vec<u8>,
    graph: Graph,
    provenance: Vec<Provenance>,
}

impl SplitGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn original(&self) -> &Graph {
        &self.original
    }

    pub fn classes(&self) -> &[u8] {
        &self.classes
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn letter(&self, e: EdgeId) -> usize {
        self.provenance[e.0].letter
    }

    /// The copy `y_i` for letter `y` of original edge `i`.
    pub fn copy(&self, letter: usize, original: EdgeId) -> EdgeId {
        EdgeId(original.0 * 7 + letter)
    }

    /// Each copy inherits the length of its original edge.
    pub fn inherited_metric(&self, metric: &SymbolicMetric) -> SymbolicMetric {
        SymbolicMetric {
            lengths: self.provenance.iter().map(|p| metric.lengths[p.original.0].clone()).collect(),
        }
    }

    /// Rows `(split label, letter, original label, flipped)`.
    pub fn provenance_table(&self) -> Vec<(String, char, String, bool)> {
        self.provenance
            .iter()
            .enumerate()
            .map(|(i, p)| {
                (
                    self.graph.label(EdgeId(i)).to_string(),
                    PROTOTYPE_LETTERS[p.letter],
                    self.original.label(p.original).to_string(),
                    p.flipped,
                )
            })
            .collect()
    }
}

/// Splits `g` along the given two-colouring, or along the colouring that
/// puts the first vertex of every component in class 0.
pub fn split_graph(g: &Graph, classes: Option<&[u8]>) -> Result<SplitGraph, SplitError> {
    let classes = match classes {
        Some(c) => {
            let ok = c.len() == g.vertex_count()
                && c.iter().all(|&x| x <= 1)
                && g.edges().iter().all(|e| c[e.from.0] != c[e.to.0]);
            if !ok {
                return Err(SplitError::BadClasses);
            }
            c.to_vec()
        }
        None => g.bipartition().ok_or(SplitError::NotBipartite)?,
    };
    let mut edges = Vec::with_capacity(7 * g.edge_count());
    let mut provenance = Vec::with_capacity(7 * g.edge_count());
    for (i, e) in g.edges().iter().enumerate() {
        let flipped = classes[e.from.0] == 1;
        let (from, to) = if flipped { (e.to, e.from) } else { (e.from, e.to) };
        for (letter, c) in PROTOTYPE_LETTERS.iter().enumerate() {
            edges.push(Edge {
                from,
                to,
                label: format!("{c}{}", i + 1),
            });
            provenance.push(Provenance {
                letter,
                original: EdgeId(i),
                flipped,
            });
        }
    }
    Ok(SplitGraph {
        original: g.clone(),
        classes,
        graph: Graph::new(g.vertex_names().to_vec(), edges)?,
        provenance,
    })
}

/// `S(f)(y_i) = φ_n(y)` with `n = ‖f(x_i)‖`, the k-th letter carrying the
/// subscript of the k-th step of `f(x_i)`.
pub fn split_map(split: &SplitGraph, f: &GraphMap) -> Result<GraphMap, SplitError> {
    let g = split.original();
    if f.graph() != g {
        return Err(SplitError::GraphMismatch);
    }
    for (i, p) in f.edge_images().iter().enumerate() {
        let edge = g.label(EdgeId(i)).to_string();
        if p.is_empty() {
            return Err(SplitError::CollapsedEdge { edge });
        }
        if p.len() % 2 == 0 {
            return Err(SplitError::EvenImageLength { edge, length: p.len() });
        }
    }
    for v in 0..g.vertex_count() {
        if split.classes[f.vertex_image(VertexId(v)).0] != split.classes[v] {
            return Err(SplitError::BipartitionNotPreserved {
                vertex: g.vertex_name(VertexId(v)).to_string(),
            });
        }
    }
    let sg = split.graph();
    let mut images = Vec::with_capacity(sg.edge_count());
    for (k, prov) in split.provenance().iter().enumerate() {
        let original = SignedEdge {
            edge: prov.original,
            reversed: prov.flipped,
        };
        let word = f.image_of(original);
        let proto = prototype_steps(prov.letter, word.len() as u32).expect("image length is odd");
        let steps = proto
            .iter()
            .zip(&word)
            .map(|(p, s)| SignedEdge {
                edge: split.copy(p.edge.0, s.edge),
                reversed: p.reversed,
            })
            .collect();
        images.push(EdgePath::new(sg, f.vertex_image(sg.edge(EdgeId(k)).from), steps)?);
    }
    Ok(GraphMap::new(sg.clone(), f.vertex_images().to_vec(), images)?)
}
