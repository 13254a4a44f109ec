//! Finite graphs, edge paths and graph self-maps.

mod json;
mod matrix;
mod metric;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use json::{EdgeJson, MapDocument};
pub use matrix::{
    entropy, is_ergodic, is_mixing, period, pf_eigenvalue, transition_digraph_period, var_growth, PfEstimate,
    TransitionMatrix, VarGrowth,
};
pub use metric::{check_uniform_expansion, left_eigen_identity, EdgeLength, ExpansionCertificate, SymbolicMetric};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {0} does not exist")]
    UnknownVertex(usize),
    #[error("edge {0} does not exist")]
    UnknownEdge(usize),
    #[error("unknown edge label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate or ambiguous edge label {0:?}")]
    DuplicateLabel(String),
    #[error("edge path breaks at step {step}: {detail}")]
    BrokenPath { step: usize, detail: String },
    #[error("image of edge {edge} does not match the images of its endpoints")]
    EndpointMismatch { edge: String },
    #[error("edge {edge} maps to the empty path")]
    CollapsedEdge { edge: String },
    #[error("power iteration did not converge; best estimate {estimate}")]
    NonConvergence { estimate: f64 },
    #[error("uniform expansion fails on edge {edge}")]
    ExpansionViolation { edge: String },
    #[error("length of edge {edge} is not certified positive")]
    MetricNotPositive { edge: String },
    #[error("image path longer than the cap of {cap} steps")]
    PathCapExceeded { cap: u64 },
    #[error("maps act on different graphs")]
    NotComposable,
    #[error("metric has {got} lengths for {expected} edges")]
    MetricSize { expected: usize, got: usize },
    #[error("malformed map document: {0}")]
    Document(String),
    #[error(transparent)]
    Field(#[from] crate::numberfield::FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

/// An edge traversed forwards or backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SignedEdge {
    pub edge: EdgeId,
    pub reversed: bool,
}

impl SignedEdge {
    pub fn fwd(e: usize) -> Self {
        SignedEdge {
            edge: EdgeId(e),
            reversed: false,
        }
    }

    pub fn rev(e: usize) -> Self {
        SignedEdge {
            edge: EdgeId(e),
            reversed: true,
        }
    }

    pub fn inverse(self) -> Self {
        SignedEdge {
            edge: self.edge,
            reversed: !self.reversed,
        }
    }

    /// `+id` / `-id` with 1-based ids, as used in map documents.
    pub fn to_signed_id(self) -> i64 {
        let id = self.edge.0 as i64 + 1;
        if self.reversed {
            -id
        } else {
            id
        }
    }

    pub fn from_signed_id(x: i64) -> Option<Self> {
        if x == 0 {
            return None;
        }
        let e = (x.unsigned_abs() - 1) as usize;
        Some(SignedEdge {
            edge: EdgeId(e),
            reversed: x < 0,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    pub label: String,
}

/// Display form of a reversed label: first letter upper-cased.
pub fn reversed_label(label: &str) -> String {
    let mut cs = label.chars();
    match cs.next() {
        Some(c) if c.is_ascii_lowercase() => c.to_ascii_uppercase().to_string() + cs.as_str(),
        Some(c) => format!("{c}{}~", cs.as_str()),
        None => String::from("~"),
    }
}

/// A finite graph with labelled, oriented edges. Loops and parallel edges
/// are allowed.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    #[serde(skip)]
    by_label: BTreeMap<String, SignedEdge>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({} vertices; ", self.vertices.len())?;
        for e in &self.edges {
            write!(f, "{}:{}->{} ", e.label, e.from.0, e.to.0)?;
        }
        write!(f, ")")
    }
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut by_label = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            for v in [e.from, e.to] {
                if v.0 >= vertices.len() {
                    return Err(GraphError::UnknownVertex(v.0));
                }
            }
            if by_label.insert(e.label.clone(), SignedEdge::fwd(i)).is_some() {
                return Err(GraphError::DuplicateLabel(e.label.clone()));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            let r = reversed_label(&e.label);
            if by_label.insert(r.clone(), SignedEdge::rev(i)).is_some() {
                return Err(GraphError::DuplicateLabel(r));
            }
        }
        Ok(Graph {
            vertices,
            edges,
            by_label,
        })
    }

    /// Graph whose vertices are named `v0, v1, …`.
    pub fn with_vertex_count(n: usize, edges: Vec<(usize, usize, &str)>) -> Result<Self, GraphError> {
        Self::new(
            (0..n).map(|i| format!("v{i}")).collect(),
            edges
                .into_iter()
                .map(|(a, b, l)| Edge {
                    from: VertexId(a),
                    to: VertexId(b),
                    label: l.to_string(),
                })
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn label(&self, e: EdgeId) -> &str {
        &self.edges[e.0].label
    }

    pub fn edge_by_label(&self, label: &str) -> Option<EdgeId> {
        match self.by_label.get(label) {
            Some(s) if !s.reversed => Some(s.edge),
            _ => None,
        }
    }

    /// Signed edge for a single token such as `a1` or `A1`.
    pub fn signed_by_label(&self, token: &str) -> Option<SignedEdge> {
        self.by_label.get(token).copied()
    }

    pub fn source(&self, s: SignedEdge) -> VertexId {
        let e = &self.edges[s.edge.0];
        if s.reversed {
            e.to
        } else {
            e.from
        }
    }

    pub fn target(&self, s: SignedEdge) -> VertexId {
        self.source(s.inverse())
    }

    pub fn signed_label(&self, s: SignedEdge) -> String {
        let l = self.label(s.edge);
        if s.reversed {
            reversed_label(l)
        } else {
            l.to_string()
        }
    }

    /// Parses a word. Tokens are whitespace separated when the word has
    /// spaces, a word that is itself a label is one token, otherwise each
    /// character is a token; an upper-cased first
    /// letter means the edge is traversed backwards.
    pub fn parse_word(&self, word: &str) -> Result<Vec<SignedEdge>, GraphError> {
        let tokens: Vec<String> = if word.contains(char::is_whitespace) {
            word.split_whitespace().map(str::to_string).collect()
        } else if self.by_label.contains_key(word) {
            vec![word.to_string()]
        } else {
            word.chars().map(|c| c.to_string()).collect()
        };
        tokens
            .iter()
            .map(|t| {
                self.by_label
                    .get(t.as_str())
                    .copied()
                    .ok_or_else(|| GraphError::UnknownLabel(t.clone()))
            })
            .collect()
    }

    pub fn format_word(&self, steps: &[SignedEdge]) -> String {
        let parts: Vec<String> = steps.iter().map(|s| self.signed_label(*s)).collect();
        if parts.iter().all(|p| p.chars().count() == 1) {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    /// Outgoing directions at a vertex: signed edges whose source is `v`.
    pub fn directions_at(&self, v: VertexId) -> Vec<SignedEdge> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.from == v {
                out.push(SignedEdge::fwd(i));
            }
            if e.to == v {
                out.push(SignedEdge::rev(i));
            }
        }
        out
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.from.0, e.to.0);
        }
        (0..self.vertices.len()).filter(|&v| uf.find(v) == v).count()
    }

    /// First Betti number `E - V + components`.
    pub fn betti(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + self.component_count() as i64
    }

    /// Two-colouring with vertex 0 (of each component) in class 0.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.vertices.len();
        let mut colour: Vec<Option<u8>> = vec![None; n];
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.from.0].push(e.to.0);
            adj[e.to.0].push(e.from.0);
        }
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(0);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let cu = colour[u].unwrap();
                for &w in &adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(1 - cu);
                            stack.push(w);
                        }
                        Some(c) if c == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(Option::unwrap).collect())
    }
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Merges the classes; the smaller representative survives.
    pub fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        let (keep, drop) = if ra <= rb { (ra, rb) } else { (rb, ra) };
        self.parent[drop] = keep;
        keep
    }
}

/// A path of signed edges, checked for endpoint compatibility on
/// construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgePath {
    start: VertexId,
    steps: Vec<SignedEdge>,
}

impl EdgePath {
    pub fn new(g: &Graph, start: VertexId, steps: Vec<SignedEdge>) -> Result<Self, GraphError> {
        if start.0 >= g.vertex_count() {
            return Err(GraphError::UnknownVertex(start.0));
        }
        let mut at = start;
        for (i, s) in steps.iter().enumerate() {
            if s.edge.0 >= g.edge_count() {
                return Err(GraphError::UnknownEdge(s.edge.0));
            }
            if g.source(*s) != at {
                return Err(GraphError::BrokenPath {
                    step: i,
                    detail: format!(
                        "{} starts at {}, path is at {}",
                        g.signed_label(*s),
                        g.vertex_name(g.source(*s)),
                        g.vertex_name(at)
                    ),
                });
            }
            at = g.target(*s);
        }
        Ok(EdgePath { start, steps })
    }

    /// Nonempty path; the start is the source of the first step.
    pub fn from_steps(g: &Graph, steps: Vec<SignedEdge>) -> Result<Self, GraphError> {
        let first = steps.first().ok_or(GraphError::BrokenPath {
            step: 0,
            detail: "empty path has no start".into(),
        })?;
        if first.edge.0 >= g.edge_count() {
            return Err(GraphError::UnknownEdge(first.edge.0));
        }
        Self::new(g, g.source(*first), steps)
    }

    pub fn parse(g: &Graph, word: &str) -> Result<Self, GraphError> {
        Self::from_steps(g, g.parse_word(word)?)
    }

    pub fn empty(at: VertexId) -> Self {
        EdgePath {
            start: at,
            steps: Vec::new(),
        }
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self, g: &Graph) -> VertexId {
        self.steps.last().map_or(self.start, |s| g.target(*s))
    }

    pub fn steps(&self) -> &[SignedEdge] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn reversed(&self, g: &Graph) -> EdgePath {
        EdgePath {
            start: self.end(g),
            steps: self.steps.iter().rev().map(|s| s.inverse()).collect(),
        }
    }

    /// Free reduction: cancels every `xX` pair.
    pub fn tightened(&self) -> EdgePath {
        let mut out: Vec<SignedEdge> = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            if out.last() == Some(&s.inverse()) {
                out.pop();
            } else {
                out.push(*s);
            }
        }
        EdgePath {
            start: self.start,
            steps: out,
        }
    }

    pub fn is_tight(&self) -> bool {
        self.steps.windows(2).all(|w| w[1] != w[0].inverse())
    }
}

/// A self-map of a graph: vertices to vertices, edges to edge paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMap {
    graph: Graph,
    vertex_images: Vec<VertexId>,
    edge_images: Vec<EdgePath>,
}

impl GraphMap {
    /// Validates endpoints and rejects collapsed edges.
    pub fn new(graph: Graph, vertex_images: Vec<VertexId>, edge_images: Vec<EdgePath>) -> Result<Self, GraphError> {
        Self::build(graph, vertex_images, edge_images, false)
    }

    /// As [`GraphMap::new`] but allows edges mapping to empty paths.
    pub fn new_allowing_collapse(
        graph: Graph,
        vertex_images: Vec<VertexId>,
        edge_images: Vec<EdgePath>,
    ) -> Result<Self, GraphError> {
        Self::build(graph, vertex_images, edge_images, true)
    }

    fn build(
        graph: Graph,
        vertex_images: Vec<VertexId>,
        edge_images: Vec<EdgePath>,
        allow_collapse: bool,
    ) -> Result<Self, GraphError> {
        if vertex_images.len() != graph.vertex_count() || edge_images.len() != graph.edge_count() {
            return Err(GraphError::Document("image table sizes do not match the graph".into()));
        }
        if let Some(v) = vertex_images.iter().find(|v| v.0 >= graph.vertex_count()) {
            return Err(GraphError::UnknownVertex(v.0));
        }
        for (i, p) in edge_images.iter().enumerate() {
            let e = &graph.edges[i];
            if p.is_empty() && !allow_collapse {
                return Err(GraphError::CollapsedEdge { edge: e.label.clone() });
            }
            if p.start() != vertex_images[e.from.0] || p.end(&graph) != vertex_images[e.to.0] {
                return Err(GraphError::EndpointMismatch { edge: e.label.clone() });
            }
        }
        Ok(GraphMap {
            graph,
            vertex_images,
            edge_images,
        })
    }

    /// Builds a map from words, one per edge in edge order; vertices are
    /// inferred from the images (isolated vertices map to themselves).
    pub fn from_words(graph: Graph, words: &[&str]) -> Result<Self, GraphError> {
        let mut paths = Vec::with_capacity(words.len());
        for w in words {
            paths.push(EdgePath::parse(&graph, w)?);
        }
        let mut vimg: Vec<Option<VertexId>> = vec![None; graph.vertex_count()];
        for (i, p) in paths.iter().enumerate() {
            let e = &graph.edges[i];
            for (v, img) in [(e.from, p.start()), (e.to, p.end(&graph))] {
                match vimg[v.0] {
                    None => vimg[v.0] = Some(img),
                    Some(w) if w != img => {
                        return Err(GraphError::EndpointMismatch { edge: e.label.clone() });
                    }
                    _ => {}
                }
            }
        }
        let vimg = vimg
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.unwrap_or(VertexId(i)))
            .collect();
        Self::new(graph, vimg, paths)
    }

    pub fn identity(graph: Graph) -> Self {
        let vimg = (0..graph.vertex_count()).map(VertexId).collect();
        let eimg = (0..graph.edge_count())
            .map(|i| EdgePath {
                start: graph.edges[i].from,
                steps: vec![SignedEdge::fwd(i)],
            })
            .collect();
        GraphMap {
            graph,
            vertex_images: vimg,
            edge_images: eimg,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_image(&self, v: VertexId) -> VertexId {
        self.vertex_images[v.0]
    }

    pub fn vertex_images(&self) -> &[VertexId] {
        &self.vertex_images
    }

    pub fn edge_image(&self, e: EdgeId) -> &EdgePath {
        &self.edge_images[e.0]
    }

    pub fn edge_images(&self) -> &[EdgePath] {
        &self.edge_images
    }

    /// Image of a signed edge (reversed path for a reversed edge).
    pub fn image_of(&self, s: SignedEdge) -> Vec<SignedEdge> {
        let p = &self.edge_images[s.edge.0];
        if s.reversed {
            p.steps.iter().rev().map(|x| x.inverse()).collect()
        } else {
            p.steps.clone()
        }
    }

    pub fn word(&self, e: EdgeId) -> String {
        self.graph.format_word(self.edge_images[e.0].steps())
    }

    pub fn word_lengths(&self) -> Vec<usize> {
        self.edge_images.iter().map(EdgePath::len).collect()
    }

    pub fn is_taut(&self) -> bool {
        self.edge_images.iter().all(EdgePath::is_tight)
    }

    /// Freely reduces every image path.
    pub fn tighten(&self) -> GraphMap {
        GraphMap {
            graph: self.graph.clone(),
            vertex_images: self.vertex_images.clone(),
            edge_images: self.edge_images.iter().map(EdgePath::tightened).collect(),
        }
    }

    pub fn transition_matrix(&self) -> TransitionMatrix {
        TransitionMatrix::of(self)
    }

    /// `outer ∘ self`: apply `self`, then `outer`. Paths are not tightened.
    pub fn then(&self, outer: &GraphMap, path_cap: u64) -> Result<GraphMap, GraphError> {
        if self.graph != outer.graph {
            return Err(GraphError::NotComposable);
        }
        let mut images = Vec::with_capacity(self.edge_images.len());
        for (i, p) in self.edge_images.iter().enumerate() {
            let mut steps = Vec::new();
            for s in p.steps() {
                steps.extend(outer.image_of(*s));
                if steps.len() as u64 > path_cap {
                    return Err(GraphError::PathCapExceeded { cap: path_cap });
                }
            }
            let start = outer.vertex_images[p.start().0];
            let path = EdgePath::new(&self.graph, start, steps).map_err(|_| GraphError::EndpointMismatch {
                edge: self.graph.label(EdgeId(i)).to_string(),
            })?;
            images.push(path);
        }
        let vimg = self.vertex_images.iter().map(|v| outer.vertex_images[v.0]).collect();
        GraphMap::build(self.graph.clone(), vimg, images, true)
    }

    /// `f^n`, refusing image paths longer than `path_cap` steps.
    pub fn iterate(&self, n: u32, path_cap: u64) -> Result<GraphMap, GraphError> {
        let mut acc = GraphMap::identity(self.graph.clone());
        for _ in 0..n {
            acc = acc.then(self, path_cap)?;
        }
        Ok(acc)
    }
}

/// `g ∘ f`.
pub fn compose(g: &GraphMap, f: &GraphMap, path_cap: u64) -> Result<GraphMap, GraphError> {
    f.then(g, path_cap)
}

/// Default bound on image path lengths for composition.
pub const DEFAULT_PATH_CAP: u64 = 10_000_000;
