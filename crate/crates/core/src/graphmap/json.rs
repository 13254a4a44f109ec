//! The graph-map document format.
//!
//! ```json
//! { "vertices": ["v0", "v1"],
//!   "edges": [{"id": 1, "from": "v0", "to": "v1", "label": "a"}],
//!   "vertex_map": {"v0": "v0", "v1": "v1"},
//!   "edge_paths": {"1": [1, -1, 1]},
//!   "lengths": {"1": {"coords": ["1"]}} }
//! ```
//! Edge ids are 1-based and a negative id traverses the edge backwards.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Edge, EdgeLength, EdgePath, Graph, GraphError, GraphMap, SignedEdge, SymbolicMetric, VertexId};
use crate::poly::IntPolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: usize,
    pub from: String,
    pub to: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
    pub vertex_map: BTreeMap<String, String>,
    pub edge_paths: BTreeMap<usize, Vec<i64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lengths: BTreeMap<usize, EdgeLength>,
    /// Minimal polynomial of `λ` when lengths are present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<IntPolynomial>,
}

impl MapDocument {
    pub fn from_map(f: &GraphMap, metric: Option<&SymbolicMetric>, minpoly: Option<&IntPolynomial>) -> Self {
        let g = f.graph();
        let name = |v: VertexId| g.vertex_name(v).to_string();
        MapDocument {
            vertices: g.vertex_names().to_vec(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| EdgeJson {
                    id: i + 1,
                    from: name(e.from),
                    to: name(e.to),
                    label: e.label.clone(),
                })
                .collect(),
            vertex_map: (0..g.vertex_count())
                .map(|i| (name(VertexId(i)), name(f.vertex_image(VertexId(i)))))
                .collect(),
            edge_paths: f
                .edge_images()
                .iter()
                .enumerate()
                .map(|(i, p)| (i + 1, p.steps().iter().map(|s| s.to_signed_id()).collect()))
                .collect(),
            lengths: metric
                .map(|m| m.lengths.iter().cloned().enumerate().map(|(i, l)| (i + 1, l)).collect())
                .unwrap_or_default(),
            minpoly: minpoly.cloned(),
        }
    }

    pub fn to_map(&self) -> Result<(GraphMap, Option<SymbolicMetric>), GraphError> {
        let bad = |m: String| GraphError::Document(m);
        let vindex: BTreeMap<&str, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if vindex.len() != self.vertices.len() {
            return Err(bad("vertices: duplicate vertex name".into()));
        }
        let lookup = |field: &str, name: &str| {
            vindex
                .get(name)
                .copied()
                .map(VertexId)
                .ok_or_else(|| bad(format!("{field}: unknown vertex {name:?}")))
        };
        let mut edges = self.edges.clone();
        edges.sort_by_key(|e| e.id);
        for (i, e) in edges.iter().enumerate() {
            if e.id != i + 1 {
                return Err(bad(format!("edges: ids must be 1..{}, found {}", edges.len(), e.id)));
            }
        }
        let graph = Graph::new(
            self.vertices.clone(),
            edges
                .iter()
                .map(|e| {
                    Ok(Edge {
                        from: lookup(&format!("edges[{}].from", e.id), &e.from)?,
                        to: lookup(&format!("edges[{}].to", e.id), &e.to)?,
                        label: e.label.clone(),
                    })
                })
                .collect::<Result<Vec<_>, GraphError>>()?,
        )?;
        let mut vimg = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let img = self
                .vertex_map
                .get(v)
                .ok_or_else(|| bad(format!("vertex_map: missing entry for {v:?}")))?;
            vimg.push(lookup(&format!("vertex_map.{v}"), img)?);
        }
        let mut paths = Vec::with_capacity(edges.len());
        for (i, e) in graph.edges().iter().enumerate() {
            let ids = self
                .edge_paths
                .get(&(i + 1))
                .ok_or_else(|| bad(format!("edge_paths: missing entry for edge {}", i + 1)))?;
            let steps = ids
                .iter()
                .map(|&x| {
                    SignedEdge::from_signed_id(x)
                        .filter(|s| s.edge.0 < graph.edge_count())
                        .ok_or_else(|| bad(format!("edge_paths.{}: bad edge id {x}", i + 1)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let start = vimg[e.from.0];
            let p = EdgePath::new(&graph, start, steps).map_err(|err| bad(format!("edge_paths.{}: {err}", i + 1)))?;
            paths.push(p);
        }
        if self.edge_paths.len() != graph.edge_count() {
            return Err(bad("edge_paths: entries for unknown edges".into()));
        }
        let f = GraphMap::new(graph, vimg, paths)?;
        let metric = if self.lengths.is_empty() {
            None
        } else {
            let mut ls = Vec::with_capacity(f.graph().edge_count());
            for i in 1..=f.graph().edge_count() {
                ls.push(
                    self.lengths
                        .get(&i)
                        .cloned()
                        .ok_or_else(|| bad(format!("lengths: missing entry for edge {i}")))?,
                );
            }
            Some(SymbolicMetric { lengths: ls })
        };
        Ok((f, metric))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, GraphError> {
        serde_json::from_str(s).map_err(|e| GraphError::Document(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::five_uniform_star;

    #[test]
    fn round_trip() {
        let f = five_uniform_star();
        let m = SymbolicMetric::unit(4, 1);
        let p = IntPolynomial::from_i64s(&[-5, 1]).unwrap();
        let doc = MapDocument::from_map(&f, Some(&m), Some(&p));
        let text = doc.to_json();
        let back = MapDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        let (g, m2) = back.to_map().unwrap();
        assert_eq!(g, f);
        assert_eq!(m2, Some(m));
    }

    #[test]
    fn diagnostics_name_the_field() {
        let f = five_uniform_star();
        let mut doc = MapDocument::from_map(&f, None, None);
        doc.edge_paths.insert(1, vec![2, 3]);
        let err = doc.to_map().unwrap_err().to_string();
        assert!(err.contains("edge_paths.1"), "{err}");
        let mut doc = MapDocument::from_map(&f, None, None);
        doc.vertex_map.remove("v2");
        assert!(doc.to_map().unwrap_err().to_string().contains("vertex_map"));
    }
}
