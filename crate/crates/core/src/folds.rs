//! Stallings fold decompositions and homotopy-equivalence verdicts.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphmap::{Edge, EdgeId, Graph, GraphError, GraphMap, SignedEdge, UnionFind, VertexId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FoldError {
    #[error("edge {edge} maps to the empty path")]
    CollapsedEdge { edge: String },
    #[error("morphism sends edge {edge} to a non-adjacent image")]
    NotAMorphism { edge: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A graph map sending every edge to a single signed edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    domain: Graph,
    codomain: Graph,
    vertex_map: Vec<VertexId>,
    edge_map: Vec<SignedEdge>,
}

impl GraphMorphism {
    pub fn new(
        domain: Graph,
        codomain: Graph,
        vertex_map: Vec<VertexId>,
        edge_map: Vec<SignedEdge>,
    ) -> Result<Self, FoldError> {
        if vertex_map.len() != domain.vertex_count() || edge_map.len() != domain.edge_count() {
            return Err(GraphError::Document("morphism tables do not match the domain".into()).into());
        }
        for (i, (e, img)) in domain.edges().iter().zip(&edge_map).enumerate() {
            let ok = img.edge.0 < codomain.edge_count()
                && codomain.source(*img) == vertex_map[e.from.0]
                && codomain.target(*img) == vertex_map[e.to.0];
            if !ok {
                return Err(FoldError::NotAMorphism {
                    edge: domain.label(EdgeId(i)).to_string(),
                });
            }
        }
        Ok(GraphMorphism {
            domain,
            codomain,
            vertex_map,
            edge_map,
        })
    }

    pub fn domain(&self) -> &Graph {
        &self.domain
    }

    pub fn codomain(&self) -> &Graph {
        &self.codomain
    }

    pub fn vertex_map(&self) -> &[VertexId] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[SignedEdge] {
        &self.edge_map
    }

    fn image(&self, d: SignedEdge) -> SignedEdge {
        let m = self.edge_map[d.edge.0];
        if d.reversed {
            m.inverse()
        } else {
            m
        }
    }
}

/// A subdivided map: segment `e.k` of edge `e` covers step `k` of `f(e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub morphism: GraphMorphism,
    /// Segments of each original edge, in order.
    pub segments: Vec<Vec<EdgeId>>,
}

/// Subdivides every edge at the preimages of vertices. Edges whose image
/// is a single edge keep their label.
pub fn subdivide_to_morphism(f: &GraphMap) -> Result<Subdivision, FoldError> {
    let g = f.graph();
    let mut names: Vec<String> = g.vertex_names().to_vec();
    let mut vmap: Vec<VertexId> = f.vertex_images().to_vec();
    let mut edges = Vec::new();
    let mut emap = Vec::new();
    let mut segments = Vec::with_capacity(g.edge_count());
    for (i, e) in g.edges().iter().enumerate() {
        let steps = f.edge_image(EdgeId(i)).steps();
        if steps.is_empty() {
            return Err(FoldError::CollapsedEdge { edge: e.label.clone() });
        }
        let mut segs = Vec::with_capacity(steps.len());
        if steps.len() == 1 {
            segs.push(EdgeId(edges.len()));
            edges.push(e.clone());
            emap.push(steps[0]);
            segments.push(segs);
            continue;
        }
        let mut at = e.from;
        for (k, s) in steps.iter().enumerate() {
            let to = if k + 1 == steps.len() {
                e.to
            } else {
                names.push(format!("{}:{}", e.label, k + 1));
                vmap.push(g.target(*s));
                VertexId(names.len() - 1)
            };
            segs.push(EdgeId(edges.len()));
            edges.push(Edge {
                from: at,
                to,
                label: format!("{}.{k}", e.label),
            });
            emap.push(*s);
            at = to;
        }
        segments.push(segs);
    }
    let domain = Graph::new(names, edges)?;
    Ok(Subdivision {
        morphism: GraphMorphism::new(domain, g.clone(), vmap, emap)?,
        segments,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FoldKind {
    /// Far endpoints distinct: a homotopy equivalence.
    #[serde(rename = "I")]
    TypeI,
    /// Far endpoints already identified: rank drops by one.
    #[serde(rename = "II")]
    TypeII,
}

/// One fold: `removed` is identified with `kept`, both leaving `vertex`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldRecord {
    pub stage: usize,
    pub vertex: String,
    pub kept: String,
    pub removed: String,
    /// Whether each edge leaves `vertex` against its orientation.
    pub kept_reversed: bool,
    pub removed_reversed: bool,
    pub kind: FoldKind,
    pub betti_before: i64,
    pub betti_after: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldDecomposition {
    pub folds: Vec<FoldRecord>,
    /// Surviving edges and their images, as labels.
    pub terminal_edges: Vec<(String, String)>,
    pub terminal_vertices: Vec<(String, String)>,
    pub all_type_one: bool,
    pub terminal_is_isomorphism: bool,
}

impl FoldDecomposition {
    pub fn type_two_count(&self) -> usize {
        self.folds.iter().filter(|f| f.kind == FoldKind::TypeII).count()
    }

    /// Number of folding stages: maximal runs of folds at one vertex
    /// identifying edges with a common image.
    pub fn stage_count(&self) -> usize {
        self.folds.last().map_or(0, |f| f.stage + 1)
    }

    pub fn is_homotopy_equivalence(&self) -> bool {
        self.all_type_one && self.terminal_is_isomorphism
    }

    pub fn verdict(&self) -> HeVerdict {
        HeVerdict {
            homotopy_equivalence: self.is_homotopy_equivalence(),
            all_type_one: self.all_type_one,
            terminal_is_isomorphism: self.terminal_is_isomorphism,
            folds: self.folds.len(),
            type_two: self.type_two_count(),
            stages: self.stage_count(),
        }
    }

    /// Replays the recorded folds on `m` and checks that each fold is legal
    /// with the recorded type and Betti numbers, and that the terminal
    /// morphism composed with the folds reproduces `m` on every edge.
    pub fn replay(&self, m: &GraphMorphism) -> Result<(), String> {
        let mut r = Replay::new(m);
        for (i, rec) in self.folds.iter().enumerate() {
            r.apply(rec).map_err(|e| format!("fold {i}: {e}"))?;
        }
        r.check_terminal(self)
    }

    /// The folded graph after each stage, starting with the domain.
    pub fn snapshots(&self, m: &GraphMorphism) -> Result<Vec<Graph>, String> {
        let mut r = Replay::new(m);
        let mut out = vec![r.snapshot()];
        for (i, rec) in self.folds.iter().enumerate() {
            r.apply(rec).map_err(|e| format!("fold {i}: {e}"))?;
            if self.folds.get(i + 1).is_none_or(|n| n.stage != rec.stage) {
                out.push(r.snapshot());
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeVerdict {
    pub homotopy_equivalence: bool,
    pub all_type_one: bool,
    pub terminal_is_isomorphism: bool,
    pub folds: usize,
    pub type_two: usize,
    pub stages: usize,
}

/// Order in which foldable pairs are chosen.
pub enum FoldOrder<'a> {
    /// Smallest vertex id, then the smallest pair of edge labels.
    Pinned,
    Random(&'a mut dyn rand::RngCore),
}

struct Folder<'a> {
    m: &'a GraphMorphism,
    uf: UnionFind,
    alive: Vec<bool>,
    adj: Vec<Vec<usize>>,
    edges_alive: usize,
    vertices_alive: usize,
    components: i64,
}

/// A candidate fold at a vertex: two directions with a common image.
#[derive(Clone, Copy)]
struct Candidate {
    keep: SignedEdge,
    drop: SignedEdge,
    image: SignedEdge,
}

impl<'a> Folder<'a> {
    fn new(m: &'a GraphMorphism) -> Self {
        let g = &m.domain;
        let mut adj = vec![Vec::new(); g.vertex_count()];
        for (i, e) in g.edges().iter().enumerate() {
            adj[e.from.0].push(i);
            if e.to != e.from {
                adj[e.to.0].push(i);
            }
        }
        Folder {
            m,
            uf: UnionFind::new(g.vertex_count()),
            alive: vec![true; g.edge_count()],
            adj,
            edges_alive: g.edge_count(),
            vertices_alive: g.vertex_count(),
            components: g.component_count() as i64,
        }
    }

    fn betti(&self) -> i64 {
        self.edges_alive as i64 - self.vertices_alive as i64 + self.components
    }

    fn source(&mut self, d: SignedEdge) -> usize {
        let v = self.m.domain.source(d).0;
        self.uf.find(v)
    }

    /// Outgoing directions at the representative `v`, grouped by image.
    fn groups(&mut self, v: usize) -> BTreeMap<SignedEdge, Vec<SignedEdge>> {
        let mut seen = BTreeSet::new();
        let mut live = Vec::new();
        for &e in &self.adj[v] {
            if self.alive[e] && seen.insert(e) {
                live.push(e);
            }
        }
        self.adj[v] = live.clone();
        let mut groups: BTreeMap<SignedEdge, Vec<SignedEdge>> = BTreeMap::new();
        for e in live {
            for d in [SignedEdge::fwd(e), SignedEdge::rev(e)] {
                if self.source(d) == v {
                    groups.entry(self.m.image(d)).or_default().push(d);
                }
            }
        }
        groups
    }

    fn label(&self, d: SignedEdge) -> &str {
        self.m.domain.label(d.edge)
    }

    fn candidates(&mut self, v: usize) -> Vec<Candidate> {
        let mut out = Vec::new();
        for (image, dirs) in self.groups(v) {
            for (i, &x) in dirs.iter().enumerate() {
                for &y in &dirs[i + 1..] {
                    if x.edge == y.edge {
                        continue;
                    }
                    let (keep, drop) = if self.label(x) <= self.label(y) { (x, y) } else { (y, x) };
                    out.push(Candidate { keep, drop, image });
                }
            }
        }
        out
    }

    fn pinned(&mut self, v: usize) -> Option<Candidate> {
        let cands = self.candidates(v);
        cands
            .into_iter()
            .min_by(|a, b| (self.label(a.keep), self.label(a.drop)).cmp(&(self.label(b.keep), self.label(b.drop))))
    }

    fn fold(&mut self, v: usize, c: Candidate, stage: usize) -> (FoldRecord, usize) {
        let g = &self.m.domain;
        let w1 = self.uf.find(g.target(c.keep).0);
        let w2 = self.uf.find(g.target(c.drop).0);
        let before = self.betti();
        let kind = if w1 == w2 { FoldKind::TypeII } else { FoldKind::TypeI };
        self.alive[c.drop.edge.0] = false;
        self.edges_alive -= 1;
        let w = if w1 != w2 {
            let w = self.uf.union(w1, w2);
            let other = if w == w1 { w2 } else { w1 };
            let moved = std::mem::take(&mut self.adj[other]);
            self.adj[w].extend(moved);
            self.vertices_alive -= 1;
            w
        } else {
            w1
        };
        let rec = FoldRecord {
            stage,
            vertex: g.vertex_name(VertexId(v)).to_string(),
            kept: self.label(c.keep).to_string(),
            removed: self.label(c.drop).to_string(),
            kept_reversed: c.keep.reversed,
            removed_reversed: c.drop.reversed,
            kind,
            betti_before: before,
            betti_after: self.betti(),
        };
        (rec, w)
    }

    fn run(mut self, mut order: FoldOrder<'_>) -> FoldDecomposition {
        let mut dirty: BTreeSet<usize> = (0..self.m.domain.vertex_count()).collect();
        let mut folds: Vec<FoldRecord> = Vec::new();
        let mut last: Option<(usize, SignedEdge)> = None;
        let mut stage = 0;
        loop {
            let pick = match &mut order {
                FoldOrder::Pinned => {
                    let mut found = None;
                    while let Some(&v) = dirty.iter().next() {
                        match self.pinned(v) {
                            Some(c) => {
                                found = Some((v, c));
                                break;
                            }
                            None => {
                                dirty.remove(&v);
                            }
                        }
                    }
                    found
                }
                FoldOrder::Random(rng) => {
                    let mut found = None;
                    while !dirty.is_empty() {
                        let v = *dirty.iter().nth(rng.gen_range(0..dirty.len())).unwrap();
                        let cands = self.candidates(v);
                        match cands.choose(rng) {
                            Some(&c) => {
                                found = Some((v, c));
                                break;
                            }
                            None => {
                                dirty.remove(&v);
                            }
                        }
                    }
                    found
                }
            };
            let Some((v, c)) = pick else { break };
            if let Some(prev) = last {
                if prev != (v, c.image) {
                    stage += 1;
                }
            }
            last = Some((v, c.image));
            let (rec, w) = self.fold(v, c, stage);
            folds.push(rec);
            dirty.insert(self.uf.find(v));
            dirty.insert(w);
        }
        self.finish(folds)
    }

    fn finish(mut self, folds: Vec<FoldRecord>) -> FoldDecomposition {
        let (g, cod) = (&self.m.domain, &self.m.codomain);
        let mut terminal_vertices = Vec::new();
        let mut vimg = BTreeSet::new();
        for v in 0..g.vertex_count() {
            if self.uf.find(v) == v {
                let img = self.m.vertex_map[v];
                vimg.insert(img);
                terminal_vertices.push((g.vertex_name(VertexId(v)).to_string(), cod.vertex_name(img).to_string()));
            }
        }
        let mut terminal_edges = Vec::new();
        let mut eimg = BTreeSet::new();
        for e in 0..g.edge_count() {
            if self.alive[e] {
                let img = self.m.edge_map[e];
                eimg.insert(img.edge);
                terminal_edges.push((g.label(EdgeId(e)).to_string(), cod.signed_label(img)));
            }
        }
        let bijective = vimg.len() == terminal_vertices.len()
            && vimg.len() == cod.vertex_count()
            && eimg.len() == terminal_edges.len()
            && eimg.len() == cod.edge_count();
        FoldDecomposition {
            all_type_one: folds.iter().all(|f| f.kind == FoldKind::TypeI),
            folds,
            terminal_edges,
            terminal_vertices,
            terminal_is_isomorphism: bijective,
        }
    }
}

/// Folds `m` until it is an immersion, in the pinned order.
pub fn fold_decompose(m: &GraphMorphism) -> FoldDecomposition {
    Folder::new(m).run(FoldOrder::Pinned)
}

pub fn fold_decompose_with(m: &GraphMorphism, order: FoldOrder<'_>) -> FoldDecomposition {
    Folder::new(m).run(order)
}

/// Subdivides, folds, and reports whether `f` is a homotopy equivalence.
pub fn is_homotopy_equivalence(f: &GraphMap) -> Result<(HeVerdict, Subdivision, FoldDecomposition), FoldError> {
    let sub = subdivide_to_morphism(f)?;
    let d = fold_decompose(&sub.morphism);
    Ok((d.verdict(), sub, d))
}

/// Verdicts under `shuffles` random fold orders.
pub fn shuffled_verdicts(m: &GraphMorphism, shuffles: usize, rng: &mut impl Rng) -> Vec<HeVerdict> {
    (0..shuffles)
        .map(|_| fold_decompose_with(m, FoldOrder::Random(rng)).verdict())
        .collect()
}

/// Independent re-execution of a fold log.
struct Replay<'a> {
    m: &'a GraphMorphism,
    uf: UnionFind,
    /// Each removed edge points at the edge it was folded onto.
    redirect: Vec<Option<SignedEdge>>,
}

impl<'a> Replay<'a> {
    fn new(m: &'a GraphMorphism) -> Self {
        Replay {
            m,
            uf: UnionFind::new(m.domain.vertex_count()),
            redirect: vec![None; m.domain.edge_count()],
        }
    }

    fn alive_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.redirect.len()).filter(|&e| self.redirect[e].is_none())
    }

    fn snapshot(&mut self) -> Graph {
        let g = &self.m.domain;
        let reps: Vec<usize> = (0..g.vertex_count()).filter(|&v| self.uf.find(v) == v).collect();
        let index: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<usize> = self.alive_edges().collect();
        let edges = edges
            .into_iter()
            .map(|e| {
                let ed = g.edge(EdgeId(e));
                Edge {
                    from: VertexId(index[&self.uf.find(ed.from.0)]),
                    to: VertexId(index[&self.uf.find(ed.to.0)]),
                    label: ed.label.clone(),
                }
            })
            .collect();
        let names = reps.iter().map(|&v| g.vertex_name(VertexId(v)).to_string()).collect();
        Graph::new(names, edges).expect("snapshot of a valid graph")
    }

    fn betti(&mut self) -> i64 {
        self.snapshot().betti()
    }

    fn apply(&mut self, rec: &FoldRecord) -> Result<(), String> {
        let g = &self.m.domain;
        let find = |l: &str| g.edge_by_label(l).ok_or_else(|| format!("unknown edge {l}"));
        let (k, r) = (find(&rec.kept)?, find(&rec.removed)?);
        let dk = SignedEdge {
            edge: k,
            reversed: rec.kept_reversed,
        };
        let dr = SignedEdge {
            edge: r,
            reversed: rec.removed_reversed,
        };
        if self.redirect[k.0].is_some() || self.redirect[r.0].is_some() || k == r {
            return Err("folded edges must be distinct live edges".into());
        }
        let v = self.uf.find(g.source(dk).0);
        if self.uf.find(g.source(dr).0) != v || g.vertex_name(VertexId(v)) != rec.vertex {
            return Err(format!("{} and {} do not share vertex {}", rec.kept, rec.removed, rec.vertex));
        }
        if self.m.image(dk) != self.m.image(dr) {
            return Err(format!("{} and {} have different images", rec.kept, rec.removed));
        }
        let before = self.betti();
        let (w1, w2) = (self.uf.find(g.target(dk).0), self.uf.find(g.target(dr).0));
        let kind = if w1 == w2 { FoldKind::TypeII } else { FoldKind::TypeI };
        if kind != rec.kind {
            return Err(format!("recorded {:?}, replay gives {kind:?}", rec.kind));
        }
        self.uf.union(w1, w2);
        self.redirect[r.0] = Some(SignedEdge {
            edge: k,
            reversed: dk.reversed != dr.reversed,
        });
        let after = self.betti();
        let expected = match kind {
            FoldKind::TypeI => before,
            FoldKind::TypeII => before - 1,
        };
        if (before, after) != (rec.betti_before, rec.betti_after) || after != expected {
            return Err(format!("Betti numbers {before} -> {after} do not fit a {kind:?} fold"));
        }
        Ok(())
    }

    fn check_terminal(&mut self, d: &FoldDecomposition) -> Result<(), String> {
        let g = &self.m.domain;
        let cod = &self.m.codomain;
        for e in 0..g.edge_count() {
            let mut s = SignedEdge::fwd(e);
            while let Some(t) = self.redirect[s.edge.0] {
                s = SignedEdge {
                    edge: t.edge,
                    reversed: s.reversed != t.reversed,
                };
            }
            if self.m.image(s) != self.m.edge_map[e] {
                return Err(format!("edge {} does not replay to its image", g.label(EdgeId(e))));
            }
        }
        let terminal: Vec<(String, String)> = self
            .alive_edges()
            .map(|e| (g.label(EdgeId(e)).to_string(), cod.signed_label(self.m.edge_map[e])))
            .collect();
        if terminal != d.terminal_edges {
            return Err("terminal edge table differs from the replay".into());
        }
        for v in 0..g.vertex_count() {
            let r = self.uf.find(v);
            if self.m.vertex_map[r] != self.m.vertex_map[v] {
                return Err(format!("vertex {} does not replay to its image", g.vertex_name(VertexId(v))));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::five_uniform_star;
    use crate::traintrack::prototype_map;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn subdivision_counts() {
        let p3 = prototype_map(3).unwrap();
        let sub = subdivide_to_morphism(&p3).unwrap();
        assert_eq!(sub.segments[0].len(), 3);
        assert_eq!(sub.morphism.domain().edge_count(), 21);
        let star = five_uniform_star();
        assert_eq!(subdivide_to_morphism(&star).unwrap().segments[0].len(), 5);
        let id = prototype_map(1).unwrap();
        let sub = subdivide_to_morphism(&id).unwrap();
        assert_eq!(sub.morphism.domain(), id.graph());
    }

    #[test]
    fn prototype_maps_fold_to_isomorphisms() {
        for n in [1, 3, 5, 7, 9] {
            let (v, sub, d) = is_homotopy_equivalence(&prototype_map(n).unwrap()).unwrap();
            assert!(v.homotopy_equivalence && v.type_two == 0, "n={n}: {v:?}");
            d.replay(&sub.morphism).unwrap();
        }
    }

    #[test]
    fn phi3_fold_log_is_pinned() {
        let (v, _, d) = is_homotopy_equivalence(&prototype_map(3).unwrap()).unwrap();
        assert_eq!(v.folds, 14);
        let first: Vec<(&str, &str, &str)> = d
            .folds
            .iter()
            .take(4)
            .map(|f| (f.vertex.as_str(), f.kept.as_str(), f.removed.as_str()))
            .collect();
        assert_eq!(
            first,
            vec![("v0", "a.0", "d.0"), ("v0", "a.0", "f.0"), ("v0", "b.0", "g.0"), ("v0", "c.0", "e.0")]
        );
        assert_eq!(fold_decompose(&subdivide_to_morphism(&prototype_map(3).unwrap()).unwrap().morphism), d);
    }

    #[test]
    fn parallel_edges_give_type_two() {
        let g = Graph::with_vertex_count(2, vec![(0, 1, "x"), (0, 1, "y")]).unwrap();
        let f = GraphMap::from_words(g, &["x", "x"]).unwrap();
        let (v, sub, d) = is_homotopy_equivalence(&f).unwrap();
        assert!(!v.homotopy_equivalence);
        assert_eq!(d.folds.len(), 1);
        assert_eq!(d.folds[0].kind, FoldKind::TypeII);
        assert_eq!((d.folds[0].betti_before, d.folds[0].betti_after), (1, 0));
        d.replay(&sub.morphism).unwrap();
    }

    #[test]
    fn tampered_log_fails_replay() {
        let sub = subdivide_to_morphism(&prototype_map(3).unwrap()).unwrap();
        let mut d = fold_decompose(&sub.morphism);
        d.folds[0].kind = FoldKind::TypeII;
        assert!(d.replay(&sub.morphism).is_err());
        let mut d = fold_decompose(&sub.morphism);
        let last = d.folds.len() - 1;
        d.folds.swap(0, last);
        assert!(d.replay(&sub.morphism).is_err());
    }

    #[test]
    fn verdicts_survive_shuffles() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [3, 5, 7] {
            let sub = subdivide_to_morphism(&prototype_map(n).unwrap()).unwrap();
            for v in shuffled_verdicts(&sub.morphism, 20, &mut rng) {
                assert!(v.homotopy_equivalence);
            }
        }
        let g = Graph::with_vertex_count(2, vec![(0, 1, "x"), (0, 1, "y")]).unwrap();
        let f = GraphMap::from_words(g, &["x", "x"]).unwrap();
        let sub = subdivide_to_morphism(&f).unwrap();
        assert!(shuffled_verdicts(&sub.morphism, 20, &mut rng).iter().all(|v| !v.homotopy_equivalence));
    }

    #[test]
    fn snapshots_track_stages() {
        let sub = subdivide_to_morphism(&prototype_map(3).unwrap()).unwrap();
        let d = fold_decompose(&sub.morphism);
        let snaps = d.snapshots(&sub.morphism).unwrap();
        assert_eq!(snaps.len(), d.stage_count() + 1);
        assert_eq!(snaps.last().unwrap().edge_count(), 7);
        assert!(snaps.iter().all(|s| s.betti() == 6));
    }
}
