//! Turns, traintrack structures, the prototype graph `P₇` with its maps
//! `φ_n`, and verification of the traintrack axioms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphmap::{EdgePath, Graph, GraphError, GraphMap, SignedEdge, VertexId};
use crate::splitting::SplitGraph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TraintrackError {
    #[error("prototype maps exist for odd positive n only, got {0}")]
    EvenOrNonpositive(i64),
    #[error("directions {0} and {1} are not based at the same vertex")]
    NotATurn(String, String),
    #[error("unknown direction {0:?}")]
    UnknownDirection(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("turn at {vertex} listed under {listed}")]
    WrongVertex { vertex: String, listed: String },
    #[error("backtracking turn {0} cannot be legal")]
    Backtracking(String),
    #[error("malformed structure document: {0}")]
    Document(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An unordered pair of outgoing directions at a vertex, stored with the
/// smaller direction first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Turn {
    vertex: VertexId,
    first: SignedEdge,
    second: SignedEdge,
}

impl Turn {
    pub fn new(g: &Graph, d1: SignedEdge, d2: SignedEdge) -> Result<Self, TraintrackError> {
        let (v1, v2) = (g.source(d1), g.source(d2));
        if v1 != v2 {
            return Err(TraintrackError::NotATurn(g.signed_label(d1), g.signed_label(d2)));
        }
        Ok(Self::canonical(v1, d1, d2))
    }

    fn canonical(vertex: VertexId, d1: SignedEdge, d2: SignedEdge) -> Self {
        let (first, second) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        Turn { vertex, first, second }
    }

    /// The turn crossed by a path traversing `incoming` then `outgoing`.
    pub fn crossed(g: &Graph, incoming: SignedEdge, outgoing: SignedEdge) -> Self {
        Self::canonical(g.source(outgoing), incoming.inverse(), outgoing)
    }

    /// Parses a two-letter word such as `aB`, meaning the turn crossed by
    /// that path. Multi-character labels are separated by a space.
    pub fn parse(g: &Graph, word: &str) -> Result<Self, TraintrackError> {
        let steps = g.parse_word(word)?;
        match steps.as_slice() {
            [x, y] => {
                if g.target(*x) != g.source(*y) {
                    return Err(TraintrackError::NotATurn(g.signed_label(*x), g.signed_label(*y)));
                }
                Ok(Self::crossed(g, *x, *y))
            }
            _ => Err(TraintrackError::Document(format!("turn word {word:?} must have two letters"))),
        }
    }

    pub fn vertex(&self) -> VertexId {
        self.vertex
    }

    pub fn directions(&self) -> (SignedEdge, SignedEdge) {
        (self.first, self.second)
    }

    pub fn is_backtracking(&self) -> bool {
        self.first == self.second
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> TurnDisplay<'a> {
        TurnDisplay { turn: self, graph: g }
    }
}

pub struct TurnDisplay<'a> {
    turn: &'a Turn,
    graph: &'a Graph,
}

impl fmt::Display for TurnDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.graph;
        write!(
            f,
            "{{{},{}}}@{}",
            g.signed_label(self.turn.first),
            g.signed_label(self.turn.second),
            g.vertex_name(self.turn.vertex)
        )
    }
}

/// A set of legal turns; every other turn is illegal.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TraintrackStructure {
    legal: BTreeSet<Turn>,
}

/// `{vertex: [[dir, dir], …]}`.
pub type StructureDocument = BTreeMap<String, Vec<[String; 2]>>;

impl TraintrackStructure {
    pub fn new(g: &Graph, turns: impl IntoIterator<Item = Turn>) -> Result<Self, TraintrackError> {
        let mut legal = BTreeSet::new();
        for t in turns {
            if t.is_backtracking() {
                return Err(TraintrackError::Backtracking(t.display(g).to_string()));
            }
            legal.insert(t);
        }
        Ok(TraintrackStructure { legal })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_legal(&self, t: &Turn) -> bool {
        !t.is_backtracking() && self.legal.contains(t)
    }

    pub fn turns(&self) -> impl Iterator<Item = &Turn> {
        self.legal.iter()
    }

    pub fn len(&self) -> usize {
        self.legal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.legal.is_empty()
    }

    pub fn to_document(&self, g: &Graph) -> StructureDocument {
        let mut doc = StructureDocument::new();
        for v in g.vertex_names() {
            doc.insert(v.clone(), Vec::new());
        }
        for t in &self.legal {
            doc.entry(g.vertex_name(t.vertex).to_string())
                .or_default()
                .push([g.signed_label(t.first), g.signed_label(t.second)]);
        }
        doc
    }

    pub fn from_document(g: &Graph, doc: &StructureDocument) -> Result<Self, TraintrackError> {
        let names: BTreeMap<&str, VertexId> = g
            .vertex_names()
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), VertexId(i)))
            .collect();
        let dir = |s: &str| g.signed_by_label(s).ok_or_else(|| TraintrackError::UnknownDirection(s.to_string()));
        let mut turns = Vec::new();
        for (v, pairs) in doc {
            let vid = *names.get(v.as_str()).ok_or_else(|| TraintrackError::UnknownVertex(v.clone()))?;
            for [x, y] in pairs {
                let t = Turn::new(g, dir(x)?, dir(y)?)?;
                if t.vertex != vid {
                    return Err(TraintrackError::WrongVertex {
                        vertex: g.vertex_name(t.vertex).to_string(),
                        listed: v.clone(),
                    });
                }
                turns.push(t);
            }
        }
        Self::new(g, turns)
    }
}

pub const PROTOTYPE_LETTERS: [char; 7] = ['a', 'b', 'c', 'd', 'e', 'f', 'g'];

/// Legal letter pairs of `P₇`, the same at both vertices.
pub const PROTOTYPE_LEGAL_PAIRS: [(usize, usize); 7] = [(0, 1), (0, 2), (1, 2), (0, 6), (1, 3), (1, 4), (2, 5)];

/// Two vertices `v0`, `v1` and seven edges `a … g` from `v0` to `v1`.
pub fn prototype_graph() -> Graph {
    let labels: Vec<String> = PROTOTYPE_LETTERS.iter().map(|c| c.to_string()).collect();
    Graph::with_vertex_count(2, labels.iter().map(|l| (0, 1, l.as_str())).collect()).expect("P7 is well formed")
}

pub fn prototype_structure() -> TraintrackStructure {
    let mut legal = BTreeSet::new();
    for (x, y) in PROTOTYPE_LEGAL_PAIRS {
        legal.insert(Turn::canonical(VertexId(0), SignedEdge::fwd(x), SignedEdge::fwd(y)));
        legal.insert(Turn::canonical(VertexId(1), SignedEdge::rev(x), SignedEdge::rev(y)));
    }
    TraintrackStructure { legal }
}

/// Whether the directions `(x, rx)` and `(y, ry)` of `P₇`, given as letter
/// index and reversal flag, form a legal turn.
pub fn prototype_turn_is_legal(x: usize, rx: bool, y: usize, ry: bool) -> bool {
    rx == ry
        && x != y
        && PROTOTYPE_LEGAL_PAIRS
            .iter()
            .any(|&(p, q)| (p, q) == (x, y) || (q, p) == (x, y))
}

/// `φ_n(y)` as steps on `P₇`, for the letter with index `y`.
pub fn prototype_steps(y: usize, n: u32) -> Result<Vec<SignedEdge>, TraintrackError> {
    if n.is_multiple_of(2) {
        return Err(TraintrackError::EvenOrNonpositive(n as i64));
    }
    if n == 1 {
        return Ok(vec![SignedEdge::fwd(y)]);
    }
    let m = ((n - 3) / 2) as usize;
    // `x Y (u V)^m z` as (x, Y, (u, V), z)
    let (x, big_y, (u, big_v), z) = match y {
        0 => (0, 6, (0, 1), 0),
        1 => (1, 3, (1, 2), 1),
        2 => (2, 5, (2, 0), 2),
        3 => (0, 1, (0, 1), 0),
        4 => (2, 1, (0, 1), 0),
        5 => (0, 2, (0, 1), 0),
        6 => (1, 4, (1, 0), 1),
        _ => return Err(TraintrackError::UnknownDirection(y.to_string())),
    };
    let mut out = Vec::with_capacity(n as usize);
    out.push(SignedEdge::fwd(x));
    out.push(SignedEdge::rev(big_y));
    for _ in 0..m {
        out.push(SignedEdge::fwd(u));
        out.push(SignedEdge::rev(big_v));
    }
    out.push(SignedEdge::fwd(z));
    Ok(out)
}

/// The prototype map `φ_n` on `P₇`; `φ_1` is the identity.
pub fn prototype_map(n: i64) -> Result<GraphMap, TraintrackError> {
    if n <= 0 || n % 2 == 0 || n > u32::MAX as i64 {
        return Err(TraintrackError::EvenOrNonpositive(n));
    }
    let g = prototype_graph();
    let mut images = Vec::with_capacity(7);
    for y in 0..7 {
        let steps = prototype_steps(y, n as u32)?;
        images.push(EdgePath::new(&g, VertexId(0), steps)?);
    }
    Ok(GraphMap::new(g, vec![VertexId(0), VertexId(1)], images)?)
}

/// Image of a turn: the pair formed by the first steps of the images of
/// its two directions. `None` when a direction's edge collapses.
pub fn turn_image(f: &GraphMap, t: &Turn) -> Option<Turn> {
    let a = *f.image_of(t.first).first()?;
    let b = *f.image_of(t.second).first()?;
    Some(Turn::canonical(f.graph().source(a), a, b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotTaut { edge: String, word: String },
    CollapsedEdge { edge: String },
    IllegalInteriorTurn { edge: String, position: usize, turn: String },
    IllegalTurnImage { turn: String, image: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotTaut { edge, word } => write!(f, "image of {edge} is not reduced: {word}"),
            Violation::CollapsedEdge { edge } => write!(f, "edge {edge} collapses"),
            Violation::IllegalInteriorTurn { edge, position, turn } => {
                write!(f, "image of {edge} crosses illegal turn {turn} after step {position}")
            }
            Violation::IllegalTurnImage { turn, image } => write!(f, "legal turn {turn} maps to illegal {image}"),
        }
    }
}

/// Outcome of the three traintrack checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraintrackCertificate {
    pub edges_checked: usize,
    pub interior_turns_checked: usize,
    pub legal_turns_checked: usize,
    pub legal_turns: usize,
    pub violations: Vec<Violation>,
}

impl TraintrackCertificate {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Checks that `f` is taut, that every image path crosses only legal
/// turns, and that legal turns map to legal turns.
pub fn verify_traintrack(f: &GraphMap, structure: &TraintrackStructure) -> TraintrackCertificate {
    let g = f.graph();
    let mut violations = Vec::new();
    let mut interior = 0;
    for (i, p) in f.edge_images().iter().enumerate() {
        let edge = g.label(crate::graphmap::EdgeId(i)).to_string();
        if p.is_empty() {
            violations.push(Violation::CollapsedEdge { edge });
            continue;
        }
        if !p.is_tight() {
            violations.push(Violation::NotTaut {
                edge: edge.clone(),
                word: g.format_word(p.steps()),
            });
        }
        for (k, w) in p.steps().windows(2).enumerate() {
            interior += 1;
            let t = Turn::crossed(g, w[0], w[1]);
            if !structure.is_legal(&t) {
                violations.push(Violation::IllegalInteriorTurn {
                    edge: edge.clone(),
                    position: k + 1,
                    turn: t.display(g).to_string(),
                });
            }
        }
    }
    for t in structure.turns() {
        match turn_image(f, t) {
            Some(img) if structure.is_legal(&img) => {}
            Some(img) => violations.push(Violation::IllegalTurnImage {
                turn: t.display(g).to_string(),
                image: img.display(g).to_string(),
            }),
            None => {}
        }
    }
    TraintrackCertificate {
        edges_checked: g.edge_count(),
        interior_turns_checked: interior,
        legal_turns_checked: structure.len(),
        legal_turns: structure.len(),
        violations,
    }
}

/// Legal turns of a split graph: a turn is legal when erasing subscripts
/// gives a legal turn of `P₇`.
pub fn induced_split_structure(split: &SplitGraph) -> TraintrackStructure {
    let g = split.graph();
    let mut legal = BTreeSet::new();
    for v in 0..g.vertex_count() {
        let dirs = g.directions_at(VertexId(v));
        for (i, &x) in dirs.iter().enumerate() {
            for &y in &dirs[i + 1..] {
                let (lx, ly) = (split.letter(x.edge), split.letter(y.edge));
                if prototype_turn_is_legal(lx, x.reversed, ly, y.reversed) {
                    legal.insert(Turn::canonical(VertexId(v), x, y));
                }
            }
        }
    }
    TraintrackStructure { legal }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prototype_words() {
        let p3 = prototype_map(3).unwrap();
        let g = p3.graph();
        let word = |f: &GraphMap, l: &str| f.word(g.edge_by_label(l).unwrap());
        assert_eq!(word(&p3, "d"), "aBa");
        assert_eq!(word(&p3, "g"), "bEb");
        assert_eq!(word(&p3, "a"), "aGa");
        let p7 = prototype_map(7).unwrap();
        assert_eq!(word(&p7, "a"), "aGaBaBa");
        assert_eq!(word(&p7, "e"), "cBaBaBa");
        assert_eq!(prototype_map(1).unwrap(), GraphMap::identity(prototype_graph()));
        for n in [0, -1, 2, 8] {
            assert!(matches!(prototype_map(n), Err(TraintrackError::EvenOrNonpositive(_))));
        }
        for n in (1..=13).step_by(2) {
            assert!(prototype_map(n).unwrap().word_lengths().iter().all(|&l| l == n as usize));
        }
    }

    #[test]
    fn turn_words_are_canonical() {
        let g = prototype_graph();
        assert_eq!(Turn::parse(&g, "aB").unwrap(), Turn::parse(&g, "bA").unwrap());
        assert_eq!(Turn::parse(&g, "aB").unwrap().vertex(), VertexId(1));
        assert_eq!(Turn::parse(&g, "Ga").unwrap().vertex(), VertexId(0));
        assert!(Turn::parse(&g, "aA").unwrap().is_backtracking());
        assert!(Turn::parse(&g, "ab").is_err());
    }

    #[test]
    fn turn_images_follow_first_letters() {
        let g = prototype_graph();
        for n in [3, 5, 9] {
            let f = prototype_map(n).unwrap();
            let ba = Turn::parse(&g, "Ba").unwrap();
            assert_eq!(turn_image(&f, &Turn::parse(&g, "Ga").unwrap()), Some(ba));
            assert_eq!(turn_image(&f, &ba), Some(ba));
        }
        let id = prototype_map(1).unwrap();
        for t in prototype_structure().turns() {
            assert_eq!(turn_image(&id, t), Some(*t));
        }
    }

    #[test]
    fn prototype_maps_are_traintrack() {
        let s = prototype_structure();
        assert_eq!(s.len(), 14);
        for m in 0..=5 {
            let cert = verify_traintrack(&prototype_map(3 + 2 * m).unwrap(), &s);
            assert!(cert.passed(), "m={m}: {:?}", cert.violations);
        }
    }

    #[test]
    fn empty_structure_fails_at_first_interior_turn() {
        let g = prototype_graph();
        let cert = verify_traintrack(&prototype_map(3).unwrap(), &TraintrackStructure::empty());
        let first = Turn::parse(&g, "aG").unwrap().display(&g).to_string();
        assert_eq!(
            cert.first_violation(),
            Some(&Violation::IllegalInteriorTurn {
                edge: "a".into(),
                position: 1,
                turn: first
            })
        );
    }

    #[test]
    fn every_image_turn_is_in_the_legal_set() {
        let s = prototype_structure();
        for n in (3..=13).step_by(2) {
            let f = prototype_map(n).unwrap();
            for p in f.edge_images() {
                for w in p.steps().windows(2) {
                    assert!(s.is_legal(&Turn::crossed(f.graph(), w[0], w[1])));
                }
            }
        }
    }

    #[test]
    fn structure_document_round_trip() {
        let g = prototype_graph();
        let s = prototype_structure();
        let doc = s.to_document(&g);
        assert_eq!(doc["v0"].len(), 7);
        let text = serde_json::to_string(&doc).unwrap();
        let back: StructureDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(TraintrackStructure::from_document(&g, &back).unwrap(), s);
        let mut bad = StructureDocument::new();
        bad.insert("v0".into(), vec![["a".into(), "a".into()]]);
        assert!(matches!(
            TraintrackStructure::from_document(&g, &bad),
            Err(TraintrackError::Backtracking(_))
        ));
    }
}
