//! Small maps from the literature, used by tests and the command line.

use crate::graphmap::{Graph, GraphMap};

/// Star with centre `v0` and tips `v1..v4` on edges `a, b, c, d`, and the
/// five-uniform expander
/// `a ↦ bBdDb, b ↦ aAcCc, c ↦ dDbBa, d ↦ cCbBd`.
pub fn five_uniform_star() -> GraphMap {
    let g = Graph::with_vertex_count(5, vec![(0, 1, "a"), (0, 2, "b"), (0, 3, "c"), (0, 4, "d")])
        .expect("valid star");
    GraphMap::from_words(g, &["bBdDb", "aAcCc", "dDbBa", "cCbBd"]).expect("valid star map")
}
