//! Graphviz output.
//!
//! With a traintrack structure, each vertex is drawn as a cluster holding
//! one point per direction; edges join direction points and legal turns
//! appear as dashed arcs inside the cluster.

use std::fmt::Write;

use crate::folds::FoldRecord;
use crate::graphmap::{EdgeId, Graph, GraphMap, SignedEdge, VertexId};
use crate::traintrack::TraintrackStructure;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn direction_node(g: &Graph, d: SignedEdge) -> String {
    quote(&format!("{}/{}", g.vertex_name(g.source(d)), g.signed_label(d)))
}

/// DOT for `g`. Edge labels carry the image word when `f` is given.
pub fn graph_to_dot(name: &str, g: &Graph, f: Option<&GraphMap>, legal: Option<&TraintrackStructure>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    let _ = writeln!(out, "  node [fontsize=10];");
    let edge_label = |e: usize| match f {
        Some(f) => format!("{} \u{21a6} {}", g.label(EdgeId(e)), f.word(EdgeId(e))),
        None => g.label(EdgeId(e)).to_string(),
    };
    match legal {
        None => {
            for v in g.vertex_names() {
                let _ = writeln!(out, "  {} [shape=circle];", quote(v));
            }
            for (i, e) in g.edges().iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  {} -> {} [label={}];",
                    quote(g.vertex_name(e.from)),
                    quote(g.vertex_name(e.to)),
                    quote(&edge_label(i))
                );
            }
        }
        Some(s) => {
            for v in 0..g.vertex_count() {
                let v = VertexId(v);
                let _ = writeln!(out, "  subgraph {} {{", quote(&format!("cluster_{}", g.vertex_name(v))));
                let _ = writeln!(out, "    label={}; style=rounded;", quote(g.vertex_name(v)));
                let dirs = g.directions_at(v);
                for d in &dirs {
                    let _ = writeln!(
                        out,
                        "    {} [shape=point, xlabel={}];",
                        direction_node(g, *d),
                        quote(&g.signed_label(*d))
                    );
                }
                for t in s.turns().filter(|t| t.vertex() == v) {
                    let (a, b) = t.directions();
                    let _ = writeln!(
                        out,
                        "    {} -> {} [dir=none, style=dashed, color=gray40, constraint=false];",
                        direction_node(g, a),
                        direction_node(g, b)
                    );
                }
                let _ = writeln!(out, "  }}");
            }
            for i in 0..g.edge_count() {
                let fwd = SignedEdge::fwd(i);
                let _ = writeln!(
                    out,
                    "  {} -> {} [label={}];",
                    direction_node(g, fwd),
                    direction_node(g, fwd.inverse()),
                    quote(&edge_label(i))
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

/// DOT for one fold stage: the graph after the stage, titled with the
/// folds it performed.
pub fn fold_stage_to_dot(stage: usize, g: &Graph, folds: &[FoldRecord]) -> String {
    let title = folds
        .iter()
        .filter(|r| r.stage + 1 == stage)
        .map(|r| {
            let sign = |rev: bool| if rev { "\u{207b}\u{00b9}" } else { "" };
            format!(
                "{}{} ~ {}{} at {} ({:?})",
                r.kept,
                sign(r.kept_reversed),
                r.removed,
                sign(r.removed_reversed),
                r.vertex,
                r.kind
            )
        })
        .collect::<Vec<_>>()
        .join("\\n");
    let title = if stage == 0 { "subdivided domain".to_string() } else { format!("stage {stage}\\n{title}") };
    let body = graph_to_dot(&format!("stage{stage}"), g, None, None);
    body.replacen('\n', &format!("\n  label=\"{}\"; labelloc=t;\n", title.replace('"', "\\\"")), 1)
}
