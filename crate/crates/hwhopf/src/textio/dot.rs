//! DOT emission: one plain digraph per diagram, drawn bottom-up so incoming
//! lines enter from below and outgoing lines leave at the top. Free ends
//! become point-shaped pseudo-nodes.

use hwhopf_core::diagram::{Diagram, EdgeEnd};

/// Renders a diagram as a DOT digraph with deterministic node names taken
/// from the canonical relabeling.
pub fn render_dot(diagram: &Diagram) -> String {
    let canonical = diagram.canonical_form();
    let mut out = String::from("digraph hwd {\n  rankdir=BT;\n");
    for v in 0..canonical.vertex_count() {
        out.push_str(&format!("  v{v} [shape=circle, label=\"\"];\n"));
    }
    let mut incoming = 0usize;
    let mut outgoing = 0usize;
    let mut arrows = Vec::new();
    for edge in canonical.edges() {
        match (edge.tail, edge.head) {
            (EdgeEnd::Vertex(t), EdgeEnd::Vertex(h)) => {
                arrows.push(format!("  v{t} -> v{h};\n"));
            }
            (EdgeEnd::Free, EdgeEnd::Vertex(h)) => {
                out.push_str(&format!("  in{incoming} [shape=point];\n"));
                arrows.push(format!("  in{incoming} -> v{h};\n"));
                incoming += 1;
            }
            (EdgeEnd::Vertex(t), EdgeEnd::Free) => {
                out.push_str(&format!("  out{outgoing} [shape=point];\n"));
                arrows.push(format!("  v{t} -> out{outgoing};\n"));
                outgoing += 1;
            }
            (EdgeEnd::Free, EdgeEnd::Free) => unreachable!("validated diagram"),
        }
    }
    for arrow in arrows {
        out.push_str(&arrow);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_diagram_is_a_bare_digraph() {
        assert_eq!(render_dot(&Diagram::empty()), "digraph hwd {\n  rankdir=BT;\n}\n");
    }

    #[test]
    fn node_and_arrow_counts_match_the_line_partition() {
        let d = Diagram::single_vertex_pass();
        let dot = render_dot(&d);
        let counts = d.line_counts();
        assert_eq!(dot.matches("[shape=circle").count(), d.vertex_count());
        assert_eq!(dot.matches("[shape=point").count(), counts.incoming + counts.outgoing);
        assert_eq!(dot.matches(" -> ").count(), d.edge_count());
        assert_eq!(dot.matches("in0 -> v0").count(), 1);
        assert_eq!(dot.matches("v0 -> out0").count(), 1);
    }

    #[test]
    fn output_is_canonical_across_relabelings() {
        let d = hwhopf_core::diagram::Diagram::new(
            3,
            vec![
                hwhopf_core::diagram::Edge::inner(2, 0),
                hwhopf_core::diagram::Edge::incoming(2),
                hwhopf_core::diagram::Edge::outgoing(0),
                hwhopf_core::diagram::Edge::incoming(1),
            ],
        )
        .unwrap();
        let relabeled = d.relabeled(&[2, 0, 1]);
        assert_eq!(render_dot(&d), render_dot(&relabeled));
    }
}
