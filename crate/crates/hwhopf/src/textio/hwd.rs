//! The `.hwd` diagram file format.
//!
//! Line-oriented UTF-8 with `#` comments. The first significant line is
//! `vertices N`; every following line is `edge T H` where the tail `T` is a
//! vertex index or `in` and the head `H` is a vertex index or `out`.
//! `edge in out` would be a line with both ends free and is rejected.

use hwhopf_core::composition::Matching;
use hwhopf_core::diagram::{Diagram, DiagramError, Edge, EdgeEnd};

use super::ParseError;

struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Splits a line into whitespace-separated tokens with 1-based character
/// columns, dropping everything from `#` on.
fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None; // (byte offset, column)
    for (char_pos, (byte_pos, c)) in line.char_indices().enumerate() {
        if c == '#' {
            if let Some((byte, column)) = start.take() {
                tokens.push(Token { text: &line[byte..byte_pos], column });
            }
            return tokens;
        }
        if c.is_whitespace() {
            if let Some((byte, column)) = start.take() {
                tokens.push(Token { text: &line[byte..byte_pos], column });
            }
        } else if start.is_none() {
            start = Some((byte_pos, char_pos + 1));
        }
    }
    if let Some((byte, column)) = start {
        tokens.push(Token { text: &line[byte..], column });
    }
    tokens
}

/// Parses a `.hwd` file into a validated diagram.
pub fn parse_diagram(text: &str) -> Result<Diagram, ParseError> {
    let mut vertex_count: Option<(usize, usize)> = None; // (count, line number)
    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_lines: Vec<(usize, usize)> = Vec::new(); // (line, column) per edge

    for (line_index, raw_line) in text.lines().enumerate() {
        let line_number = line_index + 1;
        let tokens = tokenize(raw_line);
        if tokens.is_empty() {
            continue;
        }
        let keyword = &tokens[0];
        match keyword.text {
            "vertices" => {
                if vertex_count.is_some() {
                    return Err(ParseError::new(
                        line_number,
                        keyword.column,
                        "duplicate vertices line",
                    ));
                }
                if tokens.len() != 2 {
                    return Err(ParseError::new(
                        line_number,
                        keyword.column,
                        "expected: vertices N",
                    ));
                }
                let count: usize = tokens[1].text.parse().map_err(|_| {
                    ParseError::new(line_number, tokens[1].column, "vertex count must be a natural number")
                })?;
                vertex_count = Some((count, line_number));
            }
            "edge" => {
                let Some((count, _)) = vertex_count else {
                    return Err(ParseError::new(
                        line_number,
                        keyword.column,
                        "edge line before the vertices line",
                    ));
                };
                if tokens.len() != 3 {
                    return Err(ParseError::new(line_number, keyword.column, "expected: edge T H"));
                }
                let tail_token = &tokens[1];
                let head_token = &tokens[2];
                if tail_token.text == "in" && head_token.text == "out" {
                    return Err(ParseError::new(
                        line_number,
                        tail_token.column,
                        "a line may not have both ends free",
                    ));
                }
                let tail = parse_end(tail_token, "in", count, line_number, "tail")?;
                let head = parse_end(head_token, "out", count, line_number, "head")?;
                edges.push(Edge { tail, head });
                edge_lines.push((line_number, keyword.column));
            }
            other => {
                return Err(ParseError::new(
                    line_number,
                    keyword.column,
                    format!("unknown directive `{other}` (expected `vertices` or `edge`)"),
                ));
            }
        }
    }

    let Some((count, vertices_line)) = vertex_count else {
        return Err(ParseError::new(1, 1, "missing vertices line"));
    };
    Diagram::new(count, edges).map_err(|err| {
        let (line, column) = match &err {
            DiagramError::CycleDetected { edges } => {
                edges.first().map(|&e| edge_lines[e]).unwrap_or((vertices_line, 1))
            }
            DiagramError::BothEndsFree { edge } | DiagramError::IndexOutOfRange { edge, .. } => {
                edge_lines[*edge]
            }
            DiagramError::IsolatedVertex { .. } => (vertices_line, 1),
        };
        ParseError::new(line, column, err.to_string())
    })
}

fn parse_end(
    token: &Token<'_>,
    free_word: &str,
    vertex_count: usize,
    line: usize,
    role: &str,
) -> Result<EdgeEnd, ParseError> {
    if token.text == free_word {
        return Ok(EdgeEnd::Free);
    }
    let index: usize = token.text.parse().map_err(|_| {
        ParseError::new(
            line,
            token.column,
            format!("{role} must be a vertex index or `{free_word}`"),
        )
    })?;
    if index >= vertex_count {
        return Err(ParseError::new(
            line,
            token.column,
            format!("vertex index {index} is out of range (vertices {vertex_count})"),
        ));
    }
    Ok(EdgeEnd::Vertex(index))
}

/// Renders a diagram in `.hwd` syntax, canonically relabeled so that equal
/// classes print identically.
pub fn render_hwd(diagram: &Diagram) -> String {
    let canonical = diagram.canonical_form();
    let mut out = format!("vertices {}\n", canonical.vertex_count());
    for edge in canonical.edges() {
        let tail = match edge.tail {
            EdgeEnd::Vertex(v) => v.to_string(),
            EdgeEnd::Free => "in".to_string(),
        };
        let head = match edge.head {
            EdgeEnd::Vertex(v) => v.to_string(),
            EdgeEnd::Free => "out".to_string(),
        };
        out.push_str(&format!("edge {tail} {head}\n"));
    }
    out
}

/// Parses the CLI matching syntax `i:j,i:j,...` (empty input for the empty
/// matching). The numbers are positions within the classified incoming lines
/// of the upper diagram and outgoing lines of the lower diagram, in file
/// order; the result is translated to edge indices.
pub fn parse_matching(
    text: &str,
    upper: &Diagram,
    lower: &Diagram,
) -> Result<Matching, ParseError> {
    let incoming = upper.line_partition().incoming;
    let outgoing = lower.line_partition().outgoing;
    let mut pairs = Vec::new();
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Matching::empty());
    }
    let mut column = 1;
    for part in trimmed.split(',') {
        let (left, right) = part.split_once(':').ok_or_else(|| {
            ParseError::new(1, column, format!("expected `i:j`, found `{part}`"))
        })?;
        let parse_pos = |s: &str, side: &str, available: usize| -> Result<usize, ParseError> {
            let position: usize = s.trim().parse().map_err(|_| {
                ParseError::new(1, column, format!("{side} position must be a natural number"))
            })?;
            if position >= available {
                return Err(ParseError::new(
                    1,
                    column,
                    format!("{side} position {position} out of range ({available} available)"),
                ));
            }
            Ok(position)
        };
        let i = parse_pos(left, "incoming", incoming.len())?;
        let j = parse_pos(right, "outgoing", outgoing.len())?;
        pairs.push((incoming[i], outgoing[j]));
        column += part.len() + 1;
    }
    Ok(Matching::new(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hwhopf_core::diagram::LineCounts;

    #[test]
    fn parses_the_pass_diagram() {
        let d = parse_diagram("vertices 1\nedge in 0\nedge 0 out\n").unwrap();
        assert!(d.is_isomorphic(&Diagram::single_vertex_pass()));
    }

    #[test]
    fn parses_the_empty_diagram() {
        let d = parse_diagram("vertices 0").unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let d = parse_diagram("# chain\n\nvertices 2 # two vertices\nedge in 0\nedge 0 1\nedge 1 out\n").unwrap();
        assert_eq!(d.line_counts(), LineCounts { inner: 1, incoming: 1, outgoing: 1 });
    }

    #[test]
    fn both_ends_free_reports_its_line() {
        let err = parse_diagram("vertices 1\nedge in out").unwrap_err();
        assert_eq!(err.diagnostic.line, 2);
        assert!(err.diagnostic.message.contains("both ends free"));
    }

    #[test]
    fn out_of_range_reports_position() {
        let err = parse_diagram("vertices 1\nedge in 4").unwrap_err();
        assert_eq!((err.diagnostic.line, err.diagnostic.column), (2, 9));
    }

    #[test]
    fn cycle_reports_an_edge_line() {
        let err = parse_diagram("vertices 2\nedge 0 1\nedge 1 0").unwrap_err();
        assert_eq!(err.diagnostic.line, 2);
        assert!(err.diagnostic.message.contains("cycle"));
    }

    #[test]
    fn isolated_vertex_reports_the_vertices_line() {
        let err = parse_diagram("vertices 2\nedge in 0").unwrap_err();
        assert_eq!(err.diagnostic.line, 1);
        assert!(err.diagnostic.message.contains("no line"));
    }

    #[test]
    fn tail_cannot_be_out() {
        let err = parse_diagram("vertices 1\nedge out 0").unwrap_err();
        assert_eq!(err.diagnostic.line, 2);
        assert!(err.diagnostic.message.contains("tail"));
    }

    #[test]
    fn render_parse_round_trip() {
        let d = parse_diagram("vertices 2\nedge in 1\nedge 1 0\nedge 0 out\n").unwrap();
        let rendered = render_hwd(&d);
        let back = parse_diagram(&rendered).unwrap();
        assert!(back.is_isomorphic(&d));
        // Canonical rendering is stable.
        assert_eq!(render_hwd(&back), rendered);
    }

    #[test]
    fn matching_positions_translate_to_edge_indices() {
        // Upper: outgoing line first, then two incoming lines.
        let upper = parse_diagram("vertices 1\nedge 0 out\nedge in 0\nedge in 0").unwrap();
        let lower = parse_diagram("vertices 1\nedge in 0\nedge 0 out\nedge 0 out").unwrap();
        let m = parse_matching("1:0", &upper, &lower).unwrap();
        // Incoming position 1 is edge 2 of upper; outgoing position 0 is edge 1 of lower.
        assert_eq!(m.pairs(), &[(2, 1)]);
        assert!(parse_matching("", &upper, &lower).unwrap().is_empty());
        assert!(parse_matching("2:0", &upper, &lower).is_err());
        assert!(parse_matching("1;0", &upper, &lower).is_err());
    }
}
