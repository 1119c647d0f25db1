//! The graph file format: a single JSON object
//! `{"vertices": <int>, "edges": [{"u": <int>, "v": <int>, "length": <decimal>}, ...]}`.
//!
//! Lengths are ordinary JSON numbers (decimal or scientific notation) parsed
//! to binary floating point. Parsing validates the graph, so every
//! constructor error surfaces with the JSON context attached.

use crate::graph::{Edge, GraphError, MetricGraph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed graph file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeRecord {
    u: usize,
    v: usize,
    length: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphRecord {
    vertices: usize,
    edges: Vec<EdgeRecord>,
}

/// Parses and validates a graph from its JSON text.
pub fn parse_graph_json(text: &str) -> Result<MetricGraph, ParseError> {
    let record: GraphRecord = serde_json::from_str(text)?;
    let edges = record
        .edges
        .into_iter()
        .map(|e| Edge::new(e.u, e.v, e.length))
        .collect();
    Ok(MetricGraph::new(record.vertices, edges)?)
}

/// Serializes a graph to the file format (pretty-printed JSON).
pub fn graph_to_json(g: &MetricGraph) -> String {
    let record = GraphRecord {
        vertices: g.vertex_count(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeRecord {
                u: e.u,
                v: e.v,
                length: e.length,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&record).expect("graph record serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pentagon() {
        let text = r#"{
            "vertices": 5,
            "edges": [
                {"u": 0, "v": 1, "length": 1.0},
                {"u": 1, "v": 2, "length": 1.0},
                {"u": 2, "v": 3, "length": 1.0},
                {"u": 3, "v": 4, "length": 1.0},
                {"u": 4, "v": 0, "length": 1.0}
            ]
        }"#;
        let g = parse_graph_json(text).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 5);
        assert!(!g.is_bipartite());
    }

    #[test]
    fn accepts_scientific_notation_lengths() {
        let text = r#"{"vertices": 2, "edges": [{"u": 0, "v": 1, "length": 2.5e-1}]}"#;
        let g = parse_graph_json(text).unwrap();
        assert_eq!(g.edges()[0].length, 0.25);
    }

    #[test]
    fn surfaces_negative_length_as_graph_error() {
        let text = r#"{"vertices": 2, "edges": [{"u": 0, "v": 1, "length": -1}]}"#;
        match parse_graph_json(text).unwrap_err() {
            ParseError::Graph(GraphError::NonpositiveLength { edge: 0, length }) => {
                assert_eq!(length, -1.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn missing_edges_field_is_a_json_error() {
        let text = r#"{"vertices": 2}"#;
        assert!(matches!(
            parse_graph_json(text).unwrap_err(),
            ParseError::Json(_)
        ));
    }

    #[test]
    fn round_trips_through_json() {
        let g = MetricGraph::triangle_3_4_5().subdivide(&[3, 4, 5]).unwrap();
        let text = graph_to_json(&g);
        let back = parse_graph_json(&text).unwrap();
        assert_eq!(g, back);
    }
}
