//! The JSON graph document.

use std::collections::HashMap;

use ceresa_core::graph::Edge;
use ceresa_core::linalg::{format_rat, parse_rat};
use ceresa_core::{MetricGraph, Point, Rat};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Issue};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<BasepointDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub length: Length,
}

/// Either a JSON integer or a `"num/den"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Length {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasepointDocument {
    Vertex { vertex: String },
    Edge { edge: String, offset: Length },
}

/// A validated graph with the basepoint from the document, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: MetricGraph,
    pub basepoint: Option<Point>,
}

fn parse_length(l: &Length) -> Result<Rat, String> {
    match l {
        Length::Int(n) => Ok(Rat::from_integer((*n).into())),
        Length::Text(s) => parse_rat(s).map_err(|e| e.to_string()),
    }
}

impl GraphDocument {
    pub fn from_graph(graph: &MetricGraph, basepoint: Option<&Point>) -> Self {
        let name = |v: usize| graph.vertices()[v].clone();
        let edges = graph
            .edges()
            .iter()
            .map(|e| EdgeDocument {
                id: e.id.clone(),
                src: name(e.src),
                dst: name(e.dst),
                length: Length::Text(format_rat(&e.length)),
            })
            .collect();
        let basepoint = basepoint.map(|p| match p {
            Point::Vertex(v) => BasepointDocument::Vertex { vertex: name(*v) },
            Point::OnEdge { edge, offset } => {
                BasepointDocument::Edge { edge: graph.edge(*edge).id.clone(), offset: Length::Text(format_rat(offset)) }
            }
        });
        GraphDocument { vertices: graph.vertices().to_vec(), edges, basepoint }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Validates the document, reporting every problem found with its location.
    pub fn validate(&self) -> Result<ParsedGraph, CliError> {
        let mut issues = Vec::new();
        let mut index = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                issues.push(Issue::new(format!("vertices[{i}]"), format!("duplicate vertex `{v}`")));
            }
        }
        if self.vertices.is_empty() {
            issues.push(Issue::new("vertices", "no vertices"));
        }
        let mut ids = HashMap::new();
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let at = |field: &str| format!("edges[{i}].{field}");
            if ids.insert(e.id.as_str(), i).is_some() {
                issues.push(Issue::new(at("id"), format!("duplicate edge id `{}`", e.id)));
            }
            let mut end = |field: &str, name: &str| match index.get(name) {
                Some(&v) => Some(v),
                None => {
                    issues.push(Issue::new(at(field), format!("unknown vertex `{name}`")));
                    None
                }
            };
            let (src, dst) = (end("src", &e.src), end("dst", &e.dst));
            let length = match parse_length(&e.length) {
                Ok(l) if l.is_positive() => Some(l),
                Ok(l) => {
                    issues.push(Issue::new(at("length"), format!("nonpositive length {}", format_rat(&l))));
                    None
                }
                Err(msg) => {
                    issues.push(Issue::new(at("length"), msg));
                    None
                }
            };
            if let (Some(src), Some(dst), Some(length)) = (src, dst, length) {
                edges.push(Edge { id: e.id.clone(), src, dst, length });
            }
        }
        if !issues.is_empty() {
            return Err(CliError::Invalid(issues));
        }
        let graph = MetricGraph::from_parts(self.vertices.clone(), edges)
            .map_err(|e| CliError::Invalid(vec![Issue::new("graph", e.to_string())]))?;
        let basepoint = match &self.basepoint {
            None => None,
            Some(BasepointDocument::Vertex { vertex }) => Some(
                graph
                    .vertex_index(vertex)
                    .map(Point::Vertex)
                    .map_err(|e| CliError::Invalid(vec![Issue::new("basepoint.vertex", e.to_string())]))?,
            ),
            Some(BasepointDocument::Edge { edge, offset }) => {
                let bad =
                    |field: &str, msg: String| CliError::Invalid(vec![Issue::new(format!("basepoint.{field}"), msg)]);
                let e = graph.edge_index(edge).map_err(|e| bad("edge", e.to_string()))?;
                let offset = parse_length(offset).map_err(|m| bad("offset", m))?;
                Some(crate::divisor::point_on_edge(&graph, e, offset).map_err(|e| bad("offset", e.to_string()))?)
            }
        };
        Ok(ParsedGraph { graph, basepoint })
    }
}

/// Parses and validates a JSON graph document.
pub fn parse_graph(text: &str) -> Result<ParsedGraph, CliError> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| {
        CliError::Invalid(vec![Issue::new(format!("line {} column {}", e.line(), e.column()), e.to_string())])
    })?;
    doc.validate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ceresa_core::fixtures;
    use ceresa_core::linalg::rat;

    #[test]
    fn round_trip() {
        let g = fixtures::tl3(&(1..=9).map(rat).collect::<Vec<_>>());
        let p = Point::OnEdge { edge: 2, offset: Rat::new(1.into(), 2.into()) };
        let doc = GraphDocument::from_graph(&g, Some(&p));
        let back = parse_graph(&doc.to_json()).unwrap();
        assert_eq!(back.graph, g);
        assert_eq!(back.basepoint, Some(p));
    }

    #[test]
    fn integer_and_string_lengths() {
        let text = r#"{"vertices":["a"],"edges":[{"id":"x","src":"a","dst":"a","length":3},{"id":"y","src":"a","dst":"a","length":"5/2"}]}"#;
        let g = parse_graph(text).unwrap().graph;
        assert_eq!(g.lengths(), vec![rat(3), Rat::new(5.into(), 2.into())]);
    }

    #[test]
    fn errors_carry_locations() {
        let text = r#"{"vertices":["a","b"],"edges":[
            {"id":"x","src":"a","dst":"c","length":"1"},
            {"id":"y","src":"a","dst":"b","length":"0"},
            {"id":"z","src":"a","dst":"b","length":"1/0"}]}"#;
        let CliError::Invalid(issues) = parse_graph(text).unwrap_err() else { panic!() };
        let at: Vec<&str> = issues.iter().map(|i| i.location.as_str()).collect();
        assert_eq!(at, ["edges[0].dst", "edges[1].length", "edges[2].length"]);
    }

    #[test]
    fn disconnected_and_malformed() {
        let text = r#"{"vertices":["a","b"],"edges":[{"id":"x","src":"a","dst":"a","length":1}]}"#;
        assert!(matches!(parse_graph(text), Err(CliError::Invalid(_))));
        assert!(matches!(parse_graph("{\"vertices\": ["), Err(CliError::Invalid(_))));
        let text = r#"{"vertices":["a"],"edges":[],"extra":1}"#;
        assert!(parse_graph(text).is_err());
    }
}
