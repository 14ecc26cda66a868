//! The command-line point and divisor syntax.
//!
//! A divisor is a comma-separated list of terms `v:NAME*MULT` or
//! `e:ID@NUM/DEN*MULT`, where `*MULT` is optional and defaults to 1. A point
//! on an edge sits at the given distance from the edge's source; the
//! endpoints `0` and the full length name the end vertices.

use ceresa_core::abel_jacobi::Divisor;
use ceresa_core::linalg::{format_rat, parse_rat};
use ceresa_core::{MetricGraph, Point, Rat};
use num_traits::{Signed, Zero};

use crate::error::CliError;

pub fn point_on_edge(g: &MetricGraph, e: usize, offset: Rat) -> ceresa_core::Result<Point> {
    let edge = g.edge(e);
    if offset.is_zero() {
        return Ok(Point::Vertex(edge.src));
    }
    if offset == edge.length {
        return Ok(Point::Vertex(edge.dst));
    }
    let p = Point::OnEdge { edge: e, offset };
    g.check_point(&p)?;
    Ok(p)
}

/// `NAME`, `v:NAME`, `ID@OFFSET` or `e:ID@OFFSET`.
pub fn parse_point(g: &MetricGraph, text: &str) -> Result<Point, CliError> {
    let text = text.trim();
    let usage = |msg: String| CliError::Usage(format!("bad point `{text}`: {msg}"));
    if let Some(name) = text.strip_prefix("v:") {
        return g.vertex_index(name).map(Point::Vertex).map_err(|e| usage(e.to_string()));
    }
    let body = text.strip_prefix("e:").unwrap_or(text);
    match body.split_once('@') {
        Some((id, offset)) => {
            let e = g.edge_index(id).map_err(|e| usage(e.to_string()))?;
            let offset = parse_rat(offset).map_err(|e| usage(e.to_string()))?;
            if offset.is_negative() || offset > g.edge(e).length {
                return Err(usage(format!(
                    "offset {} is outside edge `{id}` of length {}",
                    format_rat(&offset),
                    format_rat(&g.edge(e).length)
                )));
            }
            point_on_edge(g, e, offset).map_err(|e| usage(e.to_string()))
        }
        None if text.starts_with("e:") => Err(usage("expected `e:ID@NUM/DEN`".into())),
        None => g.vertex_index(body).map(Point::Vertex).map_err(|e| usage(e.to_string())),
    }
}

pub fn parse_divisor(g: &MetricGraph, text: &str) -> Result<Divisor, CliError> {
    let mut d = Divisor::default();
    for term in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if !(term.starts_with("v:") || term.starts_with("e:")) {
            return Err(CliError::Usage(format!("divisor term `{term}` must start with `v:` or `e:`")));
        }
        let (point, mult) = match term.rsplit_once('*') {
            Some((p, m)) => {
                let m: i64 = m
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad multiplicity in divisor term `{term}`")))?;
                (p, m)
            }
            None => (term, 1),
        };
        d.add_point(parse_point(g, point)?, mult);
    }
    Ok(d)
}

/// Canonical text for a divisor, readable by [`parse_divisor`].
pub fn format_divisor(g: &MetricGraph, d: &Divisor) -> String {
    d.terms()
        .iter()
        .map(|(p, m)| {
            let p = match p {
                Point::Vertex(v) => format!("v:{}", g.vertices()[*v]),
                Point::OnEdge { edge, offset } => format!("e:{}@{}", g.edge(*edge).id, format_rat(offset)),
            };
            format!("{p}*{m}")
        })
        .collect::<Vec<_>>()
        .join(",")
}
