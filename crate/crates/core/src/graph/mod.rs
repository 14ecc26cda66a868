//! Metric graphs: oriented multigraphs with positive rational edge lengths.

mod tree;

pub use tree::{b_expansion, fundamental_cycles, orientation_sign, sgn_pointed, sgn_unpointed, SpanningTree};

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rat, IntMatrix, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
    pub length: Rat,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.src == self.dst
    }
}

/// A vertex, or a point strictly inside an edge at `offset` from its source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Vertex(usize),
    OnEdge { edge: usize, offset: Rat },
}

pub type Basepoint = Point;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

/// Result of splitting one edge at an interior point.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub graph: MetricGraph,
    /// The new vertex.
    pub vertex: usize,
    /// Index of the half `src → vertex`; the old edge index is kept for it.
    pub first: usize,
    /// Index of the half `vertex → dst`, inserted right after `first`.
    pub second: usize,
}

/// Result of contracting a set of edges.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: MetricGraph,
    pub vertex_map: Vec<usize>,
    /// `None` for contracted edges.
    pub edge_map: Vec<Option<usize>>,
}

impl MetricGraph {
    /// Builds a graph from named vertices and `(id, src, dst, length)` edges.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S, Rat)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, v) in names.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{v}`")));
            }
        }
        let lookup = |v: &S| index.get(v.as_ref()).copied().ok_or_else(|| Error::UnknownVertex(v.as_ref().to_string()));
        let edges = edges
            .iter()
            .map(|(id, s, d, l)| {
                Ok(Edge { id: id.as_ref().to_string(), src: lookup(s)?, dst: lookup(d)?, length: l.clone() })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(names, edges)
    }

    /// Builds a graph from vertex names and index-based edges, validating it.
    pub fn from_parts(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        let mut seen = HashMap::new();
        for e in &edges {
            if seen.insert(e.id.as_str(), ()).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate edge id `{}`", e.id)));
            }
            if e.src >= vertices.len() || e.dst >= vertices.len() {
                return Err(Error::InvalidGraph(format!("edge `{}` has a dangling endpoint", e.id)));
            }
            if !e.length.is_positive() {
                return Err(Error::InvalidGraph(format!(
                    "edge `{}` has nonpositive length {}",
                    e.id,
                    format_rat(&e.length)
                )));
            }
        }
        let g = MetricGraph { vertices, edges };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn lengths(&self) -> Vec<Rat> {
        self.edges.iter().map(|e| e.length.clone()).collect()
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.into()))
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edges.iter().position(|e| e.id == id).ok_or_else(|| Error::UnknownEdge(id.into()))
    }

    pub fn edge_ids(&self) -> Vec<&str> {
        self.edges.iter().map(|e| e.id.as_str()).collect()
    }

    /// First Betti number `|E| - |V| + 1`.
    pub fn genus(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    /// Incidence matrix `|V| × |E|` of the boundary map `e ↦ dst(e) - src(e)`.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.vertex_count(), self.edge_count());
        for (j, e) in self.edges.iter().enumerate() {
            m[(e.dst, j)] += 1;
            m[(e.src, j)] -= 1;
        }
        m
    }

    fn components_without(&self, skip: Option<usize>) -> Vec<usize> {
        let n = self.vertex_count();
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for (i, e) in self.edges.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            let (a, b) = (find(&mut uf, e.src), find(&mut uf, e.dst));
            uf[a.max(b)] = a.min(b);
        }
        (0..n).map(|v| find(&mut uf, v)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(None).iter().all(|&c| c == 0)
    }

    /// Separating edges, in edge order.
    pub fn bridges(&self) -> Vec<usize> {
        (0..self.edge_count())
            .filter(|&i| {
                let e = &self.edges[i];
                if e.is_loop() {
                    return false;
                }
                let comp = self.components_without(Some(i));
                comp[e.src] != comp[e.dst]
            })
            .collect()
    }

    /// Contracts the listed edges. Each merged vertex keeps the name of its
    /// lowest-index member; surviving vertices and edges keep their order.
    pub fn contract(&self, edges: &[usize]) -> Contraction {
        let n = self.vertex_count();
        let mut rep: Vec<usize> = (0..n).collect();
        fn find(rep: &mut [usize], mut x: usize) -> usize {
            while rep[x] != x {
                rep[x] = rep[rep[x]];
                x = rep[x];
            }
            x
        }
        for &i in edges {
            let e = &self.edges[i];
            let (a, b) = (find(&mut rep, e.src), find(&mut rep, e.dst));
            rep[a.max(b)] = a.min(b);
        }
        let roots: Vec<usize> = (0..n).map(|v| find(&mut rep, v)).collect();
        let mut new_index = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        for v in 0..n {
            if roots[v] == v {
                new_index[v] = vertices.len();
                vertices.push(self.vertices[v].clone());
            }
        }
        let vertex_map: Vec<usize> = roots.iter().map(|&r| new_index[r]).collect();
        let mut new_edges = Vec::new();
        let mut edge_map = Vec::with_capacity(self.edge_count());
        for (i, e) in self.edges.iter().enumerate() {
            if edges.contains(&i) {
                edge_map.push(None);
            } else {
                edge_map.push(Some(new_edges.len()));
                new_edges.push(Edge { src: vertex_map[e.src], dst: vertex_map[e.dst], ..e.clone() });
            }
        }
        Contraction { graph: MetricGraph { vertices, edges: new_edges }, vertex_map, edge_map }
    }

    /// Contracts every bridge and carries the point along. A point on a
    /// bridge goes to the merged vertex.
    pub fn contract_bridges(&self, point: &Point) -> Result<(MetricGraph, Point)> {
        self.check_point(point)?;
        let bridges = self.bridges();
        if bridges.is_empty() {
            return Ok((self.clone(), point.clone()));
        }
        let c = self.contract(&bridges);
        let image = match point {
            Point::Vertex(v) => Point::Vertex(c.vertex_map[*v]),
            Point::OnEdge { edge, offset } => match c.edge_map[*edge] {
                Some(e) => Point::OnEdge { edge: e, offset: offset.clone() },
                None => Point::Vertex(c.vertex_map[self.edges[*edge].src]),
            },
        };
        Ok((c.graph, image))
    }

    pub fn check_point(&self, point: &Point) -> Result<()> {
        match point {
            Point::Vertex(v) if *v < self.vertex_count() => Ok(()),
            Point::Vertex(v) => Err(Error::InvalidPoint(format!("vertex index {v} out of range"))),
            Point::OnEdge { edge, offset } => {
                let e = self
                    .edges
                    .get(*edge)
                    .ok_or_else(|| Error::InvalidPoint(format!("edge index {edge} out of range")))?;
                if offset.is_positive() && offset < &e.length {
                    Ok(())
                } else {
                    Err(Error::InvalidPoint(format!(
                        "offset {} is not strictly inside edge `{}` of length {}",
                        format_rat(offset),
                        e.id,
                        format_rat(&e.length)
                    )))
                }
            }
        }
    }

    /// Splits edge `e` at `offset` from its source. The halves are named
    /// `{id}.0` and `{id}.1`, the new vertex `{id}@{offset}`.
    pub fn subdivide(&self, e: usize, offset: &Rat) -> Result<Subdivision> {
        self.check_point(&Point::OnEdge { edge: e, offset: offset.clone() })?;
        let old = &self.edges[e];
        let mut vertices = self.vertices.clone();
        let vertex = vertices.len();
        vertices.push(format!("{}@{}", old.id, format_rat(offset)));
        let first = Edge { id: format!("{}.0", old.id), src: old.src, dst: vertex, length: offset.clone() };
        let second = Edge { id: format!("{}.1", old.id), src: vertex, dst: old.dst, length: &old.length - offset };
        let mut edges = self.edges.clone();
        edges[e] = first;
        edges.insert(e + 1, second);
        let graph = MetricGraph::from_parts(vertices, edges)?;
        Ok(Subdivision { graph, vertex, first: e, second: e + 1 })
    }

    /// Reverses the orientation of edge `e`.
    pub fn flip_edge(&self, e: usize) -> MetricGraph {
        let mut g = self.clone();
        let edge = &mut g.edges[e];
        std::mem::swap(&mut edge.src, &mut edge.dst);
        g
    }

    /// Reorders edges so that new edge `k` is old edge `order[k]`.
    pub fn permute_edges(&self, order: &[usize]) -> MetricGraph {
        assert_eq!(order.len(), self.edge_count(), "not a permutation of the edges");
        MetricGraph { vertices: self.vertices.clone(), edges: order.iter().map(|&i| self.edges[i].clone()).collect() }
    }

    pub fn with_lengths(&self, lengths: &[Rat]) -> Result<MetricGraph> {
        if lengths.len() != self.edge_count() {
            return Err(Error::DimensionMismatch { expected: self.edge_count(), got: lengths.len() });
        }
        let edges = self.edges.iter().zip(lengths).map(|(e, l)| Edge { length: l.clone(), ..e.clone() }).collect();
        MetricGraph::from_parts(self.vertices.clone(), edges)
    }

    pub fn scale_lengths(&self, factor: &Rat) -> Result<MetricGraph> {
        let ls: Vec<Rat> = self.edges.iter().map(|e| &e.length * factor).collect();
        self.with_lengths(&ls)
    }

    pub fn has_integral_lengths(&self) -> bool {
        self.edges.iter().all(|e| e.length.is_integer())
    }

    pub fn point_name(&self, p: &Point) -> String {
        match p {
            Point::Vertex(v) => self.vertices[*v].clone(),
            Point::OnEdge { edge, offset } => format!("{}@{}", self.edges[*edge].id, format_rat(offset)),
        }
    }

    /// Total length, handy for sampling points.
    pub fn total_length(&self) -> Rat {
        self.edges.iter().fold(Rat::zero(), |acc, e| acc + &e.length)
    }
}

/// A bridgeless model with a spanning tree and a basepoint vertex, obtained
/// by contracting bridges and subdividing at an interior basepoint.
#[derive(Clone, Debug)]
pub struct PointedModel {
    pub graph: MetricGraph,
    pub tree: SpanningTree,
    pub basepoint: usize,
    /// Ids of the contracted bridges.
    pub contracted: Vec<String>,
    /// Id of the edge split at the basepoint, if any.
    pub subdivided: Option<String>,
}

impl PointedModel {
    /// `tree` lists tree edge ids of the input graph; the breadth-first tree
    /// of the bridgeless graph is used otherwise. When the basepoint splits a
    /// cotree edge, its first half joins the tree so that the cotree edges
    /// and their order are unchanged.
    pub fn prepare<S: AsRef<str>>(graph: &MetricGraph, basepoint: &Point, tree: Option<&[S]>) -> Result<Self> {
        if let Some(ids) = tree {
            SpanningTree::from_edge_ids(graph, ids)?;
        }
        let bridges = graph.bridges();
        let contracted: Vec<String> = bridges.iter().map(|&e| graph.edge(e).id.clone()).collect();
        let (g, point) = graph.contract_bridges(basepoint)?;
        let t = match tree {
            Some(ids) => {
                let kept: Vec<&str> =
                    ids.iter().map(AsRef::as_ref).filter(|id| !contracted.iter().any(|b| b == id)).collect();
                SpanningTree::from_edge_ids(&g, &kept)?
            }
            None => SpanningTree::bfs(&g),
        };
        match point {
            Point::Vertex(v) => Ok(PointedModel { graph: g, tree: t, basepoint: v, contracted, subdivided: None }),
            Point::OnEdge { edge, offset } => {
                let sub = g.subdivide(edge, &offset)?;
                let shift = |e: usize| if e > edge { e + 1 } else { e };
                let mut edges: Vec<usize> = t.tree_edges().iter().map(|&e| shift(e)).collect();
                // a tree edge keeps its index for the first half
                edges.push(if t.is_tree_edge(edge) { sub.second } else { sub.first });
                let tree = SpanningTree::from_edges(&sub.graph, &edges)?;
                Ok(PointedModel {
                    graph: sub.graph,
                    tree,
                    basepoint: sub.vertex,
                    contracted,
                    subdivided: Some(g.edge(edge).id.clone()),
                })
            }
        }
    }
}

impl fmt::Display for MetricGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph with {} vertices, {} edges", self.vertex_count(), self.edge_count())
    }
}
