use std::collections::VecDeque;

use super::MetricGraph;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A spanning tree `F` with its complement `F^c`, rooted at vertex 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    in_tree: Vec<bool>,
    tree_edges: Vec<usize>,
    cotree_edges: Vec<usize>,
    cotree_pos: Vec<Option<usize>>,
    /// `(edge, parent vertex)` for every non-root vertex.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    tin: Vec<usize>,
    tout: Vec<usize>,
}

impl SpanningTree {
    /// Breadth-first tree from vertex 0, scanning edges in index order.
    pub fn bfs(g: &MetricGraph) -> Self {
        let n = g.vertex_count();
        let mut seen = vec![false; n];
        let mut in_tree = vec![false; g.edge_count()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for (i, e) in g.edges().iter().enumerate() {
                if e.is_loop() {
                    continue;
                }
                let w = if e.src == v {
                    e.dst
                } else if e.dst == v {
                    e.src
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    in_tree[i] = true;
                    queue.push_back(w);
                }
            }
        }
        Self::build(g, in_tree).expect("breadth-first search yields a spanning tree")
    }

    pub fn from_edges(g: &MetricGraph, edges: &[usize]) -> Result<Self> {
        let mut in_tree = vec![false; g.edge_count()];
        for &e in edges {
            if e >= g.edge_count() {
                return Err(Error::InvalidTree(format!("edge index {e} out of range")));
            }
            if in_tree[e] {
                return Err(Error::InvalidTree(format!("edge `{}` listed twice", g.edge(e).id)));
            }
            in_tree[e] = true;
        }
        Self::build(g, in_tree)
    }

    pub fn from_edge_ids<S: AsRef<str>>(g: &MetricGraph, ids: &[S]) -> Result<Self> {
        let edges = ids.iter().map(|id| g.edge_index(id.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::from_edges(g, &edges)
    }

    fn build(g: &MetricGraph, in_tree: Vec<bool>) -> Result<Self> {
        let n = g.vertex_count();
        let count = in_tree.iter().filter(|&&b| b).count();
        if count + 1 != n {
            return Err(Error::InvalidTree(format!("{count} edges cannot span {n} vertices")));
        }
        if let Some(e) = (0..g.edge_count()).find(|&e| in_tree[e] && g.edge(e).is_loop()) {
            return Err(Error::InvalidTree(format!("loop `{}` cannot be a tree edge", g.edge(e).id)));
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, e) in g.edges().iter().enumerate() {
            if in_tree[i] {
                adj[e.src].push((i, e.dst));
                adj[e.dst].push((i, e.src));
            }
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut tin = vec![usize::MAX; n];
        let mut tout = vec![0; n];
        let mut clock = 0;
        // iterative DFS with explicit enter/exit events
        let mut stack = vec![(0usize, false)];
        while let Some((v, exiting)) = stack.pop() {
            if exiting {
                tout[v] = clock;
                clock += 1;
                continue;
            }
            tin[v] = clock;
            clock += 1;
            stack.push((v, true));
            for &(e, w) in adj[v].iter().rev() {
                if tin[w] == usize::MAX && parent[v].is_none_or(|(pe, _)| pe != e) {
                    if parent[w].is_some() {
                        return Err(Error::InvalidTree("edges contain a cycle".into()));
                    }
                    parent[w] = Some((e, v));
                    depth[w] = depth[v] + 1;
                    stack.push((w, false));
                }
            }
        }
        if tin.contains(&usize::MAX) {
            return Err(Error::InvalidTree("edges do not reach every vertex".into()));
        }
        let tree_edges: Vec<usize> = (0..g.edge_count()).filter(|&e| in_tree[e]).collect();
        let cotree_edges: Vec<usize> = (0..g.edge_count()).filter(|&e| !in_tree[e]).collect();
        let mut cotree_pos = vec![None; g.edge_count()];
        for (k, &e) in cotree_edges.iter().enumerate() {
            cotree_pos[e] = Some(k);
        }
        Ok(SpanningTree { in_tree, tree_edges, cotree_edges, cotree_pos, parent, depth, tin, tout })
    }

    pub fn tree_edges(&self) -> &[usize] {
        &self.tree_edges
    }

    pub fn cotree_edges(&self) -> &[usize] {
        &self.cotree_edges
    }

    pub fn genus(&self) -> usize {
        self.cotree_edges.len()
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.in_tree[e]
    }

    /// Position of a cotree edge in `F^c`.
    pub fn cotree_position(&self, e: usize) -> Option<usize> {
        self.cotree_pos[e]
    }

    pub fn tree_edge_ids<'a>(&self, g: &'a MetricGraph) -> Vec<&'a str> {
        self.tree_edges.iter().map(|&e| g.edge(e).id.as_str()).collect()
    }

    pub fn cotree_edge_ids<'a>(&self, g: &'a MetricGraph) -> Vec<&'a str> {
        self.cotree_edges.iter().map(|&e| g.edge(e).id.as_str()).collect()
    }

    fn is_ancestor(&self, a: usize, v: usize) -> bool {
        self.tin[a] <= self.tin[v] && self.tout[v] <= self.tout[a]
    }

    /// Endpoint of a tree edge farther from the root.
    fn lower_end(&self, g: &MetricGraph, e: usize) -> usize {
        let edge = g.edge(e);
        if self.parent[edge.src].map(|(pe, _)| pe) == Some(e) {
            edge.src
        } else {
            edge.dst
        }
    }

    /// True when `v` lies in the component of `T - e` containing `dst(e)`.
    pub fn on_dst_side(&self, g: &MetricGraph, e: usize, v: usize) -> bool {
        let low = self.lower_end(g, e);
        self.is_ancestor(low, v) == (low == g.edge(e).dst)
    }

    /// True when tree edge `e` lies on the tree path between `u` and `v`.
    pub fn separates(&self, g: &MetricGraph, e: usize, u: usize, v: usize) -> bool {
        self.on_dst_side(g, e, u) != self.on_dst_side(g, e, v)
    }

    /// The tree path from `u` to `v` as `(edge, ±1)`, where `+1` means the
    /// edge is traversed from source to target.
    pub fn tree_path(&self, g: &MetricGraph, u: usize, v: usize) -> Vec<(usize, i32)> {
        let (mut a, mut b) = (u, v);
        let mut up = Vec::new();
        let mut down = Vec::new();
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let (e, p) = self.parent[a].expect("non-root vertex has a parent");
                up.push((e, if g.edge(e).src == a { 1 } else { -1 }));
                a = p;
            } else {
                let (e, p) = self.parent[b].expect("non-root vertex has a parent");
                down.push((e, if g.edge(e).dst == b { 1 } else { -1 }));
                b = p;
            }
        }
        up.extend(down.into_iter().rev());
        up
    }
}

/// Fundamental cycles as rows of a `g × |E|` matrix; row `ε` has `+1` at `ε`
/// and closes up along the tree path from `dst(ε)` back to `src(ε)`.
pub fn fundamental_cycles(g: &MetricGraph, t: &SpanningTree) -> IntMatrix {
    let mut c = IntMatrix::zeros(t.genus(), g.edge_count());
    for (k, &eps) in t.cotree_edges().iter().enumerate() {
        c[(k, eps)] += 1;
        let edge = g.edge(eps);
        for (e, s) in t.tree_path(g, edge.dst, edge.src) {
            c[(k, e)] += s;
        }
    }
    c
}

/// Unit tangents `b_e` in the basis `{b_ε : ε ∈ F^c}` as rows of an
/// `|E| × g` matrix.
pub fn b_expansion(g: &MetricGraph, t: &SpanningTree) -> IntMatrix {
    let mut b = IntMatrix::zeros(g.edge_count(), t.genus());
    for (k, &eps) in t.cotree_edges().iter().enumerate() {
        b[(eps, k)] += 1;
    }
    for &e in t.tree_edges() {
        for (k, &eps) in t.cotree_edges().iter().enumerate() {
            let edge = g.edge(eps);
            let src_far = t.on_dst_side(g, e, edge.src);
            let dst_far = t.on_dst_side(g, e, edge.dst);
            if src_far && !dst_far {
                b[(e, k)] += 1;
            } else if !src_far && dst_far {
                b[(e, k)] -= 1;
            }
        }
    }
    b
}

fn check_pair(g: &MetricGraph, t: &SpanningTree, e: usize, eps: usize) -> Result<()> {
    if !t.is_tree_edge(e) {
        return Err(Error::WrongEdgeKind { edge: g.edge(e).id.clone(), expected: "tree" });
    }
    if t.is_tree_edge(eps) {
        return Err(Error::WrongEdgeKind { edge: g.edge(eps).id.clone(), expected: "cotree" });
    }
    Ok(())
}

/// `+1` if tree edge `e` points away from `flat`, `-1` if towards it.
pub fn orientation_sign(g: &MetricGraph, t: &SpanningTree, flat: usize, e: usize) -> i32 {
    if t.on_dst_side(g, e, flat) {
        -1
    } else {
        1
    }
}

/// The pointed sign: the number of endpoints of `ε` that `e` cuts off from
/// `flat`, signed by the orientation of `e` relative to `flat`.
pub fn sgn_pointed(g: &MetricGraph, t: &SpanningTree, flat: usize, e: usize, eps: usize) -> Result<i32> {
    check_pair(g, t, e, eps)?;
    if flat >= g.vertex_count() {
        return Err(Error::InvalidPoint(format!("vertex index {flat} out of range")));
    }
    let edge = g.edge(eps);
    let count = [edge.src, edge.dst].iter().filter(|&&x| t.separates(g, e, flat, x)).count() as i32;
    Ok(orientation_sign(g, t, flat, e) * count)
}

/// The unpointed sign: `0` when `e` lies on the fundamental cycle of `ε`,
/// otherwise `+1` when `ε` sits on the source side of `e` and `-1` on the
/// target side.
pub fn sgn_unpointed(g: &MetricGraph, t: &SpanningTree, e: usize, eps: usize) -> Result<i32> {
    check_pair(g, t, e, eps)?;
    let edge = g.edge(eps);
    let (s, d) = (t.on_dst_side(g, e, edge.src), t.on_dst_side(g, e, edge.dst));
    Ok(match (s, d) {
        (false, false) => 1,
        (true, true) => -1,
        _ => 0,
    })
}
