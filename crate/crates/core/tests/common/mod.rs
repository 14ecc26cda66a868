#![allow(dead_code)]

use ceresa_core::fixtures;
use ceresa_core::jacobian::{basis_change, transform, transform_columns, JacobianData, TensorElement};
use ceresa_core::linalg::{QuotientStructure, Rat, RatMatrix};
use ceresa_core::MetricGraph;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// `c · a_i ⊗ (b_j ∧ b_k)`, 1-based, with `b_j` the tangent of edge `e_j`.
pub fn abb(jd: &JacobianData, c: &Rat, i: usize, j: usize, k: usize) -> TensorElement {
    TensorElement::pure(jd.genus(), &[jd.cycle_vector(i - 1)], &[jd.tangent(j - 1), jd.tangent(k - 1)]).scale(c)
}

pub fn sum(ts: impl IntoIterator<Item = TensorElement>) -> TensorElement {
    let mut it = ts.into_iter();
    let first = it.next().expect("nonempty sum");
    it.fold(first, |acc, t| &acc + &t)
}

/// A random bridgeless graph with two random trees on it.
pub fn random_case(seed: u64, max_genus: usize, integral: bool) -> (JacobianData, JacobianData) {
    let mut r = rng(seed);
    let g = r.gen_range(1..=max_genus);
    let graph = fixtures::random_bridgeless(&mut r, g, integral);
    let t0 = fixtures::random_tree(&mut r, &graph);
    let t1 = fixtures::random_tree(&mut r, &graph);
    (JacobianData::new(&graph, &t0), JacobianData::new(&graph, &t1))
}

pub fn identity_map(g: &MetricGraph) -> Vec<(usize, i32)> {
    (0..g.edge_count()).map(|e| (e, 1)).collect()
}

/// The `b`-coordinate change from `from` to `to`.
pub fn change(from: &JacobianData, to: &JacobianData, edge_map: &[(usize, i32)]) -> RatMatrix {
    basis_change((from.graph(), from.tree()), (to.graph(), to.tree()), edge_map).unwrap().to_rat()
}

pub fn move_tensor(x: &TensorElement, p: &RatMatrix) -> TensorElement {
    transform(x, p)
}

/// `q` and `gens` (moved by `p`) span the same `V + Λ`.
pub fn same_quotient(
    q: &QuotientStructure,
    other: &QuotientStructure,
    g: usize,
    deg: (usize, usize),
    p: &RatMatrix,
) -> bool {
    let (pp, qq) = deg;
    let moved = QuotientStructure::new(
        q.ambient_dim(),
        &transform_columns(other.subspace_basis(), g, pp, qq, p),
        &transform_columns(other.lattice_gens(), g, pp, qq, p),
    )
    .unwrap();
    q.contains_quotient_data_of(&moved).unwrap() && moved.contains_quotient_data_of(q).unwrap()
}

/// The graph with edge `e` reversed and the matching edge map.
pub fn flipped(jd: &JacobianData, e: usize) -> (JacobianData, Vec<(usize, i32)>) {
    let g = jd.graph().flip_edge(e);
    let t = ceresa_core::SpanningTree::from_edges(&g, jd.tree().tree_edges()).unwrap();
    let mut map = identity_map(&g);
    map[e].1 = -1;
    (JacobianData::new(&g, &t), map)
}
