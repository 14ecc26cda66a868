//! Standard test curves and random generators.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{MetricGraph, SpanningTree};
use crate::jacobian::JacobianData;
use crate::linalg::{rat, Rat};

fn build(vertices: &[&str], edges: &[(&str, &str, &str)], lengths: &[Rat]) -> MetricGraph {
    assert_eq!(edges.len(), lengths.len(), "one length per edge");
    let es: Vec<(&str, &str, &str, Rat)> =
        edges.iter().zip(lengths).map(|(&(i, s, d), l)| (i, s, d, l.clone())).collect();
    MetricGraph::new(vertices, &es).expect("fixture is valid")
}

pub fn ones(n: usize) -> Vec<Rat> {
    vec![rat(1); n]
}

/// `K_4` with a star tree `e4, e5, e6` at `v0`, outer triangle
/// `e1: u5→u6`, `e2: u6→u4`, `e3: u4→u5`.
pub fn k4(lengths: &[Rat]) -> MetricGraph {
    build(
        &["v0", "u4", "u5", "u6"],
        &[
            ("e1", "u5", "u6"),
            ("e2", "u6", "u4"),
            ("e3", "u4", "u5"),
            ("e4", "v0", "u4"),
            ("e5", "v0", "u5"),
            ("e6", "v0", "u6"),
        ],
        lengths,
    )
}

pub const K4_TREE: [&str; 3] = ["e4", "e5", "e6"];

/// Trivalent loop of three loops: the path `p0 -e7- p1 -e6- p2 -e8- p3 -e5-
/// p4 -e9- p5`, with `e1 ∥ e6`, `e2 ∥ e5` and `e3, e4: p5 → p0`.
pub fn tl3(lengths: &[Rat]) -> MetricGraph {
    build(
        &["p0", "p1", "p2", "p3", "p4", "p5"],
        &[
            ("e1", "p1", "p2"),
            ("e2", "p3", "p4"),
            ("e3", "p5", "p0"),
            ("e4", "p5", "p0"),
            ("e5", "p3", "p4"),
            ("e6", "p1", "p2"),
            ("e7", "p0", "p1"),
            ("e8", "p2", "p3"),
            ("e9", "p4", "p5"),
        ],
        lengths,
    )
}

pub const TL3_TREE: [&str; 5] = ["e5", "e6", "e7", "e8", "e9"];

/// Loop of three loops: `tl3` with `e7, e8, e9` contracted. Takes the six
/// remaining lengths.
pub fn l3(lengths: &[Rat]) -> MetricGraph {
    let mut all = lengths.to_vec();
    all.extend(ones(3));
    tl3(&all).contract(&[6, 7, 8]).graph
}

pub const L3_TREE: [&str; 2] = ["e5", "e6"];

/// Two vertices joined by `lengths.len()` parallel edges `e1, e2, ...`.
pub fn banana(lengths: &[Rat]) -> MetricGraph {
    let ids: Vec<String> = (1..=lengths.len()).map(|i| format!("e{i}")).collect();
    let edges: Vec<(&str, &str, &str)> = ids.iter().map(|id| (id.as_str(), "a", "b")).collect();
    build(&["a", "b"], &edges, lengths)
}

pub fn theta(lengths: &[Rat; 3]) -> MetricGraph {
    banana(lengths)
}

pub fn loop_graph(length: Rat) -> MetricGraph {
    build(&["v"], &[("e1", "v", "v")], &[length])
}

/// Two loops joined by a bridge `e2`.
pub fn dumbbell(lengths: &[Rat; 3]) -> MetricGraph {
    build(&["a", "b"], &[("e1", "a", "a"), ("e2", "a", "b"), ("e3", "b", "b")], lengths)
}

fn pinned(g: &MetricGraph, tree: &[&str]) -> JacobianData {
    JacobianData::new(g, &SpanningTree::from_edge_ids(g, tree).expect("fixture tree"))
}

/// `k4` with the tree `K4_TREE`.
pub fn k4_jacobian(lengths: &[Rat]) -> JacobianData {
    pinned(&k4(lengths), &K4_TREE)
}

/// `tl3` with the tree `TL3_TREE`.
pub fn tl3_jacobian(lengths: &[Rat]) -> JacobianData {
    pinned(&tl3(lengths), &TL3_TREE)
}

/// `l3` with the tree `L3_TREE`.
pub fn l3_jacobian(lengths: &[Rat]) -> JacobianData {
    pinned(&l3(lengths), &L3_TREE)
}

/// A positive rational with numerator in `1..=20` and denominator in `1..=6`.
pub fn random_length<R: Rng>(rng: &mut R) -> Rat {
    Rat::new(rng.gen_range(1..=20).into(), rng.gen_range(1..=6).into())
}

pub fn random_lengths<R: Rng>(rng: &mut R, n: usize) -> Vec<Rat> {
    (0..n).map(|_| random_length(rng)).collect()
}

pub fn random_integral_lengths<R: Rng>(rng: &mut R, n: usize, max: i64) -> Vec<Rat> {
    (0..n).map(|_| rat(rng.gen_range(1..=max))).collect()
}

/// A random connected bridgeless multigraph of the given genus (at least
/// 1): a Hamiltonian cycle plus extra edges, which may be loops or
/// parallel edges, in shuffled order and orientation.
pub fn random_bridgeless<R: Rng>(rng: &mut R, genus: usize, integral: bool) -> MetricGraph {
    assert!(genus >= 1, "bridgeless graphs have genus at least 1");
    let n = rng.gen_range(1..=genus + 1);
    let mut pairs: Vec<(usize, usize)> = if n == 1 { vec![(0, 0)] } else { (0..n).map(|i| (i, (i + 1) % n)).collect() };
    for _ in 1..genus {
        pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    pairs.shuffle(rng);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String, Rat)> = pairs
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| {
            let (s, d) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            let l = if integral { rat(rng.gen_range(1..=5)) } else { random_length(rng) };
            (format!("e{}", k + 1), vertices[s].clone(), vertices[d].clone(), l)
        })
        .collect();
    MetricGraph::new(&vertices, &edges).expect("generated graph is valid")
}

/// A uniformly shuffled Kruskal spanning tree.
pub fn random_tree<R: Rng>(rng: &mut R, g: &MetricGraph) -> SpanningTree {
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.shuffle(rng);
    let mut comp: Vec<usize> = (0..g.vertex_count()).collect();
    let mut chosen = Vec::new();
    for e in order {
        let edge = g.edge(e);
        let (a, b) = (comp[edge.src], comp[edge.dst]);
        if a != b {
            chosen.push(e);
            for c in comp.iter_mut() {
                if *c == b {
                    *c = a;
                }
            }
        }
    }
    SpanningTree::from_edges(g, &chosen).expect("Kruskal yields a spanning tree")
}
