//! The Jacobian of a metric graph as a polarized tropical torus, its
//! tropical homology coordinates, monodromy and integral lattices.

mod wedge;

pub use wedge::{
    binomial, exterior_power, insert_sorted, monodromy_phi, subsets, transform, wedge_vectors, TensorElement,
    WedgeBasis, WedgeIndex,
};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{b_expansion, fundamental_cycles, MetricGraph, SpanningTree};
use crate::linalg::{IntMatrix, QuotientStructure, Rat, RatMatrix};

/// Graph, tree and the derived period data.
#[derive(Clone, Debug)]
pub struct JacobianData {
    graph: MetricGraph,
    tree: SpanningTree,
    cycles: IntMatrix,
    tangents: IntMatrix,
    q: RatMatrix,
}

impl JacobianData {
    /// Computes `Q = C · diag(ℓ) · Cᵀ`.
    pub fn new(graph: &MetricGraph, tree: &SpanningTree) -> Self {
        let cycles = fundamental_cycles(graph, tree);
        let tangents = b_expansion(graph, tree);
        let lengths = RatMatrix::diagonal(&graph.lengths());
        let c = cycles.to_rat();
        let q = &(&c * &lengths) * &c.transpose();
        JacobianData { graph: graph.clone(), tree: tree.clone(), cycles, tangents, q }
    }

    /// Uses the breadth-first tree.
    pub fn with_default_tree(graph: &MetricGraph) -> Self {
        Self::new(graph, &SpanningTree::bfs(graph))
    }

    pub fn genus(&self) -> usize {
        self.tree.genus()
    }

    pub fn graph(&self) -> &MetricGraph {
        &self.graph
    }

    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }

    pub fn polarization(&self) -> &RatMatrix {
        &self.q
    }

    pub fn cycles(&self) -> &IntMatrix {
        &self.cycles
    }

    pub fn tangents(&self) -> &IntMatrix {
        &self.tangents
    }

    /// `Q` as an integer matrix, when all lengths are integral.
    pub fn integral_polarization(&self) -> Result<IntMatrix> {
        if !self.graph.has_integral_lengths() {
            let bad: Vec<&str> =
                self.graph.edges().iter().filter(|e| !e.length.is_integer()).map(|e| e.id.as_str()).collect();
            return Err(Error::NonIntegralLengths(bad.join(", ")));
        }
        Ok(self.q.to_int().expect("integral lengths give an integral polarization"))
    }

    /// `a_ε` in `b`-coordinates: column `i` of `Q`.
    pub fn cycle_vector(&self, i: usize) -> Vec<Rat> {
        self.q.col(i)
    }

    /// `b_e` in `b`-coordinates.
    pub fn tangent(&self, e: usize) -> Vec<Rat> {
        self.tangents.row(e).iter().map(|x| Rat::from_integer(x.clone())).collect()
    }

    pub fn unit(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.genus()];
        v[i] = Rat::from_integer(1.into());
        v
    }

    /// `a_J ⊗ b_K` with `a`'s expanded through `Q`.
    pub fn integral_generator(&self, j: &[usize], k: &[usize]) -> TensorElement {
        let us: Vec<Vec<Rat>> = j.iter().map(|&i| self.cycle_vector(i)).collect();
        let vs: Vec<Vec<Rat>> = k.iter().map(|&i| self.unit(i)).collect();
        TensorElement::pure(self.genus(), &us, &vs)
    }

    /// `φ^n` applied to every `a_J ⊗ b_K` with `|J| = a`, `|K| = b`.
    fn phi_image(&self, a: usize, b: usize, n: usize) -> Result<RatMatrix> {
        let g = self.genus();
        let target_dim = binomial(g, a - n) * binomial(g, b + n);
        let mut cols = Vec::new();
        for j in subsets(g, a) {
            for k in subsets(g, b) {
                let mut x = self.integral_generator(&j, &k);
                for _ in 0..n {
                    x = monodromy_phi(&x)?;
                }
                cols.push(x.into_coords());
            }
        }
        Ok(RatMatrix::from_cols(target_dim, &cols))
    }

    /// Generators of `L_{p,q} = φ^{p-q}(H_{q,p}(Z))` as columns.
    pub fn lattice_l(&self, p: usize, q: usize) -> Result<RatMatrix> {
        if p < q {
            return Err(Error::InvalidDegrees { p, q, reason: "L_{p,q} needs p ≥ q" });
        }
        self.phi_image(p, q, p - q)
    }

    /// Generators of `K_{p,q} = φ^{p-q-1}(H_{q+1,p-1}(Z))` as columns.
    pub fn lattice_k(&self, p: usize, q: usize) -> Result<RatMatrix> {
        if p < q + 1 {
            return Err(Error::InvalidDegrees { p, q, reason: "K_{p,q} needs p ≥ q + 1" });
        }
        self.phi_image(p - 1, q + 1, p - q - 1)
    }

    /// `JH_{p,q} = H_{p,q} / L_{p,q}`.
    pub fn jh_quotient(&self, p: usize, q: usize) -> Result<QuotientStructure> {
        Ok(QuotientStructure::lattice_only(&self.lattice_l(p, q)?))
    }

    /// `Q_{p,q} = H_{p,q} / K_{p,q}`.
    pub fn q_quotient(&self, p: usize, q: usize) -> Result<QuotientStructure> {
        Ok(QuotientStructure::lattice_only(&self.lattice_k(p, q)?))
    }

    /// `ω = Σ_ε a_ε ⊗ b_ε` in `H_{1,1}`.
    pub fn omega(&self) -> TensorElement {
        let g = self.genus();
        let mut coords = Vec::with_capacity(g * g);
        for i in 0..g {
            for e in 0..g {
                coords.push(self.q[(i, e)].clone());
            }
        }
        TensorElement::from_coords(g, 1, 1, coords).expect("g × g coordinates")
    }

    /// `ω ∧ H_{1,0}`, spanned by `ω ∧ b_k`.
    pub fn omega_wedge_span(&self) -> RatMatrix {
        let g = self.genus();
        let omega = self.omega();
        let cols: Vec<Vec<Rat>> =
            (0..g).map(|k| wedge_with_h10(&self.unit(k), &omega).expect("dimensions agree").into_coords()).collect();
        RatMatrix::from_cols(g * binomial(g, 2), &cols)
    }

    /// `JH̄_{2,1} = H_{2,1} / (ω ∧ H_{1,0} + L_{2,1})`.
    pub fn jhbar_quotient(&self) -> Result<QuotientStructure> {
        let g = self.genus();
        QuotientStructure::new(g * binomial(g, 2), &self.omega_wedge_span(), &self.lattice_l(2, 1)?)
    }
}

/// `x ∧ (u ⊗ v) = u ⊗ (v ∧ x)` for `x ∈ H_{1,0}` and `u ⊗ v ∈ H_{1,1}`.
pub fn wedge_with_h10(x: &[Rat], y: &TensorElement) -> Result<TensorElement> {
    let g = y.g();
    if x.len() != g {
        return Err(Error::DimensionMismatch { expected: g, got: x.len() });
    }
    if y.degrees() != (1, 1) {
        let (p, q) = y.degrees();
        return Err(Error::InvalidDegrees { p, q, reason: "expected an element of H_{1,1}" });
    }
    let src = y.index();
    let dst = WedgeIndex::new(g, 2, 1);
    let mut out = TensorElement::zero(g, 2, 1);
    for (idx, c) in y.support() {
        let (u, v) = src.split(idx);
        let (i, j) = (u[0], v[0]);
        for (k, xk) in x.iter().enumerate() {
            if xk.is_zero() || k == j {
                continue;
            }
            let t = c * xk;
            if j < k {
                out.add_term(&dst, &[i], &[j, k], &t);
            } else {
                out.add_term(&dst, &[i], &[k, j], &-t);
            }
        }
    }
    Ok(out)
}

/// The matrix `P` taking `b`-coordinates for `(from_graph, from_tree)` to
/// `b`-coordinates for `(to_graph, to_tree)`. `edge_map[e] = (e', s)` says
/// edge `e` of the first graph is edge `e'` of the second, reversed when
/// `s = -1`.
pub fn basis_change(
    from: (&MetricGraph, &SpanningTree),
    to: (&MetricGraph, &SpanningTree),
    edge_map: &[(usize, i32)],
) -> Result<IntMatrix> {
    let (g0, t0) = from;
    let (g1, t1) = to;
    if edge_map.len() != g0.edge_count() {
        return Err(Error::DimensionMismatch { expected: g0.edge_count(), got: edge_map.len() });
    }
    if t0.genus() != t1.genus() {
        return Err(Error::DimensionMismatch { expected: t0.genus(), got: t1.genus() });
    }
    let b1 = b_expansion(g1, t1);
    let g = t0.genus();
    let mut p = IntMatrix::zeros(g, g);
    for (col, &eps) in t0.cotree_edges().iter().enumerate() {
        let (e1, s) = edge_map[eps];
        for row in 0..g {
            p[(row, col)] = &b1[(e1, row)] * s;
        }
    }
    Ok(p)
}

/// Columns of `gens` pushed through `∧^q P ⊗ ∧^p P`.
pub fn transform_columns(gens: &RatMatrix, g: usize, p: usize, q: usize, change: &RatMatrix) -> RatMatrix {
    let cols: Vec<Vec<Rat>> = gens
        .columns()
        .into_iter()
        .map(|c| {
            let x = TensorElement::from_coords(g, p, q, c).expect("column matches degrees");
            transform(&x, change).into_coords()
        })
        .collect();
    RatMatrix::from_cols(gens.rows(), &cols)
}
