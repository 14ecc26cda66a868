//! The symplectic matrix `δ_Γ` of the multitwist, the finite group
//! `B̄(δ_Γ) = X⊗∧²Y / ((δ_Γ - I)(∧²X⊗Y) + ω∧Y)`, the Morita class `n(Γ)`
//! and its image in `JH̄_{2,1}`.
//!
//! Coordinates on `X⊗∧²Y` are those of `H_{2,1}` (`α_i⊗β_j∧β_k` at
//! `i·C(g,2) + rank{j,k}`), and on `∧²X⊗Y` those of `H_{1,2}`
//! (`α_i∧α_j⊗β_k` at `rank{i,j}·g + k`).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ceresa::ceresa_unpointed;
use crate::error::{Error, Result};
use crate::graph::sgn_unpointed;
use crate::jacobian::{binomial, subsets, JacobianData, TensorElement, WedgeIndex};
use crate::linalg::{cokernel, determinant, FiniteAbelianGroup, IntMatrix, Rat, RatMatrix};

fn integral_q(jd: &JacobianData) -> Result<IntMatrix> {
    jd.integral_polarization()
}

/// `[[I, 0], [Q, I]]` on the basis `α_1..α_g, β_1..β_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMatrix {
    g: usize,
    m: IntMatrix,
}

impl DeltaMatrix {
    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    /// `J = [[0, I], [-I, 0]]`, so `⟨α_i, β_j⟩ = δ_ij`.
    pub fn standard_form(g: usize) -> IntMatrix {
        let mut j = IntMatrix::zeros(2 * g, 2 * g);
        for i in 0..g {
            j[(i, g + i)] = BigInt::one();
            j[(g + i, i)] = -BigInt::one();
        }
        j
    }

    pub fn is_symplectic(&self) -> bool {
        let j = Self::standard_form(self.g);
        &(&self.m.transpose() * &j) * &self.m == j
    }

    pub fn minus_identity(&self) -> IntMatrix {
        let mut n = self.m.clone();
        for i in 0..2 * self.g {
            n[(i, i)] -= BigInt::one();
        }
        n
    }
}

pub fn delta_matrix(jd: &JacobianData) -> Result<DeltaMatrix> {
    let q = integral_q(jd)?;
    let g = jd.genus();
    let mut m = IntMatrix::identity(2 * g);
    for i in 0..g {
        for j in 0..g {
            m[(g + i, j)] = q[(i, j)].clone();
        }
    }
    Ok(DeltaMatrix { g, m })
}

fn minor(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    let mut sub = RatMatrix::zeros(rows.len(), cols.len());
    for (r, &i) in rows.iter().enumerate() {
        for (c, &j) in cols.iter().enumerate() {
            sub[(r, c)] = Rat::from_integer(m[(i, j)].clone());
        }
    }
    determinant(&sub).to_integer()
}

/// Matrix of `δ_Γ - I : ∧²X⊗Y → X⊗∧²Y`, read off `∧³δ_Γ - I` on
/// `∧³H` and projected to the `α∧β∧β` components.
pub fn delta_minus_identity(jd: &JacobianData) -> Result<IntMatrix> {
    let delta = delta_matrix(jd)?;
    let g = jd.genus();
    let src = WedgeIndex::new(g, 1, 2);
    let dst = WedgeIndex::new(g, 2, 1);
    let mut out = IntMatrix::zeros(dst.dim(), src.dim());
    for col in 0..src.dim() {
        let (aa, b) = src.split(col);
        let from = [aa[0], aa[1], g + b[0]];
        for row in 0..dst.dim() {
            let (a, bb) = dst.split(row);
            let to = [a[0], g + bb[0], g + bb[1]];
            let mut x = minor(delta.matrix(), &to, &from);
            if to == from {
                x -= BigInt::one();
            }
            out[(row, col)] = x;
        }
    }
    Ok(out)
}

/// `(δ_Γ - I)x` for `x ∈ ∧²X⊗Y`.
pub fn delta_minus_identity_action(jd: &JacobianData, x: &[BigInt]) -> Result<Vec<BigInt>> {
    let m = delta_minus_identity(jd)?;
    if x.len() != m.cols() {
        return Err(Error::DimensionMismatch { expected: m.cols(), got: x.len() });
    }
    Ok(m.mul_vec(x))
}

/// Columns `ω∧β_k = Σ_i α_i⊗(β_i∧β_k)`.
pub fn omega_wedge_y(g: usize) -> IntMatrix {
    let index = WedgeIndex::new(g, 2, 1);
    let mut out = IntMatrix::zeros(index.dim(), g);
    for k in 0..g {
        for i in 0..g {
            if i < k {
                out[(index.index(&[i], &[i, k]), k)] += BigInt::one();
            } else if i > k {
                out[(index.index(&[i], &[k, i]), k)] -= BigInt::one();
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct BGroupData {
    pub group: FiniteAbelianGroup,
    /// `(δ - I)`-images of the `∧²X⊗Y` basis followed by the `ω∧β_k`.
    pub relations: IntMatrix,
    /// `α_i⊗β_j∧β_k`, 1-based.
    pub labels: Vec<String>,
}

impl BGroupData {
    pub fn ambient_dim(&self) -> usize {
        self.relations.rows()
    }

    pub fn reduce(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.group.reduce_int(x)
    }
}

pub fn b_group(jd: &JacobianData) -> Result<BGroupData> {
    let g = jd.genus();
    let relations = delta_minus_identity(jd)?.hstack(&omega_wedge_y(g));
    let n = g * binomial(g, 2);
    let group = cokernel(&relations.to_rat(), &RatMatrix::identity(n))?;
    let index = WedgeIndex::new(g, 2, 1);
    let labels = (0..n)
        .map(|i| {
            let (a, b) = index.split(i);
            format!("α{}⊗β{}∧β{}", a[0] + 1, b[0] + 1, b[1] + 1)
        })
        .collect();
    Ok(BGroupData { group, relations, labels })
}

/// `n(Γ)` in `X⊗∧²Y` before reduction:
/// `Σ_{e∈F} ℓ(e) Σ_ε sgn̄(e, ε) α_ε⊗(β_ε∧γ_e)` with `γ_e = Σ_j B_{ej} β_j`.
pub fn n_vector(jd: &JacobianData) -> Result<Vec<BigInt>> {
    let g = jd.genus();
    let graph = jd.graph();
    let tree = jd.tree();
    integral_q(jd)?;
    let index = WedgeIndex::new(g, 2, 1);
    let mut out = vec![BigInt::zero(); index.dim()];
    for &e in tree.tree_edges() {
        let len = graph.edge(e).length.to_integer();
        let gamma = tree_row(jd, e);
        for (k, &eps) in tree.cotree_edges().iter().enumerate() {
            let s = sgn_unpointed(graph, tree, e, eps)?;
            if s == 0 {
                continue;
            }
            let coeff = &len * BigInt::from(s);
            for (j, c) in gamma.iter().enumerate() {
                if c.is_zero() || j == k {
                    continue;
                }
                let t = &coeff * c;
                if k < j {
                    out[index.index(&[k], &[k, j])] += t;
                } else {
                    out[index.index(&[k], &[j, k])] -= t;
                }
            }
        }
    }
    Ok(out)
}

fn tree_row(jd: &JacobianData, e: usize) -> Vec<BigInt> {
    jd.tangents().row(e).to_vec()
}

/// `n(Γ)` as invariant-factor coordinates in `B̄(δ_Γ)`.
pub fn n_class(jd: &JacobianData) -> Result<Vec<BigInt>> {
    b_group(jd)?.reduce(&n_vector(jd)?)
}

/// `α_i ↦ a_i`, `β_j ↦ b_j`, as an element of `H_{2,1}`.
pub fn phi_representative(jd: &JacobianData, x: &[BigInt]) -> Result<TensorElement> {
    let g = jd.genus();
    let index = WedgeIndex::new(g, 2, 1);
    if x.len() != index.dim() {
        return Err(Error::DimensionMismatch { expected: index.dim(), got: x.len() });
    }
    let q = jd.polarization();
    let mut out = TensorElement::zero(g, 2, 1);
    for (idx, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (a, b) = index.split(idx);
        let c = Rat::from_integer(c.clone());
        for l in 0..g {
            let t = &q[(l, a[0])] * &c;
            if !t.is_zero() {
                out.add_term(&index, &[l], b, &t);
            }
        }
    }
    Ok(out)
}

/// `Φ_Γ(x)` as the canonical representative of its class in `JH̄_{2,1}`.
pub fn phi_embed(jd: &JacobianData, x: &[BigInt]) -> Result<Vec<Rat>> {
    jd.jhbar_quotient()?.reduce(phi_representative(jd, x)?.coords())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoritaComparison {
    pub n_vector: Vec<BigInt>,
    pub n_class: Vec<BigInt>,
    pub phi_n: Vec<Rat>,
    pub vbar: Vec<Rat>,
    pub equal: bool,
}

/// Checks `Φ_Γ(n(Γ)) = v̄(Γ)` in `JH̄_{2,1}`.
pub fn compare_morita_ceresa(jd: &JacobianData) -> Result<MoritaComparison> {
    let b = b_group(jd)?;
    let n_vector = n_vector(jd)?;
    let n_class = b.reduce(&n_vector)?;
    let lifted: Vec<BigInt> = b.group.lift(&n_class)?.iter().map(|x| x.to_integer()).collect();
    let phi_n = phi_embed(jd, &lifted)?;
    let vbar = ceresa_unpointed(jd)?.reduced_class;
    let equal = phi_n == vbar;
    Ok(MoritaComparison { n_vector, n_class, phi_n, vbar, equal })
}

/// Every `∧²X⊗Y` basis label, 1-based.
pub fn source_labels(g: usize) -> Vec<String> {
    subsets(g, 2)
        .iter()
        .flat_map(|ij| (0..g).map(move |k| format!("α{}∧α{}⊗β{}", ij[0] + 1, ij[1] + 1, k + 1)))
        .collect()
}
