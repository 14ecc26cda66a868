//! Finitely generated subgroups of `Q^n` and quotients `Q^n / (V + Λ)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::normal_form::{hnf_in_place, rref};
use super::{check_len, is_zero_vec, lcm_of_denominators, rat_floor_div, IntMatrix, Rat, RatMatrix};
use crate::error::Result;

/// Hermite basis of the subgroup generated by some rational vectors.
///
/// Rows are in echelon form with positive pivots; this is what makes
/// [`LatticeBasis::reduce`] canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    dim: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl LatticeBasis {
    /// Basis of the group generated by the columns of `gens`.
    pub fn from_columns(gens: &RatMatrix) -> Self {
        Self::from_vectors(gens.rows(), &gens.columns())
    }

    pub fn from_vectors(dim: usize, gens: &[Vec<Rat>]) -> Self {
        let scale = lcm_of_denominators(gens.iter().flatten());
        let mut a = IntMatrix::zeros(gens.len(), dim);
        for (r, g) in gens.iter().enumerate() {
            assert_eq!(g.len(), dim, "generator has wrong length");
            for (c, x) in g.iter().enumerate() {
                a[(r, c)] = (x * &scale).to_integer();
            }
        }
        let pivots = hnf_in_place(&mut a, None);
        let rows =
            (0..pivots.len()).map(|r| a.row(r).iter().map(|x| Rat::new(x.clone(), scale.clone())).collect()).collect();
        LatticeBasis { dim, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `x` modulo the lattice: each pivot
    /// coordinate is brought into `[0, pivot)`.
    pub fn reduce(&self, x: &[Rat]) -> Vec<Rat> {
        let mut x = x.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let q = Rat::from_integer(rat_floor_div(&x[p], &row[p]));
            if q.is_zero() {
                continue;
            }
            for (xi, ri) in x.iter_mut().zip(row) {
                *xi -= &q * ri;
            }
        }
        x
    }

    /// Coordinates of `x` in this basis if `x` lies in its rational span.
    pub fn coordinates(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        let mut x = x.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = &x[p] / &row[p];
            if !c.is_zero() {
                for (xi, ri) in x.iter_mut().zip(row) {
                    *xi -= &c * ri;
                }
            }
            coords.push(c);
        }
        is_zero_vec(&x).then_some(coords)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.coordinates(x).is_some_and(|c| c.iter().all(Rat::is_integer))
    }
}

/// Rank of the subgroup generated by the columns of `gens`.
pub fn lattice_rank(gens: &RatMatrix) -> usize {
    LatticeBasis::from_columns(gens).rank()
}

/// Decides whether `v` is an integer combination of the columns of `gens`,
/// returning the coefficients when it is.
pub fn lattice_contains(gens: &RatMatrix, v: &[Rat]) -> Result<Option<Vec<BigInt>>> {
    check_len(gens.rows(), v.len())?;
    let scale = lcm_of_denominators(gens.as_slice().iter().chain(v));
    let t = gens.transpose();
    let mut h = t.map(|x| (x * &scale).to_integer());
    let mut u = IntMatrix::identity(t.rows());
    let pivots = hnf_in_place(&mut h, Some(&mut u));

    let mut target: Vec<BigInt> = v.iter().map(|x| (x * &scale).to_integer()).collect();
    let mut q = vec![BigInt::zero(); t.rows()];
    for (r, &p) in pivots.iter().enumerate() {
        let (c, rem) = target[p].div_rem(&h[(r, p)]);
        if !rem.is_zero() {
            return Ok(None);
        }
        for (k, x) in target.iter_mut().enumerate() {
            *x -= &c * &h[(r, k)];
        }
        q[r] = c;
    }
    if !target.iter().all(Zero::is_zero) {
        return Ok(None);
    }
    // v^T = q^T U gens^T, so the witness is U^T q.
    Ok(Some(u.transpose().mul_vec(&q)))
}

/// Order of an element of a quotient group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TorsionOrder {
    Finite(BigInt),
    Infinite,
}

impl TorsionOrder {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            TorsionOrder::Finite(n) => Some(n),
            TorsionOrder::Infinite => None,
        }
    }

    pub fn divides(&self, n: &BigInt) -> bool {
        self.finite().is_some_and(|d| n.is_multiple_of(d))
    }
}

impl fmt::Display for TorsionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionOrder::Finite(n) => write!(f, "{n}"),
            TorsionOrder::Infinite => f.write_str("infinite"),
        }
    }
}

/// `Q^n / (V + Λ)` for a rational subspace `V` and a finitely generated
/// subgroup `Λ`.
///
/// `V` is eliminated first: the subspace basis is brought to reduced echelon
/// form and a vector is made to vanish on the echelon pivots. What remains
/// lives in the complementary coordinates, where `Λ` becomes an ordinary
/// lattice handled by [`LatticeBasis`].
#[derive(Clone, Debug)]
pub struct QuotientStructure {
    ambient_dim: usize,
    subspace_basis: RatMatrix,
    lattice_gens: RatMatrix,
    subspace_rref: RatMatrix,
    subspace_pivots: Vec<usize>,
    complement: Vec<usize>,
    projected: LatticeBasis,
}

impl QuotientStructure {
    /// `subspace` may be any spanning set (columns); a basis is extracted.
    pub fn new(ambient_dim: usize, subspace: &RatMatrix, lattice_gens: &RatMatrix) -> Result<Self> {
        check_len(ambient_dim, subspace.rows())?;
        check_len(ambient_dim, lattice_gens.rows())?;
        let (subspace_rref, subspace_pivots) = rref(&subspace.transpose());
        let complement: Vec<usize> = (0..ambient_dim).filter(|c| !subspace_pivots.contains(c)).collect();
        let mut q = QuotientStructure {
            ambient_dim,
            subspace_basis: subspace_rref.transpose(),
            lattice_gens: lattice_gens.clone(),
            subspace_rref,
            subspace_pivots,
            complement,
            projected: LatticeBasis::from_vectors(0, &[]),
        };
        let projected: Vec<Vec<Rat>> = lattice_gens.columns().iter().map(|g| q.project(g)).collect();
        q.projected = LatticeBasis::from_vectors(q.complement.len(), &projected);
        Ok(q)
    }

    /// Pure lattice quotient `Q^n / Λ`.
    pub fn lattice_only(lattice_gens: &RatMatrix) -> Self {
        let n = lattice_gens.rows();
        Self::new(n, &RatMatrix::zeros(n, 0), lattice_gens).expect("dimensions agree")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn subspace_basis(&self) -> &RatMatrix {
        &self.subspace_basis
    }

    pub fn lattice_gens(&self) -> &RatMatrix {
        &self.lattice_gens
    }

    pub fn subspace_dim(&self) -> usize {
        self.subspace_pivots.len()
    }

    /// Rank of the image of `Λ` modulo `V`.
    pub fn lattice_rank(&self) -> usize {
        self.projected.rank()
    }

    /// True when `V + Λ` is cocompact, i.e. the quotient is a compact torus.
    pub fn is_compact(&self) -> bool {
        self.lattice_rank() == self.complement.len()
    }

    fn project(&self, x: &[Rat]) -> Vec<Rat> {
        let mut x = x.to_vec();
        for (r, &p) in self.subspace_pivots.iter().enumerate() {
            let c = x[p].clone();
            if c.is_zero() {
                continue;
            }
            for (xi, wi) in x.iter_mut().zip(self.subspace_rref.row(r)) {
                *xi -= &c * wi;
            }
        }
        self.complement.iter().map(|&i| x[i].clone()).collect()
    }

    fn embed(&self, y: Vec<Rat>) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); self.ambient_dim];
        for (&i, v) in self.complement.iter().zip(y) {
            x[i] = v;
        }
        x
    }

    /// Canonical representative `r` with `x - r ∈ V + Λ`; equal classes give
    /// identical vectors.
    pub fn reduce(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        check_len(self.ambient_dim, x.len())?;
        Ok(self.embed(self.projected.reduce(&self.project(x))))
    }

    pub fn is_zero_class(&self, x: &[Rat]) -> Result<bool> {
        Ok(is_zero_vec(&self.reduce(x)?))
    }

    pub fn same_class(&self, x: &[Rat], y: &[Rat]) -> Result<bool> {
        check_len(self.ambient_dim, x.len())?;
        check_len(self.ambient_dim, y.len())?;
        let d: Vec<Rat> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero_class(&d)
    }

    /// Smallest `n ≥ 1` with `n·x ∈ V + Λ`.
    pub fn torsion_order(&self, x: &[Rat]) -> Result<TorsionOrder> {
        check_len(self.ambient_dim, x.len())?;
        Ok(match self.projected.coordinates(&self.project(x)) {
            None => TorsionOrder::Infinite,
            Some(c) => TorsionOrder::Finite(lcm_of_denominators(&c)),
        })
    }

    /// Whether `V' + Λ'` of `other` is contained in `V + Λ`.
    pub fn contains_quotient_data_of(&self, other: &QuotientStructure) -> Result<bool> {
        check_len(self.ambient_dim, other.ambient_dim)?;
        for v in other.subspace_basis.columns() {
            if !is_zero_vec(&self.project(&v)) {
                return Ok(false);
            }
        }
        for g in other.lattice_gens.columns() {
            if !self.is_zero_class(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
