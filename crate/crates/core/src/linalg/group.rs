//! Cokernels of integer relation lattices as finitely generated abelian groups.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::lattice::LatticeBasis;
use super::normal_form::snf;
use super::{check_len, inverse, IntMatrix, Rat, RatMatrix};
use crate::error::{Error, Result};

/// `A / R` presented as `Z/d_1 ⊕ ... ⊕ Z/d_k ⊕ Z^free_rank` with `d_i ≥ 2`
/// and `d_1 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
    /// Rows: one per torsion factor, then one per free summand.
    projection: RatMatrix,
    /// Columns: ambient vectors projecting to the unit in each coordinate.
    lift: RatMatrix,
}

/// Presents `⟨ambient⟩ / ⟨rel⟩`, both given by generator columns.
pub fn cokernel(rel: &RatMatrix, ambient_lattice: &RatMatrix) -> Result<FiniteAbelianGroup> {
    check_len(ambient_lattice.rows(), rel.rows())?;
    let n = ambient_lattice.rows();
    let basis = LatticeBasis::from_columns(ambient_lattice);
    let r = basis.rank();

    // coordinates of rel columns in the ambient basis
    let mut rel_coords = IntMatrix::zeros(r, rel.cols());
    for (j, col) in rel.columns().iter().enumerate() {
        let c = basis
            .coordinates(col)
            .filter(|c| c.iter().all(Rat::is_integer))
            .ok_or_else(|| Error::Precondition(format!("relation column {j} is not in the ambient lattice")))?;
        for (i, x) in c.into_iter().enumerate() {
            rel_coords[(i, j)] = x.to_integer();
        }
    }

    // y ↦ coordinates of y in the basis, as a rational r × n matrix
    let pivots = basis.pivots();
    let mut pivot_block = RatMatrix::zeros(r, r);
    for (i, row) in basis.basis().iter().enumerate() {
        for (j, &p) in pivots.iter().enumerate() {
            pivot_block[(j, i)] = row[p].clone();
        }
    }
    let pivot_inv = inverse(&pivot_block).expect("echelon pivot block is invertible");
    let mut select = RatMatrix::zeros(r, n);
    for (j, &p) in pivots.iter().enumerate() {
        select[(j, p)] = Rat::one();
    }
    let coord_map = &pivot_inv * &select;

    let smith = snf(&rel_coords);
    let diag: Vec<BigInt> =
        (0..r).map(|i| if i < smith.s.cols() { smith.s[(i, i)].clone() } else { BigInt::zero() }).collect();
    let u = smith.u.to_rat();
    let u_inv = inverse(&u).expect("unimodular");
    let full_projection = &u * &coord_map;
    let basis_cols = RatMatrix::from_cols(n, basis.basis());
    let full_lift = &basis_cols * &u_inv;

    let kept: Vec<usize> = (0..r).filter(|&i| diag[i].is_zero() || diag[i] > BigInt::one()).collect();
    let torsion: Vec<usize> = kept.iter().copied().filter(|&i| !diag[i].is_zero()).collect();
    let free: Vec<usize> = kept.iter().copied().filter(|&i| diag[i].is_zero()).collect();
    let order: Vec<usize> = torsion.iter().chain(&free).copied().collect();

    let mut projection = RatMatrix::zeros(order.len(), n);
    for (k, &i) in order.iter().enumerate() {
        for c in 0..n {
            projection[(k, c)] = full_projection[(i, c)].clone();
        }
    }
    Ok(FiniteAbelianGroup {
        invariant_factors: torsion.iter().map(|&i| diag[i].abs()).collect(),
        free_rank: free.len(),
        projection,
        lift: full_lift.select_cols(&order),
    })
}

impl FiniteAbelianGroup {
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn projection(&self) -> &RatMatrix {
        &self.projection
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.is_finite() && self.invariant_factors.is_empty()
    }

    /// Group order, `None` when there is a free part.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    /// Largest invariant factor (1 for the trivial group).
    pub fn exponent(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one))
    }

    /// Canonical coordinates of an ambient element: torsion coordinates in
    /// `[0, d_i)`, followed by the free coordinates.
    pub fn reduce(&self, y: &[Rat]) -> Result<Vec<BigInt>> {
        check_len(self.projection.cols(), y.len())?;
        let z = self.projection.mul_vec(y);
        z.into_iter()
            .enumerate()
            .map(|(k, x)| {
                if !x.is_integer() {
                    return Err(Error::Precondition("element is not in the ambient lattice".into()));
                }
                let x = x.to_integer();
                Ok(match self.invariant_factors.get(k) {
                    Some(d) => x.mod_floor(d),
                    None => x,
                })
            })
            .collect()
    }

    pub fn reduce_int(&self, y: &[BigInt]) -> Result<Vec<BigInt>> {
        let y: Vec<Rat> = y.iter().map(|x| Rat::from_integer(x.clone())).collect();
        self.reduce(&y)
    }

    /// An ambient element whose class has the given canonical coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> Result<Vec<Rat>> {
        check_len(self.lift.cols(), coords.len())?;
        let c: Vec<Rat> = coords.iter().map(|x| Rat::from_integer(x.clone())).collect();
        Ok(self.lift.mul_vec(&c))
    }

    /// Every element of a finite group in canonical coordinates, in
    /// lexicographic order.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![vec![]];
        for d in &self.invariant_factors {
            let mut next = Vec::new();
            for prefix in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut e: Vec<BigInt> = prefix.clone();
                    e.push(k.clone());
                    next.push(e);
                    k += 1;
                }
            }
            out = next;
        }
        Some(out)
    }

    pub fn is_zero(&self, coords: &[BigInt]) -> bool {
        coords.iter().all(Zero::is_zero)
    }
}
