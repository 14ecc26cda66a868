//! Coordinates on `∧^q Q^g ⊗ ∧^p Q^g` in the lexicographic wedge basis.

use std::collections::HashMap;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{determinant, Rat, RatMatrix};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `0..n`, increasing, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The basis `{e_I : |I| = k}` of `∧^k Q^n`.
#[derive(Clone, Debug)]
pub struct WedgeBasis {
    n: usize,
    k: usize,
    sets: Vec<Vec<usize>>,
    rank: HashMap<Vec<usize>, usize>,
}

impl WedgeBasis {
    pub fn new(n: usize, k: usize) -> Self {
        let sets = subsets(n, k);
        let rank = sets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        WedgeBasis { n, k, sets, rank }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    pub fn rank(&self, set: &[usize]) -> usize {
        self.rank[set]
    }
}

/// `e_j ∧ e_K` as `(sign, sorted K ∪ {j})`, or `None` when `j ∈ K`.
pub fn insert_sorted(j: usize, set: &[usize]) -> Option<(i32, Vec<usize>)> {
    if set.contains(&j) {
        return None;
    }
    let before = set.iter().filter(|&&x| x < j).count();
    let mut out = set.to_vec();
    out.insert(before, j);
    Some((if before % 2 == 0 { 1 } else { -1 }, out))
}

/// Coordinates of `v_1 ∧ ... ∧ v_k` in `∧^k Q^n`: the maximal minors.
pub fn wedge_vectors(n: usize, vs: &[Vec<Rat>]) -> Vec<Rat> {
    let k = vs.len();
    let m = RatMatrix::from_cols(n, vs);
    subsets(n, k)
        .iter()
        .map(|rows| {
            let mut minor = RatMatrix::zeros(k, k);
            for (r, &i) in rows.iter().enumerate() {
                for c in 0..k {
                    minor[(r, c)] = m[(i, c)].clone();
                }
            }
            determinant(&minor)
        })
        .collect()
}

/// `∧^k P`, with entry `(I, J) = det P[I, J]`.
pub fn exterior_power(p: &RatMatrix, k: usize) -> RatMatrix {
    let rows = subsets(p.rows(), k);
    let cols = subsets(p.cols(), k);
    let mut out = RatMatrix::zeros(rows.len(), cols.len());
    for (a, ri) in rows.iter().enumerate() {
        for (b, cj) in cols.iter().enumerate() {
            let mut minor = RatMatrix::zeros(k, k);
            for (r, &i) in ri.iter().enumerate() {
                for (c, &j) in cj.iter().enumerate() {
                    minor[(r, c)] = p[(i, j)].clone();
                }
            }
            out[(a, b)] = determinant(&minor);
        }
    }
    out
}

/// Indexing of the basis `e_J ⊗ e_K` of `∧^q Q^g ⊗ ∧^p Q^g`: the first
/// slot has size `q`, the second size `p`, and `index(J, K) = rank(J) ·
/// C(g, p) + rank(K)`.
#[derive(Clone, Debug)]
pub struct WedgeIndex {
    g: usize,
    p: usize,
    q: usize,
    first: WedgeBasis,
    second: WedgeBasis,
}

impl WedgeIndex {
    pub fn new(g: usize, p: usize, q: usize) -> Self {
        WedgeIndex { g, p, q, first: WedgeBasis::new(g, q), second: WedgeBasis::new(g, p) }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn dim(&self) -> usize {
        self.first.len() * self.second.len()
    }

    pub fn first(&self) -> &WedgeBasis {
        &self.first
    }

    pub fn second(&self) -> &WedgeBasis {
        &self.second
    }

    pub fn index(&self, j: &[usize], k: &[usize]) -> usize {
        self.first.rank(j) * self.second.len() + self.second.rank(k)
    }

    pub fn split(&self, idx: usize) -> (&[usize], &[usize]) {
        let s = self.second.len();
        (self.first.set(idx / s), self.second.set(idx % s))
    }

    /// Human-readable label, 1-based: `a1⊗b1∧b2`.
    pub fn label(&self, idx: usize) -> String {
        let (j, k) = self.split(idx);
        let part = |set: &[usize], c: char| -> String {
            if set.is_empty() {
                "1".into()
            } else {
                set.iter().map(|x| format!("{c}{}", x + 1)).collect::<Vec<_>>().join("∧")
            }
        };
        format!("{}⊗{}", part(j, 'a'), part(k, 'b'))
    }
}

/// An element of `H_{p,q}`, stored in pure `b`-wedge coordinates on
/// `∧^q Q^g ⊗ ∧^p Q^g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    g: usize,
    p: usize,
    q: usize,
    coords: Vec<Rat>,
}

impl TensorElement {
    pub fn zero(g: usize, p: usize, q: usize) -> Self {
        let dim = binomial(g, q) * binomial(g, p);
        TensorElement { g, p, q, coords: vec![Rat::zero(); dim] }
    }

    pub fn from_coords(g: usize, p: usize, q: usize, coords: Vec<Rat>) -> Result<Self> {
        let dim = binomial(g, q) * binomial(g, p);
        if coords.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: coords.len() });
        }
        Ok(TensorElement { g, p, q, coords })
    }

    /// `(u_1 ∧ ... ∧ u_q) ⊗ (v_1 ∧ ... ∧ v_p)` for coordinate vectors.
    pub fn pure(g: usize, us: &[Vec<Rat>], vs: &[Vec<Rat>]) -> Self {
        let a = wedge_vectors(g, us);
        let b = wedge_vectors(g, vs);
        let coords = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        TensorElement { g, p: vs.len(), q: us.len(), coords }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// `(p, q)`: the element lives in `H_{p,q}`.
    pub fn degrees(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn index(&self) -> WedgeIndex {
        WedgeIndex::new(self.g, self.p, self.q)
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TensorElement { coords: self.coords.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!((self.g, self.p, self.q), (other.g, other.p, other.q), "tensor degrees differ");
    }

    /// Adds `c · e_J ⊗ e_K`.
    pub fn add_term(&mut self, index: &WedgeIndex, j: &[usize], k: &[usize], c: &Rat) {
        let i = index.index(j, k);
        self.coords[i] += c;
    }

    /// Nonzero coordinates as `(index, coefficient)`.
    pub fn support(&self) -> Vec<(usize, &Rat)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;

    fn add(self, rhs: &TensorElement) -> TensorElement {
        self.check_same(rhs);
        TensorElement { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(), ..self.clone() }
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;

    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self.check_same(rhs);
        TensorElement { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(), ..self.clone() }
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;

    fn neg(self) -> TensorElement {
        TensorElement { coords: self.coords.iter().map(|a| -a).collect(), ..self.clone() }
    }
}

/// `φ(u_1 ∧ ... ∧ u_q ⊗ v) = Σ_k (-1)^k (u_1 ∧ ... û_k ... ∧ u_q) ⊗ (u_k ∧ v)`.
pub fn monodromy_phi(x: &TensorElement) -> Result<TensorElement> {
    let (p, q) = x.degrees();
    if q == 0 {
        return Err(Error::InvalidDegrees { p, q, reason: "monodromy needs q ≥ 1" });
    }
    let src = x.index();
    let dst = WedgeIndex::new(x.g, p + 1, q - 1);
    let mut out = TensorElement::zero(x.g, p + 1, q - 1);
    for (idx, c) in x.support() {
        let (j, k) = src.split(idx);
        for (pos, &u) in j.iter().enumerate() {
            let Some((s, k2)) = insert_sorted(u, k) else { continue };
            let mut j2 = j.to_vec();
            j2.remove(pos);
            // (-1)^k with k counted from 1
            let sign = if pos % 2 == 0 { -s } else { s };
            out.add_term(&dst, &j2, &k2, &(c * Rat::from_integer(sign.into())));
        }
    }
    Ok(out)
}

/// Applies `∧^q P ⊗ ∧^p P` to `x`.
pub fn transform(x: &TensorElement, p: &RatMatrix) -> TensorElement {
    assert_eq!(p.rows(), x.g, "change of basis has wrong size");
    let (pp, qq) = x.degrees();
    let a = exterior_power(p, qq);
    let b = exterior_power(p, pp);
    let (na, nb) = (a.rows(), b.rows());
    let mut coords = vec![Rat::zero(); na * nb];
    for (idx, c) in x.support() {
        let (i, j) = (idx / nb, idx % nb);
        for r in 0..na {
            let ar = &a[(r, i)];
            if ar.is_zero() {
                continue;
            }
            let arc = ar * c;
            for s in 0..nb {
                if !b[(s, j)].is_zero() {
                    coords[r * nb + s] += &arc * &b[(s, j)];
                }
            }
        }
    }
    TensorElement { coords, ..x.clone() }
}
