//! Hermite and Smith normal forms over the integers, plus rational RREF.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, RatMatrix};

/// `U·A·V = S` with `S` diagonal and `d_1 | d_2 | ... | d_r`, zeros trailing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).take_while(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn row_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for c in 0..m.cols() {
        let t = q * &m[(source, c)];
        m[(target, c)] -= t;
    }
}

fn col_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for r in 0..m.rows() {
        let t = q * &m[(r, source)];
        m[(r, target)] -= t;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for x in m.row_mut(r) {
        *x = -std::mem::take(x);
    }
}

/// Row Hermite normal form in place; returns the pivot columns.
///
/// Every row operation is mirrored on `track` when given, so starting from
/// the identity it accumulates `U` with `U·A = H`.
pub(crate) fn hnf_in_place(a: &mut IntMatrix, mut track: Option<&mut IntMatrix>) -> Vec<usize> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        loop {
            let best = (row..rows)
                .filter(|&r| !a[(r, col)].is_zero())
                .min_by(|&x, &y| a[(x, col)].abs().cmp(&a[(y, col)].abs()));
            let Some(best) = best else { break };
            a.swap_rows(row, best);
            if let Some(u) = track.as_deref_mut() {
                u.swap_rows(row, best);
            }
            let mut clean = true;
            for r in row + 1..rows {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let q = a[(r, col)].div_floor(&a[(row, col)]);
                row_axpy(a, r, row, &q);
                if let Some(u) = track.as_deref_mut() {
                    row_axpy(u, r, row, &q);
                }
                if !a[(r, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[(row, col)].is_zero() {
            continue;
        }
        if a[(row, col)].is_negative() {
            negate_row(a, row);
            if let Some(u) = track.as_deref_mut() {
                negate_row(u, row);
            }
        }
        for r in 0..row {
            let q = a[(r, col)].div_floor(&a[(row, col)]);
            row_axpy(a, r, row, &q);
            if let Some(u) = track.as_deref_mut() {
                row_axpy(u, r, row, &q);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Row Hermite normal form: returns `(H, U)` with `U·M = H`, `U` unimodular,
/// pivots positive and entries above each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    hnf_in_place(&mut h, Some(&mut u));
    (h, u)
}

/// Smith normal form with smallest-absolute-value pivoting (ties broken by
/// row-major position).
pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = smallest_entry(&a, (t..rows).flat_map(|r| (t..cols).map(move |c| (r, c)))) else {
            break;
        };
        a.swap_rows(t, pr);
        u.swap_rows(t, pr);
        a.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if a[(r, t)].is_zero() {
                    continue;
                }
                let q = a[(r, t)].div_floor(&a[(t, t)]);
                row_axpy(&mut a, r, t, &q);
                row_axpy(&mut u, r, t, &q);
                clean &= a[(r, t)].is_zero();
            }
            for c in t + 1..cols {
                if a[(t, c)].is_zero() {
                    continue;
                }
                let q = a[(t, c)].div_floor(&a[(t, t)]);
                col_axpy(&mut a, c, t, &q);
                col_axpy(&mut v, c, t, &q);
                clean &= a[(t, c)].is_zero();
            }
            if !clean {
                let cells = (t..rows).map(|r| (r, t)).chain((t + 1..cols).map(|c| (t, c)));
                let (pr, pc) = smallest_entry(&a, cells).expect("pivot is nonzero");
                a.swap_rows(t, pr);
                u.swap_rows(t, pr);
                a.swap_cols(t, pc);
                v.swap_cols(t, pc);
                continue;
            }
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !a[(r, c)].is_multiple_of(&pivot)));
            match offender {
                Some(r) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, r, &minus_one);
                    row_axpy(&mut u, t, r, &minus_one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
    }
    SmithDecomposition { s: a, u, v }
}

fn smallest_entry(a: &IntMatrix, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (r, c) in cells {
        let x = &a[(r, c)];
        if x.is_zero() {
            continue;
        }
        let ax = x.abs();
        if best.as_ref().is_none_or(|(_, b)| ax < *b) {
            best = Some(((r, c), ax));
        }
    }
    best.map(|(pos, _)| pos)
}

/// Reduced row echelon form over the rationals. Returns the nonzero rows and
/// their pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = a[(row, col)].recip();
        for x in a.row_mut(row) {
            *x *= &inv;
        }
        for r in 0..rows {
            if r == row || a[(r, col)].is_zero() {
                continue;
            }
            let f = a[(r, col)].clone();
            for c in col..cols {
                let t = &f * &a[(row, c)];
                a[(r, c)] -= t;
            }
        }
        pivots.push(col);
        row += 1;
    }
    let kept: Vec<Vec<_>> = (0..row).map(|r| a.row(r).to_vec()).collect();
    let out = if kept.is_empty() { RatMatrix::zeros(0, cols) } else { RatMatrix::from_rows(kept) };
    (out, pivots)
}
