//! Dense exact Gaussian elimination over the rationals.
//!
//! Pivoting is deterministic: columns are scanned left to right and the first
//! row (in input order) with a nonzero entry in the column becomes the pivot.

use num_traits::{One, Zero};

use crate::rational::Q;

/// Row-reduces `rows` in place to reduced row echelon form and returns the
/// pivot column of each nonzero row. Zero rows are removed.
pub fn rref(rows: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}` for an `nrows × ncols` matrix given by rows.
/// Each basis vector has a 1 in one free column and zeros in the other free columns.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let pivots = rref(&mut m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Incremental echelon basis that tracks how each stored row is expressed as a
/// combination of the vectors that were inserted.
#[derive(Debug, Clone, Default)]
pub struct TrackedEchelon {
    rows: Vec<(usize, Vec<Q>, Vec<(usize, Q)>)>,
}

impl TrackedEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the stored rows. Returns the residual and the
    /// combination `c` (over inserted tags) with `v = residual + Σ c_tag · input_tag`.
    pub fn reduce(&self, v: &[Q]) -> (Vec<Q>, Vec<(usize, Q)>) {
        let mut residual = v.to_vec();
        let mut combo: Vec<(usize, Q)> = Vec::new();
        for (pivot, row, row_combo) in &self.rows {
            if residual[*pivot].is_zero() {
                continue;
            }
            let f = residual[*pivot].clone();
            for (x, r) in residual.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
            for (tag, c) in row_combo {
                add_into(&mut combo, *tag, &f * c);
            }
        }
        combo.retain(|(_, c)| !c.is_zero());
        (residual, combo)
    }

    /// Inserts `v` under `tag`; returns false (and stores nothing) if `v` is
    /// already in the span.
    pub fn insert(&mut self, tag: usize, v: &[Q]) -> bool {
        let (mut residual, combo) = self.reduce(v);
        let Some(pivot) = residual.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Q::one() / &residual[pivot];
        for x in residual.iter_mut() {
            *x *= &inv;
        }
        // residual = v - Σ combo·inputs, scaled
        let mut row_combo: Vec<(usize, Q)> = vec![(tag, inv.clone())];
        for (t, c) in combo {
            add_into(&mut row_combo, t, -(c * &inv));
        }
        row_combo.retain(|(_, c)| !c.is_zero());
        self.rows.push((pivot, residual, row_combo));
        true
    }
}

fn add_into(combo: &mut Vec<(usize, Q)>, tag: usize, c: Q) {
    match combo.iter_mut().find(|(t, _)| *t == tag) {
        Some((_, x)) => *x += c,
        None => combo.push((tag, c)),
    }
}
