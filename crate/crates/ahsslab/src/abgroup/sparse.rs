//! Sparse integer matrices and an invariant-factor engine for the large
//! boundary matrices that subdivided complexes produce.
//!
//! Phase one eliminates with +-1 pivots only (chosen by Markowitz cost), so
//! no pivot ever forces a gcd step; whatever survives is handed to the dense
//! Smith normal form. Unit pivots contribute invariant factor 1 each.

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use num_bigint::BigInt;
use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

#[derive(Clone, Debug)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    /// column-major, rows sorted, no zero coefficients
    columns: Vec<Vec<(u32, i64)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn from_sparse_columns(rows: usize, columns: Vec<Vec<(u32, i64)>>) -> Self {
        let mut m = SparseIntMatrix { rows, cols: columns.len(), columns };
        for col in &mut m.columns {
            col.sort_by_key(|e| e.0);
            col.retain(|e| e.1 != 0);
            debug_assert!(col.iter().all(|e| (e.0 as usize) < rows));
            debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                columns[i as usize].push((j as u32, v));
            }
        }
        SparseIntMatrix { rows: self.cols, cols: self.rows, columns }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m[(i as usize, j)] = BigInt::from(v);
            }
        }
        m
    }

    /// y = M x for a dense vector x of i64 values.
    pub fn mul_dense_vec(&self, x: &[i64]) -> Vec<i128> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![0i128; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if x[j] == 0 {
                continue;
            }
            for &(i, v) in col {
                y[i as usize] += v as i128 * x[j] as i128;
            }
        }
        y
    }

    pub fn is_zero_composition(&self, other: &SparseIntMatrix) -> bool {
        // self * other == 0, checked column by column
        assert_eq!(self.cols, other.rows);
        for j in 0..other.cols {
            let mut acc: BTreeMap<u32, i128> = BTreeMap::new();
            for &(k, v) in other.column(j) {
                for &(i, w) in self.column(k as usize) {
                    *acc.entry(i).or_insert(0) += v as i128 * w as i128;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return false;
            }
        }
        true
    }
}

/// Rank and invariant factors (1s included) of a sparse integer matrix.
pub fn sparse_invariant_factors(m: &SparseIntMatrix) -> (usize, Vec<BigInt>) {
    let mut state = ElimState::new(m);
    match state.run() {
        Ok(()) => {
            let residual = state.residual_dense();
            let snf = smith_normal_form(&residual);
            let rank = state.unit_pivots + snf.rank();
            let mut factors = vec![BigInt::from(1); state.unit_pivots];
            factors.extend(snf.invariant_factors());
            (rank, factors)
        }
        Err(Overflow) => {
            // Entries outgrew i128 (never observed at desk scale): redo the
            // whole computation densely.
            let snf = smith_normal_form(&m.to_dense());
            (snf.rank(), snf.invariant_factors())
        }
    }
}

pub fn sparse_rank(m: &SparseIntMatrix) -> usize {
    sparse_invariant_factors(m).0
}

struct Overflow;

struct ElimState {
    col_rows: Vec<BTreeMap<u32, i128>>,
    row_cols: Vec<BTreeSet<u32>>,
    col_alive: Vec<bool>,
    row_alive: Vec<bool>,
    heap: BinaryHeap<Reverse<(usize, u32)>>,
    unit_pivots: usize,
}

impl ElimState {
    fn new(m: &SparseIntMatrix) -> Self {
        let mut col_rows: Vec<BTreeMap<u32, i128>> = Vec::with_capacity(m.cols);
        let mut row_cols = vec![BTreeSet::new(); m.rows];
        for (j, col) in m.columns.iter().enumerate() {
            let mut cr = BTreeMap::new();
            for &(i, v) in col {
                cr.insert(i, v as i128);
                row_cols[i as usize].insert(j as u32);
            }
            col_rows.push(cr);
        }
        let mut heap = BinaryHeap::new();
        for (j, cr) in col_rows.iter().enumerate() {
            if !cr.is_empty() {
                heap.push(Reverse((cr.len(), j as u32)));
            }
        }
        ElimState {
            col_rows,
            row_cols,
            col_alive: vec![true; m.cols],
            row_alive: vec![true; m.rows],
            heap,
            unit_pivots: 0,
        }
    }

    fn run(&mut self) -> Result<(), Overflow> {
        while let Some(Reverse((nnz, j))) = self.heap.pop() {
            let j = j as usize;
            if !self.col_alive[j] || self.col_rows[j].len() != nnz || nnz == 0 {
                continue; // stale entry
            }
            // best unit entry: minimal row fill, then lowest row index
            let pivot = self.col_rows[j]
                .iter()
                .filter(|&(_, &v)| v == 1 || v == -1)
                .map(|(&i, &v)| (self.row_cols[i as usize].len(), i, v))
                .min();
            let Some((_, pr, pv)) = pivot else { continue };
            self.pivot(pr, j as u32, pv)?;
        }
        Ok(())
    }

    fn pivot(&mut self, pr: u32, pc: u32, pv: i128) -> Result<(), Overflow> {
        // Clear row pr in all other columns by adding multiples of column pc,
        // then retire the pivot row and column.
        let pivot_col: Vec<(u32, i128)> = self.col_rows[pc as usize]
            .iter()
            .map(|(&i, &v)| (i, v))
            .collect();
        let touched: Vec<u32> = self.row_cols[pr as usize]
            .iter()
            .copied()
            .filter(|&c| c != pc)
            .collect();
        for &cj in &touched {
            let entry = *self.col_rows[cj as usize].get(&pr).expect("row index out of sync");
            // factor so that entry - factor*pv = 0
            let factor = entry * pv; // pv in {1,-1}: entry/pv
            for &(ri, rv) in &pivot_col {
                if ri == pr {
                    continue;
                }
                let delta = factor.checked_mul(rv).ok_or(Overflow)?;
                let cell = self.col_rows[cj as usize].entry(ri).or_insert(0);
                *cell = cell.checked_sub(delta).ok_or(Overflow)?;
                if *cell == 0 {
                    self.col_rows[cj as usize].remove(&ri);
                    self.row_cols[ri as usize].remove(&cj);
                } else {
                    self.row_cols[ri as usize].insert(cj);
                }
            }
            self.col_rows[cj as usize].remove(&pr);
            self.row_cols[pr as usize].remove(&cj);
            if !self.col_rows[cj as usize].is_empty() {
                self.heap.push(Reverse((self.col_rows[cj as usize].len(), cj)));
            }
        }
        // Retire pivot column: remaining entries are cleared by row
        // operations with the (now singleton) pivot row, which touch nothing
        // else.
        for (ri, _) in pivot_col {
            if ri != pr {
                self.row_cols[ri as usize].remove(&pc);
            }
        }
        self.col_rows[pc as usize].clear();
        self.col_alive[pc as usize] = false;
        self.row_alive[pr as usize] = false;
        self.unit_pivots += 1;
        Ok(())
    }

    fn residual_dense(&self) -> IntMatrix {
        let rows: Vec<usize> = (0..self.row_alive.len()).filter(|&i| self.row_alive[i]).collect();
        let cols: Vec<usize> = (0..self.col_alive.len())
            .filter(|&j| self.col_alive[j] && !self.col_rows[j].is_empty())
            .collect();
        let row_index: std::collections::HashMap<u32, usize> =
            rows.iter().enumerate().map(|(k, &i)| (i as u32, k)).collect();
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (cj, &j) in cols.iter().enumerate() {
            for (&i, &v) in &self.col_rows[j] {
                m[(row_index[&i], cj)] = BigInt::from(v);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn matches_dense_snf_on_random_matrices() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        for _ in 0..120 {
            let r = rng.gen_range(0..=10);
            let c = rng.gen_range(0..=10);
            let mut cols = vec![Vec::new(); c];
            for col in cols.iter_mut() {
                for i in 0..r {
                    if rng.gen_bool(0.4) {
                        col.push((i as u32, rng.gen_range(-5..=5i64)));
                    }
                }
            }
            let sp = SparseIntMatrix::from_sparse_columns(r, cols);
            let (rank, factors) = sparse_invariant_factors(&sp);
            let snf = smith_normal_form(&sp.to_dense());
            assert_eq!(rank, snf.rank());
            let mut f1: Vec<BigInt> = factors.into_iter().filter(|x| x != &BigInt::from(1)).collect();
            let mut f2: Vec<BigInt> =
                snf.invariant_factors().into_iter().filter(|x| x != &BigInt::from(1)).collect();
            f1.sort();
            f2.sort();
            assert_eq!(f1, f2, "invariant factors disagree on {:?}", sp.to_dense());
        }
    }

    #[test]
    fn transpose_roundtrip() {
        let m = SparseIntMatrix::from_sparse_columns(3, vec![vec![(0, 1), (2, -1)], vec![(1, 2)]]);
        let t = m.transpose();
        assert_eq!(t.rows(), 2);
        assert_eq!(t.cols(), 3);
        assert_eq!(t.transpose().to_dense(), m.to_dense());
    }
}
