//! Dense matrices over the integers with arbitrary-precision entries.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A dense row-major integer matrix. Entries are arbitrary precision so that
/// intermediate values of the normal form algorithms can grow freely.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Test helper: build from machine-integer rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn from_columns(ambient: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(ambient, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), ambient);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<BigInt>> + '_ {
        (0..self.cols).map(|j| self.column(j))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![BigInt::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    out[i] += a * &v[j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> IntMatrix {
        let entries = self.entries.iter().map(|a| -a).collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Vertical concatenation, `self` on top.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, entries }
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(rows.len(), self.cols);
        for (oi, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                out[(oi, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, cols.len());
        for (oj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out[(i, oj)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self[(src, j)] * q;
            self[(dst, j)] += t;
        }
    }

    /// col[dst] += q * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self[(i, src)] * q;
            self[(i, dst)] += t;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Determinant by cofactor expansion; oracle-grade, for small matrices only.
    pub fn det_cofactor(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return self[(0, 0)].clone();
        }
        let mut det = BigInt::zero();
        for j in 0..n {
            if self[(0, j)].is_zero() {
                continue;
            }
            let idx: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = self.select_rows(&(1..n).collect::<Vec<_>>()).select_cols(&idx);
            let term = &self[(0, j)] * minor.det_cofactor();
            if j % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        det
    }

    pub fn max_abs(&self) -> BigInt {
        self.entries
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_transpose() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, IntMatrix::from_rows(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(
            a.transpose(),
            IntMatrix::from_rows(&[vec![1, 3], vec![2, 4]])
        );
    }

    #[test]
    fn det_small() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(a.det_cofactor(), BigInt::from(-8));
        assert_eq!(IntMatrix::identity(4).det_cofactor(), BigInt::one());
    }
}
