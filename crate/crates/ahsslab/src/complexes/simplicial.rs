//! Ordered simplicial complexes and their boundary operators.

use crate::abgroup::{IntMatrix, SparseIntMatrix};
use num_bigint::BigInt;
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("simplex has repeated vertices: {0:?}")]
    RepeatedVertex(Vec<u32>),
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("simplex set is not closed under faces: missing {0:?}")]
    NotClosed(Vec<u32>),
    #[error("not a subcomplex of the parent: {0:?}")]
    NotSubcomplex(Vec<u32>),
    #[error("not a closed pseudomanifold: {0}")]
    NotPseudoManifold(String),
}

/// A finite simplicial complex with a fixed global vertex order.
///
/// Simplices are stored per dimension, each as a strictly increasing vertex
/// tuple, sorted lexicographically within its dimension. The vertex order
/// fixes all orientations.
#[derive(Clone)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    simplices: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
}

impl SimplicialComplex {
    /// Build from top cells; all faces are added automatically.
    pub fn from_top_cells(labels: Vec<String>, top: &[Vec<u32>]) -> Result<Self, ComplexError> {
        let mut per_dim: Vec<BTreeSet<Vec<u32>>> = Vec::new();
        for cell in top {
            let mut v = cell.clone();
            v.sort_unstable();
            v.dedup();
            if v.len() != cell.len() {
                return Err(ComplexError::RepeatedVertex(cell.clone()));
            }
            for &x in &v {
                if x as usize >= labels.len() {
                    return Err(ComplexError::VertexOutOfRange(x as usize));
                }
            }
            for sub in nonempty_subsets(&v) {
                let d = sub.len() - 1;
                while per_dim.len() <= d {
                    per_dim.push(BTreeSet::new());
                }
                per_dim[d].insert(sub);
            }
        }
        Self::from_sorted_sets(labels, per_dim)
    }

    /// Build from an explicit per-dimension list; validates face closure.
    pub fn from_simplices(
        labels: Vec<String>,
        simplices: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self, ComplexError> {
        let mut per_dim: Vec<BTreeSet<Vec<u32>>> = Vec::new();
        for dim_list in simplices {
            let mut set = BTreeSet::new();
            for s in dim_list {
                set.insert(s);
            }
            per_dim.push(set);
        }
        let c = Self::from_sorted_sets(labels, per_dim)?;
        for d in 1..=c.dim() {
            for s in &c.simplices[d] {
                for f in faces(s) {
                    if !c.index[d - 1].contains_key(&f) {
                        return Err(ComplexError::NotClosed(f));
                    }
                }
            }
        }
        Ok(c)
    }

    fn from_sorted_sets(
        labels: Vec<String>,
        per_dim: Vec<BTreeSet<Vec<u32>>>,
    ) -> Result<Self, ComplexError> {
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.clone(), i).is_some() {
                return Err(ComplexError::DuplicateLabel(l.clone()));
            }
        }
        let mut simplices = Vec::new();
        let mut index = Vec::new();
        for set in per_dim {
            let list: Vec<Vec<u32>> = set.into_iter().collect();
            for s in &list {
                if !s.windows(2).all(|w| w[0] < w[1]) {
                    return Err(ComplexError::RepeatedVertex(s.clone()));
                }
                for &x in s {
                    if x as usize >= labels.len() {
                        return Err(ComplexError::VertexOutOfRange(x as usize));
                    }
                }
            }
            let idx: HashMap<Vec<u32>, usize> =
                list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
            simplices.push(list);
            index.push(idx);
        }
        while simplices.last().is_some_and(Vec::is_empty) {
            simplices.pop();
            index.pop();
        }
        Ok(SimplicialComplex { labels, simplices, index })
    }

    /// Test convenience: vertices named by their index.
    pub fn from_numbered_top_cells(n_vertices: usize, top: &[Vec<u32>]) -> Self {
        let labels = (0..n_vertices).map(|i| format!("v{i}")).collect();
        Self::from_top_cells(labels, top).expect("valid complex")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Dimension of the complex (-1 is represented by 0 for the empty complex).
    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn n_cells(&self, d: usize) -> usize {
        self.simplices.get(d).map_or(0, Vec::len)
    }

    pub fn total_cells(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn simplex(&self, d: usize, i: usize) -> &[u32] {
        &self.simplices[d][i]
    }

    pub fn simplices_in_dim(&self, d: usize) -> &[Vec<u32>] {
        self.simplices.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, verts: &[u32]) -> Option<usize> {
        let d = verts.len().checked_sub(1)?;
        self.index.get(d)?.get(verts).copied()
    }

    pub fn contains(&self, verts: &[u32]) -> bool {
        self.index_of(verts).is_some()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, list)| {
                let c = list.len() as i64;
                if d % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// Sparse matrix of the boundary operator C_p -> C_{p-1} with
    /// alternating-sign face coefficients in the global vertex order.
    pub fn boundary_sparse(&self, p: usize) -> SparseIntMatrix {
        let rows = if p == 0 { 0 } else { self.n_cells(p - 1) };
        let cols = self.n_cells(p);
        if p == 0 || cols == 0 {
            return SparseIntMatrix::zeros(rows, cols);
        }
        let mut columns = Vec::with_capacity(cols);
        for s in &self.simplices[p] {
            let mut col = Vec::with_capacity(p + 1);
            for (k, f) in faces(s).into_iter().enumerate() {
                let i = self.index[p - 1][&f];
                let sign = if k % 2 == 0 { 1 } else { -1 };
                col.push((i as u32, sign));
            }
            columns.push(col);
        }
        SparseIntMatrix::from_sparse_columns(rows, columns)
    }

    /// Dense boundary matrix (see [`Self::boundary_sparse`]).
    pub fn boundary_matrix(&self, p: usize) -> IntMatrix {
        self.boundary_sparse(p).to_dense()
    }

    pub fn chain_complex(&self) -> super::chain::ChainComplexData {
        let dim = self.dim();
        let n_cells = (0..=dim).map(|d| self.n_cells(d)).collect();
        let boundaries = (0..=dim).map(|d| self.boundary_sparse(d)).collect();
        super::chain::ChainComplexData::new(n_cells, boundaries)
    }

    pub fn skeleton(&self, p: usize) -> SimplicialComplex {
        let keep = self.simplices.iter().take(p + 1).cloned().collect();
        SimplicialComplex::from_simplices(self.labels.clone(), keep).expect("skeleton is closed")
    }

    /// Indices of top-dimensional cofacets of an (n-1)-simplex.
    pub fn cofacets(&self, d: usize, i: usize) -> Vec<usize> {
        let s = &self.simplices[d][i];
        let mut out = Vec::new();
        if d + 1 > self.dim() {
            return out;
        }
        for (j, t) in self.simplices[d + 1].iter().enumerate() {
            if is_subset(s, t) {
                out.push(j);
            }
        }
        out
    }

    /// Purity plus the two-cofacets condition on all (n-1)-simplices.
    pub fn check_closed_pseudomanifold(&self) -> Result<(), ComplexError> {
        let n = self.dim();
        if n == 0 {
            return Ok(());
        }
        // purity: every simplex is a face of an n-simplex
        for d in 0..n {
            for s in &self.simplices[d] {
                let covered = self.simplices[n].iter().any(|t| is_subset(s, t));
                if !covered {
                    return Err(ComplexError::NotPseudoManifold(format!(
                        "simplex {s:?} is not a face of any top cell"
                    )));
                }
            }
        }
        let b = self.boundary_sparse(n);
        let bt = b.transpose();
        for i in 0..self.n_cells(n - 1) {
            let k = bt.column(i).len();
            if k != 2 {
                return Err(ComplexError::NotPseudoManifold(format!(
                    "face {:?} lies in {} top cells",
                    self.simplices[n - 1][i],
                    k
                )));
            }
        }
        Ok(())
    }

    /// Connected component id per vertex, by index order of discovery.
    pub fn vertex_components(&self) -> Vec<usize> {
        let n0 = self.n_cells(0);
        let mut comp = vec![usize::MAX; n0];
        let mut next = 0;
        for start in 0..n0 {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for e in self.simplices_in_dim(1) {
                    let a = self.index[0][&vec![e[0]]];
                    let b = self.index[0][&vec![e[1]]];
                    if a == v && comp[b] == usize::MAX {
                        comp[b] = next;
                        stack.push(b);
                    } else if b == v && comp[a] == usize::MAX {
                        comp[a] = next;
                        stack.push(a);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let counts: Vec<usize> = (0..=self.dim()).map(|d| self.n_cells(d)).collect();
        write!(f, "SimplicialComplex(f = {counts:?})")
    }
}

/// A subcomplex together with the injection of its cells into the parent.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    pub complex: SimplicialComplex,
    /// parent_index[d][i] = position in the parent of cell (d, i)
    pub parent_index: Vec<Vec<usize>>,
}

impl Subcomplex {
    /// Build the face closure of `top` inside `parent`. The subcomplex keeps
    /// the parent's vertex index space.
    pub fn new(parent: &SimplicialComplex, top: &[Vec<u32>]) -> Result<Self, ComplexError> {
        for cell in top {
            let mut v = cell.clone();
            v.sort_unstable();
            if !parent.contains(&v) {
                return Err(ComplexError::NotSubcomplex(cell.clone()));
            }
        }
        let complex = SimplicialComplex::from_top_cells(parent.labels.to_vec(), top)?;
        let mut parent_index = Vec::new();
        for d in 0..=complex.dim() {
            let mut idx = Vec::with_capacity(complex.n_cells(d));
            for s in complex.simplices_in_dim(d) {
                let i = parent
                    .index_of(s)
                    .ok_or_else(|| ComplexError::NotSubcomplex(s.clone()))?;
                idx.push(i);
            }
            parent_index.push(idx);
        }
        Ok(Subcomplex { complex, parent_index })
    }

    /// Build from explicit simplex lists (validates closure in the parent).
    pub fn from_simplices(
        parent: &SimplicialComplex,
        simplices: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self, ComplexError> {
        let complex = SimplicialComplex::from_simplices(parent.labels.to_vec(), simplices)?;
        let mut parent_index = Vec::new();
        for d in 0..=complex.dim() {
            let mut idx = Vec::with_capacity(complex.n_cells(d));
            for s in complex.simplices_in_dim(d) {
                let i = parent
                    .index_of(s)
                    .ok_or_else(|| ComplexError::NotSubcomplex(s.clone()))?;
                idx.push(i);
            }
            parent_index.push(idx);
        }
        Ok(Subcomplex { complex, parent_index })
    }
}

pub(crate) fn nonempty_subsets(v: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity((1usize << v.len()) - 1);
    for mask in 1u32..(1 << v.len()) {
        let mut s = Vec::with_capacity(mask.count_ones() as usize);
        for (k, &x) in v.iter().enumerate() {
            if mask & (1 << k) != 0 {
                s.push(x);
            }
        }
        out.push(s);
    }
    out
}

/// Codimension-one faces in the order of the omitted vertex.
pub(crate) fn faces(s: &[u32]) -> Vec<Vec<u32>> {
    (0..s.len())
        .map(|k| {
            s.iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

pub(crate) fn is_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// `Z -> G` extension of the boundary operator is left to the chain module;
/// this evaluates the plain integer boundary of a formal top-cell chain.
pub fn boundary_of_chain(
    x: &SimplicialComplex,
    d: usize,
    coeffs: &[BigInt],
) -> Vec<BigInt> {
    use num_traits::Zero;
    assert_eq!(coeffs.len(), x.n_cells(d));
    let rows = if d == 0 { 0 } else { x.n_cells(d - 1) };
    let mut out = vec![BigInt::zero(); rows];
    if d == 0 {
        return out;
    }
    let b = x.boundary_sparse(d);
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for &(i, v) in b.column(j) {
            out[i as usize] += c * BigInt::from(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_boundary() {
        let x = SimplicialComplex::from_numbered_top_cells(2, &[vec![0, 1]]);
        let b = x.boundary_matrix(1);
        assert_eq!(b, IntMatrix::from_rows(&[vec![-1], vec![1]]));
    }

    #[test]
    fn boundary_squares_to_zero() {
        let x = SimplicialComplex::from_numbered_top_cells(4, &[vec![0, 1, 2, 3]]);
        for d in 1..=x.dim() {
            let b1 = x.boundary_sparse(d);
            if d >= 2 {
                let b0 = x.boundary_sparse(d - 1);
                assert!(b0.is_zero_composition(&b1));
            }
        }
    }

    #[test]
    fn closure_and_counts() {
        // boundary of a tetrahedron: 4 vertices, 6 edges, 4 triangles
        let x = SimplicialComplex::from_numbered_top_cells(
            4,
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        );
        assert_eq!((x.n_cells(0), x.n_cells(1), x.n_cells(2)), (4, 6, 4));
        assert_eq!(x.euler_characteristic(), 2);
        assert!(x.check_closed_pseudomanifold().is_ok());
    }

    #[test]
    fn wedge_is_not_pseudomanifold() {
        let x = SimplicialComplex::from_numbered_top_cells(5, &[vec![0, 1, 2], vec![0, 3, 4]]);
        assert!(x.check_closed_pseudomanifold().is_err());
    }

    #[test]
    fn subcomplex_closure_check() {
        let x = SimplicialComplex::from_numbered_top_cells(3, &[vec![0, 1, 2]]);
        let y = Subcomplex::new(&x, &[vec![0, 1]]).unwrap();
        assert_eq!(y.complex.n_cells(0), 2);
        assert_eq!(y.parent_index[1], vec![x.index_of(&[0, 1]).unwrap()]);
        assert!(Subcomplex::new(&x, &[vec![0, 3]]).is_err());
        // explicit simplex list missing a face is rejected
        let bad = SimplicialComplex::from_simplices(
            (0..3).map(|i| format!("v{i}")).collect(),
            vec![vec![vec![0]], vec![vec![0, 1]]],
        );
        assert!(bad.is_err());
    }
}
