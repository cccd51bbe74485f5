//! Cell chain complexes with coefficients in a finitely generated abelian
//! group, and their (co)homology with representatives.
//!
//! A coefficient group acts through its invariant-factor presentation: a
//! value in `G` is a vector laid out by `G.generator_orders()` (torsion
//! coordinates first, reduced into `[0, d)`, then free coordinates). The same
//! representation serves cochains and chains.

use crate::abgroup::presented::relations;
use crate::abgroup::{
    preimage_of_span, sparse_invariant_factors, subquotient_group, FGAbGroup, IntMatrix,
    SparseIntMatrix, Subquotient, SubquotientPresentation,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Boundary operators of a finite cell complex: `boundaries[d]` is the sparse
/// matrix of `C_d -> C_{d-1}` (with `boundaries[0]` a 0-row matrix).
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    n_cells: Vec<usize>,
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplexData {
    pub fn new(n_cells: Vec<usize>, boundaries: Vec<SparseIntMatrix>) -> Self {
        assert_eq!(n_cells.len(), boundaries.len());
        for d in 0..boundaries.len() {
            assert_eq!(boundaries[d].cols(), n_cells[d]);
            let expect_rows = if d == 0 { 0 } else { n_cells[d - 1] };
            assert_eq!(boundaries[d].rows(), expect_rows);
        }
        ChainComplexData { n_cells, boundaries }
    }

    pub fn dim(&self) -> usize {
        self.n_cells.len().saturating_sub(1)
    }

    pub fn n_cells(&self, d: usize) -> usize {
        self.n_cells.get(d).copied().unwrap_or(0)
    }

    /// `C_d -> C_{d-1}`; zero-sized outside the range.
    pub fn boundary(&self, d: usize) -> SparseIntMatrix {
        match self.boundaries.get(d) {
            Some(b) => b.clone(),
            None => SparseIntMatrix::zeros(self.n_cells(d.wrapping_sub(1)), 0),
        }
    }

    /// The coboundary `C^d -> C^{d+1}` as the transposed boundary.
    pub fn coboundary(&self, d: usize) -> SparseIntMatrix {
        if d + 1 <= self.dim() {
            self.boundaries[d + 1].transpose()
        } else {
            SparseIntMatrix::zeros(0, self.n_cells(d))
        }
    }

    pub fn check_boundary_squares_to_zero(&self) -> bool {
        (2..=self.dim()).all(|d| self.boundaries[d - 1].is_zero_composition(&self.boundaries[d]))
    }
}

/// A degree-`p` cochain (or chain) with one `G`-value per `p`-cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub coeff: FGAbGroup,
    /// cell-major: `n_cells * coeff.num_generators()` entries
    pub values: Vec<BigInt>,
}

impl Cochain {
    pub fn zero(n_cells: usize, degree: usize, coeff: FGAbGroup) -> Self {
        let w = coeff.num_generators();
        Cochain { degree, coeff, values: vec![BigInt::zero(); n_cells * w] }
    }

    pub fn from_values(degree: usize, coeff: FGAbGroup, values: Vec<BigInt>) -> Self {
        let mut c = Cochain { degree, coeff, values };
        c.normalize();
        c
    }

    /// Ring-coefficient convenience: one value per cell.
    pub fn scalar(degree: usize, coeff: FGAbGroup, values: Vec<i64>) -> Self {
        assert_eq!(coeff.num_generators(), 1);
        Self::from_values(degree, coeff, values.into_iter().map(BigInt::from).collect())
    }

    pub fn n_cells(&self) -> usize {
        let w = self.coeff.num_generators();
        if w == 0 {
            0
        } else {
            self.values.len() / w
        }
    }

    pub fn value(&self, cell: usize) -> &[BigInt] {
        let w = self.coeff.num_generators();
        &self.values[cell * w..(cell + 1) * w]
    }

    pub fn set_value(&mut self, cell: usize, v: &[BigInt]) {
        let w = self.coeff.num_generators();
        assert_eq!(v.len(), w);
        self.values[cell * w..(cell + 1) * w].clone_from_slice(v);
        self.normalize();
    }

    /// Reduce torsion coordinates modulo their orders.
    pub fn normalize(&mut self) {
        let orders = self.coeff.generator_orders();
        let w = orders.len();
        if w == 0 {
            return;
        }
        for (k, v) in self.values.iter_mut().enumerate() {
            let d = &orders[k % w];
            if !d.is_zero() {
                *v = v.mod_floor(d);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.coeff, other.coeff);
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Cochain::from_values(self.degree, self.coeff.clone(), values)
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.coeff, other.coeff);
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Cochain::from_values(self.degree, self.coeff.clone(), values)
    }

    pub fn scale(&self, k: &BigInt) -> Cochain {
        let values = self.values.iter().map(|a| a * k).collect();
        Cochain::from_values(self.degree, self.coeff.clone(), values)
    }
}

/// Apply the coboundary operator to a degree-`p` cochain.
pub fn coboundary_of(cc: &ChainComplexData, c: &Cochain) -> Cochain {
    let p = c.degree;
    let w = c.coeff.num_generators();
    let n_out = if p + 1 <= cc.dim() { cc.n_cells(p + 1) } else { 0 };
    let mut out = Cochain::zero(n_out, p + 1, c.coeff.clone());
    if n_out == 0 {
        return out;
    }
    let b = &cc.boundaries[p + 1];
    for tau in 0..n_out {
        for &(sigma, s) in b.column(tau) {
            let s = BigInt::from(s);
            for t in 0..w {
                let add = &c.values[sigma as usize * w + t] * &s;
                out.values[tau * w + t] += add;
            }
        }
    }
    out.normalize();
    out
}

/// Apply the boundary operator to a degree-`p` chain.
pub fn boundary_of(cc: &ChainComplexData, c: &Cochain) -> Cochain {
    let p = c.degree;
    let w = c.coeff.num_generators();
    if p == 0 {
        return Cochain::zero(0, 0, c.coeff.clone());
    }
    let n_out = cc.n_cells(p - 1);
    let mut out = Cochain::zero(n_out, p - 1, c.coeff.clone());
    let b = &cc.boundaries[p];
    for cell in 0..cc.n_cells(p) {
        for &(face, s) in b.column(cell) {
            let s = BigInt::from(s);
            for t in 0..w {
                let add = &c.values[cell * w + t] * &s;
                out.values[face as usize * w + t] += add;
            }
        }
    }
    out.normalize();
    out
}

/// The matrix of a sparse integer cell map tensored with the identity of the
/// coefficient presentation (block expansion by the generator count).
fn expand_with_coeff(m: &SparseIntMatrix, w: usize) -> IntMatrix {
    let mut out = IntMatrix::zeros(m.rows() * w, m.cols() * w);
    for j in 0..m.cols() {
        for &(i, v) in m.column(j) {
            for t in 0..w {
                out[(i as usize * w + t, j * w + t)] = BigInt::from(v);
            }
        }
    }
    out
}

/// Relation lattice of `G^{n}` in the free cover `Z^{n*w}`.
fn relation_block(coeff: &FGAbGroup, n: usize) -> IntMatrix {
    let w = coeff.num_generators();
    let r1 = relations(coeff);
    let mut cols = Vec::new();
    for cell in 0..n {
        for j in 0..r1.cols() {
            let mut col = vec![BigInt::zero(); n * w];
            for i in 0..w {
                col[cell * w + i] = r1[(i, j)].clone();
            }
            cols.push(col);
        }
    }
    IntMatrix::from_columns(n * w, &cols)
}

/// Cohomology (or homology) presented with representative cocycles.
#[derive(Clone, Debug)]
pub struct CellHomologyBasis {
    pub degree: usize,
    pub coeff: FGAbGroup,
    pub group: FGAbGroup,
    pub reps: Vec<Cochain>,
    pub pres: SubquotientPresentation,
}

impl CellHomologyBasis {
    /// Generator coordinates of a cocycle's class; `None` when the vector is
    /// not a cocycle (i.e. not in the numerator lattice).
    pub fn class_of(&self, c: &Cochain) -> Option<Vec<BigInt>> {
        assert_eq!(c.degree, self.degree);
        assert_eq!(c.coeff, self.coeff);
        self.pres.class_of(&c.values)
    }

    pub fn is_zero_class(&self, c: &Cochain) -> Option<bool> {
        self.class_of(c).map(|v| v.iter().all(Zero::is_zero))
    }

    pub fn cochain_from_coords(&self, coords: &[BigInt]) -> Cochain {
        let v = self.pres.vector_from_coords(coords);
        Cochain::from_values(self.degree, self.coeff.clone(), v)
    }
}

/// `H^p` of the cellular cochain complex with coefficients in `G`, computed
/// as a subquotient of the free cover of `Hom(C_p, G)`.
pub fn cohomology_basis(cc: &ChainComplexData, coeff: &FGAbGroup, p: usize) -> CellHomologyBasis {
    let w = coeff.num_generators();
    let n_p = cc.n_cells(p);
    let ambient = n_p * w;

    let numerator = if p < cc.dim() {
        let delta = expand_with_coeff(&cc.coboundary(p), w);
        let rel_next = relation_block(coeff, cc.n_cells(p + 1));
        preimage_of_span(&delta, &rel_next)
    } else {
        IntMatrix::identity(ambient)
    };
    let denominator = {
        let rel_here = relation_block(coeff, n_p);
        if p == 0 {
            rel_here
        } else {
            let delta_prev = expand_with_coeff(&cc.coboundary(p - 1), w);
            delta_prev.hstack(&rel_here)
        }
    };
    let sub = Subquotient::new(ambient, numerator, denominator);
    let pres = subquotient_group(&sub).expect("coboundaries are cocycles");
    let reps = (0..pres.group.num_generators())
        .map(|j| Cochain::from_values(p, coeff.clone(), pres.reps.column(j)))
        .collect();
    CellHomologyBasis { degree: p, coeff: coeff.clone(), group: pres.group.clone(), reps, pres }
}

/// `H_p` of the cellular chain complex with coefficients in `G`.
pub fn homology_basis(cc: &ChainComplexData, coeff: &FGAbGroup, p: usize) -> CellHomologyBasis {
    let w = coeff.num_generators();
    let n_p = cc.n_cells(p);
    let ambient = n_p * w;

    let numerator = if p == 0 {
        IntMatrix::identity(ambient)
    } else {
        let bdry = expand_with_coeff(&cc.boundary(p), w);
        let rel_prev = relation_block(coeff, cc.n_cells(p - 1));
        preimage_of_span(&bdry, &rel_prev)
    };
    let denominator = {
        let rel_here = relation_block(coeff, n_p);
        if p + 1 > cc.dim() {
            rel_here
        } else {
            let bdry_next = expand_with_coeff(&cc.boundary(p + 1), w);
            bdry_next.hstack(&rel_here)
        }
    };
    let sub = Subquotient::new(ambient, numerator, denominator);
    let pres = subquotient_group(&sub).expect("boundaries are cycles");
    let reps = (0..pres.group.num_generators())
        .map(|j| Cochain::from_values(p, coeff.clone(), pres.reps.column(j)))
        .collect();
    CellHomologyBasis { degree: p, coeff: coeff.clone(), group: pres.group.clone(), reps, pres }
}

/// Rank and invariant factors of every boundary matrix, for the fast
/// cohomology route.
#[derive(Clone, Debug)]
pub struct BoundaryAnalysis {
    /// per dimension d: (rank of boundary_d, its invariant factors != 1)
    pub data: Vec<(usize, Vec<BigInt>)>,
    pub n_cells: Vec<usize>,
}

pub fn analyze_boundaries(cc: &ChainComplexData) -> BoundaryAnalysis {
    let mut data = Vec::with_capacity(cc.dim() + 2);
    for d in 0..=cc.dim() + 1 {
        let b = cc.boundary(d);
        let (rank, factors) = sparse_invariant_factors(&b);
        let one = BigInt::from(1);
        data.push((rank, factors.into_iter().filter(|f| f != &one).collect()));
    }
    BoundaryAnalysis { data, n_cells: (0..=cc.dim()).map(|d| cc.n_cells(d)).collect() }
}

impl BoundaryAnalysis {
    fn rank(&self, d: usize) -> usize {
        self.data.get(d).map_or(0, |x| x.0)
    }

    fn torsion(&self, d: usize) -> &[BigInt] {
        self.data.get(d).map_or(&[], |x| x.1.as_slice())
    }

    /// Betti number of `H^p(-;Z)` (equals that of `H_p`).
    pub fn betti(&self, p: usize) -> usize {
        let n = self.n_cells.get(p).copied().unwrap_or(0);
        n - self.rank(p) - self.rank(p + 1)
    }

    /// `H^p(-;Z)` = free part plus the torsion of the degree-`p` boundary.
    pub fn cohomology_z(&self, p: usize) -> FGAbGroup {
        if p >= self.n_cells.len() {
            return FGAbGroup::trivial();
        }
        let orders = self
            .torsion(p)
            .iter()
            .cloned()
            .chain(std::iter::repeat(BigInt::zero()).take(self.betti(p)));
        FGAbGroup::from_cyclic_orders(orders)
    }

    /// `H_p(-;Z)` = free part plus the torsion of the degree-`p+1` boundary.
    pub fn homology_z(&self, p: usize) -> FGAbGroup {
        if p >= self.n_cells.len() {
            return FGAbGroup::trivial();
        }
        let orders = self
            .torsion(p + 1)
            .iter()
            .cloned()
            .chain(std::iter::repeat(BigInt::zero()).take(self.betti(p)));
        FGAbGroup::from_cyclic_orders(orders)
    }

    /// `H^p(-;Z/k)` via the universal coefficient decomposition.
    pub fn cohomology_mod(&self, p: usize, k: &BigInt) -> FGAbGroup {
        if p >= self.n_cells.len() {
            return FGAbGroup::trivial();
        }
        let mut orders: Vec<BigInt> = Vec::new();
        orders.extend(std::iter::repeat(k.clone()).take(self.betti(p)));
        for d in self.torsion(p) {
            orders.push(d.gcd(k));
        }
        for d in self.torsion(p + 1) {
            orders.push(d.gcd(k));
        }
        FGAbGroup::from_cyclic_orders(orders)
    }

    /// `H^p(-;G)` componentwise over the presentation of `G`.
    pub fn cohomology_with(&self, p: usize, coeff: &FGAbGroup) -> FGAbGroup {
        let mut acc = FGAbGroup::trivial();
        for d in coeff.generator_orders() {
            let piece = if d.is_zero() {
                self.cohomology_z(p)
            } else {
                self.cohomology_mod(p, &d)
            };
            acc = acc.direct_sum(&piece);
        }
        acc
    }
}

/// `H^p(X;G)` without representatives, by the sparse route.
pub fn cohomology(cc: &ChainComplexData, coeff: &FGAbGroup, p: usize) -> FGAbGroup {
    analyze_boundaries(cc).cohomology_with(p, coeff)
}

/// Scalar pairing of a ring-coefficient cochain against a chain:
/// `sum over cells of c(cell) * z(cell)`, reduced by the coefficient order.
pub fn pair_scalar(c: &Cochain, z: &Cochain) -> BigInt {
    assert_eq!(c.degree, z.degree);
    assert_eq!(c.coeff, z.coeff);
    assert_eq!(c.coeff.num_generators(), 1, "scalar pairing needs ring coefficients");
    let mut acc = BigInt::zero();
    for (a, b) in c.values.iter().zip(&z.values) {
        acc += a * b;
    }
    let orders = c.coeff.generator_orders();
    if !orders[0].is_zero() {
        acc = acc.mod_floor(&orders[0]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::SimplicialComplex;

    fn point() -> ChainComplexData {
        SimplicialComplex::from_numbered_top_cells(1, &[vec![0]]).chain_complex()
    }

    #[test]
    fn cohomology_of_point() {
        let cc = point();
        let z = FGAbGroup::free(1);
        assert_eq!(cohomology_basis(&cc, &z, 0).group, FGAbGroup::free(1));
        assert_eq!(cohomology(&cc, &z, 0), FGAbGroup::free(1));
        assert_eq!(cohomology(&cc, &z, 1), FGAbGroup::trivial());
    }

    #[test]
    fn circle_with_mixed_coefficients() {
        let x = SimplicialComplex::from_numbered_top_cells(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]);
        let cc = x.chain_complex();
        let g = FGAbGroup::free(1).direct_sum(&FGAbGroup::cyclic(4));
        let h0 = cohomology_basis(&cc, &g, 0);
        let h1 = cohomology_basis(&cc, &g, 1);
        assert_eq!(h0.group, g);
        assert_eq!(h1.group, g);
        assert_eq!(cohomology(&cc, &g, 0), g);
        assert_eq!(cohomology(&cc, &g, 1), g);
    }

    #[test]
    fn coboundary_and_pairing() {
        let x = SimplicialComplex::from_numbered_top_cells(3, &[vec![0, 1, 2]]);
        let cc = x.chain_complex();
        let z = FGAbGroup::free(1);
        // the indicator cochain of vertex 0
        let c = Cochain::scalar(0, z.clone(), vec![1, 0, 0]);
        let dc = coboundary_of(&cc, &c);
        // edges in lex order: [0,1], [0,2], [1,2]; delta(c)(uv) = c(v) - c(u)
        assert_eq!(
            dc.values,
            vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(0)]
        );
        let ddc = coboundary_of(&cc, &dc);
        assert!(ddc.is_zero());

        let chain = Cochain::scalar(1, z, vec![1, 2, 3]);
        assert_eq!(pair_scalar(&dc, &chain), BigInt::from(-3));
    }
}
