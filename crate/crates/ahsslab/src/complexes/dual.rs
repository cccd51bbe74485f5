//! The dual block decomposition of a closed triangulated manifold.
//!
//! For an n-manifold X with a fundamental cycle, the block dual to an
//! m-simplex s is the union of barycentric (n-m)-simplices whose flag starts
//! at s. Each block is stored as a signed chain of subdivision cells; the
//! sign on a cell is the coefficient, in the subdivided fundamental cycle,
//! of the unique top flag extending the increasing prefix flag of s by the
//! cell's flag. This orients s followed by its dual block like X itself.
//!
//! Incidence numbers between blocks are read off from block-chain
//! boundaries, and validated: interior faces must cancel and each boundary
//! piece must be a signed copy of the corresponding sub-block. Failures are
//! reported as `NotAManifold` (the proxy manifold check, together with the
//! homology comparison done in `validate`).

use super::chain::ChainComplexData;
use super::simplicial::{ComplexError, SimplicialComplex};
use super::subdivision::{barycentric_subdivision, Subdivision};
use crate::abgroup::SparseIntMatrix;
use num_bigint::BigInt;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("not a closed manifold: {0}")]
    NotAManifold(String),
    #[error("an integral dual complex needs an integral orientation")]
    NotOriented,
}

/// Orientation input for the dual decomposition: a +-1 fundamental cycle, or
/// the mod-2 fundamental class of a possibly nonorientable manifold.
#[derive(Clone, Debug)]
pub enum DualOrientation {
    Integral(Vec<i64>),
    Mod2,
}

#[derive(Clone)]
pub struct DualComplex {
    pub n: usize,
    pub source: SimplicialComplex,
    pub sd: Subdivision,
    /// blocks[d][i] is dual to source simplex (n-d, i): a signed chain of
    /// subdivision d-cells. For a mod-2 dual all signs are 1.
    pub blocks: Vec<Vec<Vec<(usize, i64)>>>,
    /// Whether the incidence matrices are valid over Z (true) or only mod 2.
    pub integral: bool,
    cc: ChainComplexData,
}

impl DualComplex {
    pub fn chain_complex(&self) -> &ChainComplexData {
        &self.cc
    }

    pub fn n_blocks(&self, d: usize) -> usize {
        self.blocks.get(d).map_or(0, Vec::len)
    }

    /// The block dual to source simplex (m, i).
    pub fn block_for(&self, m: usize, i: usize) -> &[(usize, i64)] {
        &self.blocks[self.n - m][i]
    }
}

impl std::fmt::Debug for DualComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let counts: Vec<usize> = (0..=self.n).map(|d| self.n_blocks(d)).collect();
        write!(f, "DualComplex(blocks = {counts:?}, integral = {})", self.integral)
    }
}

pub fn dual_block_decomposition(
    x: &SimplicialComplex,
    orientation: &DualOrientation,
) -> Result<DualComplex, DualityError> {
    x.check_closed_pseudomanifold().map_err(|e| match e {
        ComplexError::NotPseudoManifold(msg) => DualityError::NotAManifold(msg),
        other => DualityError::NotAManifold(other.to_string()),
    })?;
    let n = x.dim();
    let integral = matches!(orientation, DualOrientation::Integral(_));
    if let DualOrientation::Integral(signs) = orientation {
        if signs.len() != x.n_cells(n) || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(DualityError::NotAManifold(
                "orientation cycle must assign +-1 to every top cell".into(),
            ));
        }
        let coeffs: Vec<BigInt> = signs.iter().map(|&s| BigInt::from(s)).collect();
        let bd = super::simplicial::boundary_of_chain(x, n, &coeffs);
        if bd.iter().any(|v| !num_traits::Zero::is_zero(v)) {
            return Err(DualityError::NotAManifold("orientation chain is not a cycle".into()));
        }
    }

    let sd = barycentric_subdivision(x);

    // subdivided fundamental cycle
    let sdfc: HashMap<usize, i64> = match orientation {
        DualOrientation::Integral(signs) => {
            let coeffs: Vec<(usize, i64)> =
                signs.iter().enumerate().map(|(i, &s)| (i, s)).collect();
            sd.chain_map(x, n, &coeffs)
        }
        DualOrientation::Mod2 => (0..sd.complex.n_cells(n)).map(|i| (i, 1)).collect(),
    };

    // bucket subdivision cells by the start of their flag
    let mut blocks: Vec<Vec<Vec<(usize, i64)>>> =
        (0..=n).map(|d| vec![Vec::new(); x.n_cells(n - d)]).collect();
    for d in 0..=n {
        let m = n - d;
        for i in 0..sd.complex.n_cells(d) {
            let flag = sd.flag(d, i);
            let (fd, fi) = flag[0];
            if fd != m || flag.last().unwrap().0 != n {
                continue; // not part of a dual block of this dimension
            }
            let sign = if integral {
                let j = top_flag_through(x, &sd, m, fi, d, i);
                match sdfc.get(&j) {
                    Some(&s) => s,
                    None => {
                        return Err(DualityError::NotAManifold(
                            "subdivided fundamental cycle misses a top cell".into(),
                        ))
                    }
                }
            } else {
                1
            };
            blocks[d][fi].push((i, sign));
        }
    }

    // incidence numbers from block-chain boundaries
    let mut boundaries: Vec<SparseIntMatrix> = Vec::with_capacity(n + 1);
    boundaries.push(SparseIntMatrix::zeros(0, blocks[0].len()));
    for b in 1..=n {
        let m = n - b;
        let rows = blocks[b - 1].len(); // duals of (m+1)-simplices
        let sdbd = sd.complex.boundary_sparse(b);
        let mut columns = Vec::with_capacity(blocks[b].len());
        for (sigma, chain) in blocks[b].iter().enumerate() {
            // boundary of the block chain, in subdivision cells
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(cell, s) in chain {
                for &(face, v) in sdbd.column(cell) {
                    let e = acc.entry(face as usize).or_insert(0);
                    *e += s * v as i64;
                    if *e == 0 {
                        acc.remove(&(face as usize));
                    }
                }
            }
            if !integral {
                acc.retain(|_, v| v % 2 != 0);
            }
            // group support by the flag start; solve for one incidence
            // number per coface and verify the whole chain decomposes
            let mut col: Vec<(u32, i64)> = Vec::new();
            let mut seen: BTreeMap<usize, i64> = BTreeMap::new();
            for (&cell, &coeff) in &acc {
                let flag = sd.flag(b - 1, cell);
                let (fd, fi) = flag[0];
                if fd == m {
                    return Err(DualityError::NotAManifold(format!(
                        "interior faces of a dual block do not cancel (source dim {m})"
                    )));
                }
                if fd != m + 1 {
                    return Err(DualityError::NotAManifold(
                        "dual block boundary leaves the expected sub-blocks".into(),
                    ));
                }
                seen.entry(fi).or_insert(coeff);
            }
            for (&tau, &first_coeff) in &seen {
                let sub = &blocks[b - 1][tau];
                // incidence k: coefficient ratio on the first shared cell
                let (c0, s0) = sub
                    .iter()
                    .find(|(c, _)| acc.contains_key(c))
                    .copied()
                    .ok_or_else(|| {
                        DualityError::NotAManifold("empty boundary piece".into())
                    })?;
                let k = acc[&c0] / s0;
                let _ = first_coeff;
                if integral {
                    if k * s0 != acc[&c0] || (k != 1 && k != -1) {
                        return Err(DualityError::NotAManifold(
                            "block incidence is not a unit".into(),
                        ));
                    }
                    for &(c, s) in sub {
                        if acc.get(&c).copied().unwrap_or(0) != k * s {
                            return Err(DualityError::NotAManifold(
                                "boundary piece is not a signed sub-block".into(),
                            ));
                        }
                    }
                    col.push((tau as u32, k));
                } else {
                    for &(c, _) in sub {
                        if acc.get(&c).copied().unwrap_or(0) % 2 == 0 {
                            return Err(DualityError::NotAManifold(
                                "mod-2 boundary piece is not a sub-block".into(),
                            ));
                        }
                    }
                    col.push((tau as u32, 1));
                }
            }
            // every cell of the boundary must be covered by the pieces
            let covered: usize = col
                .iter()
                .map(|&(tau, _)| blocks[b - 1][tau as usize].len())
                .sum();
            if covered != acc.len() {
                return Err(DualityError::NotAManifold(
                    "dual block boundary does not decompose into sub-blocks".into(),
                ));
            }
            let _ = sigma;
            columns.push(col);
        }
        boundaries.push(SparseIntMatrix::from_sparse_columns(rows, columns));
    }

    let n_cells: Vec<usize> = (0..=n).map(|d| blocks[d].len()).collect();
    let cc = ChainComplexData::new(n_cells, boundaries);

    let dual = DualComplex { n, source: x.clone(), sd, blocks, integral, cc };
    validate(&dual, x)?;
    Ok(dual)
}

/// The subdivision top cell given by the increasing prefix flag of source
/// simplex (m, sigma) followed by the flag of block cell (d, cell).
fn top_flag_through(
    x: &SimplicialComplex,
    sd: &Subdivision,
    m: usize,
    sigma: usize,
    d: usize,
    cell: usize,
) -> usize {
    let verts_sigma = x.simplex(m, sigma);
    let mut vertices: Vec<u32> = Vec::with_capacity(m + d + 1);
    let mut prefix: Vec<u32> = Vec::with_capacity(m);
    for k in 0..m {
        prefix.push(verts_sigma[k]);
        let idx = x.index_of(&prefix).expect("prefix faces exist");
        vertices.push(sd.vertex_for(k, idx));
    }
    vertices.extend_from_slice(sd.complex.simplex(d, cell));
    sd.complex
        .index_of(&vertices)
        .expect("prefix flag joined to a block cell is a top flag")
}

/// Duality smoke test: dual block homology must match simplicial cohomology
/// (over Z for integral duals, mod 2 otherwise).
fn validate(dual: &DualComplex, x: &SimplicialComplex) -> Result<(), DualityError> {
    let n = dual.n;
    if dual.integral && !dual.cc.check_boundary_squares_to_zero() {
        return Err(DualityError::NotAManifold("dual boundary does not square to zero".into()));
    }
    if !dual.integral {
        for d in 2..=n {
            if !composition_even(&dual.cc.boundary(d - 1), &dual.cc.boundary(d)) {
                return Err(DualityError::NotAManifold(
                    "dual boundary does not square to zero mod 2".into(),
                ));
            }
        }
    }
    if dual.integral {
        let dual_an = super::chain::analyze_boundaries(dual.chain_complex());
        let simp_an = super::chain::analyze_boundaries(&x.chain_complex());
        for p in 0..=n {
            let hd = dual_an.homology_z(n - p);
            let hs = simp_an.cohomology_z(p);
            if hd != hs {
                return Err(DualityError::NotAManifold(format!(
                    "dual homology in degree {} is {hd}, simplicial cohomology in degree {p} is {hs}",
                    n - p
                )));
            }
        }
    } else {
        // mod-2 matrices: compare GF(2) Betti numbers
        let scc = x.chain_complex();
        for p in 0..=n {
            let hd = super::chain::mod2_dimension(dual.chain_complex(), n - p);
            let hs = super::chain::mod2_dimension(&scc, p);
            if hd != hs {
                return Err(DualityError::NotAManifold(format!(
                    "mod-2 dual homology in degree {} has dim {hd}, simplicial has {hs}",
                    n - p
                )));
            }
        }
    }
    Ok(())
}

fn composition_even(a: &SparseIntMatrix, b: &SparseIntMatrix) -> bool {
    for j in 0..b.cols() {
        let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
        for &(k, v) in b.column(j) {
            for &(i, w) in a.column(k as usize) {
                *acc.entry(i).or_insert(0) += v * w;
            }
        }
        if acc.values().any(|&v| v % 2 != 0) {
            return false;
        }
    }
    true
}
