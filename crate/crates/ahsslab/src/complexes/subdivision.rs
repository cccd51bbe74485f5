//! Barycentric subdivision, the subdivision chain map, and the last-vertex
//! approximation back to the source complex.

use super::simplicial::{nonempty_subsets, SimplicialComplex};
use std::collections::{BTreeSet, HashMap};

/// The subdivision of a complex, with bookkeeping connecting its cells back
/// to the source.
///
/// Vertices of the subdivision are the simplices of the source, ordered by
/// (dimension, index); a k-simplex is a flag of k+1 nested source simplices.
/// Because vertices are ordered by dimension, the stored (sorted) vertex
/// order of every cell coincides with its flag order.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// subdivision vertex -> source simplex (dim, index)
    pub vertex_source: Vec<(usize, usize)>,
    /// source simplex (dim, index) -> subdivision vertex
    vertex_of: HashMap<(usize, usize), u32>,
}

pub fn barycentric_subdivision(x: &SimplicialComplex) -> Subdivision {
    // Vertices: all source simplices in (dim, index) order.
    let mut vertex_source = Vec::new();
    let mut vertex_of = HashMap::new();
    let mut labels = Vec::new();
    for d in 0..=x.dim() {
        for i in 0..x.n_cells(d) {
            let v = vertex_source.len() as u32;
            vertex_source.push((d, i));
            vertex_of.insert((d, i), v);
            let name: Vec<&str> = x
                .simplex(d, i)
                .iter()
                .map(|&k| x.labels()[k as usize].as_str())
                .collect();
            labels.push(name.join("."));
        }
    }
    // Guard against pathological label collisions from user-supplied names.
    {
        let mut seen = HashMap::new();
        for (i, l) in labels.clone().into_iter().enumerate() {
            if seen.insert(l, i).is_some() {
                for (k, l) in labels.iter_mut().enumerate() {
                    *l = format!("{l}#{k}");
                }
                break;
            }
        }
    }

    // Cells: all chains of nonempty faces inside each top cell.
    let mut per_dim: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); x.dim() + 1];
    for d in 0..=x.dim() {
        'cells: for i in 0..x.n_cells(d) {
            // only maximal cells seed the enumeration
            let s = x.simplex(d, i);
            if d < x.dim() {
                for t in x.simplices_in_dim(d + 1) {
                    if super::simplicial::is_subset(s, t) {
                        continue 'cells;
                    }
                }
            }
            let subsets = nonempty_subsets(s);
            // flags of subsets, built by extending chains
            let mut chains: Vec<Vec<usize>> = (0..subsets.len()).map(|k| vec![k]).collect();
            while let Some(chain) = chains.pop() {
                let verts: Vec<u32> = chain
                    .iter()
                    .map(|&k| {
                        let sub = &subsets[k];
                        let idx = x.index_of(sub).expect("faces of a cell are present");
                        vertex_of[&(sub.len() - 1, idx)]
                    })
                    .collect();
                let mut sorted = verts.clone();
                sorted.sort_unstable();
                per_dim[chain.len() - 1].insert(sorted);
                let last = &subsets[*chain.last().unwrap()];
                for (k, sub) in subsets.iter().enumerate() {
                    if sub.len() > last.len()
                        && super::simplicial::is_subset(last, sub)
                    {
                        let mut next = chain.clone();
                        next.push(k);
                        chains.push(next);
                    }
                }
            }
        }
    }

    let complex = SimplicialComplex::from_simplices(
        labels,
        per_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
    )
    .expect("subdivision is closed under faces");
    Subdivision { complex, vertex_source, vertex_of }
}

impl Subdivision {
    /// The flag of a subdivision cell: nested source simplices in increasing
    /// dimension order.
    pub fn flag(&self, d: usize, i: usize) -> Vec<(usize, usize)> {
        self.complex
            .simplex(d, i)
            .iter()
            .map(|&v| self.vertex_source[v as usize])
            .collect()
    }

    /// The carrier of a subdivision cell: the largest source simplex in its
    /// flag.
    pub fn carrier(&self, d: usize, i: usize) -> (usize, usize) {
        *self
            .flag(d, i)
            .last()
            .expect("cells are nonempty")
    }

    pub fn vertex_for(&self, d: usize, i: usize) -> u32 {
        self.vertex_of[&(d, i)]
    }

    /// The subdivision chain map on a single source `d`-cell: a signed sum
    /// over all full flags inside it, the sign being that of the permutation
    /// in which the flag accumulates the cell's vertices.
    pub fn chain_map_cell(&self, x: &SimplicialComplex, d: usize, i: usize) -> Vec<(usize, i64)> {
        let verts = x.simplex(d, i);
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..=d).collect();
        permute_all(&mut perm, 0, &mut |p| {
            let mut acc: Vec<u32> = Vec::with_capacity(d + 1);
            let mut flag_vertices = Vec::with_capacity(d + 1);
            for &k in p.iter() {
                acc.push(verts[k]);
                acc.sort_unstable();
                let idx = x.index_of(&acc).expect("faces present");
                flag_vertices.push(self.vertex_of[&(acc.len() - 1, idx)]);
            }
            let cell = self
                .complex
                .index_of(&flag_vertices)
                .expect("flag is a subdivision cell");
            out.push((cell, perm_sign(p)));
        });
        out.sort_by_key(|e| e.0);
        out
    }

    /// Push a signed source chain through the subdivision chain map.
    pub fn chain_map(
        &self,
        x: &SimplicialComplex,
        d: usize,
        coeffs: &[(usize, i64)],
    ) -> HashMap<usize, i64> {
        let mut out = HashMap::new();
        for &(i, c) in coeffs {
            if c == 0 {
                continue;
            }
            for (cell, s) in self.chain_map_cell(x, d, i) {
                let e = out.entry(cell).or_insert(0);
                *e += c * s;
                if *e == 0 {
                    out.remove(&cell);
                }
            }
        }
        out
    }

    /// The last-vertex simplicial approximation of the identity, applied to
    /// one subdivision cell: each flag element maps to its largest vertex.
    /// Degenerate images give zero; otherwise the image is a source cell
    /// taken with sign +1 (the vertex order is preserved).
    pub fn last_vertex_image(
        &self,
        x: &SimplicialComplex,
        d: usize,
        i: usize,
    ) -> Option<(usize, i64)> {
        let mut img: Vec<u32> = Vec::with_capacity(d + 1);
        for (fd, fi) in self.flag(d, i) {
            let v = *x.simplex(fd, fi).last().expect("nonempty simplex");
            img.push(v);
        }
        for w in img.windows(2) {
            if w[0] == w[1] {
                return None;
            }
            debug_assert!(w[0] < w[1], "last-vertex images are nondecreasing");
        }
        x.index_of(&img).map(|idx| (idx, 1))
    }
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut sign = 1i64;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn permute_all(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute_all(p, k + 1, f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdivided_edge_is_a_path() {
        let x = SimplicialComplex::from_numbered_top_cells(2, &[vec![0, 1]]);
        let sd = barycentric_subdivision(&x);
        assert_eq!(sd.complex.n_cells(0), 3);
        assert_eq!(sd.complex.n_cells(1), 2);
    }

    #[test]
    fn subdivided_triangle_counts() {
        let x = SimplicialComplex::from_numbered_top_cells(3, &[vec![0, 1, 2]]);
        let sd = barycentric_subdivision(&x);
        assert_eq!(sd.complex.n_cells(0), 7);
        assert_eq!(sd.complex.n_cells(1), 12);
        assert_eq!(sd.complex.n_cells(2), 6);
        assert_eq!(sd.complex.euler_characteristic(), x.euler_characteristic());
    }

    #[test]
    fn chain_map_commutes_with_boundary() {
        // sd is a chain map: boundary(sd(cell)) = sd(boundary(cell))
        let x = SimplicialComplex::from_numbered_top_cells(4, &[vec![0, 1, 2, 3]]);
        let sd = barycentric_subdivision(&x);
        let d = 3;
        let top = sd.chain_map_cell(&x, d, 0);
        // boundary of the image chain
        let b = sd.complex.boundary_sparse(d);
        let mut lhs: HashMap<usize, i64> = HashMap::new();
        for &(cell, s) in &top {
            for &(face, v) in b.column(cell) {
                let e = lhs.entry(face as usize).or_insert(0);
                *e += s * v as i64;
                if *e == 0 {
                    lhs.remove(&(face as usize));
                }
            }
        }
        // image of the boundary chain
        let bx = x.boundary_sparse(d);
        let coeffs: Vec<(usize, i64)> = bx
            .column(0)
            .iter()
            .map(|&(i, v)| (i as usize, v as i64))
            .collect();
        let rhs = sd.chain_map(&x, d - 1, &coeffs);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn last_vertex_is_a_retraction_on_top_cells() {
        // the full flag through increasing prefixes maps to the cell itself
        let x = SimplicialComplex::from_numbered_top_cells(3, &[vec![0, 1, 2]]);
        let sd = barycentric_subdivision(&x);
        let mut hits = 0;
        for i in 0..sd.complex.n_cells(2) {
            if let Some((img, s)) = sd.last_vertex_image(&x, 2, i) {
                assert_eq!(img, 0);
                assert_eq!(s, 1);
                hits += 1;
            }
        }
        // exactly one flag survives: the one with nested maxima
        assert_eq!(hits, 1);
    }
}
