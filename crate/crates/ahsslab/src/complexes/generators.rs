//! Bundled triangulations and combinatorial constructions.
//!
//! Small surfaces are stored explicitly. The projective spaces in higher
//! dimension are generated: antipodal quotient of the barycentric
//! subdivision of a cross-polytope boundary, then reduced by admissible edge
//! contractions. Product spaces use the staircase triangulation on the
//! lexicographic vertex order.

use super::simplicial::SimplicialComplex;
use super::simplify::simplify;
use super::subdivision::barycentric_subdivision;
use std::collections::BTreeSet;

pub fn point() -> SimplicialComplex {
    SimplicialComplex::from_numbered_top_cells(1, &[vec![0]])
}

/// A circle with `k >= 3` vertices.
pub fn circle(k: usize) -> SimplicialComplex {
    assert!(k >= 3);
    let mut cells: Vec<Vec<u32>> = (0..k - 1).map(|i| vec![i as u32, i as u32 + 1]).collect();
    cells.push(vec![0, k as u32 - 1]);
    SimplicialComplex::from_numbered_top_cells(k, &cells)
}

/// The n-sphere as the boundary of an (n+1)-simplex.
pub fn sphere(n: usize) -> SimplicialComplex {
    let all: Vec<u32> = (0..=n as u32 + 1).collect();
    let cells: Vec<Vec<u32>> = (0..all.len())
        .map(|k| {
            all.iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect();
    SimplicialComplex::from_numbered_top_cells(n + 2, &cells)
}

/// The 7-vertex torus: faces {i, i+1, i+3} and {i, i+2, i+3} mod 7.
pub fn csaszar_torus() -> SimplicialComplex {
    let mut cells = Vec::new();
    for i in 0..7u32 {
        cells.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        cells.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    SimplicialComplex::from_numbered_top_cells(7, &cells)
}

/// The 6-vertex projective plane (antipodal quotient of the icosahedron).
pub fn rp2() -> SimplicialComplex {
    let cells: Vec<Vec<u32>> = [
        [0, 1, 4], [0, 1, 5], [0, 2, 3], [0, 2, 5], [0, 3, 4],
        [1, 2, 3], [1, 2, 4], [1, 3, 5], [2, 4, 5], [3, 4, 5],
    ]
    .iter()
    .map(|c| c.to_vec())
    .collect();
    SimplicialComplex::from_numbered_top_cells(6, &cells)
}

/// A grid-quotient surface: `m x n` squares, the horizontal direction
/// closing up with a flip (Klein bottle) or without (torus).
pub fn grid_surface(m: usize, n: usize, flip: bool) -> SimplicialComplex {
    assert!(m >= 3 && n >= 3);
    let v = |i: usize, j: usize| -> u32 {
        let (i, j) = if i == m {
            if flip {
                (0, (n - j % n) % n)
            } else {
                (0, j % n)
            }
        } else {
            (i, j % n)
        };
        (i * n + j) as u32
    };
    let mut cells = Vec::new();
    for i in 0..m {
        for j in 0..n {
            cells.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            cells.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    SimplicialComplex::from_numbered_top_cells(m * n, &cells)
}

pub fn torus_grid() -> SimplicialComplex {
    grid_surface(3, 3, false)
}

pub fn klein_bottle() -> SimplicialComplex {
    grid_surface(4, 3, true)
}

/// Boundary of the k-dimensional cross-polytope: a centrally symmetric
/// (k-1)-sphere on vertices 2i (= +e_i) and 2i+1 (= -e_i).
pub fn cross_polytope_boundary(k: usize) -> SimplicialComplex {
    let mut cells = Vec::new();
    for signs in 0..(1u32 << k) {
        let cell: Vec<u32> = (0..k as u32)
            .map(|i| 2 * i + ((signs >> i) & 1))
            .collect();
        cells.push(cell);
    }
    SimplicialComplex::from_numbered_top_cells(2 * k, &cells)
}

/// Quotient of a complex by a fixed-point-free simplicial involution given
/// on vertices. Panics if a simplex would degenerate.
pub fn involution_quotient(
    x: &SimplicialComplex,
    invol: impl Fn(u32) -> u32,
) -> SimplicialComplex {
    let n0 = x.n_cells(0);
    // orbit representative = smaller vertex index; compact the labels
    let mut rep = Vec::with_capacity(n0);
    let mut new_labels = Vec::new();
    let mut new_index = vec![u32::MAX; n0];
    for i in 0..n0 {
        let v = x.simplex(0, i)[0];
        let w = invol(v);
        assert_ne!(v, w, "involution has a fixed vertex");
        let r = v.min(w);
        rep.push(r);
        if r == v {
            new_index[v as usize] = new_labels.len() as u32;
            new_labels.push(x.labels()[v as usize].clone());
        }
    }
    let vertex_pos: std::collections::HashMap<u32, usize> = (0..n0)
        .map(|i| (x.simplex(0, i)[0], i))
        .collect();
    let mut per_dim: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); x.dim() + 1];
    for d in 0..=x.dim() {
        for s in x.simplices_in_dim(d) {
            let mut img: Vec<u32> = s
                .iter()
                .map(|&v| {
                    let r = rep[vertex_pos[&v]];
                    new_index[r as usize]
                })
                .collect();
            img.sort_unstable();
            for w in img.windows(2) {
                assert!(w[0] != w[1], "involution identifies vertices of a simplex");
            }
            per_dim[d].insert(img);
        }
        // a free action identifies cells in pairs
        assert_eq!(per_dim[d].len() * 2, x.n_cells(d), "quotient is not two-to-one in dim {d}");
    }
    SimplicialComplex::from_simplices(
        new_labels,
        per_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
    )
    .expect("quotient of a closed set is closed")
}

/// Real projective n-space: antipodal quotient of the subdivided
/// cross-polytope boundary, reduced by admissible edge contractions.
pub fn projective_space(n: usize) -> SimplicialComplex {
    let sphere = cross_polytope_boundary(n + 1);
    let sd = barycentric_subdivision(&sphere);
    // the antipodal map on subdivision vertices: negate the source simplex
    let invol = |v: u32| -> u32 {
        let (d, i) = sd.vertex_source[v as usize];
        let neg: Vec<u32> = {
            let mut t: Vec<u32> = sphere.simplex(d, i).iter().map(|&w| w ^ 1).collect();
            t.sort_unstable();
            t
        };
        let j = sphere.index_of(&neg).expect("negation is simplicial");
        sd.vertex_for(d, j)
    };
    let quotient = involution_quotient(&sd.complex, invol);
    simplify(&quotient)
}

/// Staircase triangulation of the product of two complexes, on the
/// lexicographic vertex order (pairs (a, b) with a running slowest).
pub fn product(x: &SimplicialComplex, y: &SimplicialComplex) -> SimplicialComplex {
    let ny = y.n_cells(0);
    // vertex universes may be larger than the vertex sets; use positions
    let xs: Vec<u32> = x.simplices_in_dim(0).iter().map(|s| s[0]).collect();
    let ys: Vec<u32> = y.simplices_in_dim(0).iter().map(|s| s[0]).collect();
    let xpos: std::collections::HashMap<u32, usize> =
        xs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let ypos: std::collections::HashMap<u32, usize> =
        ys.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut labels = Vec::with_capacity(xs.len() * ys.len());
    for &a in &xs {
        for &b in &ys {
            labels.push(format!(
                "{},{}",
                x.labels()[a as usize],
                y.labels()[b as usize]
            ));
        }
    }
    let pair = |a: u32, b: u32| -> u32 { (xpos[&a] * ny + ypos[&b]) as u32 };

    let mut cells = Vec::new();
    let dx = x.dim();
    let dy = y.dim();
    for sigma in top_cells(x, dx) {
        for tau in top_cells(y, dy) {
            let p = sigma.len() - 1;
            let q = tau.len() - 1;
            // staircase paths: interleavings of p x-steps and q y-steps
            let mut stack = vec![(0usize, 0usize, vec![pair(sigma[0], tau[0])])];
            while let Some((i, j, path)) = stack.pop() {
                if i == p && j == q {
                    cells.push(path);
                    continue;
                }
                if i < p {
                    let mut next = path.clone();
                    next.push(pair(sigma[i + 1], tau[j]));
                    stack.push((i + 1, j, next));
                }
                if j < q {
                    let mut next = path.clone();
                    next.push(pair(sigma[i], tau[j + 1]));
                    stack.push((i, j + 1, next));
                }
            }
        }
    }
    SimplicialComplex::from_top_cells(labels, &cells).expect("product cells are simplices")
}

fn top_cells(x: &SimplicialComplex, d: usize) -> Vec<Vec<u32>> {
    // cells of the top dimension; for the product construction the factors
    // are assumed pure (all bundled factors are)
    x.simplices_in_dim(d).to_vec()
}

/// The subcomplex `X x {b}` of a product built by [`product`], as top cells
/// in the product's vertex numbering.
pub fn product_factor_cells(
    x: &SimplicialComplex,
    y: &SimplicialComplex,
    b: u32,
) -> Vec<Vec<u32>> {
    let ny = y.n_cells(0);
    let ys: Vec<u32> = y.simplices_in_dim(0).iter().map(|s| s[0]).collect();
    let ypos: std::collections::HashMap<u32, usize> =
        ys.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let xs: Vec<u32> = x.simplices_in_dim(0).iter().map(|s| s[0]).collect();
    let xpos: std::collections::HashMap<u32, usize> =
        xs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let jb = ypos[&b];
    x.simplices_in_dim(x.dim())
        .iter()
        .map(|s| s.iter().map(|&a| (xpos[&a] * ny + jb) as u32).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csaszar_counts() {
        let t = csaszar_torus();
        assert_eq!((t.n_cells(0), t.n_cells(1), t.n_cells(2)), (7, 21, 14));
        assert_eq!(t.euler_characteristic(), 0);
        assert!(t.check_closed_pseudomanifold().is_ok());
    }

    #[test]
    fn rp2_counts() {
        let x = rp2();
        assert_eq!((x.n_cells(0), x.n_cells(1), x.n_cells(2)), (6, 15, 10));
        assert_eq!(x.euler_characteristic(), 1);
        assert!(x.check_closed_pseudomanifold().is_ok());
    }

    #[test]
    fn grid_surfaces_are_closed() {
        let t = torus_grid();
        assert_eq!(t.euler_characteristic(), 0);
        assert!(t.check_closed_pseudomanifold().is_ok());
        let k = klein_bottle();
        assert_eq!(k.euler_characteristic(), 0);
        assert!(k.check_closed_pseudomanifold().is_ok());
    }

    #[test]
    fn cross_polytope_is_a_sphere() {
        let s = cross_polytope_boundary(3);
        assert_eq!((s.n_cells(0), s.n_cells(1), s.n_cells(2)), (6, 12, 8));
        assert_eq!(s.euler_characteristic(), 2);
    }

    #[test]
    fn product_torus() {
        let t = product(&circle(3), &circle(3));
        assert_eq!(t.n_cells(0), 9);
        assert_eq!(t.euler_characteristic(), 0);
        assert!(t.check_closed_pseudomanifold().is_ok());
    }
}
