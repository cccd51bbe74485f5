//! Reduction of a triangulation by admissible edge contractions.
//!
//! An edge uv may be contracted when lk(u) /\ lk(v) = lk(uv); for a
//! combinatorial manifold this preserves the PL type. The generated
//! projective-space triangulations are run through this to get from the
//! barycentric-quotient scale down to a handful of vertices.

use super::simplicial::SimplicialComplex;
use std::collections::{BTreeMap, BTreeSet};

struct Work {
    /// every simplex, all dimensions
    cells: BTreeSet<Vec<u32>>,
    /// vertex -> cells containing it
    incident: BTreeMap<u32, BTreeSet<Vec<u32>>>,
}

impl Work {
    fn new(x: &SimplicialComplex) -> Self {
        let mut cells = BTreeSet::new();
        let mut incident: BTreeMap<u32, BTreeSet<Vec<u32>>> = BTreeMap::new();
        for d in 0..=x.dim() {
            for s in x.simplices_in_dim(d) {
                cells.insert(s.clone());
                for &v in s {
                    incident.entry(v).or_default().insert(s.clone());
                }
            }
        }
        Work { cells, incident }
    }

    fn link_condition(&self, u: u32, v: u32) -> bool {
        // every cell in lk(u) /\ lk(v) must also be in lk(uv)
        let Some(iu) = self.incident.get(&u) else { return false };
        for cell in iu {
            if cell.len() == 1 || cell.contains(&v) {
                continue;
            }
            let tau: Vec<u32> = cell.iter().copied().filter(|&w| w != u).collect();
            // tau in lk(v)?
            let mut with_v = tau.clone();
            with_v.push(v);
            with_v.sort_unstable();
            if !self.cells.contains(&with_v) {
                continue;
            }
            // then tau + {u, v} must be a cell
            let mut with_uv = with_v;
            with_uv.push(u);
            with_uv.sort_unstable();
            if !self.cells.contains(&with_uv) {
                return false;
            }
        }
        true
    }

    fn contract(&mut self, u: u32, v: u32) {
        let old: Vec<Vec<u32>> = self.incident[&v].iter().cloned().collect();
        for cell in old {
            self.remove(&cell);
            if cell.contains(&u) {
                continue; // image is the existing face without v
            }
            let mut img: Vec<u32> = cell.iter().map(|&w| if w == v { u } else { w }).collect();
            img.sort_unstable();
            self.insert(img);
        }
        self.incident.remove(&v);
    }

    fn remove(&mut self, cell: &[u32]) {
        self.cells.remove(cell);
        for &w in cell {
            if let Some(set) = self.incident.get_mut(&w) {
                set.remove(cell);
            }
        }
    }

    fn insert(&mut self, cell: Vec<u32>) {
        for &w in &cell {
            self.incident.entry(w).or_default().insert(cell.clone());
        }
        self.cells.insert(cell);
    }

    fn neighbors(&self, u: u32) -> Vec<u32> {
        match self.incident.get(&u) {
            Some(set) => {
                let mut out = BTreeSet::new();
                for cell in set {
                    for &w in cell {
                        if w != u {
                            out.insert(w);
                        }
                    }
                }
                out.into_iter().collect()
            }
            None => Vec::new(),
        }
    }
}

/// Greedy admissible edge contraction, deterministic: the lexicographically
/// first contractible edge is contracted until no edge is contractible.
pub fn simplify(x: &SimplicialComplex) -> SimplicialComplex {
    let mut work = Work::new(x);
    let mut queue: BTreeSet<(u32, u32)> = work
        .cells
        .iter()
        .filter(|c| c.len() == 2)
        .map(|c| (c[0], c[1]))
        .collect();
    while let Some(&(u, v)) = queue.iter().next() {
        queue.remove(&(u, v));
        if !work.cells.contains(&vec![u, v]) {
            continue;
        }
        if !work.link_condition(u, v) {
            continue;
        }
        work.contract(u, v);
        // contraction changes links around u; requeue nearby edges
        for w in work.neighbors(u) {
            let e = if u < w { (u, w) } else { (w, u) };
            queue.insert(e);
            for z in work.neighbors(w) {
                let e = if w < z { (w, z) } else { (z, w) };
                queue.insert(e);
            }
        }
    }

    // compact the vertex set, preserving the original order
    let used: Vec<u32> = work.incident.keys().copied().collect();
    let pos: BTreeMap<u32, u32> = used
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32))
        .collect();
    let labels: Vec<String> = used
        .iter()
        .map(|&v| x.labels()[v as usize].clone())
        .collect();
    let mut per_dim: Vec<Vec<Vec<u32>>> = Vec::new();
    for cell in &work.cells {
        let d = cell.len() - 1;
        while per_dim.len() <= d {
            per_dim.push(Vec::new());
        }
        per_dim[d].push(cell.iter().map(|&v| pos[&v]).collect());
    }
    SimplicialComplex::from_simplices(labels, per_dim).expect("contraction preserves closure")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::generators;

    #[test]
    fn sphere_contracts_to_minimal() {
        // a subdivided 2-sphere contracts back to the 4-vertex sphere
        let s = generators::sphere(2);
        let sd = crate::complexes::subdivision::barycentric_subdivision(&s);
        let small = simplify(&sd.complex);
        assert_eq!(small.n_cells(0), 4);
        assert_eq!(small.euler_characteristic(), 2);
        assert!(small.check_closed_pseudomanifold().is_ok());
    }

    #[test]
    fn torus_stays_a_torus() {
        let t = generators::torus_grid();
        let small = simplify(&t);
        assert_eq!(small.euler_characteristic(), 0);
        assert!(small.check_closed_pseudomanifold().is_ok());
        // the minimal torus has 7 vertices
        assert!(small.n_cells(0) >= 7);
    }
}
