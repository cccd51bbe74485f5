//! Fundamental cycles of closed pseudomanifolds.

use super::simplicial::{ComplexError, SimplicialComplex};
use num_bigint::BigInt;
use num_traits::Zero;

/// The orientation data of a closed pseudomanifold: a +-1 top-cell cycle
/// over the integers when one exists, and always one over Z/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalClass {
    /// +-1 coefficients per top cell, or `None` when not Z-orientable.
    pub integral: Option<Vec<i64>>,
    /// The all-ones top chain is always a cycle modulo 2.
    pub mod2: Vec<i64>,
}

/// Compute a fundamental cycle by propagating orientations across shared
/// codimension-one faces.
///
/// Requires a closed pseudomanifold (pure, every (n-1)-simplex in exactly
/// two top cells); fails with `NotPseudoManifold` otherwise. Returns
/// `integral: None` when the propagation is inconsistent, i.e. the space is
/// not orientable over the integers.
pub fn fundamental_cycle(x: &SimplicialComplex) -> Result<FundamentalClass, ComplexError> {
    x.check_closed_pseudomanifold()?;
    let n = x.dim();
    let top = x.n_cells(n);
    if n == 0 {
        return Ok(FundamentalClass { integral: Some(vec![1; top]), mod2: vec![1; top] });
    }
    let b = x.boundary_sparse(n);
    // face -> the (at most two) top cells containing it, with incidence signs
    let bt = b.transpose();

    let mut sign = vec![0i64; top];
    let mut orientable = true;
    for seed in 0..top {
        if sign[seed] != 0 {
            continue;
        }
        sign[seed] = 1;
        let mut stack = vec![seed];
        while let Some(cell) = stack.pop() {
            for &(face, s_cell) in b.column(cell) {
                for &(other, s_other) in bt.column(face as usize) {
                    let other = other as usize;
                    if other == cell {
                        continue;
                    }
                    // coherence: s_cell*sign[cell] + s_other*sign[other] = 0
                    let want = -sign[cell] * s_cell as i64 * s_other as i64;
                    if sign[other] == 0 {
                        sign[other] = want;
                        stack.push(other);
                    } else if sign[other] != want {
                        orientable = false;
                    }
                }
            }
        }
    }

    let integral = if orientable {
        // oracle check: the signed top chain really is a cycle
        let coeffs: Vec<BigInt> = sign.iter().map(|&s| BigInt::from(s)).collect();
        let bd = super::simplicial::boundary_of_chain(x, n, &coeffs);
        debug_assert!(bd.iter().all(Zero::is_zero), "propagated orientation is not a cycle");
        Some(sign)
    } else {
        None
    };
    Ok(FundamentalClass { integral, mod2: vec![1; top] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::generators;

    #[test]
    fn sphere_is_orientable() {
        let x = generators::sphere(2);
        let fc = fundamental_cycle(&x).unwrap();
        let signs = fc.integral.expect("sphere is orientable");
        assert!(signs.iter().all(|&s| s == 1 || s == -1));
        let coeffs: Vec<BigInt> = signs.iter().map(|&s| BigInt::from(s)).collect();
        let bd = super::super::simplicial::boundary_of_chain(&x, 2, &coeffs);
        assert!(bd.iter().all(Zero::is_zero));
    }

    #[test]
    fn projective_plane_is_not() {
        let x = generators::rp2();
        let fc = fundamental_cycle(&x).unwrap();
        assert!(fc.integral.is_none());
        assert_eq!(fc.mod2.len(), x.n_cells(2));
    }

    #[test]
    fn wedge_fails() {
        let x = SimplicialComplex::from_numbered_top_cells(5, &[vec![0, 1, 2], vec![0, 3, 4]]);
        assert!(matches!(
            fundamental_cycle(&x),
            Err(ComplexError::NotPseudoManifold(_))
        ));
    }
}
