//! Subquotients N/D of a free module, their normal forms and induced maps.

use super::group::FGAbGroup;
use super::matrix::IntMatrix;
use super::snf::{kernel, smith_normal_form, solve_matrix, solve_with, SmithDecomposition};
use super::AbGroupError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// A pair of nested sublattices `D <= N <= Z^ambient`, presenting the group
/// `N/D`. Columns of the two matrices are spanning sets, not bases.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub ambient_rank: usize,
    pub numerator: IntMatrix,
    pub denominator: IntMatrix,
}

impl Subquotient {
    pub fn new(ambient_rank: usize, numerator: IntMatrix, denominator: IntMatrix) -> Self {
        assert_eq!(numerator.rows(), ambient_rank);
        assert_eq!(denominator.rows(), ambient_rank);
        Subquotient { ambient_rank, numerator, denominator }
    }

    /// The full lattice modulo a sublattice.
    pub fn full_mod(denominator: IntMatrix) -> Self {
        let m = denominator.rows();
        Subquotient::new(m, IntMatrix::identity(m), denominator)
    }
}

/// `N/D` in invariant-factor form together with everything needed to express
/// ambient vectors in the chosen generators.
#[derive(Clone, Debug)]
pub struct SubquotientPresentation {
    pub sub: Subquotient,
    pub group: FGAbGroup,
    /// Ambient vectors projecting to the generators, one column per
    /// generator: torsion generators by increasing invariant factor, then
    /// free generators.
    pub reps: IntMatrix,
    n_basis: IntMatrix,
    n_basis_snf: SmithDecomposition,
    u_prime: IntMatrix,
    orders: Vec<BigInt>,
    kept: Vec<usize>,
}

/// Present `N/D` with representative generators.
///
/// Fails with [`AbGroupError::DenominatorNotContained`] when `D` is not a
/// sublattice of `N`.
pub fn subquotient_group(sub: &Subquotient) -> Result<SubquotientPresentation, AbGroupError> {
    let m = sub.ambient_rank;

    // Canonical special case: N is the full coordinate lattice and D = 0.
    // Choosing the coordinate basis here keeps page generators aligned with
    // cell orderings.
    if sub.denominator.cols() == 0 {
        let nsnf = smith_normal_form(&sub.numerator);
        let r = nsnf.rank();
        if r == m && nsnf.invariant_factors().iter().all(|d| d == &BigInt::from(1)) {
            let id = IntMatrix::identity(m);
            return Ok(SubquotientPresentation {
                sub: sub.clone(),
                group: FGAbGroup::free(m),
                reps: id.clone(),
                n_basis: id.clone(),
                n_basis_snf: smith_normal_form(&id),
                u_prime: IntMatrix::identity(m),
                orders: vec![BigInt::zero(); m],
                kept: (0..m).collect(),
            });
        }
        return present(sub, nsnf);
    }
    present(sub, smith_normal_form(&sub.numerator))
}

fn present(
    sub: &Subquotient,
    nsnf: SmithDecomposition,
) -> Result<SubquotientPresentation, AbGroupError> {
    let r = nsnf.rank();
    // Lattice basis of span(N): the first r columns of N*V.
    let nv = sub.numerator.mul(&nsnf.v);
    let n_basis = nv.select_cols(&(0..r).collect::<Vec<_>>());
    let n_basis_snf = smith_normal_form(&n_basis);

    // Express D in the basis of N.
    let coords = (0..sub.denominator.cols())
        .map(|j| {
            solve_with(&n_basis_snf, r, &sub.denominator.column(j))
                .ok_or(AbGroupError::DenominatorNotContained)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let c = IntMatrix::from_columns(r, &coords);

    // N/D = Z^r / span(C).
    let csnf = smith_normal_form(&c);
    let mut orders = vec![BigInt::zero(); r];
    let k = csnf.s.rows().min(csnf.s.cols());
    for (i, o) in orders.iter_mut().enumerate().take(k) {
        *o = csnf.s[(i, i)].clone();
    }
    let kept: Vec<usize> = (0..r)
        .filter(|&i| orders[i] != BigInt::from(1))
        .collect();

    let u_inv = solve_matrix(&csnf.u, &IntMatrix::identity(r)).expect("U is unimodular");
    let gen_in_basis = u_inv.select_cols(&kept);
    let reps = n_basis.mul(&gen_in_basis);

    let group = FGAbGroup::from_cyclic_orders(kept.iter().map(|&i| orders[i].clone()));
    debug_assert_eq!(group.num_generators(), kept.len());

    Ok(SubquotientPresentation {
        sub: sub.clone(),
        group,
        reps,
        n_basis,
        n_basis_snf,
        u_prime: csnf.u,
        orders,
        kept,
    })
}

impl SubquotientPresentation {
    /// Coordinates of the class `[v]` in the generator basis, with torsion
    /// coordinates normalized into `[0, d)`. `None` when `v` is outside `N`.
    pub fn class_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let x = solve_with(&self.n_basis_snf, self.n_basis.cols(), v)?;
        let y = self.u_prime.mul_vec(&x);
        Some(
            self.kept
                .iter()
                .map(|&k| {
                    if self.orders[k].is_zero() {
                        y[k].clone()
                    } else {
                        y[k].mod_floor(&self.orders[k])
                    }
                })
                .collect(),
        )
    }

    pub fn is_zero_class(&self, v: &[BigInt]) -> Option<bool> {
        self.class_of(v).map(|c| c.iter().all(|x| x.is_zero()))
    }

    /// Reduce generator coordinates modulo the generator orders.
    pub fn normalize_coords(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let orders = self.group.generator_orders();
        coords
            .iter()
            .zip(&orders)
            .map(|(c, d)| if d.is_zero() { c.clone() } else { c.mod_floor(d) })
            .collect()
    }

    /// The ambient vector `reps * coords`.
    pub fn vector_from_coords(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.reps.mul_vec(coords)
    }
}

/// Coefficients expressing `v` in the integer column span of `span`, if any.
pub fn membership(v: &[BigInt], span: &IntMatrix) -> Option<Vec<BigInt>> {
    super::snf::solve(span, v)
}

/// The matrix of the map induced by the ambient matrix `f` on generator
/// bases of two subquotients.
///
/// Checks that `f` maps numerator into numerator and denominator into
/// denominator; failure means the map does not descend and is reported as
/// [`AbGroupError::NotWellDefined`].
pub fn induced_hom(
    f: &IntMatrix,
    src: &SubquotientPresentation,
    dst: &SubquotientPresentation,
) -> Result<IntMatrix, AbGroupError> {
    assert_eq!(f.cols(), src.sub.ambient_rank);
    assert_eq!(f.rows(), dst.sub.ambient_rank);

    let fn_src = f.mul(&src.sub.numerator);
    for j in 0..fn_src.cols() {
        if solve_with(&dst.n_basis_snf, dst.n_basis.cols(), &fn_src.column(j)).is_none() {
            return Err(AbGroupError::NotWellDefined);
        }
    }
    let fd_src = f.mul(&src.sub.denominator);
    if fd_src.cols() > 0 && solve_matrix(&dst.sub.denominator, &fd_src).is_none() {
        return Err(AbGroupError::NotWellDefined);
    }

    let g = src.group.num_generators();
    let mut cols = Vec::with_capacity(g);
    for j in 0..g {
        let img = f.mul_vec(&src.reps.column(j));
        let class = dst.class_of(&img).ok_or(AbGroupError::NotWellDefined)?;
        cols.push(class);
    }
    Ok(IntMatrix::from_columns(dst.group.num_generators(), &cols))
}

/// `Z^rows / columnspan(M)` in invariant-factor form.
pub fn cokernel(m: &IntMatrix) -> FGAbGroup {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let orders = snf
        .invariant_factors()
        .into_iter()
        .chain(std::iter::repeat(BigInt::zero()).take(m.rows() - r));
    FGAbGroup::from_cyclic_orders(orders)
}

/// A basis of the lattice `{x : M x is in columnspan(L)}`.
///
/// Computed as the projection of the kernel of `[M | L]` onto the first
/// block of coordinates.
pub fn preimage_of_span(m: &IntMatrix, l: &IntMatrix) -> IntMatrix {
    assert_eq!(m.rows(), l.rows());
    if l.cols() == 0 {
        return kernel(m);
    }
    let stacked = m.hstack(&l.neg());
    let k = kernel(&stacked);
    k.select_rows(&(0..m.cols()).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(ambient: usize, n: &[Vec<i64>], d: &[Vec<i64>]) -> Subquotient {
        let num = if n.is_empty() {
            IntMatrix::zeros(ambient, 0)
        } else {
            IntMatrix::from_rows(n).transpose()
        };
        let den = if d.is_empty() {
            IntMatrix::zeros(ambient, 0)
        } else {
            IntMatrix::from_rows(d).transpose()
        };
        Subquotient::new(ambient, num, den)
    }

    #[test]
    fn reference_example() {
        // ambient Z^2, N = Z^2, D = <(0,2)>: Z + Z/2
        let s = sq(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 2]]);
        let p = subquotient_group(&s).unwrap();
        assert_eq!(p.group, FGAbGroup::free(1).direct_sum(&FGAbGroup::cyclic(2)));
        // generators: torsion first, then free
        assert_eq!(p.group.generator_orders(), vec![BigInt::from(2), BigInt::zero()]);
    }

    #[test]
    fn degenerate_cases() {
        // N = D: trivial group
        let s = sq(2, &[vec![1, 0]], &[vec![1, 0]]);
        assert!(subquotient_group(&s).unwrap().group.is_trivial());
        // D empty: N itself
        let s = sq(2, &[vec![2, 0]], &[]);
        assert_eq!(subquotient_group(&s).unwrap().group, FGAbGroup::free(1));
        // D not inside N
        let s = sq(2, &[vec![2, 0]], &[vec![1, 0]]);
        assert!(matches!(
            subquotient_group(&s),
            Err(AbGroupError::DenominatorNotContained)
        ));
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&IntMatrix::from_rows(&[vec![2]])), FGAbGroup::cyclic(2));
        assert_eq!(
            cokernel(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]])),
            FGAbGroup::cyclic(2).direct_sum(&FGAbGroup::cyclic(4))
        );
        assert_eq!(cokernel(&IntMatrix::zeros(2, 0)), FGAbGroup::free(2));
    }

    #[test]
    fn membership_examples() {
        let span = IntMatrix::from_rows(&[vec![1], vec![2]]);
        assert_eq!(
            membership(&[BigInt::from(2), BigInt::from(4)], &span),
            Some(vec![BigInt::from(2)])
        );
        let span = IntMatrix::from_rows(&[vec![0], vec![1]]);
        assert_eq!(membership(&[BigInt::from(1), BigInt::zero()], &span), None);
        let span = IntMatrix::from_rows(&[vec![1, 1], vec![0, 3]]);
        assert_eq!(
            membership(&[BigInt::from(3), BigInt::from(3)], &span),
            Some(vec![BigInt::from(2), BigInt::from(1)])
        );
    }

    #[test]
    fn induced_hom_examples() {
        // ambient Z, N = Z, D = 2Z; f = *2 induces the zero map on Z/2.
        let s = sq(1, &[vec![1]], &[vec![2]]);
        let p = subquotient_group(&s).unwrap();
        assert_eq!(p.group, FGAbGroup::cyclic(2));
        let f = IntMatrix::from_rows(&[vec![2]]);
        let m = induced_hom(&f, &p, &p).unwrap();
        assert!(m.is_zero());
        // identity induces identity
        let f = IntMatrix::identity(1);
        let m = induced_hom(&f, &p, &p).unwrap();
        assert_eq!(m, IntMatrix::identity(1));
    }

    #[test]
    fn class_of_normalizes() {
        let s = sq(1, &[vec![1]], &[vec![3]]);
        let p = subquotient_group(&s).unwrap();
        let c = p.class_of(&[BigInt::from(-1)]).unwrap();
        assert_eq!(c, vec![BigInt::from(2)]);
    }

    #[test]
    fn invariance_under_spanning_set_changes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let m = rng.gen_range(1..=4);
            let a = rng.gen_range(0..=3);
            let mut ncols: Vec<Vec<i64>> =
                (0..a).map(|_| (0..m).map(|_| rng.gen_range(-4..=4)).collect()).collect();
            // D: random small integer combos of N columns
            let b = rng.gen_range(0..=2);
            let dcols: Vec<Vec<i64>> = (0..b)
                .map(|_| {
                    let mut col = vec![0i64; m];
                    for nc in &ncols {
                        let k = rng.gen_range(-2..=2i64);
                        for (c, x) in col.iter_mut().zip(nc) {
                            *c += k * x;
                        }
                    }
                    col
                })
                .collect();
            let s1 = sq(m, &ncols, &dcols);
            let g1 = subquotient_group(&s1).unwrap().group;
            // add a redundant column to N (sum of existing ones)
            if !ncols.is_empty() {
                let sum: Vec<i64> = (0..m).map(|i| ncols.iter().map(|c| c[i]).sum()).collect();
                ncols.push(sum);
            }
            let s2 = sq(m, &ncols, &dcols);
            let g2 = subquotient_group(&s2).unwrap().group;
            assert_eq!(g1, g2);
        }
    }
}
