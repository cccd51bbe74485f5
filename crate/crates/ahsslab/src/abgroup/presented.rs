//! Maps between groups in invariant-factor form, and their kernels, images
//! and homology, all reduced to subquotient computations in the free covers.

use super::group::FGAbGroup;
use super::matrix::IntMatrix;
use super::subquotient::{preimage_of_span, subquotient_group, Subquotient, SubquotientPresentation};
use super::AbGroupError;
use num_bigint::BigInt;
use num_traits::Zero;

/// The relation lattice of a presented group: one column `d_k e_k` per
/// torsion generator.
pub fn relations(group: &FGAbGroup) -> IntMatrix {
    let g = group.num_generators();
    let orders = group.generator_orders();
    let cols: Vec<Vec<BigInt>> = orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(k, d)| {
            let mut col = vec![BigInt::zero(); g];
            col[k] = d.clone();
            col
        })
        .collect();
    IntMatrix::from_columns(g, &cols)
}

/// Checks that the generator matrix `m` defines a homomorphism
/// `src -> dst`: each relation of the source must map into the relation
/// lattice of the destination.
pub fn is_well_defined(m: &IntMatrix, src: &FGAbGroup, dst: &FGAbGroup) -> bool {
    let r_src = relations(src);
    if r_src.cols() == 0 {
        return true;
    }
    let image = m.mul(&r_src);
    super::snf::solve_matrix(&relations(dst), &image).is_some()
}

/// The kernel of a map of presented groups, as a subquotient of the source's
/// free cover (ambient `Z^{gens(src)}`).
pub fn hom_kernel(
    m: &IntMatrix,
    src: &FGAbGroup,
    dst: &FGAbGroup,
) -> Result<SubquotientPresentation, AbGroupError> {
    let numerator = preimage_of_span(m, &relations(dst));
    let sub = Subquotient::new(src.num_generators(), numerator, relations(src));
    subquotient_group(&sub)
}

/// The image of a map of presented groups, as a subquotient of the
/// destination's free cover.
pub fn hom_image(
    m: &IntMatrix,
    dst: &FGAbGroup,
) -> Result<SubquotientPresentation, AbGroupError> {
    let sub = Subquotient::new(
        dst.num_generators(),
        m.hstack(&relations(dst)),
        relations(dst),
    );
    subquotient_group(&sub)
}

/// `ker(g) / im(f)` at the middle of `A --f--> B --g--> C`, presented in
/// `B`'s free cover.
pub fn hom_homology(
    f: &IntMatrix,
    g: &IntMatrix,
    b: &FGAbGroup,
    c: &FGAbGroup,
) -> Result<SubquotientPresentation, AbGroupError> {
    let numerator = preimage_of_span(g, &relations(c));
    let denominator = f.hstack(&relations(b));
    let sub = Subquotient::new(b.num_generators(), numerator, denominator);
    subquotient_group(&sub)
}

/// The cokernel of a map of presented groups.
pub fn hom_cokernel(m: &IntMatrix, dst: &FGAbGroup) -> FGAbGroup {
    super::subquotient::cokernel(&m.hstack(&relations(dst)))
}

/// Whether the generator-matrix map `src -> dst` is an isomorphism.
pub fn is_isomorphism(m: &IntMatrix, src: &FGAbGroup, dst: &FGAbGroup) -> bool {
    if !is_well_defined(m, src, dst) {
        return false;
    }
    if !hom_cokernel(m, dst).is_trivial() {
        return false;
    }
    match hom_kernel(m, src, dst) {
        Ok(p) => p.group.is_trivial(),
        Err(_) => false,
    }
}

/// Compose two generator-matrix maps, reducing modulo the final group's
/// generator orders.
pub fn compose(g: &IntMatrix, f: &IntMatrix, final_dst: &FGAbGroup) -> IntMatrix {
    let raw = g.mul(f);
    reduce_mod_orders(&raw, final_dst)
}

pub fn reduce_mod_orders(m: &IntMatrix, dst: &FGAbGroup) -> IntMatrix {
    use num_integer::Integer;
    let orders = dst.generator_orders();
    let mut out = m.clone();
    for i in 0..out.rows() {
        if orders[i].is_zero() {
            continue;
        }
        for j in 0..out.cols() {
            let v = out[(i, j)].mod_floor(&orders[i]);
            out[(i, j)] = v;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_image_of_mod_map() {
        // Z --2--> Z: kernel 0, image 2Z = Z, cokernel Z/2
        let z = FGAbGroup::free(1);
        let m = IntMatrix::from_rows(&[vec![2]]);
        assert!(hom_kernel(&m, &z, &z).unwrap().group.is_trivial());
        assert_eq!(hom_image(&m, &z).unwrap().group, FGAbGroup::free(1));
        assert_eq!(hom_cokernel(&m, &z), FGAbGroup::cyclic(2));

        // Z/4 --2--> Z/4: kernel Z/2, image Z/2
        let z4 = FGAbGroup::cyclic(4);
        assert_eq!(hom_kernel(&m, &z4, &z4).unwrap().group, FGAbGroup::cyclic(2));
        assert_eq!(hom_image(&m, &z4).unwrap().group, FGAbGroup::cyclic(2));
        assert!(is_well_defined(&m, &z4, &z4));
        // Z/2 --1--> Z/4 is not a homomorphism
        assert!(!is_well_defined(
            &IntMatrix::from_rows(&[vec![1]]),
            &FGAbGroup::cyclic(2),
            &z4
        ));
    }

    #[test]
    fn homology_of_short_complex() {
        // Z --4--> Z --0--> 0 has homology Z/4 at the middle
        let f = IntMatrix::from_rows(&[vec![4]]);
        let g = IntMatrix::zeros(0, 1);
        let h = hom_homology(&f, &g, &FGAbGroup::free(1), &FGAbGroup::trivial()).unwrap();
        assert_eq!(h.group, FGAbGroup::cyclic(4));
    }

    #[test]
    fn iso_detection() {
        let z2z4 = FGAbGroup::cyclic(2).direct_sum(&FGAbGroup::cyclic(4));
        assert!(is_isomorphism(&IntMatrix::identity(2), &z2z4, &z2z4));
        // swapping the generators of Z/2 + Z/4 is not an iso (not well defined)
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(!is_isomorphism(&swap, &z2z4, &z2z4));
    }
}
