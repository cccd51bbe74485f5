//! Smith normal form and the solvers built on it.

use super::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A decomposition `U * M * V = S` with `U`, `V` unimodular and `S` diagonal,
/// nonnegative, with each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n).take_while(|&i| !self.s[(i, i)].is_zero()).count()
    }

    /// Nonzero diagonal entries, in divisibility order (1s included).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n)
            .map(|i| self.s[(i, i)].clone())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

/// Nearest-integer quotient, so the remainder satisfies |r| <= |b|/2.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        if r.sign() == b.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Position of the minimal-absolute-value nonzero entry of `m` at or past
/// `(t, t)`, scanning rows then columns; ties go to the earliest position.
fn min_pivot(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let x = m[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            match &best {
                Some((b, _, _)) if *b <= x => {}
                _ => best = Some((x, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Smith normal form with unimodular transform witnesses.
///
/// Pivots are chosen as the minimal-absolute-value nonzero entry of the
/// remaining block, which keeps intermediate entries from exploding.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());

    let n = m.rows().min(m.cols());
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = min_pivot(&s, t) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // Clear column t below the pivot.
            let mut dirty = false;
            for i in t + 1..s.rows() {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -rounded_div(&s[(i, t)], &s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !s[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder became the new smallest entry in this column.
                let (ri, _) = (t..s.rows())
                    .filter(|&i| !s[(i, t)].is_zero())
                    .map(|i| (i, s[(i, t)].abs()))
                    .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
                    .map(|(i, a)| (i, a))
                    .expect("nonzero entry must remain");
                s.swap_rows(t, ri);
                u.swap_rows(t, ri);
                continue;
            }
            // Clear row t to the right of the pivot.
            let mut dirty = false;
            for j in t + 1..s.cols() {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -rounded_div(&s[(t, j)], &s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !s[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (rj, _) = (t..s.cols())
                    .filter(|&j| !s[(t, j)].is_zero())
                    .map(|j| (j, s[(t, j)].abs()))
                    .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
                    .expect("nonzero entry must remain");
                s.swap_cols(t, rj);
                v.swap_cols(t, rj);
                continue;
            }
            // Row and column are clear. Enforce divisibility of the rest.
            let piv = s[(t, t)].clone();
            let mut offender = None;
            'scan: for i in t + 1..s.rows() {
                for j in t + 1..s.cols() {
                    if !(&s[(i, j)] % &piv).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        t += 1;
    }

    // Normalize signs.
    for i in 0..n {
        if s[(i, i)].is_negative() {
            s.negate_col(i);
            v.negate_col(i);
        }
    }
    SmithDecomposition { u, s, v }
}

/// One integer solution `x` of `M x = b`, or `None` when there is none.
///
/// Free coordinates are set to zero, so the answer is deterministic.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows(), b.len());
    let snf = smith_normal_form(m);
    solve_with(&snf, m.cols(), b)
}

/// Like [`solve`] but reuses a precomputed decomposition of `m`.
pub fn solve_with(snf: &SmithDecomposition, cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = snf.u.mul_vec(b);
    let n = snf.s.rows().min(snf.s.cols());
    let mut y = vec![BigInt::zero(); cols];
    for (i, ubi) in ub.iter().enumerate() {
        if i < n && !snf.s[(i, i)].is_zero() {
            let (q, r) = ubi.div_rem(&snf.s[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ubi.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Solve `M X = B` columnwise; `None` if any column has no solution.
pub fn solve_matrix(m: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(m.rows(), b.rows());
    let snf = smith_normal_form(m);
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        cols.push(solve_with(&snf, m.cols(), &b.column(j))?);
    }
    Some(IntMatrix::from_columns(m.cols(), &cols))
}

/// A basis of the lattice kernel `{x : M x = 0}`, as matrix columns.
pub fn kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let idx: Vec<usize> = (r..m.cols()).collect();
    snf.v.select_cols(&idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(m: &IntMatrix) {
        let d = smith_normal_form(m);
        assert_eq!(d.u.mul(m).mul(&d.v), d.s, "U*M*V != S for {m:?}");
        assert_eq!(d.u.det_cofactor().abs(), BigInt::one());
        assert_eq!(d.v.det_cofactor().abs(), BigInt::one());
        let f = d.invariant_factors();
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken: {f:?}");
        }
        for x in &f {
            assert!(x.is_positive());
        }
    }

    #[test]
    fn snf_reference_example() {
        // gcd of entries is 2 and d1*d2 = |det| = 8, so S = diag(2, 4).
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let d = smith_normal_form(&m);
        assert_eq!(d.s, IntMatrix::from_rows(&[vec![2, 0], vec![0, 4]]));
        check(&m);
    }

    #[test]
    fn snf_degenerate() {
        let z = IntMatrix::zeros(3, 2);
        let d = smith_normal_form(&z);
        assert_eq!(d.s, z);
        let id = IntMatrix::identity(4);
        assert_eq!(smith_normal_form(&id).s, id);
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
    }

    #[test]
    fn snf_randomized_invariants() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        for _ in 0..200 {
            let r = rng.gen_range(0..=8);
            let c = rng.gen_range(0..=8);
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            let m = if r == 0 {
                IntMatrix::zeros(0, c)
            } else {
                IntMatrix::from_rows(&rows)
            };
            check(&m);
        }
    }

    #[test]
    fn solve_and_kernel() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let x = solve(&m, &[BigInt::from(4), BigInt::from(9)]).unwrap();
        assert_eq!(x, vec![BigInt::from(2), BigInt::from(3)]);
        assert!(solve(&m, &[BigInt::from(1), BigInt::from(0)]).is_none());

        let m = IntMatrix::from_rows(&[vec![1, 2, 3]]);
        let k = kernel(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
    }
}
