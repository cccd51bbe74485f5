//! Finitely generated abelian groups in invariant-factor normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// `Z^rank + Z/d_1 + ... + Z/d_k` with `d_i >= 2` and `d_i | d_{i+1}`.
///
/// This is the value type of every cohomology group and spectral sequence
/// page in the crate; two groups are isomorphic iff they are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FGAbGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FGAbGroup {
    pub fn trivial() -> Self {
        FGAbGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FGAbGroup { rank, torsion: Vec::new() }
    }

    pub fn cyclic(d: u64) -> Self {
        Self::from_cyclic_orders(std::iter::once(BigInt::from(d)))
    }

    /// Build from a list of cyclic orders (`0` meaning an infinite factor).
    ///
    /// The orders need not form a divisibility chain; they are normalized by
    /// repeated gcd/lcm exchanges. Unit factors are dropped.
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let mut rank = 0usize;
        let mut tors: Vec<BigInt> = Vec::new();
        for d in orders {
            assert!(!d.is_negative(), "orders must be nonnegative");
            if d.is_zero() {
                rank += 1;
            } else if !d.is_one() {
                tors.push(d);
            }
        }
        // gcd/lcm exchanges: (a, b) -> (gcd, lcm) preserves the group and
        // converges to a divisibility chain.
        loop {
            let mut changed = false;
            for i in 0..tors.len() {
                for j in i + 1..tors.len() {
                    if !(&tors[j] % &tors[i]).is_zero() {
                        let g = tors[i].gcd(&tors[j]);
                        let l = (&tors[i] / &g) * &tors[j];
                        tors[i] = g;
                        tors[j] = l;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        tors.retain(|d| !d.is_one());
        tors.sort();
        FGAbGroup { rank, torsion: tors }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Number of elements, or `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product::<BigInt>().max(BigInt::one()))
    }

    pub fn direct_sum(&self, other: &FGAbGroup) -> FGAbGroup {
        let orders = self
            .torsion
            .iter()
            .chain(other.torsion.iter())
            .cloned()
            .chain(std::iter::repeat(BigInt::zero()).take(self.rank + other.rank));
        FGAbGroup::from_cyclic_orders(orders)
    }

    /// Generator orders in presentation order: torsion by increasing
    /// invariant factor, then `0` for each free generator.
    pub fn generator_orders(&self) -> Vec<BigInt> {
        let mut v = self.torsion.clone();
        v.extend(std::iter::repeat(BigInt::zero()).take(self.rank));
        v
    }

    pub fn num_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }
}

impl fmt::Debug for FGAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FGAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let g = FGAbGroup::from_cyclic_orders([2, 3].map(BigInt::from));
        assert_eq!(g, FGAbGroup::cyclic(6));
        let g = FGAbGroup::from_cyclic_orders([4, 6].map(BigInt::from));
        assert_eq!(g.torsion(), &[BigInt::from(2), BigInt::from(12)]);
        let g = FGAbGroup::from_cyclic_orders([1, 1, 0].map(BigInt::from));
        assert_eq!(g, FGAbGroup::free(1));
    }

    #[test]
    fn display_and_order() {
        let g = FGAbGroup::free(2).direct_sum(&FGAbGroup::cyclic(2));
        assert_eq!(format!("{g}"), "Z^2 + Z/2");
        assert_eq!(g.order(), None);
        assert_eq!(
            FGAbGroup::cyclic(2).direct_sum(&FGAbGroup::cyclic(4)).order(),
            Some(BigInt::from(8))
        );
        assert_eq!(FGAbGroup::trivial().order(), Some(BigInt::one()));
    }
}
