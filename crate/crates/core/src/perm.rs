//! Permutations of `{0, .., n-1}` acting on the right.
//!
//! `a.compose(&b)` applies `a` first, then `b`, so `i^(ab) = (i^a)^b`. This
//! matches the usual convention for permutation groups, and makes
//! `x.inverse().compose(g).compose(x)` the conjugate `g^x`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{GroupError, Result};
use crate::prime::Prime;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image sequence, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(GroupError::input(format!(
                    "image sequence is not a bijection of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation from disjoint cycles over 0-indexed points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(GroupError::input(format!(
                        "point {} outside degree {degree}",
                        a + 1
                    )));
                }
                if used[a] {
                    return Err(GroupError::input(format!(
                        "point {} repeated in cycle notation",
                        a + 1
                    )));
                }
                used[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    /// `x^-1 self x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            out[x.images[i] as usize] = x.images[img as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.inverse().compose(&b.inverse()).compose(a).compose(b)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> BigUint {
        self.cycles().iter().fold(BigUint::from(1u32), |acc, c| {
            acc.lcm(&BigUint::from(c.len()))
        })
    }

    /// Whether the order of this permutation is a power of `p`.
    pub fn is_p_element(&self, p: Prime) -> bool {
        self.cycles().iter().all(|c| {
            let mut len = c.len() as u64;
            while len.is_multiple_of(p.as_u64()) {
                len /= p.as_u64();
            }
            len == 1
        })
    }

    /// The `p`-part of this element: the power of it whose order is the
    /// `p`-part of its order. Computed cycle by cycle, so huge orders are fine.
    pub fn p_component(&self, p: Prime) -> Permutation {
        let order = self.order();
        let cofactor = &order / crate::prime::p_part(&order, p);
        let mut images: Vec<u32> = self.images.to_vec();
        for c in self.cycles() {
            let shift = (&cofactor % c.len())
                .to_u64_digits()
                .first()
                .copied()
                .unwrap_or(0) as usize;
            for (k, &a) in c.iter().enumerate() {
                images[a] = c[(k + shift) % c.len()] as u32;
            }
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }
}

/// 1-indexed disjoint-cycle notation; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, a) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", a + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    #[test]
    fn right_action_convention() {
        let a = perm(3, &[&[0, 1]]);
        let b = perm(3, &[&[1, 2]]);
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.compose(&b).image(0), 2);
        assert_eq!(format!("{}", a.compose(&b)), "(1 3 2)");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 3]]).is_err());
    }

    #[test]
    fn conjugation_matches_definition() {
        let g = perm(4, &[&[0, 1, 2]]);
        let x = perm(4, &[&[2, 3]]);
        let direct = x.inverse().compose(&g).compose(&x);
        assert_eq!(g.conjugate_by(&x), direct);
        assert_eq!(format!("{direct}"), "(1 2 4)");
    }

    #[test]
    fn orders_and_p_parts() {
        let g = perm(9, &[&[0, 1], &[2, 3, 4, 5], &[6, 7, 8]]);
        assert_eq!(g.order(), BigUint::from(12u32));
        let two = Prime::new(2).unwrap();
        let c = g.p_component(two);
        assert_eq!(c.order(), BigUint::from(4u32));
        assert!(c.is_p_element(two));
        assert!(!g.is_p_element(two));
        assert_eq!(c, g.pow(3));
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_cancels(a in arb_perm(9)) {
            prop_assert!(a.compose(&a.inverse()).is_identity());
            prop_assert!(a.inverse().compose(&a).is_identity());
        }

        #[test]
        fn composition_is_associative(a in arb_perm(8), b in arb_perm(8), c in arb_perm(8)) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }

        #[test]
        fn power_by_order_is_identity(a in arb_perm(10)) {
            let ord = u64::try_from(&a.order()).unwrap();
            prop_assert!(a.pow(ord).is_identity());
        }

        #[test]
        fn cycles_round_trip(a in arb_perm(10)) {
            let back = Permutation::from_cycles(10, &a.cycles()).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
