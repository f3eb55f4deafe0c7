//! Finitely generated permutation groups backed by a stabilizer chain.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::chain::StabChain;
use crate::error::{GroupError, Result};
use crate::perm::Permutation;
use crate::prime::{prime_divisors_up_to, Prime};

/// Default bound on `|G|` for anything that lists group elements.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;
/// Default bound on the degree of a coset-action quotient.
pub const DEFAULT_QUOTIENT_DEGREE_CAP: u64 = 100_000;
/// Largest degree accepted for a permutation group.
pub const MAX_DEGREE: usize = 100_000;

/// An immutable permutation group. The stabilizer chain is built eagerly.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
}

impl PermGroup {
    /// The group generated by `gens`. Identity generators and duplicates are dropped.
    pub fn new(degree: usize, gens: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(GroupError::input(format!(
                "degree must be in 1..={MAX_DEGREE}, got {degree}"
            )));
        }
        let mut builder = GroupBuilder::new(degree);
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::input(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
            builder.push_generator(g);
        }
        Ok(builder.finish())
    }

    pub fn trivial(degree: usize) -> Self {
        GroupBuilder::new(degree).finish()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// The order as a machine integer, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        self.check_degree(g)?;
        Ok(self.chain.contains(g))
    }

    pub(crate) fn has(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    fn check_degree(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree {
            return Err(GroupError::input(format!(
                "permutation of degree {} tested against a group of degree {}",
                g.degree(),
                self.degree
            )));
        }
        Ok(())
    }

    pub(crate) fn check_same_degree(&self, other: &PermGroup) -> Result<()> {
        if other.degree != self.degree {
            return Err(GroupError::input(format!(
                "groups of degrees {} and {} cannot be compared",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    /// Every element exactly once, subject to [`DEFAULT_ENUMERATION_CAP`].
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        self.elements_capped(DEFAULT_ENUMERATION_CAP)
    }

    pub fn elements_capped(&self, cap: u64) -> Result<Vec<Permutation>> {
        self.ensure_order_at_most(cap, "element enumeration")?;
        Ok(self.chain.elements())
    }

    pub(crate) fn ensure_order_at_most(&self, cap: u64, what: &str) -> Result<()> {
        if self.order > BigUint::from(cap) {
            return Err(GroupError::capacity(
                format!("{what} of a group of order {}", self.order),
                cap,
            ));
        }
        Ok(())
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.has(g))
    }

    /// Equality as subgroups of the common symmetric group.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// Primes dividing the order.
    pub fn prime_divisors(&self) -> Vec<Prime> {
        prime_divisors_up_to(&self.order, self.degree as u64)
    }

    /// Whether `h` is normal in `self`. Errors when `h` is not a subgroup.
    pub fn is_normal(&self, h: &PermGroup) -> Result<bool> {
        self.check_same_degree(h)?;
        if !h.is_subgroup_of(self) {
            return Err(GroupError::contract("is_normal: H is not a subgroup of G"));
        }
        Ok(self.normalizes(h))
    }

    /// Whether every generator of `self` conjugates `h` into itself.
    pub(crate) fn normalizes(&self, h: &PermGroup) -> bool {
        self.generators
            .iter()
            .all(|x| h.generators.iter().all(|y| h.has(&y.conjugate_by(x))))
    }

    /// The join `<self, other>`.
    pub fn join(&self, other: &PermGroup) -> Result<PermGroup> {
        self.check_same_degree(other)?;
        let mut b = GroupBuilder::from_group(self);
        for g in &other.generators {
            b.push_generator(g.clone());
        }
        Ok(b.finish())
    }

    /// The quotient `self / n` as the action on right cosets of `n`.
    pub fn quotient(&self, n: &PermGroup) -> Result<Quotient> {
        self.quotient_capped(n, DEFAULT_QUOTIENT_DEGREE_CAP)
    }

    pub fn quotient_capped(&self, n: &PermGroup, cap: u64) -> Result<Quotient> {
        self.check_same_degree(n)?;
        if !n.is_subgroup_of(self) || !self.normalizes(n) {
            return Err(GroupError::contract(
                "quotient_group: N is not a normal subgroup of G",
            ));
        }
        let index = &self.order / &n.order;
        if index > BigUint::from(cap) {
            return Err(GroupError::capacity(
                format!("coset action of degree {index}"),
                cap,
            ));
        }
        Quotient::build(self, n)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, gens [",
            self.degree, self.order
        )?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

/// Incrementally grows a group one generator at a time.
#[derive(Clone)]
pub(crate) struct GroupBuilder {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
}

impl GroupBuilder {
    pub fn new(degree: usize) -> Self {
        GroupBuilder {
            degree,
            generators: Vec::new(),
            chain: StabChain::new(degree),
        }
    }

    pub fn from_group(g: &PermGroup) -> Self {
        GroupBuilder {
            degree: g.degree,
            generators: g.generators.clone(),
            chain: g.chain.clone(),
        }
    }

    /// Adds `g` as a generator if it is not already in the group.
    pub fn push_generator(&mut self, g: Permutation) -> bool {
        if self.chain.insert(&g) {
            self.generators.push(g);
            true
        } else {
            false
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn finish(self) -> PermGroup {
        let order = self.chain.order();
        PermGroup {
            degree: self.degree,
            generators: self.generators,
            chain: self.chain,
            order,
        }
    }
}

/// `G / N` realized as the permutation action of `G` on the right cosets of `N`.
#[derive(Clone)]
pub struct Quotient {
    image: PermGroup,
    kernel: PermGroup,
    coset_index: HashMap<Permutation, u32>,
    reps: Vec<Permutation>,
}

impl Quotient {
    fn build(g: &PermGroup, n: &PermGroup) -> Result<Self> {
        let id = g.identity();
        let first = n.chain.canonical_coset_rep(&id);
        let mut coset_index = HashMap::new();
        coset_index.insert(first.clone(), 0u32);
        let mut reps = vec![first];
        let mut k = 0;
        while k < reps.len() {
            for s in &g.generators {
                let c = n.chain.canonical_coset_rep(&reps[k].compose(s));
                if !coset_index.contains_key(&c) {
                    coset_index.insert(c.clone(), reps.len() as u32);
                    reps.push(c);
                }
            }
            k += 1;
        }
        let mut q = Quotient {
            image: PermGroup::trivial(reps.len()),
            kernel: n.clone(),
            coset_index,
            reps,
        };
        let gens: Vec<Permutation> = g.generators.iter().map(|s| q.map(s)).collect();
        q.image = PermGroup::new(q.reps.len(), gens)?;
        Ok(q)
    }

    pub fn group(&self) -> &PermGroup {
        &self.image
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    /// Index of the coset `N g`.
    pub fn coset_of(&self, g: &Permutation) -> usize {
        let c = self.kernel.chain.canonical_coset_rep(g);
        self.coset_index[&c] as usize
    }

    /// The epimorphism `G -> G/N`: `g` acts by `N x -> N x g`.
    pub fn map(&self, g: &Permutation) -> Permutation {
        let images: Vec<u32> = self
            .reps
            .iter()
            .map(|r| self.coset_of(&r.compose(g)) as u32)
            .collect();
        Permutation::from_images(images).expect("coset action is a bijection")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{alternating, klein_four_in_s4, symmetric};

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    #[test]
    fn group_from_generators_examples() {
        let s4 = PermGroup::new(4, [perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(s4.order_u64(), Some(24));
        assert_eq!(PermGroup::new(5, []).unwrap().order_u64(), Some(1));
        let a5 = PermGroup::new(5, [perm(5, &[&[0, 1, 2, 3, 4]]), perm(5, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(a5.order_u64(), Some(60));
    }

    #[test]
    fn degree_mismatch_is_input_error() {
        let err = PermGroup::new(4, [perm(3, &[&[0, 1]])]).unwrap_err();
        assert!(matches!(err, GroupError::Input(_)));
        let s4 = symmetric(4);
        assert!(matches!(
            s4.contains(&perm(5, &[&[0, 1]])),
            Err(GroupError::Input(_))
        ));
    }

    #[test]
    fn membership_examples() {
        let a4 = alternating(4);
        assert!(a4.contains(&a4.identity()).unwrap());
        assert!(!a4.contains(&perm(4, &[&[0, 1]])).unwrap());
        let g = PermGroup::new(4, [perm(4, &[&[0, 1, 2]]), perm(4, &[&[0, 1], &[2, 3]])]).unwrap();
        assert!(g.contains(&perm(4, &[&[0, 1], &[2, 3]])).unwrap());
    }

    #[test]
    fn elements_respect_cap() {
        let s5 = symmetric(5);
        assert_eq!(s5.elements().unwrap().len(), 120);
        let err = s5.elements_capped(100).unwrap_err();
        assert!(matches!(err, GroupError::Capacity { cap: 100, .. }));
        let c3 = PermGroup::new(3, [perm(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(c3.elements().unwrap().len(), 3);
        assert_eq!(
            PermGroup::trivial(3).elements().unwrap(),
            vec![Permutation::identity(3)]
        );
    }

    #[test]
    fn normality_examples() {
        let s4 = symmetric(4);
        assert!(s4.is_normal(&alternating(4)).unwrap());
        assert!(s4.is_normal(&klein_four_in_s4()).unwrap());
        let t = PermGroup::new(4, [perm(4, &[&[0, 1]])]).unwrap();
        assert!(!s4.is_normal(&t).unwrap());
        let a4 = alternating(4);
        assert!(matches!(a4.is_normal(&t), Err(GroupError::Contract(_))));
    }

    #[test]
    fn quotient_examples() {
        let s4 = symmetric(4);
        let q = s4.quotient(&alternating(4)).unwrap();
        assert_eq!(q.group().order_u64(), Some(2));
        let q = s4.quotient(&s4).unwrap();
        assert_eq!(q.group().order_u64(), Some(1));
        let q = s4.quotient(&klein_four_in_s4()).unwrap();
        assert_eq!(q.degree(), 6);
        assert_eq!(q.group().order_u64(), Some(6));
    }

    #[test]
    fn quotient_kernel_is_n_and_map_is_homomorphism() {
        let s4 = symmetric(4);
        let v4 = klein_four_in_s4();
        let q = s4.quotient(&v4).unwrap();
        let elems = s4.elements().unwrap();
        let kernel: Vec<_> = elems.iter().filter(|g| q.map(g).is_identity()).collect();
        assert_eq!(kernel.len(), 4);
        assert!(kernel.iter().all(|g| v4.contains(g).unwrap()));
        for a in &elems {
            for b in elems.iter().step_by(5) {
                assert_eq!(q.map(&a.compose(b)), q.map(a).compose(&q.map(b)));
            }
        }
    }

    #[test]
    fn quotient_rejects_non_normal_and_caps() {
        let s4 = symmetric(4);
        let t = PermGroup::new(4, [perm(4, &[&[0, 1]])]).unwrap();
        assert!(matches!(s4.quotient(&t), Err(GroupError::Contract(_))));
        let triv = PermGroup::trivial(4);
        assert!(matches!(
            s4.quotient_capped(&triv, 10),
            Err(GroupError::Capacity { cap: 10, .. })
        ));
    }
}
