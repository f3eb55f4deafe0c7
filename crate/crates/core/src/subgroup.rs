//! Subgroup-valued operators: closures, commutators, normalizers,
//! intersections and the Frattini subgroup of a p-group.

use crate::error::{GroupError, Result};
use crate::group::{GroupBuilder, PermGroup, DEFAULT_ENUMERATION_CAP};
use crate::perm::Permutation;
use crate::prime::{is_p_power, Prime};

/// Smallest normal subgroup of `g` containing `s`.
///
/// Starts from `<s>` and conjugates every generator by every generator of
/// `g`, adding escapees, until the generating set is closed under
/// conjugation.
pub fn normal_closure(g: &PermGroup, s: &[Permutation]) -> Result<PermGroup> {
    for x in s {
        if !g.contains(x)? {
            return Err(GroupError::contract(format!(
                "normal_closure: {x} is not an element of G"
            )));
        }
    }
    Ok(normal_closure_unchecked(g, s))
}

pub(crate) fn normal_closure_unchecked(g: &PermGroup, s: &[Permutation]) -> PermGroup {
    let mut b = GroupBuilder::new(g.degree());
    for x in s {
        b.push_generator(x.clone());
    }
    let mut k = 0;
    while k < b.generators().len() {
        let h = b.generators()[k].clone();
        for x in g.generators() {
            b.push_generator(h.conjugate_by(x));
        }
        k += 1;
    }
    b.finish()
}

/// `[G, G]`, the normal closure of the commutators of generator pairs.
pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let c = Permutation::commutator(&gens[i], &gens[j]);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure_unchecked(g, &comms)
}

/// `N_G(H)` by scanning the elements of `g`.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    g.check_same_degree(h)?;
    if !h.is_subgroup_of(g) {
        return Err(GroupError::contract("normalizer: H is not a subgroup of G"));
    }
    let elems = g.elements_capped(DEFAULT_ENUMERATION_CAP)?;
    Ok(normalizer_among(&elems, h))
}

/// Normalizer of `h` inside the group whose elements are `elems`.
pub(crate) fn normalizer_among(elems: &[Permutation], h: &PermGroup) -> PermGroup {
    let mut b = GroupBuilder::from_group(h);
    for x in elems {
        if b.contains(x) {
            continue;
        }
        if h.generators().iter().all(|y| h.has(&y.conjugate_by(x))) {
            b.push_generator(x.clone());
        }
    }
    b.finish()
}

/// `H ∩ K`, by filtering the elements of the smaller group.
pub fn intersection(h: &PermGroup, k: &PermGroup) -> Result<PermGroup> {
    h.check_same_degree(k)?;
    let (small, large) = if h.order() <= k.order() {
        (h, k)
    } else {
        (k, h)
    };
    if small.is_subgroup_of(large) {
        return Ok(small.clone());
    }
    let mut b = GroupBuilder::new(h.degree());
    for x in small.elements_capped(DEFAULT_ENUMERATION_CAP)? {
        if !b.contains(&x) && large.has(&x) {
            b.push_generator(x);
        }
    }
    Ok(b.finish())
}

/// `Φ(P) = P^p [P, P]` for a p-group `P`.
pub fn frattini_of_p_group(pg: &PermGroup, p: Prime) -> Result<PermGroup> {
    if !is_p_power(pg.order(), p) {
        return Err(GroupError::contract(format!(
            "frattini_of_p_group: order {} is not a power of {p}",
            pg.order()
        )));
    }
    let mut b = GroupBuilder::from_group(&derived_subgroup(pg));
    for x in pg.generators() {
        b.push_generator(x.pow(p.as_u64()));
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{alternating, cyclic, dihedral, klein_four_in_s4, quaternion8, symmetric};

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    fn order(g: &PermGroup) -> u64 {
        g.order_u64().unwrap()
    }

    #[test]
    fn normal_closure_examples() {
        let s4 = symmetric(4);
        let c = normal_closure(&s4, &[perm(4, &[&[0, 1]])]).unwrap();
        assert_eq!(order(&c), 24);
        assert!(normal_closure(&s4, &[]).unwrap().is_trivial());
        let c = normal_closure(&s4, &[perm(4, &[&[0, 1], &[2, 3]])]).unwrap();
        assert!(c.same_as(&klein_four_in_s4()));
        assert!(s4.is_normal(&c).unwrap());
    }

    #[test]
    fn normal_closure_rejects_outsiders() {
        let a4 = alternating(4);
        assert!(matches!(
            normal_closure(&a4, &[perm(4, &[&[0, 1]])]),
            Err(GroupError::Contract(_))
        ));
    }

    #[test]
    fn derived_subgroup_examples() {
        assert!(derived_subgroup(&symmetric(4)).same_as(&alternating(4)));
        assert!(derived_subgroup(&cyclic(6)).is_trivial());
        assert_eq!(order(&derived_subgroup(&alternating(5))), 60);
    }

    #[test]
    fn derived_quotient_is_abelian() {
        let s4 = symmetric(4);
        let d = derived_subgroup(&s4);
        let q = s4.quotient(&d).unwrap();
        let gens = q.group().generators();
        for a in gens {
            for b in gens {
                assert!(Permutation::commutator(a, b).is_identity());
            }
        }
    }

    #[test]
    fn normalizer_examples() {
        let s4 = symmetric(4);
        assert!(normalizer(&s4, &s4).unwrap().same_as(&s4));
        let a4 = alternating(4);
        assert!(normalizer(&a4, &klein_four_in_s4()).unwrap().same_as(&a4));
        let c4 = PermGroup::new(4, [perm(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(order(&normalizer(&s4, &c4).unwrap()), 8);
    }

    #[test]
    fn intersection_examples() {
        let s4 = symmetric(4);
        assert!(intersection(&s4, &s4).unwrap().same_as(&s4));
        let d8 = PermGroup::new(4, [perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 2]])]).unwrap();
        let m = intersection(&d8, &alternating(4)).unwrap();
        assert!(m.same_as(&klein_four_in_s4()));
        let a = PermGroup::new(4, [perm(4, &[&[0, 1]])]).unwrap();
        let b = PermGroup::new(4, [perm(4, &[&[2, 3]])]).unwrap();
        assert!(intersection(&a, &b).unwrap().is_trivial());
    }

    #[test]
    fn frattini_examples() {
        let two = Prime::new(2).unwrap();
        assert!(frattini_of_p_group(&cyclic(2), two).unwrap().is_trivial());
        assert_eq!(order(&frattini_of_p_group(&dihedral(8), two).unwrap()), 2);
        assert_eq!(order(&frattini_of_p_group(&quaternion8(), two).unwrap()), 2);
        assert!(matches!(
            frattini_of_p_group(&symmetric(3), two),
            Err(GroupError::Contract(_))
        ));
    }
}
