//! Decision procedures that cross-check the structural and cohomological
//! sides: p-perfection, Tate's normal p-complement criterion and its
//! Frattini corollary, and the coinvariant laws along p-perfect filtrations.

use crate::cohomology::{conjugation_action, h1_dim, mod_p_abelianization, ConjugationAction};
use crate::error::{GroupError, Result};
use crate::filtration::PPerfectFiltration;
use crate::group::PermGroup;
use crate::lattice::{normal_subgroups, NormalLattice};
use crate::linalg::FpMatrix;
use crate::prime::Prime;
use crate::subgroup::{frattini_of_p_group, intersection};
use crate::sylow::{is_p_nilpotent, o_p, sylow_subgroup};

/// Whether `O^p(G) = G`, checked against `H^1(G, F_p) = 0`.
pub fn is_p_perfect(g: &PermGroup, p: Prime) -> Result<bool> {
    let by_residue = o_p(g, p)?.same_as(g);
    let by_cohomology = h1_dim(g, p)? == 0;
    if by_residue != by_cohomology {
        return Err(GroupError::Internal(format!(
            "p-perfection disagrees for a group of order {}: O^p test {by_residue}, H^1 test {by_cohomology}",
            g.order()
        )));
    }
    Ok(by_residue)
}

/// Whether `dim H^1(G) = dim H^1(P)` holds exactly when `G` is p-nilpotent.
pub fn tate_criterion_check(g: &PermGroup, p: Prime) -> Result<bool> {
    let sylow = sylow_subgroup(g, p)?;
    tate_criterion_check_with_sylow(g, &sylow, p)
}

pub(crate) fn tate_criterion_check_with_sylow(
    g: &PermGroup,
    sylow: &PermGroup,
    p: Prime,
) -> Result<bool> {
    let equal = h1_dim(g, p)? == h1_dim(sylow, p)?;
    Ok(equal == is_p_nilpotent(g, p)?)
}

/// Every normal `N` with `N ∩ P <= Φ(P)` must be p-nilpotent.
pub fn tate_corollary_check(g: &PermGroup, p: Prime) -> Result<bool> {
    let lattice = normal_subgroups(g)?;
    let sylow = sylow_subgroup(g, p)?;
    tate_corollary_check_in(&lattice, &sylow, p)
}

pub(crate) fn tate_corollary_check_in(
    lattice: &NormalLattice,
    sylow: &PermGroup,
    p: Prime,
) -> Result<bool> {
    let phi = frattini_of_p_group(sylow, p)?;
    for n in lattice.iter() {
        if intersection(n, sylow)?.is_subgroup_of(&phi) && !is_p_nilpotent(n, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The comparison of `H_1(M_i)_P -> H_1(M_j)_P` for one pair `i > j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinvariantMap {
    pub i: usize,
    pub j: usize,
    pub rank: usize,
    pub injective: bool,
    pub isomorphism: bool,
    pub p_divides_index: bool,
}

impl CoinvariantMap {
    pub fn holds(&self) -> bool {
        self.injective && self.isomorphism != self.p_divides_index
    }
}

#[derive(Clone, Debug)]
pub struct Prop4Outcome {
    /// `dim H_1(M_i)_P` for every member `J_i`, where `M_i = J_i ∩ P`.
    pub coinvariant_dims: Vec<usize>,
    pub maps: Vec<CoinvariantMap>,
}

impl Prop4Outcome {
    pub fn holds(&self) -> bool {
        self.maps.iter().all(CoinvariantMap::holds)
    }
}

/// Checks that inclusion induces injections `H_1(M_i)_P -> H_1(M_j)_P` for
/// all `i > j >= 0`, which are isomorphisms exactly when p does not divide
/// `|J_j : J_i|`.
pub fn prop4_check(
    g: &PermGroup,
    p: Prime,
    filtration: &PPerfectFiltration,
) -> Result<Prop4Outcome> {
    if filtration.prime() != p || !filtration.ambient().same_as(g) {
        return Err(GroupError::contract(
            "prop4_check: filtration was built for a different group or prime",
        ));
    }
    prop4_check_members(g, p, filtration.members())
}

/// As [`prop4_check`], for an explicit list of members, which is validated.
pub fn prop4_check_members(g: &PermGroup, p: Prime, members: &[PermGroup]) -> Result<Prop4Outcome> {
    let sylow = sylow_subgroup(g, p)?;
    prop4_check_with_sylow(g, &sylow, p, members)
}

pub(crate) fn prop4_check_with_sylow(
    g: &PermGroup,
    sylow: &PermGroup,
    p: Prime,
    members: &[PermGroup],
) -> Result<Prop4Outcome> {
    validate_filtration(g, p, members)?;
    let actions: Vec<ConjugationAction> = members
        .iter()
        .map(|j| {
            let m = intersection(j, sylow)?;
            conjugation_action(&mod_p_abelianization(&m, p)?, sylow)
        })
        .collect::<Result<_>>()?;
    let relations: Vec<FpMatrix> = actions.iter().map(ConjugationAction::relations).collect();
    let relation_ranks: Vec<usize> = relations.iter().map(FpMatrix::rank).collect();
    let coinvariant_dims: Vec<usize> = actions
        .iter()
        .zip(&relation_ranks)
        .map(|(a, r)| a.module().dim() - r)
        .collect();

    let mut maps = Vec::new();
    for i in 0..members.len() {
        for j in 0..i {
            let (src, dst) = (actions[i].module(), actions[j].module());
            let rows: Vec<Vec<u32>> = src
                .basis()
                .iter()
                .map(|b| dst.project(b))
                .collect::<Result<_>>()?;
            let images = FpMatrix::from_rows(p, dst.dim(), &rows);
            let rank = images.vstack(&relations[j]).rank() - relation_ranks[j];
            let injective = rank == coinvariant_dims[i];
            let index = members[j].order() / members[i].order();
            maps.push(CoinvariantMap {
                i,
                j,
                rank,
                injective,
                isomorphism: injective && coinvariant_dims[i] == coinvariant_dims[j],
                p_divides_index: p.divides(&index),
            });
        }
    }
    Ok(Prop4Outcome {
        coinvariant_dims,
        maps,
    })
}

fn validate_filtration(g: &PermGroup, p: Prime, members: &[PermGroup]) -> Result<()> {
    let bad = |msg: &str| {
        Err(GroupError::contract(format!(
            "ill-formed p-perfect filtration: {msg}"
        )))
    };
    let (Some(first), Some(last)) = (members.first(), members.last()) else {
        return bad("no members");
    };
    if !first.same_as(g) {
        return bad("first member is not G");
    }
    if !last.is_trivial() {
        return bad("last member is not trivial");
    }
    for (k, w) in members.windows(2).enumerate() {
        if !w[1].is_subgroup_of(&w[0]) {
            return bad(&format!("member {} is not contained in member {k}", k + 1));
        }
    }
    for (k, m) in members.iter().enumerate().skip(1) {
        if !g.is_normal(m)? {
            return bad(&format!("member {k} is not normal"));
        }
        if !m.is_trivial() && !is_p_perfect(m, p)? {
            return bad(&format!("member {k} is not p-perfect"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{alternating, cyclic, dihedral, direct_product, symmetric};
    use crate::filtration::p_perfect_filtration;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn p_perfect_examples() {
        for p in [2, 3, 5, 7] {
            assert!(is_p_perfect(&alternating(5), pr(p)).unwrap());
            assert!(!is_p_perfect(&cyclic(p as usize), pr(p)).unwrap());
        }
        assert!(is_p_perfect(&alternating(4), pr(2)).unwrap());
        assert!(!is_p_perfect(&alternating(4), pr(3)).unwrap());
    }

    #[test]
    fn tate_criterion_examples() {
        assert!(tate_criterion_check(&symmetric(3), pr(2)).unwrap());
        assert!(tate_criterion_check(&symmetric(4), pr(2)).unwrap());
        assert!(tate_criterion_check(&dihedral(8), pr(2)).unwrap());
        assert_eq!(h1_dim(&symmetric(3), pr(2)).unwrap(), 1);
        assert_eq!(h1_dim(&symmetric(4), pr(2)).unwrap(), 1);
    }

    #[test]
    fn tate_corollary_examples() {
        let s3c2 = direct_product(&[symmetric(3), cyclic(2)]);
        assert!(tate_corollary_check(&s3c2, pr(2)).unwrap());
        assert!(tate_corollary_check(&alternating(5), pr(2)).unwrap());
        assert!(tate_corollary_check(&symmetric(4), pr(2)).unwrap());
    }

    #[test]
    fn prop4_examples() {
        let p = pr(2);
        let s4 = symmetric(4);
        let out = prop4_check(&s4, p, &p_perfect_filtration(&s4, p).unwrap()).unwrap();
        assert_eq!(out.coinvariant_dims, vec![2, 1, 0]);
        assert!(out.holds());

        let a5 = alternating(5);
        let out = prop4_check(&a5, p, &p_perfect_filtration(&a5, p).unwrap()).unwrap();
        assert_eq!(out.coinvariant_dims, vec![2, 0]);
        assert!(out.holds());

        let g = direct_product(&[alternating(5), cyclic(3)]);
        let f = p_perfect_filtration(&g, p).unwrap();
        let out = prop4_check(&g, p, &f).unwrap();
        assert!(out.holds());
        assert!(out.maps.iter().any(|m| m.isomorphism && !m.p_divides_index));
    }

    #[test]
    fn prop4_rejects_ill_formed_filtrations() {
        let p = pr(2);
        let s4 = symmetric(4);
        let bad = [
            s4.clone(),
            crate::catalog::klein_four_in_s4(),
            PermGroup::trivial(4),
        ];
        assert!(matches!(
            prop4_check_members(&s4, p, &bad),
            Err(GroupError::Contract(_))
        ));
        assert!(matches!(
            prop4_check_members(&s4, p, &[alternating(4), PermGroup::trivial(4)]),
            Err(GroupError::Contract(_))
        ));
        let f = p_perfect_filtration(&s4, p).unwrap();
        assert!(matches!(
            prop4_check(&s4, pr(3), &f),
            Err(GroupError::Contract(_))
        ));
    }
}
