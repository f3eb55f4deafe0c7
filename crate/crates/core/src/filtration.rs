//! Normal series attached to a prime: the descending chain
//! `M_1 = O^{p'}(G)`, `M_{i+1} = O^{p'}(O^p(M_i))` with its cohomological
//! solvability criterion, the canonical refined series and the length
//! invariants read off from it, and p-perfect filtrations.

use num_bigint::BigUint;
use serde::Serialize;

use crate::cohomology::{h1_dim, h1_fixed_dim};
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::lattice::{chief_series, normal_subgroups, NormalLattice};
use crate::prime::{is_p_power, Prime};
use crate::sylow::{o_p, o_p_prime, sylow_subgroup};

/// Largest group order for which [`exhaustive_lengths`] searches all normal series.
pub const EXHAUSTIVE_ORDER_CAP: u64 = 2000;

/// The shape of one factor `N_i / N_{i+1}` of a normal series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    PGroup,
    PPrimeGroup,
    NonPSolvableChief,
}

/// Classifies a factor of order `index` as a p-group or p'-group, if it is one.
pub fn classify_index(index: &BigUint, p: Prime) -> Option<FactorKind> {
    if is_p_power(index, p) {
        Some(FactorKind::PGroup)
    } else if !p.divides(index) {
        Some(FactorKind::PPrimeGroup)
    } else {
        None
    }
}

#[derive(Clone, Debug)]
pub struct TheoremATerm {
    pub group: PermGroup,
    /// `dim H^1(M_i)^P`.
    pub fixed_dim: usize,
}

/// The chain `M_1 >= M_2 >= ...` up to stabilization, with the data of the
/// cohomological p-solvability criterion.
#[derive(Clone, Debug)]
pub struct TheoremAFiltration {
    p: Prime,
    ambient: PermGroup,
    sylow: PermGroup,
    terms: Vec<TheoremATerm>,
    stable: PermGroup,
    lhs_dim: usize,
}

impl TheoremAFiltration {
    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn sylow(&self) -> &PermGroup {
        &self.sylow
    }

    /// The distinct terms `M_1, ..., M_t`. The trivial group appears only
    /// when it is `M_1`.
    pub fn terms(&self) -> &[TheoremATerm] {
        &self.terms
    }

    /// The term at which the chain stabilizes.
    pub fn stable(&self) -> &PermGroup {
        &self.stable
    }

    /// `dim H^1(P)`.
    pub fn lhs_dim(&self) -> usize {
        self.lhs_dim
    }

    /// `sum_i dim H^1(M_i)^P`.
    pub fn rhs_dim(&self) -> usize {
        self.terms.iter().map(|t| t.fixed_dim).sum()
    }

    pub fn verdict(&self) -> bool {
        self.lhs_dim == self.rhs_dim()
    }
}

pub fn theorem_a_filtration(g: &PermGroup, p: Prime) -> Result<TheoremAFiltration> {
    let sylow = sylow_subgroup(g, p)?;
    theorem_a_filtration_with_sylow(g, &sylow, p)
}

pub(crate) fn theorem_a_filtration_with_sylow(
    g: &PermGroup,
    sylow: &PermGroup,
    p: Prime,
) -> Result<TheoremAFiltration> {
    let term = |m: &PermGroup| -> Result<TheoremATerm> {
        Ok(TheoremATerm {
            group: m.clone(),
            fixed_dim: h1_fixed_dim(m, sylow, p)?,
        })
    };
    let mut cur = o_p_prime(g, p)?;
    let mut terms = vec![term(&cur)?];
    while !cur.is_trivial() {
        let next = o_p_prime(&o_p(&cur, p)?, p)?;
        if next.same_as(&cur) {
            break;
        }
        cur = next;
        if !cur.is_trivial() {
            terms.push(term(&cur)?);
        }
    }
    Ok(TheoremAFiltration {
        p,
        ambient: g.clone(),
        sylow: sylow.clone(),
        terms,
        stable: cur,
        lhs_dim: h1_dim(sylow, p)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub lhs: usize,
    pub rhs: usize,
    pub p_solvable: bool,
}

/// `dim H^1(P)` against `sum_i dim H^1(M_i)^P`; equality holds exactly
/// when `G` is p-solvable.
pub fn theorem_a_criterion(g: &PermGroup, p: Prime) -> Result<Criterion> {
    let f = theorem_a_filtration(g, p)?;
    Ok(Criterion {
        lhs: f.lhs_dim(),
        rhs: f.rhs_dim(),
        p_solvable: f.verdict(),
    })
}

/// Whether every chief factor of `g` is a p-group or a p'-group.
pub fn is_p_solvable_direct(g: &PermGroup, p: Prime) -> Result<bool> {
    Ok(non_p_solvable_length(g, p)? == 0)
}

/// The number of chief factors that are neither p-groups nor p'-groups.
pub fn non_p_solvable_length(g: &PermGroup, p: Prime) -> Result<usize> {
    if !p.divides(g.order()) || is_p_power(g.order(), p) {
        return Ok(0);
    }
    Ok(count_non_p_solvable(&chief_series(g)?, p))
}

pub(crate) fn count_non_p_solvable(series: &[PermGroup], p: Prime) -> usize {
    series
        .windows(2)
        .filter(|w| classify_index(&(w[0].order() / w[1].order()), p).is_none())
        .count()
}

/// The canonical refined series: strip `O^{p'}`, strip `O^p`, and when both
/// are stuck at a nontrivial term, descend by one chief factor of `G`.
#[derive(Clone, Debug)]
pub struct RefinedSeries {
    p: Prime,
    terms: Vec<PermGroup>,
    kinds: Vec<FactorKind>,
}

impl RefinedSeries {
    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn terms(&self) -> &[PermGroup] {
        &self.terms
    }

    /// `kinds()[i]` describes `terms()[i] / terms()[i + 1]`.
    pub fn kinds(&self) -> &[FactorKind] {
        &self.kinds
    }

    pub fn factor_order(&self, i: usize) -> BigUint {
        self.terms[i].order() / self.terms[i + 1].order()
    }

    pub fn count(&self, kind: FactorKind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }

    /// Number of p-group factors.
    pub fn p_length(&self) -> usize {
        self.count(FactorKind::PGroup)
    }

    /// Number of factors of order divisible by p.
    pub fn generalized_p_length(&self) -> usize {
        (0..self.kinds.len())
            .filter(|&i| self.p.divides(&self.factor_order(i)))
            .count()
    }
}

pub fn canonical_series(g: &PermGroup, p: Prime) -> Result<RefinedSeries> {
    let mut terms = vec![g.clone()];
    let mut kinds = Vec::new();
    let mut lattice: Option<NormalLattice> = None;
    let mut cur = g.clone();
    while !cur.is_trivial() {
        let head = o_p_prime(&cur, p)?;
        if !head.same_as(&cur) {
            cur = head;
            terms.push(cur.clone());
            kinds.push(FactorKind::PPrimeGroup);
        }
        let residue = o_p(&cur, p)?;
        if !residue.same_as(&cur) {
            cur = residue;
            terms.push(cur.clone());
            kinds.push(FactorKind::PGroup);
            continue;
        }
        if cur.is_trivial() {
            break;
        }
        if lattice.is_none() {
            lattice = Some(normal_subgroups(g)?);
        }
        let lat = lattice.as_ref().unwrap();
        let here = lat
            .position(&cur)
            .ok_or_else(|| GroupError::Internal("series term is not a normal subgroup".into()))?;
        let below = lat.maximal_below(here);
        let next = *below
            .iter()
            .max_by(|&&a, &&b| lat.order(a).cmp(&lat.order(b)).then(b.cmp(&a)))
            .ok_or_else(|| GroupError::Internal("nontrivial term has nothing below".into()))?;
        cur = lat.group(next).clone();
        terms.push(cur.clone());
        kinds.push(FactorKind::NonPSolvableChief);
    }
    Ok(RefinedSeries { p, terms, kinds })
}

/// Number of p-group factors in the canonical refined series.
pub fn p_length(g: &PermGroup, p: Prime) -> Result<usize> {
    Ok(canonical_series(g, p)?.p_length())
}

/// Number of factors of order divisible by p in the canonical refined series.
pub fn generalized_p_length(g: &PermGroup, p: Prime) -> Result<usize> {
    Ok(canonical_series(g, p)?.generalized_p_length())
}

/// Minima over all normal series of `G` whose factors are p-groups,
/// p'-groups, or non-p-solvable chief factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveLengths {
    /// Fewest factors of order divisible by p.
    pub generalized_p_length: usize,
    /// Fewest p-group factors.
    pub p_length: usize,
}

pub fn exhaustive_lengths(g: &PermGroup, p: Prime) -> Result<ExhaustiveLengths> {
    g.ensure_order_at_most(EXHAUSTIVE_ORDER_CAP, "exhaustive normal-series search")?;
    Ok(exhaustive_lengths_in(&normal_subgroups(g)?, p))
}

/// Shortest paths from the top of the lattice to the bottom, processed in
/// increasing order so every lower endpoint is final before it is used.
pub fn exhaustive_lengths_in(lattice: &NormalLattice, p: Prime) -> ExhaustiveLengths {
    let n = lattice.len();
    let mut generalized = vec![usize::MAX; n];
    let mut plen = vec![usize::MAX; n];
    generalized[lattice.bottom()] = 0;
    plen[lattice.bottom()] = 0;
    for i in 0..n {
        let maximal = lattice.maximal_below(i);
        for j in 0..i {
            if !lattice.contains(i, j) || generalized[j] == usize::MAX {
                continue;
            }
            let index = BigUint::from(lattice.order(i) / lattice.order(j));
            let (wg, wp) = match classify_index(&index, p) {
                Some(FactorKind::PGroup) => (1, 1),
                Some(_) => (0, 0),
                None if maximal.contains(&j) => (1, 0),
                None => continue,
            };
            generalized[i] = generalized[i].min(generalized[j] + wg);
            plen[i] = plen[i].min(plen[j] + wp);
        }
    }
    ExhaustiveLengths {
        generalized_p_length: generalized[lattice.top()],
        p_length: plen[lattice.top()],
    }
}

/// The label of a gap between consecutive members of a p-perfect filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapTag {
    PGroup,
    PPrimeGroup,
    NonPSolvableChief,
    /// Several factors of the refined series merged into one gap.
    Composite,
}

#[derive(Clone, Debug)]
pub struct PPerfectGap {
    /// `|J_i : J_{i+1}|`.
    pub index: BigUint,
    /// The refined-series factors making up this gap, top first.
    pub pieces: Vec<FactorKind>,
}

impl PPerfectGap {
    pub fn tag(&self) -> GapTag {
        match self.pieces.as_slice() {
            [FactorKind::PGroup] => GapTag::PGroup,
            [FactorKind::PPrimeGroup] => GapTag::PPrimeGroup,
            [FactorKind::NonPSolvableChief] => GapTag::NonPSolvableChief,
            _ => GapTag::Composite,
        }
    }
}

/// `G = J_0 > J_1 > ... > J_r = 1` with every `J_i`, `i >= 1`, p-perfect.
#[derive(Clone, Debug)]
pub struct PPerfectFiltration {
    p: Prime,
    ambient: PermGroup,
    members: Vec<PermGroup>,
    gaps: Vec<PPerfectGap>,
}

impl PPerfectFiltration {
    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn members(&self) -> &[PermGroup] {
        &self.members
    }

    pub fn gaps(&self) -> &[PPerfectGap] {
        &self.gaps
    }

    /// Number of gaps of index divisible by p.
    pub fn pperfect_length(&self) -> usize {
        self.gaps
            .iter()
            .filter(|g| self.p.divides(&g.index))
            .count()
    }
}

/// Keeps `G`, `1`, and the p-perfect terms of the canonical refined series.
pub fn p_perfect_filtration(g: &PermGroup, p: Prime) -> Result<PPerfectFiltration> {
    p_perfect_filtration_from(g, &canonical_series(g, p)?)
}

pub fn p_perfect_filtration_from(
    g: &PermGroup,
    series: &RefinedSeries,
) -> Result<PPerfectFiltration> {
    let p = series.p;
    let terms = &series.terms;
    let last = terms.len() - 1;
    let mut keep = vec![0];
    for (i, t) in terms.iter().enumerate().skip(1) {
        if i == last || h1_dim(t, p)? == 0 {
            keep.push(i);
        }
    }
    let members = keep.iter().map(|&i| terms[i].clone()).collect();
    let gaps = keep
        .windows(2)
        .map(|w| PPerfectGap {
            index: terms[w[0]].order() / terms[w[1]].order(),
            pieces: series.kinds[w[0]..w[1]].to_vec(),
        })
        .collect();
    Ok(PPerfectFiltration {
        p,
        ambient: g.clone(),
        members,
        gaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{alternating, catalog_get, cyclic, dihedral, klein_four_in_s4, symmetric};

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn orders(gs: &[PermGroup]) -> Vec<u64> {
        gs.iter().map(|g| g.order_u64().unwrap()).collect()
    }

    #[test]
    fn theorem_a_filtration_examples() {
        let p = pr(2);
        let f = theorem_a_filtration(&symmetric(4), p).unwrap();
        let groups: Vec<PermGroup> = f.terms().iter().map(|t| t.group.clone()).collect();
        assert_eq!(orders(&groups), vec![24, 4]);
        assert!(groups[1].same_as(&klein_four_in_s4()));
        let dims: Vec<usize> = f.terms().iter().map(|t| t.fixed_dim).collect();
        assert_eq!(dims, vec![1, 1]);
        assert!(f.stable().is_trivial());
        assert_eq!(f.lhs_dim(), 2);

        let a5 = alternating(5);
        let f = theorem_a_filtration(&a5, p).unwrap();
        assert_eq!(f.terms().len(), 1);
        assert_eq!(f.terms()[0].fixed_dim, 0);
        assert!(f.stable().same_as(&a5));
        assert_eq!(f.lhs_dim(), 2);

        let f = theorem_a_filtration(&cyclic(15), p).unwrap();
        assert_eq!(f.terms().len(), 1);
        assert!(f.terms()[0].group.is_trivial());
        assert_eq!((f.lhs_dim(), f.rhs_dim()), (0, 0));
    }

    #[test]
    fn theorem_a_criterion_examples() {
        let p = pr(2);
        let c = |g: &PermGroup| theorem_a_criterion(g, p).unwrap();
        assert_eq!(
            c(&symmetric(4)),
            Criterion {
                lhs: 2,
                rhs: 2,
                p_solvable: true
            }
        );
        assert_eq!(
            c(&alternating(5)),
            Criterion {
                lhs: 2,
                rhs: 0,
                p_solvable: false
            }
        );
        let sl23 = catalog_get("SL(2,3)").unwrap();
        assert_eq!(
            c(&sl23),
            Criterion {
                lhs: 2,
                rhs: 2,
                p_solvable: true
            }
        );
    }

    #[test]
    fn direct_p_solvability() {
        assert!(!is_p_solvable_direct(&alternating(5), pr(2)).unwrap());
        for p in [2, 3, 5, 7] {
            assert!(is_p_solvable_direct(&symmetric(4), pr(p)).unwrap());
        }
        assert!(is_p_solvable_direct(&alternating(5), pr(7)).unwrap());
        assert!(is_p_solvable_direct(&cyclic(15), pr(2)).unwrap());
    }

    #[test]
    fn canonical_series_examples() {
        let s = canonical_series(&symmetric(4), pr(2)).unwrap();
        assert_eq!(orders(s.terms()), vec![24, 12, 4, 1]);
        use FactorKind::*;
        assert_eq!(s.kinds(), &[PGroup, PPrimeGroup, PGroup]);

        let cover = catalog_get("2.S5").unwrap();
        let s = canonical_series(&cover, pr(2)).unwrap();
        assert_eq!(orders(s.terms()), vec![240, 120, 2, 1]);
        assert_eq!(s.kinds(), &[PGroup, NonPSolvableChief, PGroup]);
        assert_eq!((s.p_length(), s.generalized_p_length()), (2, 3));

        let s = canonical_series(&cyclic(15), pr(2)).unwrap();
        assert_eq!(s.kinds(), &[PPrimeGroup]);
    }

    #[test]
    fn length_examples() {
        let p = pr(2);
        assert_eq!(p_length(&symmetric(4), p).unwrap(), 2);
        assert_eq!(p_length(&alternating(5), p).unwrap(), 0);
        assert_eq!(generalized_p_length(&alternating(5), p).unwrap(), 1);
        assert_eq!(generalized_p_length(&symmetric(4), p).unwrap(), 2);
        let cover = catalog_get("2.S5").unwrap();
        assert_eq!(p_length(&cover, p).unwrap(), 2);
        assert_eq!(generalized_p_length(&cover, p).unwrap(), 3);
        assert_eq!(non_p_solvable_length(&alternating(5), p).unwrap(), 1);
        assert_eq!(non_p_solvable_length(&symmetric(4), p).unwrap(), 0);
        let aa = catalog_get("A5xA5").unwrap();
        assert_eq!(non_p_solvable_length(&aa, p).unwrap(), 2);
        assert_eq!(non_p_solvable_length(&aa, pr(7)).unwrap(), 0);
    }

    #[test]
    fn exhaustive_examples() {
        let p = pr(2);
        let cover = catalog_get("2.S5").unwrap();
        let e = exhaustive_lengths(&cover, p).unwrap();
        assert_eq!(
            e,
            ExhaustiveLengths {
                generalized_p_length: 3,
                p_length: 2
            }
        );
        let e = exhaustive_lengths(&symmetric(4), p).unwrap();
        assert_eq!(
            e,
            ExhaustiveLengths {
                generalized_p_length: 2,
                p_length: 2
            }
        );
        let e = exhaustive_lengths(&dihedral(8), p).unwrap();
        assert_eq!(e.p_length, 1);
        assert!(matches!(
            exhaustive_lengths(&catalog_get("A5xA5").unwrap(), p),
            Err(GroupError::Capacity { .. })
        ));
    }

    #[test]
    fn p_perfect_filtration_examples() {
        let p = pr(2);
        let f = p_perfect_filtration(&symmetric(4), p).unwrap();
        assert_eq!(orders(f.members()), vec![24, 12, 1]);
        assert_eq!(f.pperfect_length(), 2);
        let tags: Vec<GapTag> = f.gaps().iter().map(PPerfectGap::tag).collect();
        assert_eq!(tags, vec![GapTag::PGroup, GapTag::Composite]);

        let f = p_perfect_filtration(&catalog_get("2.S5").unwrap(), p).unwrap();
        assert_eq!(orders(f.members()), vec![240, 120, 1]);
        assert_eq!(f.pperfect_length(), 2);

        for q in [2, 3, 5] {
            let f = p_perfect_filtration(&alternating(5), pr(q)).unwrap();
            assert_eq!(orders(f.members()), vec![60, 1]);
            assert_eq!(f.pperfect_length(), 1);
            assert_eq!(f.gaps()[0].tag(), GapTag::NonPSolvableChief);
        }

        let f = p_perfect_filtration(&PermGroup::trivial(2), p).unwrap();
        assert_eq!(f.members().len(), 1);
        assert_eq!(f.pperfect_length(), 0);
    }
}
