//! The lattice of normal subgroups of a small group, and chief series.
//!
//! Normal subgroups are the joins of normal closures of conjugacy classes.
//! Each one is stored with a bitmask over the sorted element list of the
//! ambient group, and the lattice is ordered by `(order, members)`, where
//! members are compared as ascending sequences of element indices.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::subgroup::normal_closure_unchecked;

/// Largest group order for which the normal-subgroup lattice is built.
pub const NORMAL_LATTICE_CAP: u64 = 10_000;

#[derive(Clone, Debug)]
struct Member {
    group: PermGroup,
    mask: FixedBitSet,
    order: u64,
}

/// All normal subgroups of a group, from the trivial group up to the group
/// itself.
#[derive(Clone, Debug)]
pub struct NormalLattice {
    ambient: PermGroup,
    elements: Vec<Permutation>,
    members: Vec<Member>,
}

fn compare_members(a: &Member, b: &Member) -> Ordering {
    a.order
        .cmp(&b.order)
        .then_with(|| a.mask.ones().cmp(b.mask.ones()))
}

impl NormalLattice {
    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Index of the trivial subgroup.
    pub fn bottom(&self) -> usize {
        0
    }

    /// Index of the ambient group.
    pub fn top(&self) -> usize {
        self.members.len() - 1
    }

    pub fn group(&self, i: usize) -> &PermGroup {
        &self.members[i].group
    }

    pub fn order(&self, i: usize) -> u64 {
        self.members[i].order
    }

    pub fn iter(&self) -> impl Iterator<Item = &PermGroup> {
        self.members.iter().map(|m| &m.group)
    }

    /// Whether member `j` is contained in member `i`.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.members[j].mask.is_subset(&self.members[i].mask)
    }

    /// Index of `h` in the lattice, or `None` if `h` is not a normal subgroup.
    pub fn position(&self, h: &PermGroup) -> Option<usize> {
        if h.degree() != self.ambient.degree() {
            return None;
        }
        let order = h.order_u64()?;
        self.members
            .iter()
            .position(|m| m.order == order && m.mask.ones().all(|k| h.has(&self.elements[k])))
    }

    /// Members properly contained in `i` and maximal with that property.
    pub fn maximal_below(&self, i: usize) -> Vec<usize> {
        let below: Vec<usize> = (0..self.len())
            .filter(|&j| j != i && self.contains(i, j))
            .collect();
        below
            .iter()
            .copied()
            .filter(|&j| !below.iter().any(|&k| k != j && self.contains(k, j)))
            .collect()
    }

    /// Members properly containing `j` and minimal with that property.
    pub fn minimal_above(&self, j: usize) -> Vec<usize> {
        let above: Vec<usize> = (0..self.len())
            .filter(|&i| i != j && self.contains(i, j))
            .collect();
        above
            .iter()
            .copied()
            .filter(|&i| !above.iter().any(|&k| k != i && self.contains(i, k)))
            .collect()
    }

    fn mask_of(&self, index: &HashMap<&Permutation, usize>, h: &PermGroup) -> Result<FixedBitSet> {
        let mut mask = FixedBitSet::with_capacity(self.elements.len());
        for e in h.elements_capped(NORMAL_LATTICE_CAP)? {
            mask.insert(index[&e]);
        }
        Ok(mask)
    }
}

/// Enumerates every normal subgroup of `g`. Capacity error above
/// [`NORMAL_LATTICE_CAP`].
pub fn normal_subgroups(g: &PermGroup) -> Result<NormalLattice> {
    g.ensure_order_at_most(NORMAL_LATTICE_CAP, "normal-subgroup lattice")?;
    let mut elements = g.elements()?;
    elements.sort();
    let mut lattice = NormalLattice {
        ambient: g.clone(),
        elements: elements.clone(),
        members: Vec::new(),
    };
    let index: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, x)| (x, i)).collect();

    // Conjugacy class representatives: the smallest element of each class.
    let mut seen = FixedBitSet::with_capacity(elements.len());
    let mut reps = Vec::new();
    for (i, x) in elements.iter().enumerate() {
        if seen.contains(i) {
            continue;
        }
        reps.push(x.clone());
        seen.insert(i);
        let mut queue = VecDeque::from([x.clone()]);
        while let Some(y) = queue.pop_front() {
            for s in g.generators() {
                let z = y.conjugate_by(s);
                let k = index[&z];
                if !seen.contains(k) {
                    seen.insert(k);
                    queue.push_back(z);
                }
            }
        }
    }

    let mut members: Vec<Member> = Vec::new();
    let push = |members: &mut Vec<Member>, group: PermGroup| -> Result<bool> {
        let mask = lattice.mask_of(&index, &group)?;
        if members.iter().any(|m| m.mask == mask) {
            return Ok(false);
        }
        let order = mask.count_ones(..) as u64;
        members.push(Member { group, mask, order });
        Ok(true)
    };
    for r in &reps {
        push(
            &mut members,
            normal_closure_unchecked(g, std::slice::from_ref(r)),
        )?;
    }
    let mut i = 0;
    while i < members.len() {
        for j in 0..i {
            let (a, b) = (&members[i], &members[j]);
            if a.mask.is_subset(&b.mask) || b.mask.is_subset(&a.mask) {
                continue;
            }
            let join = a.group.join(&b.group)?;
            push(&mut members, join)?;
        }
        i += 1;
    }
    members.sort_by(compare_members);
    lattice.members = members;
    debug_assert_eq!(lattice.order(lattice.bottom()), 1);
    debug_assert!(lattice.group(lattice.top()).same_as(g));
    Ok(lattice)
}

/// How to choose among equally good candidates when building a chief series.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// The first candidate in lattice order.
    #[default]
    First,
    /// The last candidate in lattice order.
    Last,
    /// Candidate `k mod n` at every step.
    Rotate(usize),
}

impl TieBreak {
    fn pick(self, candidates: &[usize]) -> usize {
        match self {
            TieBreak::First => candidates[0],
            TieBreak::Last => candidates[candidates.len() - 1],
            TieBreak::Rotate(k) => candidates[k % candidates.len()],
        }
    }
}

/// A chief series `G = N_0 > N_1 > ... > N_r = 1`.
pub fn chief_series(g: &PermGroup) -> Result<Vec<PermGroup>> {
    Ok(chief_series_with(&normal_subgroups(g)?, TieBreak::First))
}

/// Builds a chief series from the bottom: each step adds a minimal normal
/// subgroup above the current term, chosen among those of least order.
pub fn chief_series_with(lattice: &NormalLattice, tie: TieBreak) -> Vec<PermGroup> {
    let mut cur = lattice.bottom();
    let mut series = vec![lattice.group(cur).clone()];
    while cur != lattice.top() {
        let above = lattice.minimal_above(cur);
        let least = above.iter().map(|&i| lattice.order(i)).min().unwrap();
        let candidates: Vec<usize> = above
            .into_iter()
            .filter(|&i| lattice.order(i) == least)
            .collect();
        cur = tie.pick(&candidates);
        series.push(lattice.group(cur).clone());
    }
    series.reverse();
    series
}

/// The orders of the factors of a descending series.
pub fn factor_orders(series: &[PermGroup]) -> Result<Vec<u64>> {
    series
        .windows(2)
        .map(|w| {
            let q = w[0].order() / w[1].order();
            u64::try_from(&q)
                .map_err(|_| GroupError::Internal(format!("factor order {q} overflows")))
        })
        .collect()
}
