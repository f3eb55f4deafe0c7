//! First homology and cohomology with trivial `F_p` coefficients.
//!
//! `H_1(N) = N / N^p[N,N]` is realized as an `F_p`-vector space with an
//! explicit projection from elements of `N` to coordinates. `H^1(N)` is its
//! dual, so `dim H^1(N)^P` is computed as the dimension of the coinvariants
//! `H_1(N)_P`. [`h1_hom_oracle`] recomputes the same number by brute-force
//! enumeration of homomorphisms without going through any of this.

use std::collections::HashMap;

use crate::error::{GroupError, Result};
use crate::group::{GroupBuilder, PermGroup};
use crate::linalg::FpMatrix;
use crate::perm::Permutation;
use crate::prime::{p_log, Prime};
use crate::subgroup::{derived_subgroup, intersection};
use crate::sylow::{o_p, sylow_subgroup};

/// Largest rank of `N / N^p[N,N]` handled by the projection.
pub const MAX_ABELIANIZATION_RANK: u32 = 20;
/// Largest `|N|` accepted by [`h1_hom_oracle`].
pub const ORACLE_ORDER_CAP: u64 = 5000;
/// Largest number of candidate assignments tried by [`h1_hom_oracle`].
pub const ORACLE_ASSIGNMENT_CAP: u64 = 10_000_000;

/// `N / N^p[N,N]` with a fixed basis of coset representatives.
#[derive(Clone, Debug)]
pub struct ModPAbelianization {
    source: PermGroup,
    p: Prime,
    kernel: PermGroup,
    basis: Vec<Permutation>,
    /// `tower[j] = <kernel, basis[..j]>`; the last entry is `source`.
    tower: Vec<PermGroup>,
}

impl ModPAbelianization {
    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// `N^p[N,N]`.
    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coset representatives of the basis vectors.
    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    /// Coordinates of `g N^p[N,N]`. Errors if `g` is not in `N`.
    pub fn project(&self, g: &Permutation) -> Result<Vec<u32>> {
        if !self.source.contains(g)? {
            return Err(GroupError::contract(format!(
                "project: {g} is not an element of N"
            )));
        }
        Ok(self.project_member(g))
    }

    /// Peels off one basis element at a time: `g` lies in
    /// `tower[j-1] * basis[j-1]^c` for exactly one `c` in `0..p`.
    fn project_member(&self, g: &Permutation) -> Vec<u32> {
        let d = self.dim();
        let mut coords = vec![0u32; d];
        let mut h = g.clone();
        for j in (0..d).rev() {
            let b_inv = self.basis[j].inverse();
            let mut c = 0;
            while !self.tower[j].has(&h) {
                h = h.compose(&b_inv);
                c += 1;
                debug_assert!(c < self.p.get(), "coordinate search overran p");
            }
            coords[j] = c;
        }
        coords
    }
}

/// Builds `N / N^p[N,N]`. The basis is chosen greedily from the generators
/// of `N`, in generator order.
pub fn mod_p_abelianization(n: &PermGroup, p: Prime) -> Result<ModPAbelianization> {
    let mut kb = GroupBuilder::from_group(&derived_subgroup(n));
    for g in n.generators() {
        kb.push_generator(g.pow(p.as_u64()));
    }
    let kernel = kb.finish();
    let index = n.order() / kernel.order();
    let rank = p_log(&index, p).ok_or_else(|| {
        GroupError::Internal(format!("|N : N^p[N,N]| = {index} is not a power of {p}"))
    })?;
    if rank > MAX_ABELIANIZATION_RANK {
        return Err(GroupError::capacity(
            format!("mod-{p} abelianization of rank {rank}"),
            MAX_ABELIANIZATION_RANK as u64,
        ));
    }
    let mut tower = vec![kernel.clone()];
    let mut basis = Vec::new();
    let mut top = GroupBuilder::from_group(&kernel);
    for g in n.generators() {
        if top.push_generator(g.clone()) {
            basis.push(g.clone());
            tower.push(top.clone().finish());
        }
    }
    debug_assert_eq!(basis.len() as u32, rank);
    Ok(ModPAbelianization {
        source: n.clone(),
        p,
        kernel,
        basis,
        tower,
    })
}

/// `dim H^1(G, F_p) = dim Hom(G, F_p)`.
pub fn h1_dim(g: &PermGroup, p: Prime) -> Result<usize> {
    Ok(mod_p_abelianization(g, p)?.dim())
}

/// The conjugation action of a group `P` normalizing `N` on `H_1(N)`.
#[derive(Clone, Debug)]
pub struct ConjugationAction {
    module: ModPAbelianization,
    actor: PermGroup,
    matrices: Vec<FpMatrix>,
}

impl ConjugationAction {
    pub fn module(&self) -> &ModPAbelianization {
        &self.module
    }

    pub fn actor(&self) -> &PermGroup {
        &self.actor
    }

    /// One matrix per generator of the actor, acting on row vectors:
    /// `project(x^-1 g x) = project(g) * matrix(x)`.
    pub fn matrices(&self) -> &[FpMatrix] {
        &self.matrices
    }

    /// Stacked rows of `I - A_x`, spanning the relations `v - v A_x`.
    pub fn relations(&self) -> FpMatrix {
        let p = self.module.p;
        let d = self.module.dim();
        let id = FpMatrix::identity(p, d);
        self.matrices
            .iter()
            .fold(FpMatrix::zeros(p, 0, d), |acc, a| acc.vstack(&id.sub(a)))
    }

    /// `dim H_1(N)_P`, equal to `dim H^1(N)^P`.
    pub fn coinvariant_dim(&self) -> usize {
        self.module.dim() - self.relations().rank()
    }
}

pub fn conjugation_action(ab: &ModPAbelianization, actor: &PermGroup) -> Result<ConjugationAction> {
    let n = &ab.source;
    ab.source.check_same_degree(actor)?;
    if !actor.normalizes(n) {
        return Err(GroupError::contract(
            "conjugation_action: P does not normalize N",
        ));
    }
    let p = ab.p;
    let d = ab.dim();
    let matrices = actor
        .generators()
        .iter()
        .map(|x| {
            let rows: Vec<Vec<u32>> = ab
                .basis
                .iter()
                .map(|b| ab.project_member(&b.conjugate_by(x)))
                .collect();
            FpMatrix::from_rows(p, d, &rows)
        })
        .collect();
    Ok(ConjugationAction {
        module: ab.clone(),
        actor: actor.clone(),
        matrices,
    })
}

/// `dim H^1(N)^P` via coinvariants of the conjugation action.
pub fn h1_fixed_dim(n: &PermGroup, actor: &PermGroup, p: Prime) -> Result<usize> {
    let ab = mod_p_abelianization(n, p)?;
    Ok(conjugation_action(&ab, actor)?.coinvariant_dim())
}

/// Independent count of `dim H^1(N)^P`.
///
/// Enumerates every assignment of `F_p` values to a generating set of `N`,
/// keeps those that extend to a homomorphism (checked edge by edge on the
/// Cayley graph of `N`), keeps those fixed by conjugation by every
/// generator of `P`, and returns `log_p` of the count.
pub fn h1_hom_oracle(n: &PermGroup, actor: &PermGroup, p: Prime) -> Result<usize> {
    n.check_same_degree(actor)?;
    if !actor.normalizes(n) {
        return Err(GroupError::contract(
            "h1_hom_oracle: P does not normalize N",
        ));
    }
    let elems = n.elements_capped(ORACLE_ORDER_CAP)?;
    let index: HashMap<&Permutation, usize> =
        elems.iter().enumerate().map(|(i, g)| (g, i)).collect();

    // Irredundant generating set, greedily from the given generators.
    let mut gb = GroupBuilder::new(n.degree());
    let gens: Vec<Permutation> = n
        .generators()
        .iter()
        .filter(|g| gb.push_generator((*g).clone()))
        .cloned()
        .collect();
    let k = gens.len();
    let pp = p.as_u64();
    let total = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(pp));
    match total {
        Some(t) if t <= ORACLE_ASSIGNMENT_CAP => {}
        _ => {
            return Err(GroupError::capacity(
                format!("{p}^{k} homomorphism candidates"),
                ORACLE_ASSIGNMENT_CAP,
            ))
        }
    }

    let step: Vec<Vec<usize>> = elems
        .iter()
        .map(|g| gens.iter().map(|s| index[&g.compose(s)]).collect())
        .collect();
    // BFS spanning tree from the identity: (element, parent, generator).
    let id_idx = index[&n.identity()];
    let mut tree = Vec::with_capacity(elems.len());
    let mut seen = vec![false; elems.len()];
    seen[id_idx] = true;
    let mut queue = std::collections::VecDeque::from([id_idx]);
    while let Some(i) = queue.pop_front() {
        for (s, &j) in step[i].iter().enumerate() {
            if !seen[j] {
                seen[j] = true;
                tree.push((j, i, s));
                queue.push_back(j);
            }
        }
    }
    let conj: Vec<Vec<(usize, usize)>> = actor
        .generators()
        .iter()
        .map(|x| {
            gens.iter()
                .enumerate()
                .map(|(s, g)| (s, index[&g.conjugate_by(x)]))
                .collect()
        })
        .collect();

    let mut values = vec![0u32; k];
    let mut phi = vec![0u32; elems.len()];
    let mut count = 0u64;
    let p32 = p.get();
    loop {
        phi[id_idx] = 0;
        for &(j, parent, s) in &tree {
            phi[j] = (phi[parent] + values[s]) % p32;
        }
        let is_hom = (0..elems.len()).all(|i| {
            step[i]
                .iter()
                .enumerate()
                .all(|(s, &j)| phi[j] == (phi[i] + values[s]) % p32)
        });
        if is_hom && conj.iter().flatten().all(|&(s, c)| phi[c] == values[s]) {
            count += 1;
        }
        // Next assignment in base-p counting order.
        let mut pos = 0;
        while pos < k {
            values[pos] += 1;
            if values[pos] < p32 {
                break;
            }
            values[pos] = 0;
            pos += 1;
        }
        if pos == k {
            break;
        }
    }
    let dim = p_log(&count.into(), p).ok_or_else(|| {
        GroupError::Internal(format!("{count} fixed homomorphisms is not a power of {p}"))
    })?;
    Ok(dim as usize)
}

/// The three dimensions in the short exact sequence
/// `0 -> H^1(P/M) -> H^1(P) -> H^1(M)^P -> 0`, where `M = N ∩ P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaOneDims {
    /// `dim H^1(P)`.
    pub sylow: usize,
    /// `dim H^1(P/M)`.
    pub quotient: usize,
    /// `dim H^1(M)^P`.
    pub fixed: usize,
}

impl LemmaOneDims {
    pub fn holds(&self) -> bool {
        self.sylow == self.quotient + self.fixed
    }
}

/// Dimensions for a normal subgroup `N` of `G` with `O^p(N) = N`.
pub fn lemma1_dims(g: &PermGroup, n: &PermGroup, p: Prime) -> Result<LemmaOneDims> {
    let sylow = sylow_subgroup(g, p)?;
    lemma1_dims_with_sylow(g, n, &sylow, p)
}

pub(crate) fn lemma1_dims_with_sylow(
    g: &PermGroup,
    n: &PermGroup,
    sylow: &PermGroup,
    p: Prime,
) -> Result<LemmaOneDims> {
    if !g.is_normal(n)? {
        return Err(GroupError::contract("lemma1: N is not normal in G"));
    }
    if !o_p(n, p)?.same_as(n) {
        return Err(GroupError::contract(
            "lemma1: N is not p-perfect (O^p(N) != N)",
        ));
    }
    let m = intersection(n, sylow)?;
    let q = sylow.quotient(&m)?;
    Ok(LemmaOneDims {
        sylow: h1_dim(sylow, p)?,
        quotient: h1_dim(q.group(), p)?,
        fixed: h1_fixed_dim(&m, sylow, p)?,
    })
}

pub fn lemma1_dims_check(g: &PermGroup, n: &PermGroup, p: Prime) -> Result<bool> {
    Ok(lemma1_dims(g, n, p)?.holds())
}
