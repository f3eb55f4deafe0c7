//! Deterministic Schreier-Sims.
//!
//! Each level stores a base point, the strong generators fixing all earlier
//! base points, and a Schreier vector for the orbit of the base point. New
//! base points are always the smallest point moved by the element that
//! forced the new level, so identical generator lists give identical chains.

use num_bigint::BigUint;

use crate::perm::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    pub gens: Vec<Permutation>,
    gen_inv: Vec<Permutation>,
    /// Orbit of `base` in discovery order.
    pub orbit: Vec<u32>,
    /// For each point: index of the generator that first reached it, or
    /// `NOT_IN_ORBIT` / `ROOT`.
    label: Vec<u32>,
    /// Per orbit position: how many generators have had their Schreier
    /// generator with this point sifted.
    done: Vec<u32>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut label = vec![NOT_IN_ORBIT; degree];
        label[base] = ROOT;
        Level {
            base,
            gens: Vec::new(),
            gen_inv: Vec::new(),
            orbit: vec![base as u32],
            label,
            done: vec![0],
        }
    }

    #[inline]
    pub fn in_orbit(&self, point: usize) -> bool {
        self.label[point] != NOT_IN_ORBIT
    }

    fn push_gen(&mut self, g: Permutation) {
        let gi = self.gens.len() as u32;
        self.gen_inv.push(g.inverse());
        self.gens.push(g);
        // Existing points under the new generator, then new points under all.
        let mut k = 0;
        let old_len = self.orbit.len();
        while k < self.orbit.len() {
            let b = self.orbit[k] as usize;
            if k < old_len {
                let c = self.gens[gi as usize].image(b);
                self.visit(c, gi);
            } else {
                for s in 0..self.gens.len() {
                    let c = self.gens[s].image(b);
                    self.visit(c, s as u32);
                }
            }
            k += 1;
        }
    }

    #[inline]
    fn visit(&mut self, point: usize, gen: u32) {
        if self.label[point] == NOT_IN_ORBIT {
            self.label[point] = gen;
            self.orbit.push(point as u32);
            self.done.push(0);
        }
    }

    /// Coset representative `u` with `base^u = point`.
    pub fn transversal(&self, point: usize) -> Permutation {
        let degree = self.label.len();
        let mut path = Vec::new();
        let mut b = point;
        while self.label[b] != ROOT {
            let s = self.label[b] as usize;
            path.push(s);
            b = self.gen_inv[s].image(b);
        }
        let mut u = Permutation::identity(degree);
        for &s in path.iter().rev() {
            u = u.compose(&self.gens[s]);
        }
        u
    }

    /// `g * u_point^-1` where `point = base^g`.
    fn strip(&self, g: &Permutation, point: usize) -> Permutation {
        let mut h = g.clone();
        let mut b = point;
        while self.label[b] != ROOT {
            let s = self.label[b] as usize;
            h = h.compose(&self.gen_inv[s]);
            b = self.gen_inv[s].image(b);
        }
        h
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    #[cfg(test)]
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain::new(degree);
        for g in gens {
            chain.insert(g);
        }
        chain
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * l.orbit.len())
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Sifts `g` from level `from`. Returns the residue and the level where
    /// sifting stopped (`levels.len()` when it went all the way through).
    pub fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.image(level.base);
            if !level.in_orbit(b) {
                return (h, i);
            }
            h = level.strip(&h, b);
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.sift(g, 0).0.is_identity()
    }

    /// Adds `g` to the group. Returns `false` if it was already a member.
    pub fn insert(&mut self, g: &Permutation) -> bool {
        let (h, j) = self.sift(g, 0);
        if h.is_identity() {
            return false;
        }
        self.add_residue(h, 0, j);
        true
    }

    /// Adds a sifting residue `h` (which fixes the first `j` base points) to
    /// levels `from..=j`, then restores the chain invariant below `from`.
    fn add_residue(&mut self, h: Permutation, from: usize, j: usize) {
        if j == self.levels.len() {
            let base = h
                .smallest_moved_point()
                .expect("a nontrivial residue moves some point");
            self.levels.push(Level::new(self.degree, base));
        }
        for k in from..=j {
            self.levels[k].push_gen(h.clone());
        }
        for k in (from..=j).rev() {
            self.saturate(k);
        }
    }

    /// Sifts every pending Schreier generator of level `l` through the
    /// deeper levels, adding residues until all of them sift to identity.
    fn saturate(&mut self, l: usize) {
        loop {
            let mut progressed = false;
            let mut oi = 0;
            while oi < self.levels[l].orbit.len() {
                while (self.levels[l].done[oi] as usize) < self.levels[l].gens.len() {
                    let gi = self.levels[l].done[oi] as usize;
                    self.levels[l].done[oi] += 1;
                    progressed = true;

                    let level = &self.levels[l];
                    let b = level.orbit[oi] as usize;
                    let s = &level.gens[gi];
                    let image = s.image(b);
                    let schreier = level.strip(&level.transversal(b).compose(s), image);
                    let (res, j) = self.sift(&schreier, l + 1);
                    if !res.is_identity() {
                        self.add_residue(res, l + 1, j);
                    }
                }
                oi += 1;
            }
            if !progressed {
                break;
            }
        }
    }

    /// All group elements, each exactly once, in a fixed order.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut elems = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let reps: Vec<Permutation> = level
                .orbit
                .iter()
                .map(|&b| level.transversal(b as usize))
                .collect();
            let mut next = Vec::with_capacity(elems.len() * reps.len());
            for u in &reps {
                for x in &elems {
                    next.push(x.compose(u));
                }
            }
            elems = next;
        }
        elems
    }

    /// Canonical representative of the right coset `self * g`: the element
    /// of the coset whose base images are lexicographically smallest.
    pub fn canonical_coset_rep(&self, g: &Permutation) -> Permutation {
        let mut h = g.clone();
        for level in &self.levels {
            let best = level
                .orbit
                .iter()
                .map(|&d| d as usize)
                .min_by_key(|&d| h.image(d))
                .expect("orbit contains the base point");
            if best != level.base {
                h = level.transversal(best).compose(&h);
            }
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    fn closure(n: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut seen = HashSet::new();
        let id = Permutation::identity(n);
        let mut stack = vec![id.clone()];
        seen.insert(id);
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        let s4 = StabChain::from_generators(4, &[perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])]);
        assert_eq!(s4.order(), BigUint::from(24u32));
        let a5 =
            StabChain::from_generators(5, &[perm(5, &[&[0, 1, 2, 3, 4]]), perm(5, &[&[0, 1, 2]])]);
        assert_eq!(a5.order(), BigUint::from(60u32));
        assert_eq!(a5.base()[0], 0);
    }

    #[test]
    fn elements_match_closure() {
        let gens = [perm(6, &[&[0, 1, 2], &[3, 4]]), perm(6, &[&[1, 5]])];
        let chain = StabChain::from_generators(6, &gens);
        let elems = chain.elements();
        let set: HashSet<_> = elems.iter().cloned().collect();
        assert_eq!(set.len(), elems.len());
        assert_eq!(set, closure(6, &gens));
        assert_eq!(chain.order(), BigUint::from(elems.len()));
    }

    #[test]
    fn canonical_coset_rep_is_constant_on_cosets() {
        let v4 = StabChain::from_generators(
            4,
            &[perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])],
        );
        let s4 = StabChain::from_generators(4, &[perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])]);
        let mut reps = HashSet::new();
        for g in s4.elements() {
            let r = v4.canonical_coset_rep(&g);
            for n in v4.elements() {
                assert_eq!(v4.canonical_coset_rep(&n.compose(&g)), r);
            }
            reps.insert(r);
        }
        assert_eq!(reps.len(), 6);
    }

    #[test]
    fn empty_generators_give_trivial_chain() {
        let chain = StabChain::from_generators(5, &[]);
        assert_eq!(chain.order(), BigUint::from(1u32));
        assert_eq!(chain.elements().len(), 1);
        assert!(chain.contains(&Permutation::identity(5)));
    }
}
