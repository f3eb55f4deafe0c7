//! Brute-force oracles that only use permutation multiplication.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;
use psolv::{PermGroup, Permutation, Prime};

/// All elements of the group generated by `gens`, by breadth-first closure.
pub fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = x.compose(s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn elements(g: &PermGroup) -> HashSet<Permutation> {
    closure(g.degree(), g.generators())
}

/// `log_p` of an exact power of `p`.
pub fn log_p(mut n: usize, p: Prime) -> usize {
    let p = p.as_u64() as usize;
    let mut k = 0;
    while n > 1 {
        assert_eq!(n % p, 0, "not a power of {p}");
        n /= p;
        k += 1;
    }
    k
}

/// `dim_F_p` of the coinvariants `H_1(N)_P`, as `log_p |N : N^p [N,N] [N,P]|`.
/// With `actor` trivial this is `dim H^1(N, F_p)`.
pub fn coinvariant_dim(n: &PermGroup, actor: &[Permutation], p: Prime) -> usize {
    let elems = elements(n);
    let mut gens: Vec<Permutation> = Vec::new();
    let gs = n.generators();
    for a in gs {
        gens.push(a.pow(p.as_u64()));
        for b in gs {
            gens.push(Permutation::commutator(a, b));
        }
        for x in actor {
            gens.push(a.inverse().compose(&a.conjugate_by(x)));
        }
    }
    // Normal closure in N of these generators, by brute force.
    let mut kernel = closure(n.degree(), &gens);
    loop {
        let conj: Vec<Permutation> = kernel
            .iter()
            .flat_map(|k| gs.iter().map(move |s| k.conjugate_by(s)))
            .filter(|c| !kernel.contains(c))
            .collect();
        if conj.is_empty() {
            break;
        }
        gens.extend(conj);
        kernel = closure(n.degree(), &gens);
    }
    log_p(elems.len() / kernel.len(), p)
}

pub fn h1_dim_oracle(n: &PermGroup, p: Prime) -> usize {
    coinvariant_dim(n, &[], p)
}

pub fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

pub fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// Subgroups of `S_degree` generated by one to three random permutations.
pub fn arb_group(degree: usize) -> impl Strategy<Value = PermGroup> {
    prop::collection::vec(arb_perm(degree), 1..=3)
        .prop_map(move |gens| PermGroup::new(degree, gens).unwrap())
}
