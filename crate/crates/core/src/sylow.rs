//! Sylow subgroups, the residuals `O^p` and `O^{p'}`, p-nilpotency and
//! minimal generator counts of p-groups.

use num_bigint::BigUint;

use crate::error::{GroupError, Result};
use crate::group::{GroupBuilder, PermGroup, DEFAULT_ENUMERATION_CAP};
use crate::prime::{is_p_power, p_log, p_part, Prime};
use crate::subgroup::{frattini_of_p_group, normal_closure_unchecked, normalizer_among};

/// A Sylow `p`-subgroup of `g`; the trivial group when `p` does not divide `|g|`.
///
/// Seeds with the `p`-component of an element of maximal `p`-power order,
/// then repeatedly adjoins a `p`-element of the normalizer lying outside
/// the current subgroup. Only groups within the enumeration cap are handled.
pub fn sylow_subgroup(g: &PermGroup, p: Prime) -> Result<PermGroup> {
    let target = p_part(g.order(), p);
    if target == BigUint::from(1u32) {
        return Ok(PermGroup::trivial(g.degree()));
    }
    if &target == g.order() {
        return Ok(g.clone());
    }
    let elems = g.elements_capped(DEFAULT_ENUMERATION_CAP)?;

    let mut best = g.identity();
    let mut best_order = BigUint::from(1u32);
    for x in &elems {
        let c = x.p_component(p);
        let o = c.order();
        if o > best_order {
            best_order = o;
            best = c;
        }
    }
    let mut b = GroupBuilder::new(g.degree());
    b.push_generator(best);
    let mut current = b.finish();

    while current.order() < &target {
        let norm = normalizer_among(&elems, &current);
        let ext = elems
            .iter()
            .find(|x| norm.has(x) && !current.has(x) && x.is_p_element(p))
            .cloned()
            .ok_or_else(|| {
                GroupError::Internal(format!(
                    "no p-element extends a p-subgroup of order {} in its normalizer",
                    current.order()
                ))
            })?;
        let mut b = GroupBuilder::from_group(&current);
        b.push_generator(ext);
        let next = b.finish();
        if !is_p_power(next.order(), p) {
            return Err(GroupError::Internal(format!(
                "Sylow extension produced order {}, not a power of {p}",
                next.order()
            )));
        }
        current = next;
    }
    Ok(current)
}

/// `O^p(G)`: the normal closure of one Sylow `q`-subgroup for each prime
/// `q != p` dividing `|G|`.
pub fn o_p(g: &PermGroup, p: Prime) -> Result<PermGroup> {
    let mut gens = Vec::new();
    for q in g.prime_divisors() {
        if q != p {
            gens.extend(sylow_subgroup(g, q)?.generators().iter().cloned());
        }
    }
    Ok(normal_closure_unchecked(g, &gens))
}

/// `O^{p'}(G)`: the normal closure of a Sylow `p`-subgroup.
pub fn o_p_prime(g: &PermGroup, p: Prime) -> Result<PermGroup> {
    let sylow = sylow_subgroup(g, p)?;
    Ok(normal_closure_unchecked(g, sylow.generators()))
}

/// Whether `g` has a normal `p`-complement, i.e. `p` does not divide `|O^p(G)|`.
pub fn is_p_nilpotent(g: &PermGroup, p: Prime) -> Result<bool> {
    Ok(!p.divides(o_p(g, p)?.order()))
}

/// `d(P) = log_p |P : Φ(P)|` for a p-group `P`.
pub fn min_generators_p_group(pg: &PermGroup, p: Prime) -> Result<u32> {
    let phi = frattini_of_p_group(pg, p)?;
    let index = pg.order() / phi.order();
    p_log(&index, p)
        .ok_or_else(|| GroupError::Internal(format!("|P : Φ(P)| = {index} is not a power of {p}")))
}
