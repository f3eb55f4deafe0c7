use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{GroupError, Result};

/// Largest modulus accepted for `F_p` arithmetic.
pub const MAX_PRIME: u64 = 1 << 31;

/// A prime number validated at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(GroupError::input(format!("prime {p} exceeds 2^31")));
        }
        if !is_prime(p) {
            return Err(GroupError::input(format!("{p} is not a prime")));
        }
        Ok(Prime(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_u64(self) -> u64 {
        self.0 as u64
    }

    pub fn divides(self, n: &BigUint) -> bool {
        (n % self.0).is_zero()
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The largest power of `p` dividing `n`.
pub fn p_part(n: &BigUint, p: Prime) -> BigUint {
    let mut rest = n.clone();
    let mut part = BigUint::one();
    if rest.is_zero() {
        return part;
    }
    while p.divides(&rest) {
        rest /= p.get();
        part *= p.get();
    }
    part
}

/// `Some(k)` when `n == p^k`.
pub fn p_log(n: &BigUint, p: Prime) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let mut rest = n.clone();
    let mut k = 0;
    while p.divides(&rest) {
        rest /= p.get();
        k += 1;
    }
    rest.is_one().then_some(k)
}

pub fn is_p_power(n: &BigUint, p: Prime) -> bool {
    p_log(n, p).is_some()
}

/// Primes up to `bound` dividing `n`. Orders of groups of degree `d` only
/// have prime factors `<= d`, which is how callers use this.
pub fn prime_divisors_up_to(n: &BigUint, bound: u64) -> Vec<Prime> {
    (2..=bound)
        .filter(|&q| is_prime(q) && (n % q).is_zero())
        .map(|q| Prime(q as u32))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn p_part_examples() {
        let two = Prime::new(2).unwrap();
        let five = Prime::new(5).unwrap();
        assert_eq!(p_part(&big(48), two), big(16));
        assert_eq!(p_part(&big(60), five), big(5));
        assert_eq!(p_part(&big(15), two), big(1));
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(matches!(Prime::new(4), Err(GroupError::Input(_))));
        assert!(matches!(Prime::new(1), Err(GroupError::Input(_))));
        assert!(matches!(Prime::new(0), Err(GroupError::Input(_))));
        assert!(Prime::new(7).is_ok());
    }

    #[test]
    fn logs_and_divisors() {
        let three = Prime::new(3).unwrap();
        assert_eq!(p_log(&big(81), three), Some(4));
        assert_eq!(p_log(&big(1), three), Some(0));
        assert_eq!(p_log(&big(18), three), None);
        let ps: Vec<u32> = prime_divisors_up_to(&big(120), 5)
            .into_iter()
            .map(Prime::get)
            .collect();
        assert_eq!(ps, vec![2, 3, 5]);
    }
}
