//! Primality and factorization of machine-size integers.

use std::collections::BTreeSet;

use num_prime::nt_funcs;

pub fn is_prime(n: u64) -> bool {
    nt_funcs::is_prime64(n)
}

/// Distinct prime divisors of `n`, ascending. Empty for 0 and 1.
pub fn prime_divisors(n: u64) -> BTreeSet<u64> {
    if n < 2 {
        return BTreeSet::new();
    }
    nt_funcs::factorize64(n).into_keys().collect()
}

/// The `count` smallest primes outside `excluded`.
pub fn smallest_primes_avoiding(excluded: &BTreeSet<u64>, count: usize) -> Vec<u64> {
    (2u64..)
        .filter(|&q| is_prime(q) && !excluded.contains(&q))
        .take(count)
        .collect()
}
