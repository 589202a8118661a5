use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{IntMatrix, LinalgError};
use crate::primes::is_prime;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r.sign() == num_bigint::Sign::Minus { r + p } else { r };
    r.to_u64().expect("residue below p")
}

/// Rank of `a` over the field with `p` elements.
pub fn rank_mod_p(a: &IntMatrix, p: u64) -> Result<usize, LinalgError> {
    if !is_prime(p) {
        return Err(LinalgError::NotPrime { p });
    }
    let cols = a.cols();
    let mut rows: Vec<Vec<u64>> =
        (0..a.rows()).map(|i| a.row(i).iter().map(|x| reduce(x, p)).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for x in rows[rank][c..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pr = &head[rank];
        for row in tail.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, y) in row[c..].iter_mut().zip(&pr[c..]) {
                let m = mul_mod(f, *y, p);
                *x = if *x >= m { *x - m } else { *x + (p - m) };
            }
        }
        rank += 1;
    }
    Ok(rank)
}
