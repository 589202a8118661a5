use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A Lyndon word over the letters `1..=d`.
///
/// Ordering is lexicographic with a proper prefix sorting first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct LyndonWord(Vec<u8>);

/// Strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &[u8]) -> bool {
    let n = w.len();
    n > 0
        && (1..n).all(|i| {
            let rotated = w[i..].iter().chain(&w[..i]);
            w.iter().cmp(rotated) == std::cmp::Ordering::Less
        })
}

impl LyndonWord {
    pub fn new(letters: Vec<u8>) -> Option<Self> {
        (letters.iter().all(|&c| c >= 1) && is_lyndon(&letters)).then_some(LyndonWord(letters))
    }

    pub fn letter(c: u8) -> Self {
        assert!(c >= 1, "letters are 1-based");
        LyndonWord(vec![c])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `w = u·v` with `v` the longest proper Lyndon suffix; `None` for letters.
    pub fn standard_factorization(&self) -> Option<(LyndonWord, LyndonWord)> {
        let w = &self.0;
        (1..w.len())
            .find(|&i| is_lyndon(&w[i..]))
            .map(|i| (LyndonWord(w[..i].to_vec()), LyndonWord(w[i..].to_vec())))
    }

    /// Concatenation of two Lyndon words `self < other`, which is again Lyndon.
    pub(crate) fn concat(&self, other: &LyndonWord) -> LyndonWord {
        debug_assert!(self < other);
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        LyndonWord(w)
    }
}

impl TryFrom<Vec<u8>> for LyndonWord {
    type Error = String;

    fn try_from(v: Vec<u8>) -> Result<Self, String> {
        LyndonWord::new(v.clone()).ok_or_else(|| format!("{v:?} is not a Lyndon word"))
    }
}

impl From<LyndonWord> for Vec<u8> {
    fn from(w: LyndonWord) -> Self {
        w.0
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// All Lyndon words of length `k` over `d` letters, in lexicographic order.
///
/// Walks Duval's successor sequence, which visits every Lyndon word of
/// length at most `k` in order.
pub fn lyndon_basis(d: usize, k: usize) -> Vec<LyndonWord> {
    assert!(d <= u8::MAX as usize, "at most 255 generators");
    let mut out = Vec::new();
    if d == 0 || k == 0 {
        return out;
    }
    let top = d as u8;
    let mut w: Vec<u8> = vec![1];
    loop {
        if w.len() == k {
            out.push(LyndonWord(w.clone()));
        }
        let m = w.len();
        while w.len() < k {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(c) => *c += 1,
            None => break,
        }
    }
    out
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Rank of the degree-`k` piece of the free Lie algebra on `d` generators:
/// (1/k) Σ_{e | k} μ(e) d^{k/e}.
pub fn witt_dimension(d: usize, k: usize) -> BigInt {
    if k == 0 {
        return BigInt::zero();
    }
    let base = BigInt::from(d);
    let mut total = BigInt::zero();
    for e in (1..=k).filter(|e| k.is_multiple_of(*e)) {
        let mu = mobius(e as u64);
        if mu != 0 {
            total += num_traits::pow(base.clone(), k / e) * mu;
        }
    }
    debug_assert!(!total.is_negative());
    total / BigInt::from(k)
}

/// [`witt_dimension`] as a machine integer, for sizes that index memory.
pub fn witt_dimension_usize(d: usize, k: usize) -> Option<usize> {
    witt_dimension(d, k).to_usize()
}
