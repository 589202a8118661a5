use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

/// Element of the free associative algebra: plain words with integer
/// coefficients, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCPoly {
    terms: BTreeMap<Vec<u8>, BigInt>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn monomial(word: Vec<u8>, coeff: BigInt) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &[u8]) -> BigInt {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &BigInt)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Vec<u8>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &NCPoly) -> NCPoly {
        &(self * other) - &(other * self)
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;

    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;

    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self + &(-rhs)
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;

    fn neg(self) -> NCPoly {
        NCPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;

    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut acc: BTreeMap<Vec<u8>, BigInt> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                *acc.entry(w).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        NCPoly { terms: acc }
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: String = w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".");
                format!("{c}*\"{word}\"")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
