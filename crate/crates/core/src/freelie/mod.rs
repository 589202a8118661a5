//! The free Lie ring on `d` generators, graded by bracket length, in the
//! Lyndon basis.
//!
//! The basis element of a Lyndon word `w` with standard factorization
//! `w = u·v` is `[b(u), b(v)]`; letters are the generators. Brackets of basis
//! elements are rewritten back into the basis with the classical Lyndon
//! rewriting: for Lyndon words `u < v`, `[b(u), b(v)] = b(uv)` when `u` is a
//! letter or the right standard factor of `u` is `≥ v`, and otherwise
//! `u = u₁u₂` and `[[b(u₁), b(u₂)], b(v)]` is expanded with the Jacobi
//! identity.
//!
//! [`to_associative`] embeds the ring into the free associative algebra and
//! serves as the independent check on the rewriting.

mod lyndon;
mod ncpoly;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use lyndon::{is_lyndon, lyndon_basis, witt_dimension, witt_dimension_usize, LyndonWord};
pub use ncpoly::NCPoly;

/// Version of the basis and sign convention. Persisted structure constants
/// carrying any other version are ignored.
pub const CONVENTION_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeLieError {
    #[error("generator index {index} outside 1..={generators}")]
    Generator { index: usize, generators: usize },
    #[error("basis index {index} out of range for degree {degree} (dimension {dim})")]
    BasisIndex { degree: usize, index: usize, dim: usize },
    #[error("structure constant for basis pair ({left}, {right}) in degrees {degrees:?} is not ordered")]
    Unordered { left: usize, right: usize, degrees: (usize, usize) },
    #[error("structure constant for basis pair ({left}, {right}) in degrees {degrees:?} disagrees with the commutator expansion")]
    Inconsistent { left: usize, right: usize, degrees: (usize, usize) },
}

/// Integer combination of Lyndon basis elements, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LieElement {
    terms: BTreeMap<LyndonWord, BigInt>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn basis(word: LyndonWord) -> Self {
        let mut e = LieElement::zero();
        e.add_term(word, BigInt::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &LyndonWord) -> BigInt {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LyndonWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: LyndonWord, coeff: BigInt) {
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

    /// `self += factor · other`
    pub fn add_scaled(&mut self, other: &LieElement, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * factor);
        }
    }

    pub fn scaled(&self, factor: &BigInt) -> LieElement {
        let mut out = LieElement::zero();
        out.add_scaled(self, factor);
        out
    }

    /// Degree-`k` component.
    pub fn homogeneous(&self, k: usize) -> LieElement {
        LieElement { terms: self.terms.iter().filter(|(w, _)| w.degree() == k).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(LyndonWord::degree).collect()
    }
}

impl Add for &LieElement {
    type Output = LieElement;

    fn add(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::one());
        out
    }
}

impl Sub for &LieElement {
    type Output = LieElement;

    fn sub(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigInt::one());
        out
    }
}

impl Neg for &LieElement {
    type Output = LieElement;

    fn neg(self) -> LieElement {
        LieElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// The Lyndon words of one degree with their positions.
#[derive(Debug)]
pub struct DegreeBasis {
    words: Vec<LyndonWord>,
    index: HashMap<LyndonWord, usize>,
}

impl DegreeBasis {
    fn new(d: usize, k: usize) -> Self {
        let words = lyndon_basis(d, k);
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        DegreeBasis { words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[LyndonWord] {
        &self.words
    }

    pub fn index_of(&self, w: &LyndonWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn word(&self, i: usize) -> &LyndonWord {
        &self.words[i]
    }
}

/// One memoized bracket of basis elements, addressed by basis positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureEntry {
    pub left: usize,
    pub right: usize,
    pub product: Vec<(usize, BigInt)>,
}

/// Free Lie ring on a fixed number of generators, with a shared memo of
/// basis brackets.
///
/// The memo may be read and filled from several threads; two threads racing
/// on the same pair compute the same value, so the last write wins harmlessly.
#[derive(Debug)]
pub struct FreeLieAlgebra {
    generators: usize,
    bases: RwLock<BTreeMap<usize, Arc<DegreeBasis>>>,
    memo: RwLock<HashMap<(LyndonWord, LyndonWord), LieElement>>,
}

impl FreeLieAlgebra {
    pub fn new(generators: usize) -> Self {
        assert!(generators <= u8::MAX as usize, "at most 255 generators");
        FreeLieAlgebra { generators, bases: RwLock::default(), memo: RwLock::default() }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn basis(&self, k: usize) -> Arc<DegreeBasis> {
        if let Some(b) = self.bases.read().unwrap().get(&k) {
            return b.clone();
        }
        let built = Arc::new(DegreeBasis::new(self.generators, k));
        self.bases.write().unwrap().entry(k).or_insert(built).clone()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.basis(k).len()
    }

    /// The generator `x_i`, 1-based.
    pub fn generator(&self, i: usize) -> Result<LieElement, FreeLieError> {
        if i == 0 || i > self.generators {
            return Err(FreeLieError::Generator { index: i, generators: self.generators });
        }
        Ok(LieElement::basis(LyndonWord::letter(i as u8)))
    }

    /// Bilinear bracket, rewritten into the Lyndon basis.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (u, cu) in a.terms() {
            for (v, cv) in b.terms() {
                let product = self.bracket_words(u, v);
                out.add_scaled(&product, &(cu * cv));
            }
        }
        out
    }

    /// `[b(u), b(v)]` in the Lyndon basis.
    pub fn bracket_words(&self, u: &LyndonWord, v: &LyndonWord) -> LieElement {
        match u.cmp(v) {
            std::cmp::Ordering::Equal => LieElement::zero(),
            std::cmp::Ordering::Greater => -&self.bracket_words(v, u),
            std::cmp::Ordering::Less => {
                let key = (u.clone(), v.clone());
                if let Some(hit) = self.memo.read().unwrap().get(&key) {
                    return hit.clone();
                }
                let result = match u.standard_factorization() {
                    Some((u1, u2)) if u2 < *v => {
                        // [[u1, u2], v] = [u1, [u2, v]] + [[u1, v], u2]
                        let inner = self.bracket_words(&u2, v);
                        let first = self.bracket(&LieElement::basis(u1.clone()), &inner);
                        let outer = self.bracket_words(&u1, v);
                        let second = self.bracket(&outer, &LieElement::basis(u2));
                        &first + &second
                    }
                    _ => LieElement::basis(u.concat(v)),
                };
                self.memo.write().unwrap().insert(key, result.clone());
                result
            }
        }
    }

    /// Coordinates of the degree-`k` component of `a` in `lyndon_basis(d, k)`.
    /// `None` if a term uses a letter beyond the generators.
    pub fn coordinates(&self, a: &LieElement, k: usize) -> Option<Vec<BigInt>> {
        let basis = self.basis(k);
        let mut coords = vec![BigInt::zero(); basis.len()];
        for (w, c) in a.terms().filter(|(w, _)| w.degree() == k) {
            coords[basis.index_of(w)?] = c.clone();
        }
        Some(coords)
    }

    pub fn from_coordinates(&self, k: usize, coords: &[BigInt]) -> LieElement {
        let basis = self.basis(k);
        let mut out = LieElement::zero();
        for (w, c) in basis.words().iter().zip(coords) {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    /// Memoized brackets of basis pairs with left degree `da` and right
    /// degree `db`, sorted by position.
    pub fn structure_entries(&self, da: usize, db: usize) -> Vec<StructureEntry> {
        let (ba, bb, bc) = (self.basis(da), self.basis(db), self.basis(da + db));
        let memo = self.memo.read().unwrap();
        let mut out: Vec<StructureEntry> = memo
            .iter()
            .filter(|((u, v), _)| u.degree() == da && v.degree() == db)
            .filter_map(|((u, v), prod)| {
                let left = ba.index_of(u)?;
                let right = bb.index_of(v)?;
                let product = prod
                    .terms()
                    .map(|(w, c)| bc.index_of(w).map(|i| (i, c.clone())))
                    .collect::<Option<Vec<_>>>()?;
                Some(StructureEntry { left, right, product })
            })
            .collect();
        out.sort_by_key(|e| (e.left, e.right));
        out
    }

    /// Loads previously computed brackets into the memo. Every entry is
    /// checked against the commutator expansion before anything is stored;
    /// on any error nothing is loaded.
    pub fn absorb_structure(&self, da: usize, db: usize, entries: &[StructureEntry]) -> Result<usize, FreeLieError> {
        let (ba, bb, bc) = (self.basis(da), self.basis(db), self.basis(da + db));
        let check = |degree: usize, basis: &DegreeBasis, index: usize| {
            if index < basis.len() {
                Ok(())
            } else {
                Err(FreeLieError::BasisIndex { degree, index, dim: basis.len() })
            }
        };
        let mut staged = Vec::with_capacity(entries.len());
        for e in entries {
            check(da, &ba, e.left)?;
            check(db, &bb, e.right)?;
            let (u, v) = (ba.word(e.left).clone(), bb.word(e.right).clone());
            if u >= v {
                return Err(FreeLieError::Unordered { left: e.left, right: e.right, degrees: (da, db) });
            }
            let mut product = LieElement::zero();
            for (i, c) in &e.product {
                check(da + db, &bc, *i)?;
                product.add_term(bc.word(*i).clone(), c.clone());
            }
            let expected = word_expansion(&u).commutator(&word_expansion(&v));
            if to_associative(&product) != expected {
                return Err(FreeLieError::Inconsistent { left: e.left, right: e.right, degrees: (da, db) });
            }
            staged.push(((u, v), product));
        }
        let n = staged.len();
        self.memo.write().unwrap().extend(staged);
        Ok(n)
    }
}

/// Full commutator expansion of the basis element of `w`.
pub fn word_expansion(w: &LyndonWord) -> NCPoly {
    match w.standard_factorization() {
        None => NCPoly::monomial(w.letters().to_vec(), BigInt::one()),
        Some((u, v)) => word_expansion(&u).commutator(&word_expansion(&v)),
    }
}

/// Image in the free associative algebra.
pub fn to_associative(a: &LieElement) -> NCPoly {
    let mut out = NCPoly::zero();
    for (w, c) in a.terms() {
        for (word, k) in word_expansion(w).terms() {
            out.add_term(word.to_vec(), k * c);
        }
    }
    out
}
