//! Brute-force routes that share no code path with the library pieces they
//! check: necklaces are counted by enumerating every word, invariant factors
//! come from gcds of minors, and the graded ideal is rebuilt inside the free
//! associative algebra with commutators of plain words instead of Lyndon
//! rewriting.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use primlink::exactla::{express_in_basis, hermite_row_basis, smith_normal_form, IntMatrix};
use primlink::freelie::NCPoly;
use primlink::LinkingDiagram;

/// Number of aperiodic necklaces of length `k` over `d` beads, found by
/// listing all dᵏ words and keeping those that are the strict minimum of
/// their rotation class.
pub fn necklace_count(d: usize, k: usize) -> usize {
    if d == 0 || k == 0 {
        return 0;
    }
    let total = d.pow(k as u32);
    let mut count = 0;
    let mut word = vec![0usize; k];
    for n in 0..total {
        let mut m = n;
        for slot in word.iter_mut().rev() {
            *slot = m % d;
            m /= d;
        }
        let minimal = (1..k).all(|i| {
            let rot = word[i..].iter().chain(&word[..i]);
            word.iter().cmp(rot) == std::cmp::Ordering::Less
        });
        if minimal {
            count += 1;
        }
    }
    count
}

fn minors_gcd(a: &IntMatrix, size: usize) -> BigInt {
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = combos(n - 1, k);
        for mut c in combos(n - 1, k - 1) {
            c.push(n - 1);
            out.push(c);
        }
        out
    }
    let mut g = BigInt::zero();
    for rows in combos(a.rows(), size) {
        for cols in combos(a.cols(), size) {
            let sub: Vec<Vec<BigInt>> =
                rows.iter().map(|&i| cols.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
            let m = IntMatrix::from_rows(size, &sub).unwrap();
            g = g.gcd(&m.determinant().unwrap());
        }
    }
    g
}

/// Invariant factors dᵢ = Dᵢ / Dᵢ₋₁ where Dᵢ is the gcd of the i×i minors.
/// Exponential in the matrix size; meant for small matrices.
pub fn determinantal_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for i in 1..=a.rows().min(a.cols()) {
        let g = minors_gcd(a, i);
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn word_index(w: &[u8], d: usize) -> usize {
    w.iter().fold(0, |acc, &c| acc * d + (c as usize - 1))
}

fn coords(p: &NCPoly, d: usize, k: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); d.pow(k as u32)];
    for (w, c) in p.terms() {
        assert_eq!(w.len(), k, "inhomogeneous element");
        v[word_index(w, d)] = c.clone();
    }
    v
}

fn from_coords(v: &[BigInt], d: usize, k: usize) -> NCPoly {
    let mut p = NCPoly::zero();
    for (n, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut w = vec![0u8; k];
        let mut m = n;
        for slot in w.iter_mut().rev() {
            *slot = (m % d) as u8 + 1;
            m /= d;
        }
        p.add_term(w, c.clone());
    }
    p
}

fn lattice(polys: &[NCPoly], d: usize, k: usize) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = polys.iter().map(|p| coords(p, d, k)).collect();
    hermite_row_basis(&IntMatrix::from_rows(d.pow(k as u32), &rows).unwrap())
}

fn basis_polys(h: &IntMatrix, d: usize, k: usize) -> Vec<NCPoly> {
    (0..h.rows()).map(|i| from_coords(h.row(i), d, k)).collect()
}

fn torsion(h: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(h).torsion()
}

/// One degree of the associative-route computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleDegree {
    pub degree: usize,
    pub ideal_rank: usize,
    /// Torsion of Tₖ / rₖ; equal to that of Lₖ / rₖ because Lₖ is a pure
    /// sublattice of Tₖ.
    pub quotient_torsion: Vec<BigInt>,
    pub commutator_rank: usize,
    /// Torsion of rₖ / [r, r]ₖ.
    pub relation_torsion: Vec<BigInt>,
}

impl OracleDegree {
    pub fn relation_rank(&self) -> usize {
        self.ideal_rank - self.commutator_rank
    }
}

/// Rebuilds r and [r, r] through `maxk` as lattices of word coordinates.
pub fn tensor_route(diagram: &LinkingDiagram, dropped: usize, maxk: usize) -> Vec<OracleDegree> {
    let d = diagram.components();
    let x = |i: usize| NCPoly::monomial(vec![i as u8], BigInt::one());
    let mut relators = Vec::new();
    for k in (1..=d).filter(|&k| k != dropped) {
        let mut w = NCPoly::zero();
        for j in (1..=d).filter(|&j| j != k) {
            let c = x(k).commutator(&x(j));
            for (word, coeff) in c.terms() {
                w.add_term(word.to_vec(), coeff * diagram.label(k - 1, j - 1));
            }
        }
        relators.push(w);
    }

    let mut ideal: Vec<IntMatrix> = vec![IntMatrix::zeros(0, 1), IntMatrix::zeros(0, d)];
    if maxk >= 2 {
        ideal.push(lattice(&relators, d, 2));
    }
    for k in 3..=maxk {
        let prev = basis_polys(&ideal[k - 1], d, k - 1);
        let spanning: Vec<NCPoly> = prev.iter().flat_map(|v| (1..=d).map(move |j| v.commutator(&x(j)))).collect();
        ideal.push(lattice(&spanning, d, k));
    }

    let polys: Vec<Vec<NCPoly>> = (0..=maxk).map(|k| basis_polys(&ideal[k], d, k)).collect();
    (1..=maxk)
        .map(|k| {
            let mut spanning = Vec::new();
            for i in 2..=k.saturating_sub(2) {
                for a in &polys[i] {
                    for b in &polys[k - i] {
                        spanning.push(a.commutator(b));
                    }
                }
            }
            let comm = lattice(&spanning, d, k);
            let r = &ideal[k];
            let inclusion: Vec<Vec<BigInt>> = (0..comm.rows())
                .map(|i| express_in_basis(r, comm.row(i)).expect("[r,r] inside r"))
                .collect();
            let inclusion = IntMatrix::from_rows(r.rows(), &inclusion).unwrap();
            OracleDegree {
                degree: k,
                ideal_rank: r.rows(),
                quotient_torsion: torsion(r),
                commutator_rank: comm.rows(),
                relation_torsion: torsion(&inclusion),
            }
        })
        .collect()
}

/// Exhaustive q-primitivity: tries every subset of surviving edges of size
/// d − 1 for a spanning tree. Exponential; small diagrams only.
pub fn spanning_tree_exists(diagram: &LinkingDiagram, q: u64) -> bool {
    let d = diagram.components();
    if d == 1 {
        return true;
    }
    let edges: Vec<(usize, usize)> = diagram
        .edges()
        .filter(|&(_, _, l)| l.unsigned_abs() % q != 0)
        .map(|(i, j, _)| (i, j))
        .collect();
    let n = edges.len();
    if n < d - 1 {
        return false;
    }
    (0u64..1 << n).filter(|m| m.count_ones() as usize == d - 1).any(|mask| {
        let mut reached: BTreeSet<usize> = [0].into();
        let chosen: Vec<(usize, usize)> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| edges[b]).collect();
        loop {
            let before = reached.len();
            for &(i, j) in &chosen {
                if reached.contains(&i) || reached.contains(&j) {
                    reached.insert(i);
                    reached.insert(j);
                }
            }
            if reached.len() == before {
                break;
            }
        }
        reached.len() == d
    })
}


/// Named diagrams exercised by the integration and acceptance suites.
pub fn sample_diagrams() -> Vec<(&'static str, LinkingDiagram)> {
    let two = |l| LinkingDiagram::from_labels(2, &[(1, 2, l)]).unwrap();
    vec![
        ("knot", LinkingDiagram::unknot()),
        ("hopf", LinkingDiagram::hopf()),
        ("two-linked-twice", two(2)),
        ("two-unlinked", two(0)),
        ("two-linked-six", two(6)),
        ("two-linked-minus-three", two(-3)),
        ("three-chain", LinkingDiagram::from_labels(3, &[(1, 2, 1), (2, 3, 1)]).unwrap()),
        ("three-cycle", LinkingDiagram::from_labels(3, &[(1, 2, 1), (2, 3, 1), (1, 3, 1)]).unwrap()),
        ("three-2-3-5", LinkingDiagram::from_labels(3, &[(1, 2, 2), (2, 3, 3), (1, 3, 5)]).unwrap()),
        ("three-split", LinkingDiagram::from_labels(3, &[(1, 2, 1)]).unwrap()),
        ("three-chain-2-1", LinkingDiagram::from_labels(3, &[(1, 2, 2), (2, 3, 1)]).unwrap()),
    ]
}
