use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Result of a Smith decomposition `left · A · right = diagonal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries d₁ | d₂ | … in order.
    pub fn divisors(&self) -> Vec<BigInt> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal[(i, i)].clone()).take_while(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().len()
    }

    /// Divisors other than 1; empty iff the cokernel of the row lattice in its
    /// rational span is torsion-free.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors().into_iter().filter(|d| !d.is_one()).collect()
    }
}

fn min_abs_in_block(s: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in from..s.rows() {
        for j in from..s.cols() {
            let v = &s[(i, j)];
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                if a.is_one() {
                    return Some((i, j));
                }
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Smith normal form with unimodular transforms.
///
/// Pivots on the entry of smallest absolute value in the remaining block,
/// clears its row and column by Euclidean steps, and restores divisibility
/// by folding an offending row into the pivot row.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_in_block(&s, t) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut residue = false;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                residue |= !s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                residue |= !s[(t, j)].is_zero();
            }

            if residue {
                // A remainder smaller than the pivot is left in row or column t.
                let mut best: Option<(bool, usize, BigInt)> = None;
                for i in t + 1..m {
                    let a = s[(i, t)].abs();
                    if !a.is_zero() && best.as_ref().is_none_or(|b| a < b.2) {
                        best = Some((true, i, a));
                    }
                }
                for j in t + 1..n {
                    let a = s[(t, j)].abs();
                    if !a.is_zero() && best.as_ref().is_none_or(|b| a < b.2) {
                        best = Some((false, j, a));
                    }
                }
                let (is_row, idx, _) = best.expect("residue present");
                if is_row {
                    s.swap_rows(t, idx);
                    u.swap_rows(t, idx);
                } else {
                    s.swap_cols(t, idx);
                    v.swap_cols(t, idx);
                }
                continue;
            }

            let pivot = s[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithForm { left: u, diagonal: s, right: v }
}

/// Nonzero invariant factors of `a`, without materializing the transforms.
pub fn elementary_divisors(a: &IntMatrix) -> Vec<BigInt> {
    // Reducing to Hermite form first shrinks the matrix to its rank rows.
    let h = super::hermite_row_basis(a);
    smith_normal_form(&h).divisors()
}
