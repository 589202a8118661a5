use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

fn sub_scaled(target: &mut [BigInt], source: &[BigInt], factor: &BigInt, from: usize) {
    for (t, s) in target[from..].iter_mut().zip(&source[from..]) {
        if !s.is_zero() {
            *t -= s * factor;
        }
    }
}

/// Hermite normal form of the row lattice of `a`, zero rows dropped.
///
/// Rows are in echelon form, every pivot is positive, and entries above a
/// pivot lie in `[0, pivot)`. This form is unique for the lattice.
pub fn hermite_row_basis(a: &IntMatrix) -> IntMatrix {
    let cols = a.cols();
    let mut rows: Vec<Vec<BigInt>> =
        a.row_vecs().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let mut rank = 0;

    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let mut have_pivot = false;
        loop {
            let best = (rank..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(p) = best else { break };
            rows.swap(rank, p);
            have_pivot = true;
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            let mut cleared = true;
            for row in tail.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let q = row[c].div_floor(&pivot_row[c]);
                sub_scaled(row, pivot_row, &q, c);
                cleared &= row[c].is_zero();
            }
            if cleared {
                break;
            }
        }
        if !have_pivot {
            continue;
        }
        if rows[rank][c].is_negative() {
            for x in rows[rank][c..].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        let (head, tail) = rows.split_at_mut(rank);
        let pivot_row = &tail[0];
        for row in head.iter_mut() {
            let q = row[c].div_floor(&pivot_row[c]);
            sub_scaled(row, pivot_row, &q, c);
        }
        rank += 1;
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }

    rows.truncate(rank);
    IntMatrix::from_rows(cols, &rows).expect("rows keep their width")
}

/// Rank over the rationals.
pub fn rank_rational(a: &IntMatrix) -> usize {
    hermite_row_basis(a).rows()
}

/// Integer coefficients `x` with `x · basis = v`, when `v` lies in the row
/// lattice. `basis` must be in the form produced by [`hermite_row_basis`].
pub fn express_in_basis(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    if v.len() != basis.cols() {
        return None;
    }
    let mut residual = v.to_vec();
    let mut coeffs = Vec::with_capacity(basis.rows());
    for i in 0..basis.rows() {
        let row = basis.row(i);
        let c = row.iter().position(|x| !x.is_zero())?;
        if residual[..c].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let (q, r) = residual[c].div_rem(&row[c]);
        if !r.is_zero() {
            return None;
        }
        sub_scaled(&mut residual, row, &q, c);
        coeffs.push(q);
    }
    residual.iter().all(Zero::is_zero).then_some(coeffs)
}

/// Whether every row of `rows` lies in the lattice with Hermite basis `basis`.
pub fn lattice_contains(basis: &IntMatrix, rows: &IntMatrix) -> bool {
    (0..rows.rows()).all(|i| express_in_basis(basis, rows.row(i)).is_some())
}
