use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::RationalMatrix;
use crate::error::{Error, Result};

/// Counts of positive, negative and zero entries after diagonalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Symmetric congruence diagonalization: returns `(p, d)` with `pᵀ·g·p = d`.
///
/// Zero pivots are handled by swapping in a later nonzero diagonal entry or,
/// when the remaining diagonal vanishes, by adding a row/column with a nonzero
/// off-diagonal entry onto the pivot row/column.
pub fn congruence_diagonalize(g: &RationalMatrix) -> Result<(RationalMatrix, RationalMatrix)> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = g.rows();
    let mut d = g.clone();
    let mut p = RationalMatrix::identity(n);

    for i in 0..n {
        if d[(i, i)].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !d[(j, j)].is_zero()) {
                d.swap_rows(i, j);
                d.swap_cols(i, j);
                p.swap_cols(i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !d[(i, j)].is_zero()) {
                add_symmetric(&mut d, &mut p, i, j);
            } else {
                continue;
            }
        }
        let pivot = d[(i, i)].clone();
        for j in i + 1..n {
            if d[(i, j)].is_zero() {
                continue;
            }
            let c = &d[(i, j)] / &pivot;
            // column j -= c * column i, then the same on rows
            for r in 0..n {
                let v = &c * &d[(r, i)];
                d[(r, j)] = &d[(r, j)] - v;
                let w = &c * &p[(r, i)];
                p[(r, j)] = &p[(r, j)] - w;
            }
            for s in 0..n {
                let v = &c * &d[(i, s)];
                d[(j, s)] = &d[(j, s)] - v;
            }
        }
    }
    Ok((p, d))
}

// row/col i += row/col j
fn add_symmetric(d: &mut RationalMatrix, p: &mut RationalMatrix, i: usize, j: usize) {
    let n = d.rows();
    for r in 0..n {
        let v = d[(r, j)].clone();
        d[(r, i)] += v;
        let w = p[(r, j)].clone();
        p[(r, i)] += w;
    }
    for s in 0..n {
        let v = d[(j, s)].clone();
        d[(i, s)] += v;
    }
}

pub fn signature_of(g: &RationalMatrix) -> Result<Signature> {
    let (_, d) = congruence_diagonalize(g)?;
    let diag: Vec<&BigRational> = (0..d.rows()).map(|i| &d[(i, i)]).collect();
    Ok(Signature {
        positive: diag.iter().filter(|x| x.is_positive()).count(),
        negative: diag.iter().filter(|x| x.is_negative()).count(),
        zero: diag.iter().filter(|x| x.is_zero()).count(),
    })
}
