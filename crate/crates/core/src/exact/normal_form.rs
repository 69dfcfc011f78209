//! Smith and Hermite normal forms over the integers, plus integer linear
//! system solving on top of the Smith form.
//!
//! Pivot choices are fixed so that every output is a deterministic function
//! of the input: the Smith pivot is the entry of smallest nonzero absolute
//! value in the active block, ties broken by row-major position.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `u · m · v = d` with `d` diagonal, `d_1 | d_2 | …`, all `d_i ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries of `d`, including trailing zeros.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors()
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}

fn row_axpy(a: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    for j in 0..a.cols() {
        let delta = factor * &a[(source, j)];
        a[(target, j)] += delta;
    }
}

fn col_axpy(a: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    for i in 0..a.rows() {
        let delta = factor * &a[(i, source)];
        a[(i, target)] += delta;
    }
}

fn negate_row(a: &mut IntMatrix, i: usize) {
    for j in 0..a.cols() {
        let v = -&a[(i, j)];
        a[(i, j)] = v;
    }
}

fn smallest_entry(a: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in from..a.rows() {
        for j in from..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with unimodular transforms.
pub fn snf(m: &IntMatrix) -> SnfDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    'outer: for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_entry(&a, t) else {
                break 'outer;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = &a[(i, t)] / &a[(t, t)];
                if !q.is_zero() {
                    row_axpy(&mut a, i, t, &-&q);
                    row_axpy(&mut u, i, t, &-&q);
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = &a[(t, j)] / &a[(t, t)];
                if !q.is_zero() {
                    col_axpy(&mut a, j, t, &-&q);
                    col_axpy(&mut v, j, t, &-&q);
                }
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            let pivot = a[(t, t)].clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    row_axpy(&mut a, t, i, &BigInt::one());
                    row_axpy(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
    }

    SnfDecomposition { d: a, u, v }
}

/// Row-style Hermite normal form of a full-column-rank matrix.
///
/// The result has as many rows as `m` has columns: upper triangular, positive
/// pivots, and entries above each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> Result<IntMatrix> {
    let (rows, cols) = (m.rows(), m.cols());
    if rows < cols {
        return Err(Error::RankDeficient);
    }
    let mut a = m.clone();
    for c in 0..cols {
        loop {
            let pivot = (c..rows)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by(|&i, &j| a[(i, c)].abs().cmp(&a[(j, c)].abs()).then(i.cmp(&j)));
            let Some(p) = pivot else {
                return Err(Error::RankDeficient);
            };
            a.swap_rows(c, p);
            let mut done = true;
            for i in c + 1..rows {
                let q = &a[(i, c)] / &a[(c, c)];
                if !q.is_zero() {
                    row_axpy(&mut a, i, c, &-q);
                }
                done &= a[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if a[(c, c)].is_negative() {
            negate_row(&mut a, c);
        }
        for k in 0..c {
            let q = a[(k, c)].div_floor(&a[(c, c)]);
            if !q.is_zero() {
                row_axpy(&mut a, k, c, &-q);
            }
        }
    }
    let top: Vec<Vec<BigInt>> = (0..cols).map(|i| a.row(i).to_vec()).collect();
    IntMatrix::from_rows(&top)
}

/// Finds some integer solution of `a · x = b`, or `None` if there is none.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::Shape("right-hand side length mismatch".into()));
    }
    let s = snf(a);
    let ub = s.u.mul_vec(b)?;
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, rhs) in ub.iter().enumerate() {
        let d = if i < a.cols() {
            s.d[(i, i)].clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            if !rhs.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = rhs.div_rem(&d);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
    }
    Ok(Some(s.v.mul_vec(&y)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_snf(m: &IntMatrix) -> SnfDecomposition {
        let s = snf(m);
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        s
    }

    #[test]
    fn snf_identity() {
        let s = check_snf(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        assert_eq!(s.u, IntMatrix::identity(3));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn snf_diagonal_6_9_18() {
        // gcd of entries 3; gcd of 2x2 minors gcd(54, 108, 162) = 54; det 972.
        let m = IntMatrix::diagonal(&ints(&[6, 9, 18]));
        let s = check_snf(&m);
        assert_eq!(s.invariant_factors(), ints(&[3, 18, 18]));
    }

    #[test]
    fn snf_of_rescaled_abelian_lattice_gram() {
        let m = IntMatrix::from_i64_rows(&[&[-6, 0, 0], &[0, 6, 9], &[0, 9, 18]]).unwrap();
        let s = check_snf(&m);
        let prod: BigInt = s.invariant_factors().iter().product();
        assert_eq!(prod, BigInt::from(162));
        assert_eq!(s.invariant_factors(), ints(&[3, 3, 18]));
    }

    #[test]
    fn snf_rectangular_and_zero() {
        let m = IntMatrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12]]).unwrap();
        let s = check_snf(&m);
        assert_eq!(s.invariant_factors(), ints(&[2, 6]));
        let z = check_snf(&IntMatrix::zeros(2, 3));
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn snf_is_deterministic() {
        let m = IntMatrix::from_i64_rows(&[&[4, 6, 2], &[6, 9, 3], &[2, 3, 8]]).unwrap();
        assert_eq!(snf(&m), snf(&m));
    }

    #[test]
    fn hnf_identity() {
        assert_eq!(hnf(&IntMatrix::identity(3)).unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn hnf_of_index_three_superlattice() {
        let m = IntMatrix::from_i64_rows(&[&[3, 0], &[0, 3], &[1, 1]]).unwrap();
        let h = hnf(&m).unwrap();
        assert_eq!(h, IntMatrix::from_i64_rows(&[&[1, 1], &[0, 3]]).unwrap());
    }

    #[test]
    fn hnf_already_canonical() {
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(hnf(&m).unwrap(), m);
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let m = IntMatrix::from_i64_rows(&[&[1, -5, 7], &[0, 3, -1], &[0, 0, -4]]).unwrap();
        let h = hnf(&m).unwrap();
        assert_eq!(
            h,
            IntMatrix::from_i64_rows(&[&[1, 1, 1], &[0, 3, 3], &[0, 0, 4]]).unwrap()
        );
    }

    #[test]
    fn hnf_rank_deficient() {
        let m = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4], &[3, 6]]).unwrap();
        assert!(matches!(hnf(&m), Err(Error::RankDeficient)));
        let short = IntMatrix::from_i64_rows(&[&[1, 2]]).unwrap();
        assert!(matches!(hnf(&short), Err(Error::RankDeficient)));
    }

    #[test]
    fn solve_integer_systems() {
        let a = IntMatrix::from_i64_rows(&[&[2, 4], &[6, 9]]).unwrap();
        let x = solve_integer(&a, &ints(&[2, 3])).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), ints(&[2, 3]));
        assert!(solve_integer(&a, &ints(&[1, 0])).unwrap().is_none());
        let wide = IntMatrix::from_i64_rows(&[&[3, 5]]).unwrap();
        let y = solve_integer(&wide, &ints(&[1])).unwrap().unwrap();
        assert_eq!(wide.mul_vec(&y).unwrap(), ints(&[1]));
    }
}
