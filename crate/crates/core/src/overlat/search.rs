//! Bounded backtracking search for lattice isometries.
//!
//! Columns are assembled one at a time from the vectors of `[-B, B]ⁿ` whose
//! norm matches the required diagonal entry; each new column must also match
//! the pairings with the columns already chosen.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::exact::arith::prime_divisors;
use crate::exact::IntMatrix;
use crate::lattice::IntegralLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Require basis vectors in the radical of `G mod p` to map into the
    /// radical of the target form, for each prime `p | det`.
    pub congruence_prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { congruence_prune: true }
    }
}

struct Problem {
    n: usize,
    src: Vec<Vec<i64>>,
    dst: Vec<Vec<i64>>,
    by_norm: BTreeMap<i64, Vec<Vec<i64>>>,
    /// For each source column, the primes whose radical must contain its image.
    radical_primes: Vec<Vec<i64>>,
}

fn gram_i64(l: &IntegralLattice) -> Vec<Vec<i64>> {
    l.gram().to_i64().expect("Gram entries fit in i64").to_rows()
}

fn pair(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut acc = 0i64;
    for i in 0..x.len() {
        if x[i] == 0 {
            continue;
        }
        for j in 0..y.len() {
            acc += x[i] * g[i][j] * y[j];
        }
    }
    acc
}

fn in_radical(g: &[Vec<i64>], x: &[i64], p: i64) -> bool {
    g.iter().all(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<i64>().rem_euclid(p) == 0)
}

impl Problem {
    fn new(src: &IntegralLattice, dst: &IntegralLattice, bound: i64, opts: SearchOptions) -> Option<Self> {
        let n = src.rank();
        if dst.rank() != n {
            return None;
        }
        let (gs, gd) = (gram_i64(src), gram_i64(dst));
        let wanted: Vec<i64> = (0..n).map(|i| gs[i][i]).collect();
        let mut by_norm: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
        let side = (2 * bound + 1) as usize;
        let total = side.pow(n as u32);
        for idx in 0..total {
            let mut v = vec![0i64; n];
            let mut r = idx;
            for slot in v.iter_mut().rev() {
                *slot = (r % side) as i64 - bound;
                r /= side;
            }
            let norm = pair(&gd, &v, &v);
            if wanted.contains(&norm) {
                by_norm.entry(norm).or_default().push(v);
            }
        }
        let radical_primes = if opts.congruence_prune {
            let det = src.det();
            let primes: Vec<i64> = match i64::try_from(&det) {
                Ok(d) => prime_divisors(d),
                Err(_) => vec![],
            };
            (0..n)
                .map(|i| {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    primes.iter().copied().filter(|&p| in_radical(&gs, &e, p)).collect()
                })
                .collect()
        } else {
            vec![vec![]; n]
        };
        Some(Self { n, src: gs, dst: gd, by_norm, radical_primes })
    }

    fn candidates(&self, col: usize) -> impl Iterator<Item = &Vec<i64>> {
        self.by_norm
            .get(&self.src[col][col])
            .into_iter()
            .flatten()
            .filter(move |v| self.radical_primes[col].iter().all(|&p| in_radical(&self.dst, v, p)))
    }

    fn extend(&self, cols: &mut Vec<Vec<i64>>, visit: &mut dyn FnMut(&[Vec<i64>]) -> bool) -> bool {
        let i = cols.len();
        if i == self.n {
            return visit(cols);
        }
        for v in self.candidates(i) {
            if (0..i).all(|j| pair(&self.dst, &cols[j], v) == self.src[j][i]) {
                cols.push(v.clone());
                let go_on = self.extend(cols, visit);
                cols.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

fn to_matrix(cols: &[Vec<i64>]) -> IntMatrix {
    let n = cols.len();
    let rows: Vec<Vec<i64>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64_rows(&refs).expect("square")
}

/// All `g` with entries in `[-bound, bound]` and `gᵀ G_dst g = G_src`, in
/// lexicographic order of their columns.
pub fn isometries_between(
    src: &IntegralLattice,
    dst: &IntegralLattice,
    bound: i64,
    opts: SearchOptions,
) -> Vec<IntMatrix> {
    let Some(problem) = Problem::new(src, dst, bound, opts) else {
        return vec![];
    };
    let firsts: Vec<&Vec<i64>> = problem.candidates(0).collect();
    firsts
        .par_iter()
        .map(|first| {
            let mut found = Vec::new();
            let mut cols = vec![(*first).clone()];
            problem.extend(&mut cols, &mut |c| {
                found.push(to_matrix(c));
                true
            });
            found
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// First isometry (in the same order) satisfying `accept`.
pub fn find_isometry_between(
    src: &IntegralLattice,
    dst: &IntegralLattice,
    bound: i64,
    opts: SearchOptions,
    accept: &(dyn Fn(&IntMatrix) -> bool + Sync),
) -> Option<IntMatrix> {
    let problem = Problem::new(src, dst, bound, opts)?;
    let firsts: Vec<&Vec<i64>> = problem.candidates(0).collect();
    firsts.par_iter().find_map_first(|first| {
        let mut hit = None;
        let mut cols = vec![(*first).clone()];
        problem.extend(&mut cols, &mut |c| {
            let g = to_matrix(c);
            if accept(&g) {
                hit = Some(g);
                false
            } else {
                true
            }
        });
        hit
    })
}

/// Isometries of `L` with entries bounded by `bound`, using the congruence prune.
pub fn isometry_search(l: &IntegralLattice, bound: i64) -> Vec<IntMatrix> {
    isometries_between(l, l, bound, SearchOptions::default())
}

pub fn isometry_search_with(l: &IntegralLattice, bound: i64, opts: SearchOptions) -> Vec<IntMatrix> {
    isometries_between(l, l, bound, opts)
}
