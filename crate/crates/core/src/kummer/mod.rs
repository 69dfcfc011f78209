//! The lattices `T(A)`, `T(A)(3)` and `T(X)` of the Kummer family with
//! `L_X² = 6k`, and the classification of the index-3 over-lattices of
//! `T(A)(3)` isometric to `T(X)`.

pub mod certificates;
mod verify;

pub use verify::{
    verify_case_k0mod3, verify_case_k1mod3, verify_explicit_isometries, verify_g, verify_index3, verify_liste,
    verify_mod3_preservation, verify_tau, verify_tau_a, LISTE,
};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::arith::valuation;
use crate::exact::IntMatrix;
use crate::lattice::IntegralLattice;
use crate::overlat::{construct_overlattice, enumerate_prime_subgroups, same_genus, PrimeSubgroup};

fn check_k(k: i64) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!("k must be positive, got {k}")));
    }
    Ok(())
}

/// `[[-2k,0,0],[0,2,3],[0,3,6]]`.
pub fn gram_ta(k: i64) -> Result<IntegralLattice> {
    check_k(k)?;
    IntegralLattice::from_i64_rows(&[&[-2 * k, 0, 0], &[0, 2, 3], &[0, 3, 6]])
}

/// `T(A)(3)`: `[[-6k,0,0],[0,6,9],[0,9,18]]`.
pub fn gram_ta3(k: i64) -> Result<IntegralLattice> {
    check_k(k)?;
    IntegralLattice::from_i64_rows(&[&[-6 * k, 0, 0], &[0, 6, 9], &[0, 9, 18]])
}

/// `T(X)`: `[[-6k,0,0],[0,6,3],[0,3,2]]`.
pub fn gram_tx(k: i64) -> Result<IntegralLattice> {
    check_k(k)?;
    IntegralLattice::from_i64_rows(&[&[-6 * k, 0, 0], &[0, 6, 3], &[0, 3, 2]])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KummerFamilyInstance {
    pub k: i64,
    pub k_mod3: i64,
    pub k_mod9: i64,
    /// `k / 3` when `3 | k`.
    pub k_prime: Option<i64>,
    /// `k = 3ᵃ · t` with `3 ∤ t`.
    pub a: u32,
    pub t: i64,
}

impl KummerFamilyInstance {
    pub fn new(k: i64) -> Result<Self> {
        check_k(k)?;
        let a = valuation(k, 3);
        Ok(Self {
            k,
            k_mod3: k % 3,
            k_mod9: k % 9,
            k_prime: (k % 3 == 0).then_some(k / 3),
            a,
            t: k / 3i64.pow(a),
        })
    }
}

/// One order-3 subgroup of `A_{T(A)(3)}` and what became of it.
#[derive(Clone, Debug)]
pub struct CandidateReport {
    pub subgroup: PrimeSubgroup,
    pub isotropic: bool,
    /// Over-lattice Gram in its HNF basis, for isotropic candidates.
    pub gram: Option<IntMatrix>,
    /// Invariant factors of `A_{T_v}`.
    pub group: Option<Vec<i64>>,
    pub same_genus: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub k: i64,
    pub n_over: usize,
    pub witnesses: Vec<PrimeSubgroup>,
    pub candidates: Vec<CandidateReport>,
}

/// Over-lattices `T_v` of `T(A)(3)` for all 13 order-3 subgroups, keeping
/// those in the genus of `T(X)`. `T(X)` is unique in its genus, so genus
/// equality is isometry here.
pub fn classify(k: i64) -> Result<ClassificationResult> {
    let base = gram_ta3(k)?;
    let tx = gram_tx(k)?;
    let subgroups = enumerate_prime_subgroups(&base, 3)?;
    let mut candidates = Vec::with_capacity(subgroups.all.len());
    let mut witnesses = Vec::new();
    for h in subgroups.all {
        if !h.is_isotropic() {
            candidates.push(CandidateReport { subgroup: h, isotropic: false, gram: None, group: None, same_genus: None });
            continue;
        }
        let over = construct_overlattice(&base, &h)?;
        let group = over.lattice().discriminant_group()?.orders().to_vec();
        let same = same_genus(over.lattice(), &tx)?;
        if same {
            witnesses.push(h.clone());
        }
        candidates.push(CandidateReport {
            subgroup: h,
            isotropic: true,
            gram: Some(over.gram().clone()),
            group: Some(group),
            same_genus: Some(same),
        });
    }
    Ok(ClassificationResult { k, n_over: witnesses.len(), witnesses, candidates })
}

/// [`classify`] for every `k` in `k_min..=k_max`, in order of `k`.
pub fn classify_range(k_min: i64, k_max: i64) -> Result<Vec<ClassificationResult>> {
    (k_min..=k_max).into_par_iter().map(classify).collect()
}
