//! Over-lattices from isotropic subgroups of the discriminant group.

mod search;

pub use search::{
    find_isometry_between, isometries_between, isometry_search, isometry_search_with, SearchOptions,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::arith::{is_prime, mul_mod};
use crate::exact::{hnf, rat, rem_euclid, IntMatrix, Rational, RationalMatrix};
use crate::lattice::{IntegralLattice, LatticeMap};
use crate::torsion::tqm_isometric;

/// A cyclic subgroup of prime order `p` of `A_L`, given by its canonical
/// generator in dual-fraction coordinates (entries in `[0, 1)`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimeSubgroup {
    generator: Vec<Rational>,
    order: i64,
    q_value: Rational,
}

impl PrimeSubgroup {
    pub fn generator(&self) -> &[Rational] {
        &self.generator
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// `q` of the generator in `[0, 2)`.
    pub fn q_value(&self) -> &Rational {
        &self.q_value
    }

    pub fn is_isotropic(&self) -> bool {
        self.q_value.is_zero()
    }

    /// Numerators of the generator over `p`.
    pub fn numerators(&self) -> Vec<i64> {
        let p = Rational::from_integer(BigInt::from(self.order));
        self.generator.iter().map(|c| (c * &p).to_integer().to_i64().unwrap()).collect()
    }

    pub fn certify(self) -> Result<IsotropicSubgroup> {
        if self.is_isotropic() {
            Ok(IsotropicSubgroup(self))
        } else {
            Err(Error::NotIsotropic)
        }
    }
}

impl fmt::Display for PrimeSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_vector(&self.generator))
    }
}

impl fmt::Debug for PrimeSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}; q={}>", format_vector(&self.generator), self.q_value)
    }
}

pub fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

/// A [`PrimeSubgroup`] whose generator has `q = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsotropicSubgroup(PrimeSubgroup);

impl IsotropicSubgroup {
    pub fn generator(&self) -> &[Rational] {
        self.0.generator()
    }

    pub fn order(&self) -> i64 {
        self.0.order
    }

    pub fn as_subgroup(&self) -> &PrimeSubgroup {
        &self.0
    }
}

impl fmt::Display for IsotropicSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// All order-`p` subgroups of `A_L`, split by isotropy.
#[derive(Clone, Debug)]
pub struct PrimeSubgroups {
    pub prime: i64,
    pub all: Vec<PrimeSubgroup>,
    pub isotropic: Vec<IsotropicSubgroup>,
    pub rejected: Vec<PrimeSubgroup>,
}

/// Kernel of an integer matrix modulo `p`, as a basis of `(Z/p)ⁿ`.
fn kernel_mod_p(g: &[Vec<i64>], p: i64) -> Vec<Vec<i64>> {
    let n = g.len();
    let mut a: Vec<Vec<i64>> = g.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..n).find(|&r| a[r][col] != 0) else { continue };
        a.swap(row, r);
        let inv = crate::exact::arith::inv_mod(a[row][col], p).expect("p prime");
        for x in a[row].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for r2 in 0..n {
            if r2 != row && a[r2][col] != 0 {
                let f = a[r2][col];
                for c in 0..n {
                    a[r2][c] = (a[r2][c] - f * a[row][c]).rem_euclid(p);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (-a[r][f]).rem_euclid(p);
            }
            v
        })
        .collect()
}

fn canonical_multiple(y: &[i64], p: i64) -> Vec<i64> {
    (1..p)
        .map(|c| y.iter().map(|&x| mul_mod(x, c, p)).collect::<Vec<_>>())
        .min()
        .expect("p ≥ 2")
}

/// Enumerates the order-`p` subgroups of `A_L`, one canonical generator each
/// (the lexicographically least nonzero multiple in dual fractions).
pub fn enumerate_prime_subgroups(l: &IntegralLattice, p: i64) -> Result<PrimeSubgroups> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if !l.is_even() {
        return Err(Error::NotEven);
    }
    let n = l.rank();
    let g = l.gram().to_i64()?.to_rows();
    let basis = kernel_mod_p(&g, p);
    let dim = basis.len() as u32;
    let mut gens = std::collections::BTreeSet::new();
    let total = (p as u64).checked_pow(dim).ok_or_else(|| Error::Overflow(format!("{p}^{dim}")))?;
    for code in 1..total {
        let mut y = vec![0i64; n];
        let mut r = code;
        for b in &basis {
            let c = (r % p as u64) as i64;
            r /= p as u64;
            for (yi, bi) in y.iter_mut().zip(b) {
                *yi = (*yi + c * bi).rem_euclid(p);
            }
        }
        gens.insert(canonical_multiple(&y, p));
    }
    let two = Rational::from_integer(BigInt::from(2));
    let all: Vec<PrimeSubgroup> = gens
        .into_iter()
        .map(|y| {
            let x: Vec<Rational> = y.iter().map(|&c| rat(c, p)).collect();
            let q_value = rem_euclid(&l.pairing(&x, &x), &two);
            PrimeSubgroup { generator: x, order: p, q_value }
        })
        .collect();
    let isotropic = all.iter().filter(|h| h.is_isotropic()).cloned().map(IsotropicSubgroup).collect();
    let rejected = all.iter().filter(|h| !h.is_isotropic()).cloned().collect();
    Ok(PrimeSubgroups { prime: p, all, isotropic, rejected })
}

/// Isotropic order-`p` subgroups of `A_L`; empty when `p ∤ |A_L|`.
pub fn enumerate_prime_isotropic(l: &IntegralLattice, p: i64) -> Result<Vec<IsotropicSubgroup>> {
    Ok(enumerate_prime_subgroups(l, p)?.isotropic)
}

/// The order-`p` subgroup generated by the class of a dual vector.
pub fn subgroup_of(l: &IntegralLattice, x: &[Rational], p: i64) -> Result<PrimeSubgroup> {
    if !l.is_dual_vector(x) {
        return Err(Error::Shape("vector is not in the dual lattice".into()));
    }
    let pr = Rational::from_integer(BigInt::from(p));
    let mut y = Vec::with_capacity(x.len());
    for c in x {
        let s = c * &pr;
        if !s.is_integer() {
            return Err(Error::Shape(format!("{} is not killed by {p}", format_vector(x))));
        }
        y.push(s.to_integer().to_i64().ok_or_else(|| Error::Overflow(s.to_string()))?.rem_euclid(p));
    }
    if y.iter().all(|&c| c == 0) {
        return Err(Error::Shape("zero class generates the trivial subgroup".into()));
    }
    let y = canonical_multiple(&y, p);
    let x: Vec<Rational> = y.iter().map(|&c| rat(c, p)).collect();
    let q_value = rem_euclid(&l.pairing(&x, &x), &Rational::from_integer(BigInt::from(2)));
    Ok(PrimeSubgroup { generator: x, order: p, q_value })
}

/// `L_H = π⁻¹(H)` with an HNF basis (rows, in coordinates of the base).
#[derive(Clone, Debug)]
pub struct OverLattice {
    base: IntegralLattice,
    subgroup: IsotropicSubgroup,
    basis: RationalMatrix,
    lattice: IntegralLattice,
}

impl OverLattice {
    pub fn base(&self) -> &IntegralLattice {
        &self.base
    }

    pub fn subgroup(&self) -> &IsotropicSubgroup {
        &self.subgroup
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn lattice(&self) -> &IntegralLattice {
        &self.lattice
    }

    pub fn gram(&self) -> &IntMatrix {
        self.lattice.gram()
    }

    pub fn index(&self) -> i64 {
        self.subgroup.order()
    }

    /// The inclusion of the base; column `j` is `e_j` in over-lattice coordinates.
    pub fn embedding(&self) -> Result<LatticeMap> {
        let c = self.basis.inverse()?.transpose();
        let m = c.to_integer().ok_or_else(|| Error::Inconsistent("base is not contained in the over-lattice".into()))?;
        LatticeMap::new(m, self.base.clone(), self.lattice.clone())
    }

    /// The subgroup `M/L ⊂ A_L` re-derived from the basis.
    pub fn recovered_subgroup(&self) -> Result<PrimeSubgroup> {
        let p = self.index();
        for r in self.basis.to_rows() {
            if r.iter().any(|c| !c.is_integer()) {
                let one = Rational::one();
                let x: Vec<Rational> = r.iter().map(|c| rem_euclid(c, &one)).collect();
                return subgroup_of(&self.base, &x, p);
            }
        }
        Err(Error::Inconsistent("over-lattice basis is integral".into()))
    }
}

/// Builds the over-lattice of an isotropic subgroup and checks evenness,
/// integrality and `det · p² = det(base)`.
pub fn construct_overlattice(l: &IntegralLattice, h: &PrimeSubgroup) -> Result<OverLattice> {
    let h = h.clone().certify()?;
    let p = h.order();
    let n = l.rank();
    if !l.is_dual_vector(h.generator()) {
        return Err(Error::Shape("generator is not in the dual lattice".into()));
    }
    let pb = BigInt::from(p);
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { pb.clone() } else { BigInt::zero() }).collect())
        .collect();
    rows.push(h.0.numerators().into_iter().map(BigInt::from).collect());
    let scaled = hnf(&IntMatrix::from_rows(&rows)?)?;
    let basis = scaled.to_rational().map(|c| c / Rational::from_integer(pb.clone()));
    let gram = basis.mul(&l.gram().to_rational())?.mul(&basis.transpose())?;
    let gram = gram
        .to_integer()
        .ok_or_else(|| Error::Inconsistent("over-lattice Gram is not integral".into()))?;
    let lattice = IntegralLattice::new(gram)?;
    if !lattice.is_even() {
        return Err(Error::Inconsistent("over-lattice is not even".into()));
    }
    if lattice.det() * &pb * &pb != l.det() {
        return Err(Error::Inconsistent("det · index² differs from det(base)".into()));
    }
    Ok(OverLattice { base: l.clone(), subgroup: h, basis, lattice })
}

/// Same signature and isometric discriminant forms.
pub fn same_genus(a: &IntegralLattice, b: &IntegralLattice) -> Result<bool> {
    if a.rank() != b.rank() || a.signature() != b.signature() {
        return Ok(false);
    }
    let (da, db) = (a.discriminant_group()?, b.discriminant_group()?);
    tqm_isometric(da.module(), db.module())
}

/// Whether the isometry `g` of `L` maps the class of `x` into `⟨y⟩`.
pub fn maps_subgroup(g: &IntMatrix, x: &[Rational], y: &PrimeSubgroup) -> bool {
    let gx = g.to_rational().mul_vec(x).expect("dimension");
    (1..y.order()).any(|c| {
        let cr = Rational::from_integer(BigInt::from(c));
        gx.iter().zip(y.generator()).all(|(a, b)| (a - b * &cr).is_integer())
    })
}

/// Searches `O(L)` (entries bounded by `bound`) for `g` with `ḡ(H1) = H2`.
/// `None` means only that no witness exists within the bound.
pub fn overlattice_isomorphic_witness(
    l: &IntegralLattice,
    h1: &PrimeSubgroup,
    h2: &PrimeSubgroup,
    bound: i64,
) -> Option<LatticeMap> {
    let n = l.rank();
    let g = if h1 == h2 {
        IntMatrix::identity(n)
    } else {
        if h1.order() != h2.order() {
            return None;
        }
        let x = h1.generator().to_vec();
        find_isometry_between(l, l, bound, SearchOptions::default(), &|g| maps_subgroup(g, &x, h2))?
    };
    LatticeMap::new(g, l.clone(), l.clone()).ok()
}

/// Integer `g` with `gᵀ·b·g = a` and entries bounded by `bound`, if found.
pub fn find_congruence(a: &IntegralLattice, b: &IntegralLattice, bound: i64) -> Option<IntMatrix> {
    if a.det().abs() != b.det().abs() {
        return None;
    }
    find_isometry_between(a, b, bound, SearchOptions::default(), &|_| true)
}
