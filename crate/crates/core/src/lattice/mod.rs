//! Integral lattices given by a symmetric nondegenerate Gram matrix.

mod discriminant;
pub mod file;

pub use discriminant::DiscriminantGroup;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{signature_of, IntMatrix, Rational, RationalMatrix};
use crate::torsion::TqmAutomorphism;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegralLattice {
    gram: IntMatrix,
    even: bool,
}

impl IntegralLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Shape("Gram matrix must be square".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if gram.det()?.is_zero() {
            return Err(Error::Degenerate);
        }
        let two = BigInt::from(2);
        let even = (0..gram.rows()).all(|i| gram[(i, i)].is_multiple_of(&two));
        Ok(Self { gram, even })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64_rows(rows)?)
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn det(&self) -> BigInt {
        self.gram.det().expect("square")
    }

    /// `L(n)`: the form multiplied by `n`.
    pub fn rescale(&self, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::Shape(format!("rescaling factor {n} must be positive")));
        }
        Self::new(self.gram.scaled(&BigInt::from(n)))
    }

    /// `(positive, negative)` counts of the form.
    pub fn signature(&self) -> (usize, usize) {
        let s = signature_of(&self.gram.to_rational()).expect("symmetric");
        (s.positive, s.negative)
    }

    /// `G⁻¹`; its columns are the dual basis in lattice coordinates.
    pub fn gram_inverse(&self) -> RationalMatrix {
        self.gram.to_rational().inverse().expect("nondegenerate")
    }

    /// `xᵀ G y` for rational coordinate vectors.
    pub fn pairing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.gram.to_rational().bilinear(x, y).expect("dimension")
    }

    /// Whether `x` (rational coordinates) lies in the dual lattice.
    pub fn is_dual_vector(&self, x: &[Rational]) -> bool {
        x.len() == self.rank()
            && self
                .gram
                .to_rational()
                .mul_vec(x)
                .expect("dimension")
                .iter()
                .all(|c| c.is_integer())
    }

    /// True iff `gᵀ G g = G`.
    pub fn is_isometry(&self, g: &IntMatrix) -> bool {
        g.rows() == self.rank() && g.cols() == self.rank() && g.congruent(&self.gram).is_ok_and(|h| h == self.gram)
    }

    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        DiscriminantGroup::new(self)
    }

    /// Action of an isometry on the discriminant group, in the invariant-factor
    /// coordinates of [`discriminant_group`](Self::discriminant_group).
    pub fn induced_discriminant_action(&self, g: &IntMatrix) -> Result<TqmAutomorphism> {
        if !self.is_isometry(g) {
            return Err(Error::NotIsometry);
        }
        self.discriminant_group()?.action_of(g)
    }
}

/// Linear map between lattices; column `j` is the image of the `j`-th source
/// basis vector in target coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    pub matrix: IntMatrix,
    pub source: IntegralLattice,
    pub target: IntegralLattice,
}

impl LatticeMap {
    pub fn new(matrix: IntMatrix, source: IntegralLattice, target: IntegralLattice) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::Shape("map does not match the lattice ranks".into()));
        }
        Ok(Self { matrix, source, target })
    }

    pub fn is_isometric_embedding(&self) -> bool {
        self.matrix.congruent(self.target.gram()).is_ok_and(|g| &g == self.source.gram())
    }
}

/// Index of an isometric full-rank embedding, computed both as `|det|` of the
/// map and as the square root of the determinant ratio.
pub fn sublattice_index(map: &LatticeMap) -> Result<BigInt> {
    if !map.is_isometric_embedding() {
        return Err(Error::NotIsometry);
    }
    if !map.matrix.is_square() {
        return Err(Error::RankDeficient);
    }
    let index = map.matrix.det()?.abs();
    if index.is_zero() {
        return Err(Error::RankDeficient);
    }
    let (ds, dt) = (map.source.det(), map.target.det());
    let ratio = Rational::new(ds, dt);
    if ratio != Rational::from_integer(&index * &index) {
        return Err(Error::Inconsistent(format!(
            "index {index} but determinant ratio {ratio}"
        )));
    }
    Ok(index)
}
