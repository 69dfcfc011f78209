use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::IntegralLattice;
use crate::error::{Error, Result};
use crate::exact::{rem_euclid, snf, IntMatrix, Rational};
use crate::torsion::{Element, TorsionQuadraticModule, TqmAutomorphism};

/// `Ľ/L` with its discriminant form, in invariant-factor coordinates.
///
/// With `U G V = D` the Smith form of the Gram matrix, generator `i` is the
/// class of `V[:, i] / d_i` (for `d_i > 1`) and a dual vector `x` has
/// coordinates `U G x mod D`.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    lattice: IntegralLattice,
    module: TorsionQuadraticModule,
    representatives: Vec<Vec<Rational>>,
    coordinate_rows: IntMatrix,
}

fn reduce_unit(x: &[Rational]) -> Vec<Rational> {
    let one = Rational::one();
    x.iter().map(|c| rem_euclid(c, &one)).collect()
}

impl DiscriminantGroup {
    pub(super) fn new(lattice: &IntegralLattice) -> Result<Self> {
        if !lattice.is_even() {
            return Err(Error::NotEven);
        }
        let g = lattice.gram();
        let n = lattice.rank();
        let s = snf(g);
        let factors = s.invariant_factors();
        let keep: Vec<usize> = (0..n).filter(|&i| !factors[i].is_one()).collect();
        let orders: Vec<i64> = keep
            .iter()
            .map(|&i| factors[i].to_i64().ok_or_else(|| Error::Overflow(factors[i].to_string())))
            .collect::<Result<_>>()?;
        let representatives: Vec<Vec<Rational>> = keep
            .iter()
            .map(|&i| {
                let col: Vec<Rational> = s
                    .v
                    .column(i)
                    .into_iter()
                    .map(|c| Rational::new(c, factors[i].clone()))
                    .collect();
                reduce_unit(&col)
            })
            .collect();
        let gr = g.to_rational();
        let two = Rational::from_integer(BigInt::from(2));
        let one = Rational::one();
        let q: Vec<Rational> = representatives
            .iter()
            .map(|x| rem_euclid(&gr.bilinear(x, x).unwrap(), &two))
            .collect();
        let b: Vec<Vec<Rational>> = representatives
            .iter()
            .map(|x| {
                representatives
                    .iter()
                    .map(|y| rem_euclid(&gr.bilinear(x, y).unwrap(), &one))
                    .collect()
            })
            .collect();
        let module = TorsionQuadraticModule::with_generators(&orders, &q, &b)?;
        let rows: Vec<Vec<BigInt>> = keep.iter().map(|&i| s.u.row(i).to_vec()).collect();
        let coordinate_rows = if rows.is_empty() {
            IntMatrix::zeros(0, n)
        } else {
            IntMatrix::from_rows(&rows)?.mul(g)?
        };
        Ok(Self { lattice: lattice.clone(), module, representatives, coordinate_rows })
    }

    pub fn lattice(&self) -> &IntegralLattice {
        &self.lattice
    }

    pub fn module(&self) -> &TorsionQuadraticModule {
        &self.module
    }

    pub fn orders(&self) -> &[i64] {
        self.module.orders()
    }

    pub fn order(&self) -> i64 {
        self.module.order()
    }

    /// Generator representatives, coordinates in `[0, 1)`.
    pub fn representatives(&self) -> &[Vec<Rational>] {
        &self.representatives
    }

    /// Coordinates of the class of a dual vector.
    pub fn coords_of(&self, x: &[Rational]) -> Result<Element> {
        if !self.lattice.is_dual_vector(x) {
            return Err(Error::Shape("vector is not in the dual lattice".into()));
        }
        let rows = self.coordinate_rows.to_rational();
        let c = rows.mul_vec(x)?;
        Ok(c.iter()
            .zip(self.orders())
            .map(|(v, &d)| v.to_integer().mod_floor(&BigInt::from(d)).to_i64().unwrap())
            .collect())
    }

    /// Canonical representative of a class, coordinates in `[0, 1)`.
    pub fn representative(&self, c: &[i64]) -> Vec<Rational> {
        let n = self.lattice.rank();
        let mut acc = vec![Rational::from_integer(BigInt::from(0)); n];
        for (ci, g) in c.iter().zip(&self.representatives) {
            for (a, gj) in acc.iter_mut().zip(g) {
                *a += gj * Rational::from_integer(BigInt::from(*ci));
            }
        }
        reduce_unit(&acc)
    }

    /// `xᵀ G x mod 2` computed directly from a dual vector.
    pub fn q_of_vector(&self, x: &[Rational]) -> Rational {
        rem_euclid(&self.lattice.pairing(x, x), &Rational::from_integer(BigInt::from(2)))
    }

    /// Induced action of a lattice isometry; column `j` is the class of `g`
    /// applied to generator `j`.
    pub fn action_of(&self, g: &IntMatrix) -> Result<TqmAutomorphism> {
        let gr = g.to_rational();
        let m = self.module.num_generators();
        let mut data = vec![BigInt::from(0); m * m];
        for (j, rep) in self.representatives.iter().enumerate() {
            let image = self.coords_of(&gr.mul_vec(rep)?)?;
            for i in 0..m {
                data[i * m + j] = BigInt::from(image[i]);
            }
        }
        TqmAutomorphism::new(&self.module, IntMatrix::from_vec(m, m, data)?)
    }
}
