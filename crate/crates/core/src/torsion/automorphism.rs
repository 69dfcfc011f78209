use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::isometry::is_surjective;
use super::{Element, TorsionQuadraticModule};
use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::report::Report;

/// Orders up to which q-preservation is also checked element by element.
pub const EXHAUSTIVE_LIMIT: i64 = 100_000;

/// Endomorphism `x ↦ T x` of a module, with `T` acting on generator
/// coordinates (column `j` is the image of generator `j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TqmAutomorphism {
    matrix: IntMatrix,
    domain: TorsionQuadraticModule,
}

impl TqmAutomorphism {
    pub fn new(domain: &TorsionQuadraticModule, matrix: IntMatrix) -> Result<Self> {
        let m = domain.num_generators();
        if matrix.rows() != m || matrix.cols() != m {
            return Err(Error::Shape(format!(
                "automorphism matrix is {}x{}, module has {m} generators",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { matrix, domain: domain.clone() })
    }

    pub fn from_i64_rows(domain: &TorsionQuadraticModule, rows: &[&[i64]]) -> Result<Self> {
        Self::new(domain, IntMatrix::from_i64_rows(rows)?)
    }

    pub fn identity(domain: &TorsionQuadraticModule) -> Self {
        Self { matrix: IntMatrix::identity(domain.num_generators()), domain: domain.clone() }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn domain(&self) -> &TorsionQuadraticModule {
        &self.domain
    }

    pub fn apply(&self, x: &[i64]) -> Element {
        let m = &self.domain;
        let mut out = m.zero();
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0 {
                continue;
            }
            let col: Element = (0..m.num_generators())
                .map(|i| self.matrix[(i, j)].mod_floor(&BigInt::from(m.orders()[i])).to_i64().unwrap())
                .collect();
            out = m.add(&out, &m.scale(xj, &col));
        }
        out
    }

    /// Entry `(i, j)` times `d_j` vanishes mod `d_i` for all `i, j`.
    pub fn is_well_defined(&self) -> bool {
        let d = self.domain.orders();
        (0..d.len()).all(|i| {
            (0..d.len()).all(|j| (&self.matrix[(i, j)] * BigInt::from(d[j])).is_multiple_of(&BigInt::from(d[i])))
        })
    }

    pub fn is_bijective(&self) -> bool {
        let images: Vec<Element> = (0..self.domain.num_generators())
            .map(|j| self.apply(&self.domain.generator(j)))
            .collect();
        is_surjective(&self.domain, &images)
    }

    pub fn preserves_form_on_generators(&self) -> bool {
        let m = &self.domain;
        let gens: Vec<Element> = (0..m.num_generators()).map(|i| m.generator(i)).collect();
        let imgs: Vec<Element> = gens.iter().map(|g| self.apply(g)).collect();
        (0..gens.len()).all(|i| {
            m.q_numerator(&imgs[i]) == m.q_numerator(&gens[i])
                && (0..gens.len()).all(|j| m.b_numerator(&imgs[i], &imgs[j]) == m.b_numerator(&gens[i], &gens[j]))
        })
    }

    pub fn preserves_form_everywhere(&self) -> bool {
        self.domain
            .elements()
            .all(|x| self.domain.q_numerator(&self.apply(&x)) == self.domain.q_numerator(&x))
    }

    /// The subgroup generated by `x` maps onto the one generated by `y`.
    pub fn maps_cyclic_subgroup(&self, x: &[i64], y: &[i64]) -> bool {
        let m = &self.domain;
        let image = self.apply(x);
        let n = m.element_order(y);
        m.element_order(&image) == n && (1..n).any(|c| m.scale(c, y) == image)
    }
}

/// Runs the endomorphism, bijectivity and form-preservation checks.
pub fn check_tqm_automorphism(a: &TqmAutomorphism) -> Report {
    let mut r = Report::new("torsion automorphism");
    let well_defined = r.check("well-defined endomorphism", a.is_well_defined(), "");
    if !well_defined {
        r.check("bijective", false, "skipped: not an endomorphism");
        r.check("preserves q and b", false, "skipped: not an endomorphism");
        return r;
    }
    r.check("bijective", a.is_bijective(), "");
    r.check("preserves q and b on generators", a.preserves_form_on_generators(), "");
    let order = a.domain.order();
    if order <= EXHAUSTIVE_LIMIT {
        r.check("preserves q on every element", a.preserves_form_everywhere(), format!("{order} elements"));
    }
    r
}
