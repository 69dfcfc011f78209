//! Finite torsion quadratic modules.
//!
//! A module is stored as a presentation `⊕ Z/d_i · g_i` together with the
//! values `q(g_i) ∈ Q/2Z` and `b(g_i, g_j) ∈ Q/Z`. All values are kept as
//! integer numerators over the exponent `N = lcm(d_i)`: `q` numerators live in
//! `[0, 2N)` and `b` numerators in `[0, N)`.

mod automorphism;
mod cyclic;
mod isometry;

pub use automorphism::{check_tqm_automorphism, TqmAutomorphism};
pub use cyclic::{bezout_pair, cyclic_equal, cyclic_isometric, cyclic_normal_form, split_cyclic, split_cyclic_with, CyclicForm};
pub use isometry::{
    find_isometry, odd_jordan_decomposition, tqm_isometric, tqm_isometric_with_bound, JordanBlock,
    DEFAULT_BRUTE_FORCE_BOUND,
};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::arith::{gcd, lcm, modp, prime_divisors, valuation};
use crate::exact::{snf, IntMatrix, Rational};

pub type Element = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorsionQuadraticModule {
    orders: Vec<i64>,
    exponent: i64,
    q_num: Vec<i64>,
    b_num: Vec<Vec<i64>>,
}

fn numerator_over(x: &Rational, n: i64, what: &str) -> Result<BigInt> {
    let scaled = x * Rational::from_integer(BigInt::from(n));
    if !scaled.is_integer() {
        return Err(Error::InvalidModule(format!("{what} = {x} has denominator not dividing {n}")));
    }
    Ok(scaled.to_integer())
}

fn small(x: BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(x.to_string()))
}

impl TorsionQuadraticModule {
    /// The trivial module.
    pub fn trivial() -> Self {
        Self { orders: vec![], exponent: 1, q_num: vec![], b_num: vec![] }
    }

    /// Module on `⊕ Z/d_i` with the given generator values, kept in exactly
    /// this presentation. `b` must be a full symmetric table whose diagonal
    /// agrees with `q` modulo 1.
    pub fn with_generators(orders: &[i64], q: &[Rational], b: &[Vec<Rational>]) -> Result<Self> {
        let m = orders.len();
        if q.len() != m || b.len() != m || b.iter().any(|r| r.len() != m) {
            return Err(Error::Shape("generator data does not match the orders".into()));
        }
        if let Some(d) = orders.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidModule(format!("generator order {d} < 2")));
        }
        let n = orders.iter().fold(1, |acc, &d| lcm(acc, d));
        let two_n = 2 * n;
        let two = Rational::from_integer(BigInt::from(2));
        let mut q_num = Vec::with_capacity(m);
        for i in 0..m {
            let d = Rational::from_integer(BigInt::from(orders[i]));
            if !(&q[i] * &d).is_integer() {
                return Err(Error::InvalidModule(format!("q(g{i}) = {} has order above {}", q[i], orders[i])));
            }
            if !(&q[i] * &d * &d / &two).is_integer() {
                return Err(Error::InvalidModule(format!("d² q(g{i}) is not even for q = {}", q[i])));
            }
            let a = numerator_over(&q[i], n, "q")?;
            q_num.push(small(a.mod_floor(&BigInt::from(two_n)))?);
        }
        let mut b_num = vec![vec![0; m]; m];
        for i in 0..m {
            for j in 0..m {
                let g = Rational::from_integer(BigInt::from(gcd(orders[i], orders[j])));
                if !(&b[i][j] * &g).is_integer() {
                    return Err(Error::InvalidModule(format!("b(g{i}, g{j}) = {} incompatible with orders", b[i][j])));
                }
                if !(&b[i][j] - &b[j][i]).is_integer() {
                    return Err(Error::InvalidModule("b is not symmetric".into()));
                }
                let c = numerator_over(&b[i][j], n, "b")?;
                b_num[i][j] = small(c.mod_floor(&BigInt::from(n)))?;
            }
            if !(&b[i][i] - &q[i]).is_integer() {
                return Err(Error::InvalidModule(format!("b(g{i}, g{i}) differs from q(g{i}) modulo 1")));
            }
        }
        Ok(Self { orders: orders.to_vec(), exponent: n, q_num, b_num })
    }

    /// Module given by any presentation, normalized to invariant-factor form.
    pub fn from_presentation(orders: &[i64], q: &[Rational], b: &[Vec<Rational>]) -> Result<Self> {
        let keep: Vec<usize> = (0..orders.len()).filter(|&i| orders[i] != 1).collect();
        let pick = |v: &[Rational]| keep.iter().map(|&i| v[i].clone()).collect::<Vec<_>>();
        if q.len() != orders.len() || b.len() != orders.len() {
            return Err(Error::Shape("generator data does not match the orders".into()));
        }
        let o: Vec<i64> = keep.iter().map(|&i| orders[i]).collect();
        let qq = pick(q);
        let bb: Vec<Vec<Rational>> = keep.iter().map(|&i| pick(&b[i])).collect();
        Ok(Self::with_generators(&o, &qq, &bb)?.normalized().0)
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn num_generators(&self) -> usize {
        self.orders.len()
    }

    /// `lcm` of the generator orders; 1 for the trivial module.
    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn order(&self) -> i64 {
        self.orders.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_invariant_form(&self) -> bool {
        self.orders.windows(2).all(|w| w[1] % w[0] == 0)
    }

    pub fn zero(&self) -> Element {
        vec![0; self.orders.len()]
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn reduce(&self, x: &[i64]) -> Element {
        x.iter().zip(&self.orders).map(|(&a, &d)| a.rem_euclid(d)).collect()
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Element {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((&a, &b), &d)| (a + b).rem_euclid(d))
            .collect()
    }

    pub fn scale(&self, m: i64, x: &[i64]) -> Element {
        x.iter().zip(&self.orders).map(|(&a, &d)| modp(m as i128 * a as i128, d)).collect()
    }

    pub fn is_zero_element(&self, x: &[i64]) -> bool {
        x.iter().zip(&self.orders).all(|(&a, &d)| a.rem_euclid(d) == 0)
    }

    pub fn element_order(&self, x: &[i64]) -> i64 {
        x.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&a, &d)| lcm(acc, d / gcd(a.rem_euclid(d), d)))
    }

    /// Numerator of `q(x)` over the exponent, in `[0, 2N)`.
    pub fn q_numerator(&self, x: &[i64]) -> i64 {
        let two_n = 2 * self.exponent;
        let mut acc: i128 = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            let xi = x[i] as i128;
            acc += modp(xi * xi, two_n) as i128 * self.q_num[i] as i128;
            for j in i + 1..x.len() {
                acc += 2 * modp(xi * x[j] as i128, two_n) as i128 * self.b_num[i][j] as i128;
            }
            acc %= two_n as i128;
        }
        modp(acc, two_n)
    }

    /// Numerator of `b(x, y)` over the exponent, in `[0, N)`.
    pub fn b_numerator(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.exponent;
        let mut acc: i128 = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                acc += modp(x[i] as i128 * y[j] as i128, n) as i128 * self.b_num[i][j] as i128;
            }
            acc %= n as i128;
        }
        modp(acc, n)
    }

    /// `q(x)` reduced into `[0, 2)`.
    pub fn element_q(&self, x: &[i64]) -> Rational {
        Rational::new(BigInt::from(self.q_numerator(x)), BigInt::from(self.exponent))
    }

    /// `b(x, y)` reduced into `[0, 1)`.
    pub fn element_b(&self, x: &[i64], y: &[i64]) -> Rational {
        Rational::new(BigInt::from(self.b_numerator(x, y)), BigInt::from(self.exponent))
    }

    pub fn q_values(&self) -> Vec<Rational> {
        (0..self.orders.len()).map(|i| self.element_q(&self.generator(i))).collect()
    }

    pub fn b_table(&self) -> Vec<Vec<Rational>> {
        let m = self.orders.len();
        (0..m)
            .map(|i| (0..m).map(|j| self.element_b(&self.generator(i), &self.generator(j))).collect())
            .collect()
    }

    /// All elements in lexicographic order of their coordinates.
    pub fn elements(&self) -> Elements<'_> {
        Elements { orders: &self.orders, next: Some(self.zero()) }
    }

    /// Orthogonal direct sum, presented by the concatenated generators.
    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        let mut q = self.q_values();
        q.extend(other.q_values());
        let (m1, m2) = (self.orders.len(), other.orders.len());
        let mut b = vec![vec![Rational::zero(); m1 + m2]; m1 + m2];
        let (b1, b2) = (self.b_table(), other.b_table());
        for i in 0..m1 {
            for j in 0..m1 {
                b[i][j] = b1[i][j].clone();
            }
        }
        for i in 0..m2 {
            for j in 0..m2 {
                b[m1 + i][m1 + j] = b2[i][j].clone();
            }
        }
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        Self::with_generators(&orders, &q, &b).expect("orthogonal sum of valid modules is valid")
    }

    /// Module generated by the given elements, which must be independent with
    /// the given orders (their subgroup is `⊕ Z/order_i`).
    pub fn submodule(&self, gens: &[Element], orders: &[i64]) -> Result<Self> {
        let q: Vec<Rational> = gens.iter().map(|g| self.element_q(g)).collect();
        let b: Vec<Vec<Rational>> = gens
            .iter()
            .map(|x| gens.iter().map(|y| self.element_b(x, y)).collect())
            .collect();
        Self::with_generators(orders, &q, &b)
    }

    /// Invariant-factor form of this module, plus the integer matrix sending
    /// old coordinates to new ones (rows for trivial invariant factors removed).
    pub fn normalized(&self) -> (Self, IntMatrix) {
        let m = self.orders.len();
        if self.is_invariant_form() {
            return (self.clone(), IntMatrix::identity(m));
        }
        let d = IntMatrix::diagonal(&self.orders.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        let s = snf(&d);
        let u_inv = s
            .u
            .to_rational()
            .inverse()
            .and_then(|x| x.to_integer().ok_or(Error::Singular))
            .expect("unimodular transform");
        let factors = s.invariant_factors();
        let keep: Vec<usize> = (0..m).filter(|&i| !factors[i].is_one()).collect();
        let new_orders: Vec<i64> = keep.iter().map(|&i| factors[i].to_i64().expect("order fits")).collect();
        let gens: Vec<Element> = keep
            .iter()
            .map(|&i| {
                let col = u_inv.column(i);
                self.reduce(&col.iter().map(|c| c.mod_floor(&BigInt::from(self.exponent)).to_i64().unwrap()).collect::<Vec<_>>())
            })
            .collect();
        let module = self.submodule(&gens, &new_orders).expect("normalized generators are valid");
        let rows: Vec<Vec<BigInt>> = keep.iter().map(|&i| s.u.row(i).to_vec()).collect();
        let map = if rows.is_empty() {
            IntMatrix::zeros(0, m)
        } else {
            IntMatrix::from_rows(&rows).expect("rectangular")
        };
        (module, map)
    }

    /// Applies a coordinate map produced by [`normalized`](Self::normalized);
    /// `self` is the normalized target.
    pub fn map_coordinates(&self, map: &IntMatrix, x: &[i64]) -> Element {
        let v: Vec<BigInt> = x.iter().map(|&a| BigInt::from(a)).collect();
        let y = map.mul_vec(&v).expect("coordinate map shape");
        y.iter()
            .zip(&self.orders)
            .map(|(c, &d)| c.mod_floor(&BigInt::from(d)).to_i64().unwrap())
            .collect()
    }

    /// The `p`-part, together with the images of its generators in this
    /// module's coordinates. On an invariant-factor presentation the result is
    /// again in invariant-factor form.
    pub fn primary_part(&self, p: i64) -> (Self, Vec<Element>) {
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for (i, &d) in self.orders.iter().enumerate() {
            let e = valuation(d, p);
            if e == 0 {
                continue;
            }
            let pe = p.pow(e);
            gens.push(self.scale(d / pe, &self.generator(i)));
            orders.push(pe);
        }
        let part = self.submodule(&gens, &orders).expect("primary part of a valid module");
        (part, gens)
    }

    /// Orthogonal decomposition into `p`-parts, keyed by prime.
    pub fn p_primary_decomposition(&self) -> BTreeMap<i64, Self> {
        let (m, _) = self.normalized();
        prime_divisors(m.exponent)
            .into_iter()
            .map(|p| (p, m.primary_part(p).0))
            .collect()
    }

    /// Subgroups of prime order `p`, each given by its lexicographically least
    /// generator, paired with whether `q` vanishes on it.
    pub fn prime_order_subgroups(&self, p: i64) -> Vec<(Element, bool)> {
        let mut out: Vec<(Element, bool)> = self
            .elements()
            .filter(|x| self.element_order(x) == p)
            .filter(|x| (2..p).all(|c| self.scale(c, x) > *x))
            .map(|x| {
                let iso = self.q_numerator(&x) == 0;
                (x, iso)
            })
            .collect();
        out.sort();
        out
    }

    /// True iff `b` is nondegenerate, i.e. `x ↦ b(x, ·)` is a bijection
    /// onto the character group.
    pub fn is_nondegenerate(&self) -> bool {
        let m = self.orders.len();
        if m == 0 {
            return true;
        }
        // b(x, g_j) = y_j / d_j with y_j = Σ_i x_i · b_num[i][j] · d_j / N.
        let n = self.exponent as i128;
        let mut data = Vec::with_capacity(2 * m * m);
        for j in 0..m {
            let dj = self.orders[j];
            for i in 0..m {
                data.push(BigInt::from(self.b_num[i][j] as i128 * dj as i128 / n));
            }
            for i in 0..m {
                data.push(BigInt::from(if i == j { dj } else { 0 }));
            }
        }
        let s = snf(&IntMatrix::from_vec(m, 2 * m, data).expect("shape"));
        s.invariant_factors().iter().all(|d| d.is_one())
    }
}

impl fmt::Debug for TorsionQuadraticModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tqm(orders={:?}, q=[", self.orders)?;
        for (i, q) in self.q_values().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "])")
    }
}

pub struct Elements<'a> {
    orders: &'a [i64],
    next: Option<Element>,
}

impl Iterator for Elements<'_> {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                self.next = None;
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.orders[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(cur)
    }
}
