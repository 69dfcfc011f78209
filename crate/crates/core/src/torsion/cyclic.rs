use std::fmt;

use num_integer::Integer;

use super::TorsionQuadraticModule;
use crate::error::{Error, Result};
use crate::exact::arith::{gcd, mul_mod};
use crate::exact::rat;

/// The form `(u/v)`: `Z/v` with `q(x) = u x² / v mod 2`.
///
/// Stored with `u` reduced into `[0, 2v)`; `v = 1` is the trivial form `(0/1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicForm {
    u: i64,
    v: i64,
}

impl CyclicForm {
    pub fn new(u: i64, v: i64) -> Result<Self> {
        if v < 1 {
            return Err(Error::InvalidCyclic(format!("modulus {v} must be positive")));
        }
        if v == 1 {
            return Ok(Self { u: 0, v: 1 });
        }
        if gcd(u, v) != 1 {
            return Err(Error::InvalidCyclic(format!("gcd({u}, {v}) ≠ 1")));
        }
        if u % 2 != 0 && v % 2 != 0 {
            return Err(Error::InvalidCyclic(format!("({u}/{v}): u or v must be even")));
        }
        Ok(Self { u: u.rem_euclid(2 * v), v })
    }

    pub fn u(&self) -> i64 {
        self.u
    }

    pub fn v(&self) -> i64 {
        self.v
    }

    pub fn q(&self, x: i64) -> num_rational::BigRational {
        let two_v = 2 * self.v;
        rat(mul_mod(self.u, mul_mod(x, x, two_v), two_v), self.v)
    }

    pub fn to_module(&self) -> TorsionQuadraticModule {
        if self.v == 1 {
            return TorsionQuadraticModule::trivial();
        }
        let q = rat(self.u, self.v);
        TorsionQuadraticModule::with_generators(&[self.v], &[q.clone()], &[vec![q]])
            .expect("admissible cyclic form")
    }
}

impl fmt::Display for CyclicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}/{})", self.u, self.v)
    }
}

impl fmt::Debug for CyclicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Literal equality of forms: same `v` and `u ≡ u' mod 2v`.
pub fn cyclic_equal(a: &CyclicForm, b: &CyclicForm) -> bool {
    a == b
}

/// Smallest unit `w` mod `v` with `u·w² ≡ u' mod 2v`, if any.
pub fn cyclic_isometric(a: &CyclicForm, b: &CyclicForm) -> Option<i64> {
    if a.v != b.v {
        return None;
    }
    if a.v == 1 {
        return Some(1);
    }
    let two_v = 2 * a.v;
    (1..a.v)
        .filter(|&w| gcd(w, a.v) == 1)
        .find(|&w| mul_mod(a.u, mul_mod(w, w, two_v), two_v) == b.u)
}

/// Smallest admissible `u` in `[0, 2v)` whose form is isometric to `c`.
pub fn cyclic_normal_form(c: &CyclicForm) -> CyclicForm {
    (0..2 * c.v)
        .filter_map(|u| CyclicForm::new(u, c.v).ok())
        .find(|cand| cyclic_isometric(cand, c).is_some())
        .expect("c itself is a candidate")
}

/// Bézout pair `(s, t)` with `a s + b t = 1`, canonicalized as used by
/// [`split_cyclic`].
pub fn bezout_pair(u: i64, a: i64, b: i64) -> (i64, i64) {
    let odd_u = u % 2 != 0;
    let (s0, step) = if b == 1 {
        (0, 1)
    } else {
        let e = a.extended_gcd(&b);
        (e.x.rem_euclid(b), b)
    };
    let mut s = s0;
    loop {
        let t = (1 - a * s) / b;
        let ok = !odd_u || (a % 2 == 0 && s % 2 == 0) || (b % 2 == 0 && t % 2 == 0);
        if ok {
            return (s, t);
        }
        s += step;
    }
}

/// Splits `(u/v)` with `v = a·b`, `gcd(a, b) = 1`, as `(t u / a) ⊕ (s u / b)`.
pub fn split_cyclic(c: &CyclicForm, a: i64, b: i64) -> Result<(CyclicForm, CyclicForm)> {
    split_with(c, a, b, None)
}

/// [`split_cyclic`] with a caller-chosen Bézout pair `a s + b t = 1`.
pub fn split_cyclic_with(c: &CyclicForm, a: i64, b: i64, (s, t): (i64, i64)) -> Result<(CyclicForm, CyclicForm)> {
    if a * s + b * t != 1 {
        return Err(Error::InvalidCyclic(format!("{a}·{s} + {b}·{t} ≠ 1")));
    }
    split_with(c, a, b, Some((s, t)))
}

fn split_with(c: &CyclicForm, a: i64, b: i64, pair: Option<(i64, i64)>) -> Result<(CyclicForm, CyclicForm)> {
    if a < 1 || b < 1 || a * b != c.v {
        return Err(Error::InvalidCyclic(format!("{a}·{b} ≠ {}", c.v)));
    }
    if gcd(a, b) != 1 {
        return Err(Error::InvalidCyclic(format!("gcd({a}, {b}) ≠ 1")));
    }
    let (s, t) = pair.unwrap_or_else(|| bezout_pair(c.u, a, b));
    let first = CyclicForm::new((t * c.u).rem_euclid(2 * a), a)?;
    let second = CyclicForm::new((s * c.u).rem_euclid(2 * b), b)?;
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion::find_isometry;

    fn c(u: i64, v: i64) -> CyclicForm {
        CyclicForm::new(u, v).unwrap()
    }

    #[test]
    fn construction() {
        assert!(CyclicForm::new(1, 9).is_err());
        assert!(CyclicForm::new(3, 9).is_err());
        assert!(CyclicForm::new(2, 0).is_err());
        assert_eq!(c(-2, 9).u(), 16);
        assert_eq!(c(5, 1), c(0, 1));
    }

    #[test]
    fn isometry_examples() {
        assert_eq!(cyclic_isometric(&c(2, 9), &c(8, 9)), Some(2));
        assert_eq!(cyclic_isometric(&c(2, 9), &c(4, 9)), None);
        assert_eq!(cyclic_isometric(&c(10, 27), &c(10, 27)), Some(1));
        assert!(!cyclic_equal(&c(2, 9), &c(8, 9)));
        assert!(cyclic_equal(&c(2, 9), &c(20, 9)));
    }

    #[test]
    fn normal_forms_for_three() {
        assert_eq!(cyclic_normal_form(&c(8, 9)), c(2, 9));
        assert_eq!(cyclic_normal_form(&c(16, 27)), c(4, 27));
        assert_eq!(cyclic_normal_form(&c(10, 7)), c(6, 7));
        assert_eq!(cyclic_normal_form(&c(8, 7)), c(2, 7));
    }

    #[test]
    fn split_examples() {
        let (x, y) = split_cyclic(&c(1, 6), 2, 3).unwrap();
        assert_eq!((x, y), (c(3, 2), c(2, 3)));
        let (x, y) = split_cyclic(&c(5, 8), 8, 1).unwrap();
        assert_eq!((x, y), (c(5, 8), c(0, 1)));
        assert!(split_cyclic(&c(1, 6), 6, 2).is_err());
        assert!(split_cyclic(&c(2, 9), 3, 3).is_err());
    }

    #[test]
    fn split_of_minus_one_over_18k() {
        // k' prime to 3: (-1/18k') = (-u/2k') + (-v/9) with 2k'v ≡ 1 mod 9. The
        // form (-u/2k') depends on u mod 4k', where 9u ≡ 1 holds; -v stands for
        // its even representative mod 18.
        for kp in [1i64, 2, 4, 5, 7, 8, 10, 11] {
            let form = c(-1, 18 * kp);
            let (x, y) = split_cyclic(&form, 2 * kp, 9).unwrap();
            let u = crate::exact::arith::inv_mod(9, 4 * kp).unwrap();
            let v = crate::exact::arith::inv_mod(2 * kp, 9).unwrap();
            assert!(cyclic_isometric(&x, &c(-u, 2 * kp)).is_some(), "k'={kp}");
            let minus_v = if (9 - v) % 2 == 0 { 9 - v } else { 18 - v };
            assert!(cyclic_isometric(&y, &c(minus_v, 9)).is_some(), "k'={kp}");
            let whole = form.to_module();
            let parts = x.to_module().orthogonal_sum(&y.to_module());
            assert!(find_isometry(&whole, &parts.normalized().0).is_some());
        }
    }
}
