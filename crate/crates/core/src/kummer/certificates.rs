//! Explicit isometries and the abstract 3-primary modules they act on.
//!
//! Local modules use integer coordinates: `(a, b, c)` stands for
//! `a·h₁ + b·h₂ + c·h₃` with `h₁` the cyclic summand and `h₂, h₃` the pair
//! with `q = 2/3, 2/9` and `b(h₂, h₃) = -1/3`.

use crate::error::{Error, Result};
use crate::exact::{rat, IntMatrix, Rational};
use crate::torsion::TorsionQuadraticModule;

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64_rows(rows).expect("3x3")
}

/// Order-6 isometry of `T(A)(3)`, for every `k`.
pub fn g_isometry() -> IntMatrix {
    m(&[&[1, 0, 0], &[0, -1, -3], &[0, 1, 2]])
}

/// Exchanges the two order-9 summands of the 3-part when `k ≡ 6 mod 9`.
pub fn tau() -> IntMatrix {
    m(&[&[0, -6, 1], &[0, 1, 0], &[1, 6, 0]])
}

/// `τ_a` for `u = 2`, `a ≥ 3`.
pub fn tau_a(a: u32) -> Result<IntMatrix> {
    if a < 3 {
        return Err(Error::InvalidArgument(format!("tau_a needs a >= 3, got {a}")));
    }
    let p = 3i64.pow(a - 1);
    let q = 3 * p;
    Ok(m(&[&[2 * p - 1, -14 * q, 8 * p], &[0, -4, 1], &[7, -48, 11]]))
}

/// `ϑ_a` for `u = 4`, `a ≥ 3`.
pub fn theta_a(a: u32) -> Result<IntMatrix> {
    if a < 3 {
        return Err(Error::InvalidArgument(format!("theta_a needs a >= 3, got {a}")));
    }
    let p = 3i64.pow(a - 1);
    let q = 3 * p;
    Ok(m(&[&[4 * p - 1, -14 * q, 8 * p], &[1, -10, 2], &[13, -78, 16]]))
}

pub fn tau_2() -> IntMatrix {
    m(&[&[5, -18, 3], &[2, -10, 2], &[17, -69, 14]])
}

pub fn theta_2() -> IntMatrix {
    m(&[&[2, -126, 24], &[0, -4, 1], &[5, -66, 14]])
}

/// The certificate for `(a, u)`: `τ` for `u = 2`, `ϑ` for `u = 4`.
pub fn certificate(a: u32, u: i64) -> Result<(&'static str, IntMatrix)> {
    match (a, u) {
        (2, 2) => Ok(("tau_2", tau_2())),
        (2, 4) => Ok(("theta_2", theta_2())),
        (a, 2) if a >= 3 => Ok(("tau_a", tau_a(a)?)),
        (a, 4) if a >= 3 => Ok(("theta_a", theta_a(a)?)),
        _ => Err(Error::InvalidArgument(format!("no certificate for a={a}, u={u}"))),
    }
}

/// `Z/3^{a+1} ⊕ Z/3 ⊕ Z/9` with `q = (u/3^{a+1}) ⊕ [[2/3, -1/3], [-1/3, 2/9]]`.
pub fn local_module(a: u32, u: i64) -> Result<TorsionQuadraticModule> {
    let n = 3i64.pow(a + 1);
    let z = rat(0, 1);
    let b: Vec<Vec<Rational>> = vec![
        vec![rat(u, n), z.clone(), z.clone()],
        vec![z.clone(), rat(2, 3), rat(-1, 3)],
        vec![z.clone(), rat(-1, 3), rat(2, 9)],
    ];
    TorsionQuadraticModule::with_generators(&[n, 3, 9], &[rat(u, n), rat(2, 3), rat(2, 9)], &b)
}

/// Local coordinates of `v₀ = (0, 0, 1/3)`.
pub fn local_v0() -> Vec<i64> {
    vec![0, 0, 3]
}

/// Local coordinates of `w₁ = (3ᵃ, 0, 3)`.
pub fn local_w1(a: u32) -> Vec<i64> {
    vec![3i64.pow(a), 0, 3]
}

/// Local coordinates of `w₂ = (3ᵃ, 0, 6)`.
pub fn local_w2(a: u32) -> Vec<i64> {
    vec![3i64.pow(a), 0, 6]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion::{check_tqm_automorphism, TqmAutomorphism};

    #[test]
    fn local_modules_are_nondegenerate() {
        for a in 1..6 {
            for u in [2, 4] {
                assert!(local_module(a, u).unwrap().is_nondegenerate());
            }
        }
    }

    #[test]
    fn certificates_act_on_their_modules() {
        for a in 2..6 {
            for u in [2, 4] {
                let (_, t) = certificate(a, u).unwrap();
                let md = local_module(a, u).unwrap();
                let r = check_tqm_automorphism(&TqmAutomorphism::new(&md, t).unwrap());
                assert!(r.passed(), "a={a} u={u}\n{r}");
            }
        }
    }

    #[test]
    fn certificates_fail_on_the_other_branch() {
        for a in 2..5 {
            let md = local_module(a, 4).unwrap();
            let t = certificate(a, 2).unwrap().1;
            assert!(!check_tqm_automorphism(&TqmAutomorphism::new(&md, t).unwrap()).passed());
        }
    }

    #[test]
    fn stated_images_of_v0() {
        for a in 3..6 {
            let t = TqmAutomorphism::new(&local_module(a, 2).unwrap(), tau_a(a).unwrap()).unwrap();
            assert_eq!(t.apply(&local_v0()), vec![2 * 3i64.pow(a), 0, 6]);
            let th = TqmAutomorphism::new(&local_module(a, 4).unwrap(), theta_a(a).unwrap()).unwrap();
            assert_eq!(th.apply(&local_v0()), vec![2 * 3i64.pow(a), 0, 3]);
        }
    }

    #[test]
    fn tau_swaps_order_nine_summands() {
        let z = rat(0, 1);
        let b = vec![
            vec![rat(2, 9), z.clone(), z.clone()],
            vec![z.clone(), rat(2, 3), rat(-1, 3)],
            vec![z.clone(), rat(-1, 3), rat(2, 9)],
        ];
        let md = TorsionQuadraticModule::with_generators(&[9, 3, 9], &[rat(2, 9), rat(2, 3), rat(2, 9)], &b).unwrap();
        let t = TqmAutomorphism::new(&md, tau()).unwrap();
        assert!(check_tqm_automorphism(&t).passed());
        assert_eq!(t.apply(&[1, 0, 0]), vec![0, 0, 1]);
        assert_eq!(t.apply(&[0, 0, 1]), vec![1, 0, 0]);
    }
}
