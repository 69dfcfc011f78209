use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use overlat_core::exact::{rat, IntMatrix, Rational};
use overlat_core::kummer::gram_ta3;
use overlat_core::lattice::IntegralLattice;
use overlat_core::overlat::{construct_overlattice, enumerate_prime_isotropic};
use overlat_core::torsion::{tqm_isometric, CyclicForm, TorsionQuadraticModule};

fn matrix(n: usize, e: &[i64]) -> IntMatrix {
    let rows: Vec<&[i64]> = e.chunks(n).collect();
    IntMatrix::from_i64_rows(&rows).unwrap()
}

/// Random even nondegenerate Gram matrix of rank 1..=3.
fn even_lattice() -> impl Strategy<Value = IntegralLattice> {
    (1usize..=3)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(-6i64..=6, n * n)))
        .prop_filter_map("degenerate", |(n, e)| {
            let mut g = vec![0i64; n * n];
            for i in 0..n {
                for j in 0..n {
                    g[i * n + j] = if i == j { 2 * e[i * n + i] } else { e[i.min(j) * n + i.max(j)] };
                }
            }
            IntegralLattice::new(matrix(n, &g)).ok()
        })
}

/// Product of elementary matrices: a random element of GL_n(Z).
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..6).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, c) in ops {
            if i == j {
                continue;
            }
            let mut e = IntMatrix::identity(n);
            e[(i, j)] = BigInt::from(c);
            m = m.mul(&e).unwrap();
        }
        m
    })
}

fn lattice_with_unimodular() -> impl Strategy<Value = (IntegralLattice, IntMatrix)> {
    even_lattice().prop_flat_map(|l| {
        let n = l.rank();
        (Just(l), unimodular(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_is_an_involution(l in even_lattice()) {
        let g = l.gram().to_rational();
        prop_assert_eq!(g.inverse().unwrap().inverse().unwrap(), g);
    }

    #[test]
    fn signature_is_a_congruence_invariant((l, p) in lattice_with_unimodular()) {
        let h = IntegralLattice::new(p.congruent(l.gram()).unwrap()).unwrap();
        prop_assert_eq!(h.signature(), l.signature());
        prop_assert_eq!(h.det(), l.det());
    }

    #[test]
    fn discriminant_order_is_det(l in even_lattice()) {
        let a = l.discriminant_group().unwrap();
        prop_assert_eq!(BigInt::from(a.order()), l.det().abs());
    }

    #[test]
    fn isometric_lattices_have_isometric_forms((l, p) in lattice_with_unimodular()) {
        let h = IntegralLattice::new(p.congruent(l.gram()).unwrap()).unwrap();
        let (a, b) = (l.discriminant_group().unwrap(), h.discriminant_group().unwrap());
        prop_assert!(tqm_isometric(a.module(), b.module()).unwrap());
    }

    #[test]
    fn q_ignores_the_representative(l in even_lattice(), shift in prop::collection::vec(-3i64..=3, 3)) {
        let a = l.discriminant_group().unwrap();
        let n = l.rank();
        for c in a.module().elements().take(40) {
            let x = a.representative(&c);
            let y: Vec<Rational> = x.iter().zip(&shift).map(|(xi, &s)| xi + rat(s, 1)).collect();
            prop_assert_eq!(y.len(), n);
            prop_assert_eq!(a.coords_of(&y).unwrap(), c.clone());
            prop_assert_eq!(a.q_of_vector(&y), a.q_of_vector(&x));
            prop_assert_eq!(a.q_of_vector(&x), a.module().element_q(&c));
        }
    }

    #[test]
    fn q_is_quadratic(l in even_lattice(), m in -7i64..=7) {
        let a = l.discriminant_group().unwrap();
        let md = a.module();
        let two = rat(2, 1);
        for x in md.elements().take(40) {
            let lhs = md.element_q(&md.scale(m, &x));
            let rhs = overlat_core::exact::rem_euclid(&(rat(m * m, 1) * md.element_q(&x)), &two);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn polarization(l in even_lattice()) {
        let a = l.discriminant_group().unwrap();
        let md = a.module();
        let two = rat(2, 1);
        let xs: Vec<_> = md.elements().take(12).collect();
        for x in &xs {
            for y in &xs {
                let lhs = md.element_q(&md.add(x, y)) - md.element_q(x) - md.element_q(y);
                let rhs = rat(2, 1) * md.element_b(x, y);
                prop_assert_eq!(
                    overlat_core::exact::rem_euclid(&lhs, &two),
                    overlat_core::exact::rem_euclid(&rhs, &two)
                );
            }
        }
    }

    #[test]
    fn rescaling_multiplies_the_order(l in even_lattice(), n in 1i64..=4) {
        let a = l.discriminant_group().unwrap().order();
        let b = l.rescale(n).unwrap().discriminant_group().unwrap().order();
        prop_assert_eq!(b, n.pow(l.rank() as u32) * a);
    }

    #[test]
    fn primary_parts_reassemble(l in even_lattice()) {
        let a = l.discriminant_group().unwrap();
        let parts = a.module().p_primary_decomposition();
        let total: i64 = parts.values().map(|m| m.order()).product();
        prop_assert_eq!(total, a.order());
        let sum = parts.values().fold(TorsionQuadraticModule::trivial(), |acc, m| acc.orthogonal_sum(m));
        prop_assert!(tqm_isometric(&sum, a.module()).unwrap());
    }

    #[test]
    fn unit_action_is_an_isometry(v in 2i64..=60, u in 0i64..120, w in 1i64..60) {
        prop_assume!(u < 2 * v && w < v);
        let Ok(c) = CyclicForm::new(u, v) else { return Ok(()) };
        prop_assume!(num_integer::gcd(w, v) == 1);
        let d = CyclicForm::new((u * w * w).rem_euclid(2 * v), v).unwrap();
        for x in 0..v {
            prop_assert_eq!(c.q((w * x) % v), d.q(x));
        }
        prop_assert!(tqm_isometric(&c.to_module(), &d.to_module()).unwrap());
    }
}

#[test]
fn overlattice_round_trip_and_det() {
    for k in 1..=30 {
        let l = gram_ta3(k).unwrap();
        for h in enumerate_prime_isotropic(&l, 3).unwrap() {
            let t = construct_overlattice(&l, h.as_subgroup()).unwrap();
            assert_eq!(t.lattice().det() * 9, l.det());
            assert_eq!(&t.recovered_subgroup().unwrap(), h.as_subgroup());
            let emb = t.embedding().unwrap();
            assert!(emb.is_isometric_embedding());
            assert_eq!(overlat_core::lattice::sublattice_index(&emb).unwrap(), BigInt::from(3));
        }
    }
}

#[test]
fn inverse_example() {
    let g = IntMatrix::from_i64_rows(&[&[6, 9], &[9, 18]]).unwrap().to_rational();
    let expected = overlat_core::exact::RationalMatrix::from_rows(&[
        vec![rat(2, 3), rat(-1, 3)],
        vec![rat(-1, 3), rat(2, 9)],
    ])
    .unwrap();
    assert_eq!(g.inverse().unwrap(), expected);
}
