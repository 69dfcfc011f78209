use std::collections::BTreeMap;

use overlat_core::exact::arith::{gcd, is_prime};
use overlat_core::torsion::{
    bezout_pair, cyclic_isometric, find_isometry, split_cyclic, split_cyclic_with, CyclicForm,
};

fn admissible(v: i64) -> Vec<CyclicForm> {
    (0..2 * v).filter_map(|u| CyclicForm::new(u, v).ok()).collect()
}

/// Classes by first isometric representative, checked against every pair.
fn classes(v: i64) -> usize {
    let forms = admissible(v);
    let mut reps: Vec<CyclicForm> = Vec::new();
    let mut class = BTreeMap::new();
    for f in &forms {
        let idx = match reps.iter().position(|r| cyclic_isometric(r, f).is_some()) {
            Some(i) => i,
            None => {
                reps.push(*f);
                reps.len() - 1
            }
        };
        class.insert(f.u(), idx);
    }
    for a in &forms {
        for b in &forms {
            let iso = cyclic_isometric(a, b);
            assert_eq!(iso.is_some(), class[&a.u()] == class[&b.u()], "{a} vs {b}");
            assert_eq!(iso.is_some(), cyclic_isometric(b, a).is_some());
            if let Some(w) = iso {
                assert_eq!(gcd(w, v), 1);
                assert_eq!((a.u() * w * w - b.u()).rem_euclid(2 * v), 0);
            }
        }
    }
    reps.len()
}

#[test]
fn isometry_is_an_equivalence_relation() {
    for v in 1..=100 {
        assert!(classes(v) >= 1);
    }
}

#[test]
fn two_classes_for_odd_primes() {
    for v in (3..100).filter(|&v| is_prime(v)) {
        assert_eq!(classes(v), 2, "v = {v}");
    }
}

#[test]
fn witness_agrees_with_brute_force() {
    for v in [4, 8, 9, 12, 25, 27] {
        for a in admissible(v) {
            for b in admissible(v) {
                let found = find_isometry(&a.to_module(), &b.to_module()).is_some();
                assert_eq!(found, cyclic_isometric(&a, &b).is_some(), "{a} vs {b}");
            }
        }
    }
}

#[test]
fn split_does_not_depend_on_the_bezout_pair() {
    for (a, b) in [(2, 9), (4, 27), (9, 8), (5, 6), (3, 10), (7, 4)] {
        let v = a * b;
        for c in admissible(v) {
            let (s, t) = bezout_pair(c.u(), a, b);
            let (x, y) = split_cyclic(&c, a, b).unwrap();
            // Shift the pair by 2ab so parities survive.
            for m in [-2i64, 2, 4] {
                let (s2, t2) = (s + m * b, t - m * a);
                let (x2, y2) = split_cyclic_with(&c, a, b, (s2, t2)).unwrap();
                assert!(cyclic_isometric(&x, &x2).is_some(), "{c}: {x} vs {x2}");
                assert!(cyclic_isometric(&y, &y2).is_some(), "{c}: {y} vs {y2}");
            }
            let whole = x.to_module().orthogonal_sum(&y.to_module());
            assert!(find_isometry(&whole, &c.to_module()).is_some(), "{c}");
        }
    }
    let c = CyclicForm::new(2, 9).unwrap();
    assert!(split_cyclic_with(&c, 1, 9, (1, 1)).is_err());
}
