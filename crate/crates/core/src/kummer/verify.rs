use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::certificates::{self, local_module, local_v0, local_w1, local_w2};
use super::{gram_ta3, gram_tx, KummerFamilyInstance};
use crate::error::{Error, Result};
use crate::exact::arith::{inv_mod, valuation};
use crate::exact::{rat, rem_euclid, snf, solve_integer, IntMatrix, Rational};
use crate::lattice::{sublattice_index, DiscriminantGroup, IntegralLattice, LatticeMap};
use crate::overlat::{
    construct_overlattice, enumerate_prime_subgroups, find_congruence, format_vector, isometry_search_with,
    maps_subgroup, same_genus, subgroup_of, SearchOptions,
};
use crate::report::Report;
use crate::torsion::{
    check_tqm_automorphism, cyclic_isometric, tqm_isometric, CyclicForm, Element, TorsionQuadraticModule,
    TqmAutomorphism,
};

/// Generator numerators over 3 and the square `(α k + β) / 3 mod 2` of each
/// order-3 subgroup of `A_{T(A)(3)}`, as `(v, α, β)`.
pub const LISTE: [([i64; 3], i64, i64); 13] = [
    ([0, 0, 1], 0, 0),
    ([0, 1, 0], 0, 2),
    ([0, 1, 1], 0, 2),
    ([0, 1, 2], 0, 14),
    ([1, 0, 0], -2, 0),
    ([1, 0, 1], -2, 0),
    ([1, 0, 2], -2, 0),
    ([1, 1, 0], -2, 2),
    ([1, 1, 1], -2, 2),
    ([1, 1, 2], -2, 14),
    ([1, 2, 0], -2, 8),
    ([1, 2, 1], -2, 2),
    ([1, 2, 2], -2, 8),
];

/// Bound for congruence searches between two Gram matrices of one over-lattice.
const GRAM_SEARCH_BOUND: i64 = 3;

fn thirds(a: i64, b: i64, c: i64) -> Vec<Rational> {
    vec![rat(a, 3), rat(b, 3), rat(c, 3)]
}

fn not_applicable(what: &str, k: i64, needs: &str) -> Error {
    Error::NotApplicable(format!("{what} needs {needs}, k = {k}"))
}

fn cyc(u: i64, v: i64) -> TorsionQuadraticModule {
    CyclicForm::new(u, v).expect("admissible").to_module()
}

/// 3-part of a discriminant module, in invariant form.
fn three_part(m: &TorsionQuadraticModule) -> TorsionQuadraticModule {
    m.normalized().0.primary_part(3).0
}

/// Invariant factors (above 1) of `⊕ Z/d`.
fn invariant_factors(d: &[i64]) -> Vec<i64> {
    let diag = IntMatrix::diagonal(&d.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    snf(&diag)
        .invariant_factors()
        .into_iter()
        .filter(|x| !x.is_one())
        .map(|x| x.to_i64().expect("small"))
        .collect()
}

fn gram(rows: &[&[i64]]) -> Result<IntegralLattice> {
    IntegralLattice::from_i64_rows(rows)
}

/// Checks the congruence of an over-lattice with a Gram matrix written in
/// another basis; a miss within the bound is reported as not applicable.
fn check_congruent(r: &mut Report, name: &str, found: &IntegralLattice, stated: &IntegralLattice) {
    if found.gram() == stated.gram() {
        r.check(name, true, "equal");
        return;
    }
    if found.det() != stated.det() {
        r.check(name, false, format!("determinants {} and {}", found.det(), stated.det()));
        return;
    }
    match find_congruence(stated, found, GRAM_SEARCH_BOUND) {
        Some(p) => {
            let ok = p.is_unimodular();
            r.check(name, ok, format!("base change {:?}", p.to_i64().map(|m| m.to_rows()).unwrap_or_default()))
        }
        None => {
            r.not_applicable(name, format!("no base change with entries in [-{GRAM_SEARCH_BOUND}, {GRAM_SEARCH_BOUND}]"));
            false
        }
    };
}

/// Recomputes the 13 order-3 subgroups and their squares.
pub fn verify_liste(k: i64) -> Result<Report> {
    let l = gram_ta3(k)?;
    let s = enumerate_prime_subgroups(&l, 3)?;
    let mut r = Report::new(format!("order-3 subgroups of A_T(A)(3), k = {k}"));
    r.check("13 subgroups", s.all.len() == 13, format!("{} found", s.all.len()));
    let found: BTreeSet<Vec<i64>> = s.all.iter().map(|h| h.numerators()).collect();
    let listed: BTreeSet<Vec<i64>> = LISTE.iter().map(|(v, _, _)| v.to_vec()).collect();
    r.check("generators match the list", found == listed, "");
    r.check("zero vector excluded", !found.contains(&vec![0, 0, 0]), "");
    let two = rat(2, 1);
    for (v, alpha, beta) in LISTE {
        let x = thirds(v[0], v[1], v[2]);
        let expected = rem_euclid(&rat(alpha * k + beta, 3), &two);
        let got = rem_euclid(&l.pairing(&x, &x), &two);
        r.check(format!("q{}", format_vector(&x)), got == expected, format!("{got}, closed form {expected}"));
    }
    for c in 0..3 {
        let h = subgroup_of(&l, &thirds(0, 1, c), 3)?;
        r.check(format!("{h} non-isotropic"), !h.is_isotropic(), "");
    }
    r.check("isotropic count", true, format!("{}", s.isotropic.len()));
    Ok(r)
}

/// The six candidates `(1/3, b, c)`, `b ≠ 0`, when `k ≡ 1 mod 3`.
pub fn verify_case_k1mod3(k: i64) -> Result<Report> {
    if k % 3 != 1 {
        return Err(not_applicable("cyclic-discriminant case", k, "k = 1 mod 3"));
    }
    let kp = (k - 1) / 3;
    let l = gram_ta3(k)?;
    let mut r = Report::new(format!("v = (1/3,1/3,0), k = {k}"));
    let v = subgroup_of(&l, &thirds(1, 1, 0), 3)?;
    r.check("isotropic", v.is_isotropic(), format!("q = {}", v.q_value()));
    let over = construct_overlattice(&l, &v)?;
    let stated = gram(&[&[-2 * kp, 1, 0], &[1, 6, 9], &[0, 9, 18]])?;
    check_congruent(&mut r, "Gram [[-2k',1,0],[1,6,9],[0,9,18]]", over.lattice(), &stated);
    let orders = over.lattice().discriminant_group()?.orders().to_vec();
    r.check("A_T cyclic of order 18k", orders == [18 * k], format!("{orders:?}"));
    let stated_orders = stated.discriminant_group()?.orders().to_vec();
    r.check("stated Gram has cyclic A_T", stated_orders == [18 * k], format!("{stated_orders:?}"));

    let g = certificates::g_isometry();
    let mut orbit = BTreeSet::new();
    let mut x = v.generator().to_vec();
    for _ in 0..6 {
        orbit.insert(subgroup_of(&l, &x, 3)?.numerators());
        x = g.to_rational().mul_vec(&x)?;
    }
    let six: BTreeSet<Vec<i64>> = [1, 2].iter().flat_map(|&b| (0..3).map(move |c| vec![1, b, c])).collect();
    r.check("orbit under g is the six candidates", orbit == six, format!("size {}", orbit.len()));
    let mut cyclic = true;
    for c in &six {
        let h = subgroup_of(&l, &thirds(c[0], c[1], c[2]), 3)?;
        let o = construct_overlattice(&l, &h)?.lattice().discriminant_group()?.orders().to_vec();
        cyclic &= o == [18 * k];
    }
    r.check("all six over-lattices have cyclic A_T", cyclic, "");
    Ok(r)
}

/// Candidates `(1/3,0,0)`, `(1/3,0,1/3)` and `(1/3,0,2/3)` when `3 | k`.
pub fn verify_case_k0mod3(k: i64) -> Result<Report> {
    if k % 3 != 0 {
        return Err(not_applicable("k' cases", k, "k = 0 mod 3"));
    }
    let kp = k / 3;
    let (l, tx) = (gram_ta3(k)?, gram_tx(k)?);
    let atx = tx.discriminant_group()?;
    let mut r = Report::new(format!("k = 3k', k = {k}"));

    let v1 = subgroup_of(&l, &thirds(1, 0, 0), 3)?;
    r.check("(1/3,0,0) isotropic", v1.is_isotropic(), "");
    let t1 = construct_overlattice(&l, &v1)?;
    check_congruent(&mut r, "(1/3,0,0): Gram [[-2k',0,0],[0,6,9],[0,9,18]]", t1.lattice(), &gram(&[
        &[-2 * kp, 0, 0],
        &[0, 6, 9],
        &[0, 9, 18],
    ])?);
    let o1 = t1.lattice().discriminant_group()?.orders().to_vec();
    let e1 = invariant_factors(&[2 * kp, 3, 9]);
    r.check("(1/3,0,0): A_T = Z/2k' x Z/3 x Z/9", o1 == e1, format!("{o1:?}"));
    let sg1 = same_genus(t1.lattice(), &tx)?;
    r.check("(1/3,0,0): same genus as T(X) iff k = 6 mod 9", sg1 == (k % 9 == 6), format!("{sg1}"));

    let w1 = subgroup_of(&l, &thirds(1, 0, 1), 3)?;
    r.check("(1/3,0,1/3) isotropic", w1.is_isotropic(), "");
    let tw1 = construct_overlattice(&l, &w1)?;
    check_congruent(&mut r, "(1/3,0,1/3): Gram [[-2k'+2,0,3],[0,6,9],[3,9,18]]", tw1.lattice(), &gram(&[
        &[-2 * kp + 2, 0, 3],
        &[0, 6, 9],
        &[3, 9, 18],
    ])?);
    let aw1 = tw1.lattice().discriminant_group()?;
    let sgw1 = same_genus(tw1.lattice(), &tx)?;
    r.check("(1/3,0,1/3): same genus as T(X) iff k = 0 mod 9", sgw1 == (k % 9 == 0), format!("{sgw1}"));
    match k % 9 {
        3 => {
            let expected = invariant_factors(&[3, 3, 3, 2 * kp]);
            r.check("(1/3,0,1/3): A_T = (Z/3)^3 x Z/2k'", aw1.orders() == expected, format!("{:?}", aw1.orders()));
            r.check("(1/3,0,1/3): group differs from A_T(X)", aw1.orders() != atx.orders(), "");
        }
        6 => {
            r.check("(1/3,0,1/3): A_T = A_T(X) as groups", aw1.orders() == atx.orders(), format!("{:?}", aw1.orders()));
            let t3 = three_part(aw1.module());
            let c49 = cyc(2, 3).orthogonal_sum(&cyc(4, 9));
            let c29 = cyc(2, 3).orthogonal_sum(&cyc(2, 9));
            r.check("(1/3,0,1/3): 3-part is (2/3)+(4/9)", tqm_isometric(&t3, &c49)?, "");
            r.check("(2/3)+(4/9) and (2/3)+(2/9) differ", !tqm_isometric(&c49, &c29)?, "");
        }
        _ => {}
    }
    if kp % 3 != 0 {
        let (u, label) = if kp % 3 == 1 { (4, "(2/3)+(4/9)") } else { (2, "(2/3)+(2/9)") };
        let x3 = three_part(atx.module());
        r.check(
            format!("T(X): 3-part is {label}"),
            tqm_isometric(&x3, &cyc(2, 3).orthogonal_sum(&cyc(u, 9)))?,
            "",
        );
    }

    let w2 = subgroup_of(&l, &thirds(1, 0, 2), 3)?;
    let g = certificates::g_isometry();
    r.check("g maps <(1/3,0,1/3)> to <(1/3,0,2/3)>", maps_subgroup(&g, w1.generator(), &w2), "");
    let sgw2 = same_genus(construct_overlattice(&l, &w2)?.lattice(), &tx)?;
    r.check("(1/3,0,2/3): same genus as (1/3,0,1/3)", sgw2 == sgw1, format!("{sgw2}"));
    Ok(r)
}

/// `g` is an order-6 isometry of `T(A)(3)` exchanging `⟨w₁⟩` and `⟨w₂⟩`.
pub fn verify_g(k: i64) -> Result<Report> {
    let l = gram_ta3(k)?;
    let g = certificates::g_isometry();
    let mut r = Report::new(format!("g, k = {k}"));
    let iso = r.check("isometry of T(A)(3)", l.is_isometry(&g), "");
    let id = IntMatrix::identity(3);
    let order = (1..=12).find(|&e| g.pow(e).map(|p| p == id).unwrap_or(false));
    r.check("order 6", order == Some(6), format!("{order:?}"));
    if iso {
        let act = l.induced_discriminant_action(&g)?;
        r.absorb("induced action", check_tqm_automorphism(&act));
    }
    let w2 = subgroup_of(&l, &thirds(1, 0, 2), 3)?;
    r.check("maps <(1/3,0,1/3)> to <(1/3,0,2/3)>", maps_subgroup(&g, &thirds(1, 0, 1), &w2), "");
    Ok(r)
}

/// Dual vectors of `T(A)(3)` realizing the local generators: `h₁ ↦ w·2t·c₁`,
/// `h₂ ↦ c₂`, `h₃ ↦ c₃` with `c_i` the columns of the inverse Gram matrix.
fn embed_local(dg: &DiscriminantGroup, inst: &KummerFamilyInstance, w: i64) -> Result<Vec<Element>> {
    let h1 = vec![rat(-2 * inst.t * w, 6 * inst.k), rat(0, 1), rat(0, 1)];
    let h2 = vec![rat(0, 1), rat(2, 3), rat(-1, 3)];
    let h3 = vec![rat(0, 1), rat(-1, 3), rat(2, 9)];
    [h1, h2, h3].iter().map(|x| dg.coords_of(x)).collect()
}

/// Order of the subgroup generated by `elems`.
fn span_order(m: &TorsionQuadraticModule, elems: &[Element]) -> i64 {
    let r = m.num_generators();
    let mut data = Vec::new();
    for i in 0..r {
        data.extend(elems.iter().map(|y| BigInt::from(y[i])));
        data.extend((0..r).map(|j| BigInt::from(if i == j { m.orders()[i] } else { 0 })));
    }
    let mat = IntMatrix::from_vec(r, elems.len() + r, data).expect("shape");
    let index: i64 = snf(&mat).invariant_factors().iter().map(|d| d.to_i64().expect("small")).product();
    m.order() / index
}

fn is_isometric_embedding(global: &TorsionQuadraticModule, local: &TorsionQuadraticModule, psi: &[Element]) -> bool {
    let gens: Vec<Element> = (0..local.num_generators()).map(|i| local.generator(i)).collect();
    (0..gens.len()).all(|i| {
        global.element_order(&psi[i]) == local.orders()[i]
            && global.element_q(&psi[i]) == local.element_q(&gens[i])
            && (0..gens.len()).all(|j| global.element_b(&psi[i], &psi[j]) == local.element_b(&gens[i], &gens[j]))
    }) && span_order(global, psi) == local.order()
}

/// Extends `ψ t ψ⁻¹` from the `p`-part (the image of `ψ`) to the whole
/// module by the identity on the prime-to-`p` part.
fn extend_by_identity(
    global: &TorsionQuadraticModule,
    psi: &[Element],
    t: &TqmAutomorphism,
    p: i64,
) -> Result<TqmAutomorphism> {
    let r = global.num_generators();
    let l = psi.len();
    let mut system = Vec::new();
    for i in 0..r {
        system.extend(psi.iter().map(|y| BigInt::from(y[i])));
        system.extend((0..r).map(|j| BigInt::from(if i == j { global.orders()[i] } else { 0 })));
    }
    let system = IntMatrix::from_vec(r, l + r, system)?;
    let mut data = vec![BigInt::from(0); r * r];
    for j in 0..r {
        let d = global.orders()[j];
        let pe = p.pow(valuation(d, p));
        let rest = d / pe;
        let idem = if pe == 1 { 0 } else { rest * inv_mod(rest % pe, pe).expect("coprime") };
        let gen = global.generator(j);
        let xp = global.scale(idem, &gen);
        let other = global.add(&gen, &global.scale(-1, &xp));
        let rhs: Vec<BigInt> = xp.iter().map(|&c| BigInt::from(c)).collect();
        let z = solve_integer(&system, &rhs)?
            .ok_or_else(|| Error::Inconsistent(format!("{p}-part is not in the image of the embedding")))?;
        let local = t.domain();
        let zl: Vec<i64> = (0..l)
            .map(|i| z[i].clone() % BigInt::from(local.orders()[i]))
            .map(|c| c.to_i64().expect("small"))
            .collect();
        let tz = t.apply(&local.reduce(&zl));
        let mut image = other;
        for (i, &c) in tz.iter().enumerate() {
            image = global.add(&image, &global.scale(c, &psi[i]));
        }
        for i in 0..r {
            data[i * r + j] = BigInt::from(image[i]);
        }
    }
    TqmAutomorphism::new(global, IntMatrix::from_vec(r, r, data)?)
}

/// `w` with `q(w · 2t · c₁) = u / 3^{a+1}`, if the cyclic 3-part is `(u/3^{a+1})`.
fn branch_unit(inst: &KummerFamilyInstance, u: i64) -> Option<i64> {
    let n = 3i64.pow(inst.a + 1);
    let own = CyclicForm::new((-2 * inst.t).rem_euclid(2 * n), n).ok()?;
    cyclic_isometric(&own, &CyclicForm::new(u, n).ok()?)
}

fn maps_class(act: &TqmAutomorphism, x: &Element, y: &Element) -> bool {
    act.maps_cyclic_subgroup(x, y)
}

/// `τ` on the 3-part when `k ≡ 6 mod 9`, lifted to `A_{T(A)(3)}`.
pub fn verify_tau(k: i64) -> Result<Report> {
    if k % 9 != 6 {
        return Err(not_applicable("tau", k, "k = 6 mod 9"));
    }
    let inst = KummerFamilyInstance::new(k)?;
    let mut r = Report::new(format!("tau, k = {k}"));
    let local = local_module(1, 2)?;
    let t = TqmAutomorphism::new(&local, certificates::tau())?;
    r.absorb("on Z/9 x Z/3 x Z/9", check_tqm_automorphism(&t));
    r.check("exchanges (1,0,0) and (0,0,1)", t.apply(&[1, 0, 0]) == [0, 0, 1] && t.apply(&[0, 0, 1]) == [1, 0, 0], "");
    let w = branch_unit(&inst, 2);
    if !r.check("3-part of the cyclic summand is (2/9)", w.is_some(), format!("w = {w:?}")) {
        return Ok(r);
    }
    let l = gram_ta3(k)?;
    let dg = l.discriminant_group()?;
    let psi = embed_local(&dg, &inst, w.unwrap())?;
    if !r.check("embeds into A_T(A)(3)", is_isometric_embedding(dg.module(), &local, &psi), "") {
        return Ok(r);
    }
    let big = extend_by_identity(dg.module(), &psi, &t, 3)?;
    r.absorb("on A_T(A)(3)", check_tqm_automorphism(&big));
    let v0 = dg.coords_of(&thirds(0, 0, 1))?;
    let v1 = dg.coords_of(&thirds(1, 0, 0))?;
    r.check("<v0> -> <v1>", maps_class(&big, &v0, &v1), "");
    r.check("<v1> -> <v0>", maps_class(&big, &v1, &v0), "");
    Ok(r)
}

/// `τ_a`, `ϑ_a` (and `τ₂`, `ϑ₂`) when `k ≡ 0 mod 9`: both certificates on
/// their own modules, then the branch selected by `k` lifted to `A_{T(A)(3)}`.
pub fn verify_tau_a(k: i64) -> Result<Report> {
    if k % 9 != 0 {
        return Err(not_applicable("tau_a / theta_a", k, "k = 0 mod 9"));
    }
    let inst = KummerFamilyInstance::new(k)?;
    let a = inst.a;
    let mut r = Report::new(format!("tau_a / theta_a, k = {k}, a = {a}"));
    let v0 = local_v0();
    let (w1, w2) = (local_w1(a), local_w2(a));
    for u in [2, 4] {
        let (name, m) = certificates::certificate(a, u)?;
        let local = local_module(a, u)?;
        let t = TqmAutomorphism::new(&local, m)?;
        r.absorb(&format!("{name} on u = {u}"), check_tqm_automorphism(&t));
        let image = t.apply(&v0);
        match (a, u) {
            (2, _) => {
                let target = if maps_class(&t, &v0, &w1) {
                    Some("w1")
                } else if maps_class(&t, &v0, &w2) {
                    Some("w2")
                } else {
                    None
                };
                r.check(format!("{name}: <v0> -> <w1> or <w2>"), target.is_some(), format!("{target:?}, image {image:?}"));
            }
            (_, 2) => {
                let stated = vec![2 * 3i64.pow(a), 0, 6];
                r.check(format!("{name}: v0 -> (2*3^a,0,6)"), image == stated, format!("{image:?}"));
                r.check(format!("{name}: <v0> -> <w1>"), maps_class(&t, &v0, &w1), "");
            }
            _ => {
                let stated = vec![2 * 3i64.pow(a), 0, 3];
                r.check(format!("{name}: v0 -> (2*3^a,0,3)"), image == stated, format!("{image:?}"));
                r.check(format!("{name}: <v0> -> <2 w2>"), maps_class(&t, &v0, &local.scale(2, &w2)), "");
            }
        }
    }
    let branch = [2, 4].into_iter().find_map(|u| branch_unit(&inst, u).map(|w| (u, w)));
    let Some((u, w)) = branch else {
        r.check("u branch", false, "3-part of the cyclic summand is neither (2/3^(a+1)) nor (4/3^(a+1))");
        return Ok(r);
    };
    r.check("u branch", true, format!("u = {u}, w = {w}"));
    let (name, m) = certificates::certificate(a, u)?;
    let local = local_module(a, u)?;
    let t = TqmAutomorphism::new(&local, m)?;
    let l = gram_ta3(k)?;
    let dg = l.discriminant_group()?;
    let psi = embed_local(&dg, &inst, w)?;
    if !r.check("embeds into A_T(A)(3)", is_isometric_embedding(dg.module(), &local, &psi), "") {
        return Ok(r);
    }
    let big = extend_by_identity(dg.module(), &psi, &t, 3)?;
    r.absorb(&format!("{name} on A_T(A)(3)"), check_tqm_automorphism(&big));
    let v0 = dg.coords_of(&thirds(0, 0, 1))?;
    let gw1 = dg.coords_of(&thirds(1, 0, 1))?;
    let gw2 = dg.coords_of(&thirds(1, 0, 2))?;
    let target = if maps_class(&big, &v0, &gw1) {
        Some("(1/3,0,1/3)")
    } else if maps_class(&big, &v0, &gw2) {
        Some("(1/3,0,2/3)")
    } else {
        None
    };
    r.check(format!("{name}: <(0,0,1/3)> -> <(1/3,0,1/3)> or <(1/3,0,2/3)>"), target.is_some(), format!("{target:?}"));
    Ok(r)
}

/// `g` for every `k`; `τ` and `τ_a`/`ϑ_a` where the residue of `k` allows,
/// reported as not applicable otherwise.
pub fn verify_explicit_isometries(k: i64) -> Result<Report> {
    let mut r = Report::new(format!("explicit isometries, k = {k}"));
    r.absorb("g", verify_g(k)?);
    for (name, result) in [("tau", verify_tau(k)), ("tau_a/theta_a", verify_tau_a(k))] {
        match result {
            Ok(sub) => r.absorb(name, sub),
            Err(Error::NotApplicable(why)) => r.not_applicable(name, why),
            Err(e) => return Err(e),
        }
    }
    Ok(r)
}

/// Every isometry of `T(X)` found with entries in `[-bound, bound]` has
/// `g₃₁ ≡ g₃₂ ≡ 0 mod 3`. The congruence prune is off so the search does not
/// presuppose the property.
pub fn verify_mod3_preservation(k: i64, bound: i64) -> Result<Report> {
    let tx = gram_tx(k)?;
    let hits = isometry_search_with(&tx, bound, SearchOptions { congruence_prune: false });
    let mut r = Report::new(format!("O(T(X)) preserves <e1,e2,3e3>, k = {k}, bound = {bound}"));
    let three = BigInt::from(3);
    let bad = hits
        .iter()
        .filter(|g| !(&g[(2, 0)] % &three == BigInt::from(0) && &g[(2, 1)] % &three == BigInt::from(0)))
        .count();
    r.check("g31 = g32 = 0 mod 3 on every hit", bad == 0, format!("{} hits, {bad} violations", hits.len()));
    let s = IntMatrix::diagonal(&[BigInt::from(1), BigInt::from(1), three.clone()]);
    let s_inv = s.to_rational().inverse()?;
    let preserved = hits.iter().all(|g| {
        s_inv
            .mul(&g.to_rational())
            .and_then(|m| m.mul(&s.to_rational()))
            .map(|m| m.is_integral())
            .unwrap_or(false)
    });
    r.check("every hit maps T1 into T1", preserved, "");
    let id = IntMatrix::identity(3);
    let neg = id.scaled(&BigInt::from(-1));
    r.check("identity and -identity found", hits.contains(&id) && hits.contains(&neg), "");
    r.check("every hit is an isometry", hits.iter().all(|g| tx.is_isometry(g)), "");
    Ok(r)
}

/// `T(A)(3) = ⟨e₁, e₂, 3e₃⟩` has index 3 in `T(X)`.
pub fn verify_index3(k: i64) -> Result<Report> {
    let (ta3, tx) = (gram_ta3(k)?, gram_tx(k)?);
    let mut r = Report::new(format!("index of T(A)(3) in T(X), k = {k}"));
    let inc = IntMatrix::diagonal(&[BigInt::from(1), BigInt::from(1), BigInt::from(3)]);
    let map = LatticeMap::new(inc, ta3.clone(), tx.clone())?;
    r.check("isometric embedding", map.is_isometric_embedding(), "");
    let index = sublattice_index(&map)?;
    r.check("index 3", index == BigInt::from(3), format!("{index}"));
    let ratio = Rational::new(ta3.det(), tx.det());
    r.check("det ratio 9", ratio == rat(9, 1), format!("{ratio}"));
    let (a, b) = (ta3.discriminant_group()?.order(), tx.discriminant_group()?.order());
    r.check("|A_T(A)(3)| / |A_T(X)| = 9", a == 9 * b, format!("{a} / {b}"));
    let id = LatticeMap::new(IntMatrix::identity(3), tx.clone(), tx)?;
    r.check("identity embedding has index 1", sublattice_index(&id)? == BigInt::from(1), "");
    Ok(r)
}
