//! Property tests for the stated invariants of each module.

use capitulation::arith::normal_form::{hnf, snf};
use capitulation::arith::poly::{derivative, mul};
use capitulation::arith::{resultant, IntMatrix, RatPoly, Rationals, Ring};
use capitulation::capitulation::capitulation_extension;
use capitulation::cokernel::unit_cokernel;
use capitulation::field::{quadratic_field, FieldElement, Ideal, NumberFieldSpec, ResidueRing};
use capitulation::group::AbelianGroupPresentation;
use capitulation::kernel_group::{milnor_kernel_group, split_group_algebra};
use capitulation::lambda::{block_lattice, lambda_order, verify_ring_closure};
use capitulation::noncap::{exclusion_predicate, NonCapQuery};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q() -> NumberFieldSpec {
    NumberFieldSpec::rationals()
}

fn quad(d: i64) -> NumberFieldSpec {
    quadratic_field(&BigInt::from(d)).unwrap()
}

fn totient(m: u64) -> u64 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64
}

fn matrix(max: i64, dims: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=dims, 1..=dims).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-max..=max, r * c)
            .prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| BigInt::from(v[i * c + j])))
    })
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = m[1..].iter().map(|r| [&r[..j], &r[j + 1..]].concat()).collect();
            let s = &m[0][j] * det(&minor);
            if j % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .sum()
}

fn minors_gcd(m: &IntMatrix, k: usize) -> BigInt {
    let pick = |n: usize| -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
    };
    let mut g = BigInt::zero();
    for rows in pick(m.rows()) {
        for cols in pick(m.cols()) {
            let sub: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| m[(i, j)].clone()).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

fn rat_poly(c: &[i64]) -> RatPoly {
    RatPoly::from_i64(c)
}

/// Monic gcd degree by Euclid over Q, written out on coefficient vectors.
fn gcd_degree(a: &[BigRational], b: &[BigRational]) -> usize {
    let trim = |mut v: Vec<BigRational>| {
        while v.last().is_some_and(|x| x.is_zero()) {
            v.pop();
        }
        v
    };
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let mut r = a.clone();
        while r.len() >= b.len() {
            let k = r.last().unwrap() / b.last().unwrap();
            let shift = r.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                r[shift + i] -= &k * c;
            }
            r = trim(r);
            if r.is_empty() {
                break;
            }
        }
        a = std::mem::replace(&mut b, r);
    }
    a.len().saturating_sub(1)
}

fn int_coeffs(f: &[FieldElement]) -> Vec<BigInt> {
    f.iter().map(|c| c.coeffs()[0].to_integer()).collect()
}

fn quad_norm(field: &NumberFieldSpec, x: &FieldElement) -> BigRational {
    // O = Z[b] with b^2 = D, so N(a + b y) = a^2 - D y^2
    let d = -field.defining_poly().coeffs()[0].clone();
    let c = x.coeffs();
    &c[0] * &c[0] - BigRational::from_integer(d) * &c[1] * &c[1]
}

#[test]
fn unit_count_is_totient() {
    for m in 2..=1000u64 {
        let ring = ResidueRing::new(&q(), BigInt::from(m)).unwrap();
        let g = capitulation::cokernel::finite_ring_units(&ring).unwrap();
        assert_eq!(g.order() as u64, totient(m), "m = {m}");
    }
}

#[test]
fn rational_cokernel_order() {
    for m in 2..=200u64 {
        let ck = unit_cokernel(&q(), m).unwrap();
        let signs = if m <= 2 { 1 } else { 2 };
        assert_eq!(ck.order(), BigInt::from(totient(m) / signs), "m = {m}");
        for lift in &ck.generator_lifts {
            assert_eq!(lift.coeffs()[0].to_integer().gcd(&BigInt::from(m)), BigInt::one(), "m = {m}");
        }
    }
}

#[test]
fn gaussian_cokernel_lifts_are_coprime() {
    let qi = quad(-1);
    for m in 2..=30u64 {
        let ck = unit_cokernel(&qi, m).unwrap();
        for lift in &ck.generator_lifts {
            let n = quad_norm(&qi, lift).to_integer();
            assert!(n.gcd(&BigInt::from(m)).is_one(), "m = {m}, lift {lift:?}");
        }
    }
}

#[test]
fn residue_inverses_are_inverses() {
    for (field, m) in [(quad(-1), 20u64), (quad(-5), 12), (quad(2), 9), (quad(-3), 15), (q(), 997)] {
        let ring = ResidueRing::new(&field, BigInt::from(m)).unwrap();
        let one = ring.one();
        for x in ring.elements(10_000).unwrap() {
            if ring.is_unit(&x) {
                assert_eq!(ring.mul(&x, &ring.invert(&x).unwrap()), one);
            } else {
                assert!(ring.invert(&x).is_err());
            }
        }
    }
}

#[test]
fn kernel_group_witnesses_and_unit_lemma() {
    for (field, orders, m) in [(q(), vec![2], 4u64), (q(), vec![2, 2], 4), (quad(-1), vec![4], 4), (quad(-1), vec![2], 6)] {
        let alg = split_group_algebra(&field, &orders, None).unwrap();
        let s = alg.order();
        for (chi, w) in alg.witnesses.iter().enumerate() {
            for row in 0..s {
                let v = (0..s).fold(field.zero(), |acc, g| field.add(&acc, &field.mul(&alg.character_matrix[(row, g)], &w[g])));
                let expected = if row == chi { field.from_i64(s as i64) } else { field.zero() };
                assert_eq!(v, expected);
            }
        }
        let k = milnor_kernel_group(&alg, m).unwrap();
        assert_eq!(k.unit_lemma, Some(true));
        assert!(k.is_exact());
        assert_eq!(k.ambient_order, &k.join_order * k.order());
    }
}

fn principal_ideal(field: &NumberFieldSpec, x: &[i64]) -> Ideal {
    Ideal::principal(field, &field.element(x)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_is_idempotent_and_unimodular(m in matrix(9, 4)) {
        let h = hnf(&m);
        prop_assert_eq!(h.u.mul(&m), h.h.clone());
        prop_assert!(det(&h.u.row_vecs()).abs().is_one());
        prop_assert_eq!(hnf(&h.h).h, h.h);
    }

    #[test]
    fn snf_matches_determinant_divisors(m in matrix(5, 3)) {
        let s = snf(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.diagonal());
        let d = &s.invariant_factors;
        prop_assert!(d.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        let mut prod = BigInt::one();
        for (k, x) in d.iter().enumerate() {
            prod *= x;
            prop_assert_eq!(minors_gcd(&m, k + 1), prod.clone());
        }
    }

    #[test]
    fn resultant_laws(
        f in prop::collection::vec(-5i64..=5, 2..5),
        g in prop::collection::vec(-5i64..=5, 2..4),
        h in prop::collection::vec(-5i64..=5, 2..4),
    ) {
        let (f, g, h) = (rat_poly(&f), rat_poly(&g), rat_poly(&h));
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
        let sign = if df * dg % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        prop_assert_eq!(resultant(&f, &g).unwrap(), sign * resultant(&g, &f).unwrap());
        let gh = mul(&Rationals, &g, &h);
        prop_assert_eq!(resultant(&f, &gh).unwrap(), resultant(&f, &g).unwrap() * resultant(&f, &h).unwrap());
    }

    #[test]
    fn resultant_with_derivative_detects_repeated_roots(
        a in prop::collection::vec(-3i64..=3, 1..3),
        b in prop::collection::vec(-3i64..=3, 2..4),
        square in any::<bool>(),
    ) {
        let (a, b) = (rat_poly(&a), rat_poly(&b));
        prop_assume!(!a.is_zero() && b.degree().unwrap_or(0) >= 1);
        let f = if square { mul(&Rationals, &mul(&Rationals, &b, &b), &a) } else { mul(&Rationals, &b, &a) };
        let df = derivative(&Rationals, &f);
        prop_assume!(!df.is_zero());
        let vanishes = resultant(&f, &df).unwrap().is_zero();
        prop_assert_eq!(vanishes, gcd_degree(f.coeffs(), df.coeffs()) > 0);
    }

    #[test]
    fn certificate_structure_over_q(m in 2u64..=12, u in 2u64..=60) {
        prop_assume!(u.gcd(&m) == 1);
        let c = capitulation_extension(&q(), m, &q().element(&[u as i64])).unwrap();
        prop_assert!(c.checks.all_pass());
        prop_assert!(c.unit.determinant.abs().is_one());
        // eps - u is divisible by m coordinatewise
        let mb = BigInt::from(m);
        for (k, e) in c.unit.epsilon.iter().enumerate() {
            let v = e.coeffs()[0].to_integer() - if k == 0 { BigInt::from(u) } else { BigInt::zero() };
            prop_assert!(v.is_multiple_of(&mb));
        }
        // f' = u X^m modulo every prime dividing m
        let f = int_coeffs(&c.f);
        for p in (2..=m).filter(|p| m % p == 0 && (2..*p).all(|k| p % k != 0)) {
            let pb = BigInt::from(p);
            for (k, x) in f.iter().enumerate().skip(1) {
                let coeff = (x * k).mod_floor(&pb);
                let expected = if k - 1 == m as usize { BigInt::from(u).mod_floor(&pb) } else { BigInt::zero() };
                prop_assert_eq!(coeff, expected, "p = {}, X^{}", p, k - 1);
            }
        }
    }

    #[test]
    fn unit_structure_ignores_enumeration_order(m in 2u64..=60, seed in any::<u64>()) {
        let field = quad(-1);
        let ring = ResidueRing::new(&field, BigInt::from(m)).unwrap();
        let base = capitulation::cokernel::finite_ring_units(&ring).unwrap();
        let mut elements = base.elements().to_vec();
        elements.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let shuffled = AbelianGroupPresentation::from_enumeration(elements, ring.one(), |a, b| ring.mul(a, b)).unwrap();
        prop_assert_eq!(shuffled.invariant_factors, base.invariant_factors);
    }

    #[test]
    fn kernel_group_ignores_element_order(seed in any::<u64>(), case in 0usize..3) {
        let (field, orders, m) = [(q(), vec![2, 2], 4u64), (quad(-1), vec![4], 4), (q(), vec![2], 8)][case].clone();
        let alg = split_group_algebra(&field, &orders, None).unwrap();
        let mut perm: Vec<usize> = (0..alg.order()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let a = milnor_kernel_group(&alg, m).unwrap();
        let b = milnor_kernel_group(&alg.permuted(&perm).unwrap(), m).unwrap();
        prop_assert_eq!(a.invariant_factors, b.invariant_factors);
        prop_assert_eq!(a.join_order, b.join_order);
    }

    #[test]
    fn ideal_norms_multiply(
        d in prop::sample::select(vec![-1i64, -2, -5, -6, 2, 3, 7]),
        x in prop::collection::vec(-6i64..=6, 2),
        y in prop::collection::vec(-6i64..=6, 2),
        z in prop::collection::vec(-6i64..=6, 2),
        n in 2i64..=7,
    ) {
        let f = quad(d);
        prop_assume!(x.iter().any(|c| *c != 0) && y.iter().any(|c| *c != 0) && z.iter().any(|c| *c != 0));
        let a = Ideal::from_generators(&f, &[f.element(&[n]), f.element(&x)]).unwrap();
        let b = Ideal::from_generators(&f, &[f.element(&y), f.element(&z)]).unwrap();
        prop_assert_eq!(a.mul(&f, &b).norm(), a.norm() * b.norm());
        prop_assert_eq!(principal_ideal(&f, &x).norm(), quad_norm(&f, &f.element(&x)).abs());
        prop_assert!(a.mul(&f, &a.inverse(&f)).is_unit_ideal(&f));
        prop_assert!(b.mul(&f, &b.inverse(&f)).is_unit_ideal(&f));
    }

    #[test]
    fn lambda_orders_close_and_conjugation_inverts(
        d in prop::sample::select(vec![-1i64, -5, 2]),
        x in prop::collection::vec(-4i64..=4, 2),
        n in 2i64..=5,
        r in 1usize..=3,
        alpha in prop::collection::vec(-3i64..=3, 2),
    ) {
        let f = quad(d);
        prop_assume!(x.iter().any(|c| *c != 0) && alpha.iter().any(|c| *c != 0));
        let a = Ideal::from_generators(&f, &[f.element(&[n]), f.element(&x)]).unwrap();
        let order = lambda_order(&f, &a, r).unwrap();
        prop_assert!(verify_ring_closure(&order) && order.contains_identity());
        let last = r - 1;
        for i in 0..r {
            for j in 0..r {
                let ideal = match (i == last, j == last) {
                    (false, true) => a.inverse(&f),
                    (true, false) => a.clone(),
                    _ => Ideal::unit(&f),
                };
                for g in ideal.z_basis(&f) {
                    let mut mtx = vec![f.zero(); r * r];
                    mtx[i * r + j] = g;
                    prop_assert!(order.contains(&mtx));
                }
            }
        }
        let al = f.element(&alpha);
        let inv = f.inv(&al).unwrap();
        let moved = block_lattice(&f, &a, order.column_ideal.scale(&f, &al).unwrap(), order.row_ideal.scale(&f, &inv).unwrap(), r).unwrap();
        prop_assert_eq!(moved.lattice(), &order.conjugated(&al).unwrap());
        prop_assert_eq!(&moved.conjugated(&inv).unwrap(), order.lattice());
    }

    #[test]
    fn noncap_consistency(o in 1u64..=60, n in 1u64..=60) {
        let v = exclusion_predicate(&NonCapQuery { class_order: o, extension_degree: n, ring_of_integers_free: true }).unwrap();
        if o > 1 && n.gcd(&o) == 1 {
            prop_assert!(v);
        }
        prop_assert_eq!(v, o > 1 && n % o != 0);
    }
}
