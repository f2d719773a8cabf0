//! Built-in example corpus, replayed in a fixed order.

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{json as js, Outcome};
use crate::arith::ring::Ring;
use crate::capitulation::capitulation_extension;
use crate::cokernel::{capitulate_cokernel, finite_ring_units, joint_residue_check, unit_cokernel};
use crate::error::{Error, Result};
use crate::field::ideal::{is_principal_by_search, Ideal, PrincipalSearch};
use crate::field::quadratic::{imaginary_quadratic_class_group, quadratic_field};
use crate::field::residue::ResidueRing;
use crate::field::spec::NumberFieldSpec;
use crate::group::order_statistics;
use crate::kernel_group::{capitulate_tuples, capitulation_triviality_check, milnor_kernel_group, split_group_algebra};
use crate::lambda::{
    block_lattice, extend_scalars, full_matrix_lattice, lambda_order, matrix_ring_iso_certificate, morita_rank,
    verify_ring_closure, Embedding,
};
use crate::noncap::{exclusion_predicate, injectivity_predicate, NonCapQuery};
use crate::oracle;

type Check = fn() -> Result<(bool, Value)>;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn q() -> NumberFieldSpec {
    NumberFieldSpec::rationals()
}

fn gaussian() -> NumberFieldSpec {
    quadratic_field(&BigInt::from(-1)).expect("Q(i)")
}

fn minus_five() -> NumberFieldSpec {
    quadratic_field(&BigInt::from(-5)).expect("Q(sqrt -5)")
}

fn cap(m: u64, u: &[i64], field: NumberFieldSpec, t: u64) -> Result<(bool, Value)> {
    let c = capitulation_extension(&field, m, &field.element(u))?;
    Ok((c.t == t && c.checks.all_pass(), json!({ "t": js::num(c.t), "all_pass": c.checks.all_pass() })))
}

fn units_case(field: NumberFieldSpec, m: u64, expected: &[i64]) -> Result<(bool, Value)> {
    let g = finite_ring_units(&ResidueRing::new(&field, BigInt::from(m))?)?;
    let brute = oracle::units(&field, m).len();
    Ok((g.invariant_factors == ints(expected) && g.order() == brute, json!({ "invariant_factors": js::ints(&g.invariant_factors) })))
}

fn kernel_case(field: NumberFieldSpec, group: &[u64], m: u64) -> Result<(bool, Value)> {
    let alg = split_group_algebra(&field, group, None)?;
    let k = milnor_kernel_group(&alg, m)?;
    let images: Vec<Vec<Vec<BigInt>>> =
        (0..alg.order()).map(|g| alg.image(g).iter().map(|x| x.try_ints()).collect::<Result<_>>()).collect::<Result<_>>()?;
    let o = oracle::kernel_group(&field, &images, m);
    let ok = k.is_exact()
        && BigInt::from(o.ambient_order) == k.ambient_order
        && BigInt::from(o.join_order) == k.join_order
        && o.subring_size == k.subring_size
        && o.quotient_statistics == order_statistics(&k.invariant_factors);
    Ok((ok, json!({ "invariant_factors": js::ints(&k.invariant_factors), "oracle_order": js::num(o.quotient_order) })))
}

fn noncap_case(o: u64, d: u64, expected: bool) -> Result<(bool, Value)> {
    let v = exclusion_predicate(&NonCapQuery { class_order: o, extension_degree: d, ring_of_integers_free: true })?;
    Ok((v == expected, json!({ "verdict": v })))
}

fn cases() -> Vec<(&'static str, Check)> {
    vec![
        ("capitulate/Q/m=2/u=3", || {
            let c = capitulation_extension(&q(), 2, &q().element(&[3]))?;
            let f: Vec<BigInt> = c.f.iter().map(|x| x.try_ints().map(|v| v[0].clone())).collect::<Result<_>>()?;
            let ok = c.t == 6 && f == ints(&[19, 0, 0, 3, -2, -4, 1]) && c.checks.all_pass();
            Ok((ok, json!({ "t": js::num(c.t), "f": js::ints(&f) })))
        }),
        ("capitulate/Q/m=8/u=3", || cap(8, &[3], q(), 16)),
        ("capitulate/Q(i)/m=3/u=1+i", || {
            let f = gaussian();
            let c = capitulation_extension(&f, 3, &f.element(&[1, 1]))?;
            Ok((c.checks.all_pass(), json!({ "t": js::num(c.t) })))
        }),
        ("capitulate/Q/m=4/u=2 rejected", || {
            let r = capitulation_extension(&q(), 4, &q().element(&[2]));
            Ok((matches!(r, Err(Error::NotCoprime { .. })), json!({ "error": r.err().map(|e| e.kind()) })))
        }),
        ("units/Z/8", || units_case(q(), 8, &[2, 2])),
        ("units/Z[i]/2", || units_case(gaussian(), 2, &[2])),
        ("units/Z/2", || units_case(q(), 2, &[])),
        ("cokernel/Q/8", || {
            let c = unit_cokernel(&q(), 8)?;
            let brute = oracle::units(&q(), 8).len() / oracle::global_unit_image(&q(), 8).len();
            let ok = c.invariant_factors() == ints(&[2]) && c.generator_lifts == vec![q().element(&[3])] && brute == 2;
            Ok((ok, json!({ "lifts": js::elems(&c.generator_lifts) })))
        }),
        ("cokernel/Q/3", || Ok((unit_cokernel(&q(), 3)?.is_trivial(), Value::Null))),
        ("cokernel/Q(sqrt 2)/5", || {
            let f = quadratic_field(&BigInt::from(2))?;
            let c = unit_cokernel(&f, 5)?;
            let brute = oracle::units(&f, 5).len() / oracle::global_unit_image(&f, 5).len();
            Ok((c.order() == BigInt::from(brute), json!({ "invariant_factors": js::ints(&c.invariant_factors()) })))
        }),
        ("capitulate-cokernel/Q/8", || {
            let certs = capitulate_cokernel(&q(), 8)?;
            let ok = certs.len() == 1 && certs[0].1.t == 16 && certs[0].1.checks.all_pass();
            Ok((ok, json!({ "count": js::num(certs.len()) })))
        }),
        ("capitulate-cokernel/Q/3", || Ok((capitulate_cokernel(&q(), 3)?.is_empty(), Value::Null))),
        ("capitulate-cokernel/Q/12", || {
            let certs = capitulate_cokernel(&q(), 12)?;
            let ok = certs.len() == 1 && certs[0].0 == q().element(&[5]) && certs[0].1.checks.all_pass();
            Ok((ok, json!({ "lift": js::elem(&certs[0].0) })))
        }),
        ("joint/Q/8", || {
            let certs: Vec<_> = capitulate_cokernel(&q(), 8)?.into_iter().map(|(_, c)| c).collect();
            Ok((joint_residue_check(&q(), 8, &certs)?, Value::Null))
        }),
        ("joint/Q/12/k=2", || {
            let certs = [5, 7].iter().map(|&u| capitulation_extension(&q(), 12, &q().element(&[u]))).collect::<Result<Vec<_>>>()?;
            Ok((joint_residue_check(&q(), 12, &certs)?, Value::Null))
        }),
        ("joint/corrupted", || {
            let mut certs: Vec<_> = capitulate_cokernel(&q(), 8)?.into_iter().map(|(_, c)| c).collect();
            let bumped = q().add(&certs[0].unit.inverse[0], &q().one());
            certs[0].unit.inverse[0] = bumped;
            Ok((!joint_residue_check(&q(), 8, &certs)?, Value::Null))
        }),
        ("characters/Q/C2", || {
            let a = split_group_algebra(&q(), &[2], None)?;
            let rows: Vec<Vec<BigInt>> = a.character_matrix.row_vecs().iter().map(|r| r.iter().map(|x| x.try_ints().map(|v| v[0].clone())).collect::<Result<_>>()).collect::<Result<_>>()?;
            Ok((rows == vec![ints(&[1, 1]), ints(&[1, -1])], Value::Null))
        }),
        ("characters/Q/C2xC2", || {
            let a = split_group_algebra(&q(), &[2, 2], Some(&q().element(&[-1])))?;
            let c = &a.character_matrix;
            // C C^T = 4 I for a real sign matrix
            let ok = (0..4).all(|i| {
                (0..4).all(|j| {
                    let s = (0..4).fold(q().zero(), |acc, k| q().add(&acc, &q().mul(&c[(i, k)], &c[(j, k)])));
                    s == q().element(&[if i == j { 4 } else { 0 }])
                })
            });
            Ok((ok, json!({ "determinant": js::elem(&a.determinant) })))
        }),
        ("characters/Q(i)/C4", || {
            let f = gaussian();
            let a = split_group_algebra(&f, &[4], Some(&f.element(&[0, 1])))?;
            Ok((!f.is_zero(&a.determinant), json!({ "determinant": js::elem(&a.determinant) })))
        }),
        ("kernel/Q/C2/m=2", || kernel_case(q(), &[2], 2)),
        ("kernel/Q/C2/m=4", || kernel_case(q(), &[2], 4)),
        ("kernel/Q/C2xC2/m=4", || kernel_case(q(), &[2, 2], 4)),
        ("kernel/Q(i)/C4/m=4", || kernel_case(gaussian(), &[4], 4)),
        ("triviality/Q/C2/m=2", || {
            let k = milnor_kernel_group(&split_group_algebra(&q(), &[2], None)?, 2)?;
            let r = capitulation_triviality_check(&k, &q(), 2)?;
            Ok((r.trivial() && r.certificates.is_empty(), Value::Null))
        }),
        ("triviality/Q/C2xC2/m=4", || {
            let k = milnor_kernel_group(&split_group_algebra(&q(), &[2, 2], None)?, 4)?;
            let r = capitulation_triviality_check(&k, &q(), 4)?;
            Ok((r.trivial() && r.certificates.is_empty(), Value::Null))
        }),
        ("triviality/Q/C2/m=8/tuple(3,1)", || {
            let r = capitulate_tuples(&q(), 8, &[vec![ints(&[3]), ints(&[1])]])?;
            let ok = r.trivial() && r.certificates.len() == 1 && r.certificates[0].0 == q().element(&[3]);
            Ok((ok, Value::Null))
        }),
        ("triviality/Q(i)/C4/m=4", || {
            let f = gaussian();
            let k = milnor_kernel_group(&split_group_algebra(&f, &[4], None)?, 4)?;
            let r = capitulation_triviality_check(&k, &f, 4)?;
            Ok((!k.is_trivial() && r.trivial(), json!({ "certificates": js::num(r.certificates.len()) })))
        }),
        ("lambda/Q/(1)/2", || {
            let l = lambda_order(&q(), &Ideal::unit(&q()), 2)?;
            Ok((l.lattice() == &full_matrix_lattice(&q(), 2), Value::Null))
        }),
        ("lambda/Q(sqrt -5)/(2,1+sqrt -5)/2", || {
            let f = minus_five();
            let a = Ideal::from_generators(&f, &[f.element(&[2, 0]), f.element(&[1, 1])])?;
            let l = lambda_order(&f, &a, 2)?;
            Ok((l.basis().len() == 8 && verify_ring_closure(&l), Value::Null))
        }),
        ("lambda/corrupted", || {
            let f = minus_five();
            let a = Ideal::from_generators(&f, &[f.element(&[2, 0]), f.element(&[1, 1])])?;
            let l = block_lattice(&f, &a, a.inverse(&f), a.inverse(&f), 2)?;
            Ok((!verify_ring_closure(&l), Value::Null))
        }),
        ("lambda/Q/(3)/1", || {
            let l = lambda_order(&q(), &Ideal::principal(&q(), &q().element(&[3]))?, 1)?;
            Ok((l.lattice() == &full_matrix_lattice(&q(), 1), Value::Null))
        }),
        ("principality/(2,1+sqrt -5)", || {
            let f = minus_five();
            let a = Ideal::from_generators(&f, &[f.element(&[2, 0]), f.element(&[1, 1])])?;
            let s1 = is_principal_by_search(&f, &a, 10_000)?;
            let s2 = is_principal_by_search(&f, &a.pow(&f, 2), 10_000)?;
            let gen_ok = matches!(&s2, PrincipalSearch::Principal(x) if Ideal::principal(&f, x)? == Ideal::principal(&f, &f.element(&[2, 0]))?);
            let class_number = imaginary_quadratic_class_group(-20)?.order();
            Ok((s1 == PrincipalSearch::CertifiedNonPrincipal && gen_ok && class_number == 2, Value::Null))
        }),
        ("extend/(2) to Q(i)", || {
            let f = gaussian();
            let two = Ideal::principal(&q(), &q().element(&[2]))?;
            let e = Embedding::new(&q(), &f, f.zero())?;
            let l = extend_scalars(&lambda_order(&q(), &two, 2)?, Some(&e))?;
            Ok((l.ideal == Ideal::principal(&f, &f.element(&[2, 0]))?, Value::Null))
        }),
        ("extend/missing embedding", || {
            let l = lambda_order(&q(), &Ideal::unit(&q()), 2)?;
            Ok((matches!(extend_scalars(&l, None), Err(Error::Precondition(_))), Value::Null))
        }),
        ("iso/Q/(2)/alpha=2", || {
            let l = lambda_order(&q(), &Ideal::principal(&q(), &q().element(&[2]))?, 2)?;
            let c = matrix_ring_iso_certificate(&l, &q().element(&[2]))?;
            Ok((c.passed(), Value::Null))
        }),
        ("iso/Q/(1)/alpha=1", || {
            let l = lambda_order(&q(), &Ideal::unit(&q()), 3)?;
            let c = matrix_ring_iso_certificate(&l, &q().one())?;
            Ok((c.passed() && l.conjugated(&q().one())? == *l.lattice(), Value::Null))
        }),
        ("iso/wrong generator", || {
            let f = minus_five();
            let alpha = f.element(&[1, 1]);
            let a = Ideal::from_generators(&f, &[f.element(&[2, 0]), alpha.clone()])?;
            let c = matrix_ring_iso_certificate(&lambda_order(&f, &a, 2)?, &alpha)?;
            Ok((!c.passed() && !c.norm_matches, json!({ "norm": js::rat(&f.norm(&alpha)) })))
        }),
        ("morita", || {
            let ok = morita_rank(1, 5)?.o_rank == 5
                && morita_rank(3, 2)? == crate::lambda::MoritaRank { o_rank: 6, recovered: 2 }
                && morita_rank(2, 1)?.recovered == 1;
            Ok((ok, Value::Null))
        }),
        ("noncap/3,2", || noncap_case(3, 2, true)),
        ("noncap/2,4", || noncap_case(2, 4, false)),
        ("noncap/1,7", || noncap_case(1, 7, false)),
        ("injectivity", || {
            let ok = injectivity_predicate(6, 35, true)? && !injectivity_predicate(6, 4, true)? && injectivity_predicate(1, 9, true)?;
            Ok((ok, Value::Null))
        }),
    ]
}

pub(super) fn run(only: Option<&str>) -> Result<Outcome> {
    let mut results = Vec::new();
    let mut checks = Vec::new();
    for (name, f) in cases() {
        if only.is_some_and(|s| !name.contains(s)) {
            continue;
        }
        let (ok, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, json!({ "error": e.kind(), "message": e.to_string() })),
        };
        results.push(json!({ "name": name, "passed": ok, "detail": detail }));
        checks.push((name.to_string(), ok));
    }
    if results.is_empty() {
        return Err(Error::Input("no corpus case matches the filter".into()));
    }
    let failed = checks.iter().filter(|(_, ok)| !ok).count();
    let result = json!({ "cases": results, "total": js::num(checks.len()), "failed": js::num(failed) });
    Ok(Outcome { field: None, result, checks })
}
