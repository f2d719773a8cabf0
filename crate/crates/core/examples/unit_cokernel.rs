//! Cokernels of global units into (O_F/m)^x, with canonical lifts and their certificates.

use capitulation::cokernel::{joint_residue_check, unit_cokernel};
use capitulation::field::NumberFieldSpec;

fn main() -> capitulation::Result<()> {
    let q = NumberFieldSpec::rationals();
    for m in [8, 12, 15] {
        let ck = unit_cokernel(&q, m)?;
        let lifts: Vec<String> = ck.generator_lifts.iter().map(|x| x.coeffs()[0].to_string()).collect();
        println!("Q mod {m}: |units| = {}, invariants {:?}, lifts [{}]", ck.units.order(), ck.invariant_factors(), lifts.join(", "));
    }

    let ck = unit_cokernel(&q, 8)?;
    let certs = ck.capitulate()?;
    for (lift, cert) in &certs {
        println!("lift {} capitulates with t = {}, checks {}", lift.coeffs()[0], cert.t, cert.checks.all_pass());
    }
    let only: Vec<_> = certs.into_iter().map(|(_, c)| c).collect();
    println!("joint residue check: {}", joint_residue_check(&q, 8, &only)?);

    let sqrt2 = NumberFieldSpec::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fields/q_sqrt2.toml"))?;
    let ck = unit_cokernel(&sqrt2, 7)?;
    println!("Q(sqrt 2) mod 7: |units| = {}, image {}, invariants {:?}", ck.units.order(), ck.image_order(), ck.invariant_factors());
    Ok(())
}
