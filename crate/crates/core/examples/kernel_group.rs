//! Kernel groups D for split group algebras F[G] = prod F.

use capitulation::field::NumberFieldSpec;
use capitulation::kernel_group::{capitulation_triviality_check, milnor_kernel_group, split_group_algebra};

fn show(field: &NumberFieldSpec, orders: &[u64], m: u64) -> capitulation::Result<()> {
    let alg = split_group_algebra(field, orders, None)?;
    let k = milnor_kernel_group(&alg, m)?;
    println!(
        "{} G = {:?} m = {m}: ambient {}, join {}, D = {:?} (exact {})",
        field.label(),
        orders,
        k.ambient_order,
        k.join_order,
        k.invariant_factors,
        k.is_exact()
    );
    if !k.is_trivial() {
        let report = capitulation_triviality_check(&k, field, m)?;
        println!("  generators capitulate: {}", report.trivial());
    }
    Ok(())
}

fn main() -> capitulation::Result<()> {
    let q = NumberFieldSpec::rationals();
    show(&q, &[2], 2)?;
    show(&q, &[2], 4)?;
    show(&q, &[2, 2], 4)?;
    let qi = NumberFieldSpec::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fields/qi.toml"))?;
    let alg = split_group_algebra(&qi, &[4], None)?;
    let det: Vec<String> = alg.determinant.coeffs().iter().map(|c| c.to_string()).collect();
    println!("C4 over Q(i): character determinant [{}]", det.join(", "));
    show(&qi, &[4], 4)?;
    Ok(())
}
