//! Capitulation certificate for u = 3 modulo 2 over Q, then for 1+i modulo 3 over Q(i).

use capitulation::capitulation::capitulation_extension;
use capitulation::field::NumberFieldSpec;

fn main() -> capitulation::Result<()> {
    let q = NumberFieldSpec::rationals();
    let cert = capitulation_extension(&q, 2, &q.element(&[3]))?;
    println!("t = {}, c = {}, d = {}", cert.t, cert.c.coeffs()[0], cert.d.coeffs()[0]);
    let f: Vec<String> = cert.f.iter().map(|c| c.coeffs()[0].to_string()).collect();
    println!("f (ascending) = [{}]", f.join(", "));
    println!("2^t f(3/2) = {}", cert.product_value.coeffs()[0]);
    for (name, ok) in cert.checks.named() {
        println!("  {name}: {ok}");
    }

    let qi = NumberFieldSpec::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fields/qi.toml"))?;
    let cert = capitulation_extension(&qi, 3, &qi.element(&[1, 1]))?;
    println!("Q(i), m = 3, u = 1+i: t = {}, det = {}, all checks {}", cert.t, cert.unit.determinant, cert.checks.all_pass());
    Ok(())
}
