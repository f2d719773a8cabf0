//! The maximal order Lambda_{a,2} over Q(sqrt -5) for a = (2, 1 + sqrt -5).

use capitulation::field::{is_principal_by_search, Ideal, NumberFieldSpec};
use capitulation::lambda::{lambda_order, matrix_ring_iso_certificate, morita_rank, verify_ring_closure};

fn main() -> capitulation::Result<()> {
    let f = NumberFieldSpec::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fields/q_sqrt_minus5.toml"))?;
    let a = Ideal::from_generators(&f, &[f.element(&[2]), f.element(&[1, 1])])?;
    let order = lambda_order(&f, &a, 2)?;
    println!("norm(a) = {}, ring closure {}", a.norm(), verify_ring_closure(&order));
    println!("a principal? {:?}", is_principal_by_search(&f, &a, 1000)?);
    println!("a^2 principal? {:?}", is_principal_by_search(&f, &a.pow(&f, 2), 1000)?);

    let two = Ideal::principal(&f, &f.element(&[2]))?;
    let cert = matrix_ring_iso_certificate(&lambda_order(&f, &two, 2)?, &f.element(&[2]))?;
    println!("Lambda_(2),2 ~ Mat_2(O) via alpha = 2: {}", cert.passed());

    let mr = morita_rank(2, 3)?;
    println!("rank 3 over Mat_2(O) is rank {} over O, recovered {}", mr.o_rank, mr.recovered);
    Ok(())
}
