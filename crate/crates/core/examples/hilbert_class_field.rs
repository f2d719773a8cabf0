//! Capitulation of the non-principal class of Q(sqrt -5) in its Hilbert class field Q(i, sqrt 5).
//!
//! Lambda_{a,2} is not conjugate to Mat_2(O_F) over O_F, but a O_L = (1 + i) so
//! after extending scalars it is.

use capitulation::field::{imaginary_quadratic_class_group, is_principal_by_search, Ideal, NumberFieldSpec};
use capitulation::lambda::{extend_scalars, lambda_order, matrix_ring_iso_certificate, Embedding};

fn main() -> capitulation::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fields");
    let f = NumberFieldSpec::load(&format!("{dir}/q_sqrt_minus5.toml"))?;
    let l = NumberFieldSpec::load(&format!("{dir}/q_i_sqrt5.toml"))?;

    let cl = imaginary_quadratic_class_group(-20)?;
    println!("Cl(Q(sqrt -5)) has order {}", cl.order());

    let a = Ideal::from_generators(&f, &[f.element(&[2]), f.element(&[1, 1])])?;
    println!("a over F: {:?}", is_principal_by_search(&f, &a, 1000)?);

    let emb = Embedding::new(&f, &l, l.element(&[0, 4, 0, 1]))?;
    let al = emb.extend_ideal(&a)?;
    let one_plus_i = l.element(&[1, -2, 0, -1]);
    println!("a O_L = (1 + i): {}", al == Ideal::principal(&l, &one_plus_i)?);

    let order = lambda_order(&f, &a, 2)?;
    let lifted = extend_scalars(&order, Some(&emb))?;
    let cert = matrix_ring_iso_certificate(&lifted, &one_plus_i)?;
    println!(
        "Lambda over O_L conjugates to Mat_2(O_L): generates {}, forward {}, backward {}, norm {}",
        cert.generates, cert.forward, cert.backward, cert.norm_matches
    );
    Ok(())
}
