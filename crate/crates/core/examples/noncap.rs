//! Truth table of the non-capitulation predicates.

use capitulation::noncap::{exclusion_predicate, injectivity_predicate, NonCapQuery};

fn main() -> capitulation::Result<()> {
    println!("o\\n {}", (1..=12).map(|n| format!("{n:>3}")).collect::<String>());
    for o in [1, 2, 3, 4, 6] {
        let mut row = String::new();
        for n in 1..=12 {
            let q = NonCapQuery { class_order: o, extension_degree: n, ring_of_integers_free: true };
            row.push_str(if exclusion_predicate(&q)? { "  X" } else { "  ." });
        }
        println!("{o:>3} {row}");
    }
    println!("|Cl| = 6, [L:F] = 35 injects: {}", injectivity_predicate(6, 35, true)?);
    println!("without freeness: {:?}", injectivity_predicate(6, 35, false).map_err(|e| e.kind()));
    Ok(())
}
