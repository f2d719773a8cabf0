//! Divisibility predicates excluding capitulation of locally free classes.
//!
//! Both predicates rest on the caller's assertion that `O_L` is free over
//! `O_F`; nothing here checks it.

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonCapQuery {
    /// Order of the class `[N]`.
    pub class_order: u64,
    /// `[L : F]`.
    pub extension_degree: u64,
    pub ring_of_integers_free: bool,
}

fn check(free: bool, values: &[(&str, u64)]) -> Result<()> {
    if !free {
        return Err(Error::HypothesisNotMet("O_L must be free over O_F".into()));
    }
    for (name, v) in values {
        if *v == 0 {
            return Err(Error::Input(format!("{name} must be positive")));
        }
    }
    Ok(())
}

/// True when `[N]` provably survives in `L`: `o > 1` and `o` does not divide `[L:F]`.
pub fn exclusion_predicate(q: &NonCapQuery) -> Result<bool> {
    check(q.ring_of_integers_free, &[("class order", q.class_order), ("degree", q.extension_degree)])?;
    Ok(q.class_order > 1 && q.extension_degree % q.class_order != 0)
}

/// True when `gcd([L:F], |Cl|) = 1`, so the whole class group injects.
pub fn injectivity_predicate(class_group_order: u64, degree: u64, free: bool) -> Result<bool> {
    check(free, &[("class group order", class_group_order), ("degree", degree)])?;
    Ok(degree.gcd(&class_group_order) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(o: u64, d: u64) -> bool {
        exclusion_predicate(&NonCapQuery { class_order: o, extension_degree: d, ring_of_integers_free: true }).unwrap()
    }

    #[test]
    fn exclusion() {
        assert!(ex(3, 2));
        assert!(!ex(2, 4));
        assert!(!ex(1, 7));
        let q = NonCapQuery { class_order: 3, extension_degree: 2, ring_of_integers_free: false };
        assert!(matches!(exclusion_predicate(&q), Err(Error::HypothesisNotMet(_))));
        assert!(matches!(injectivity_predicate(0, 2, true), Err(Error::Input(_))));
    }

    #[test]
    fn injectivity() {
        assert!(injectivity_predicate(6, 35, true).unwrap());
        assert!(!injectivity_predicate(6, 4, true).unwrap());
        assert!(injectivity_predicate(1, 12, true).unwrap());
    }
}
