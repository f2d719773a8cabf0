//! Quadratic fields: standard monogenic presentations, fundamental units by
//! continued fractions, and class groups of imaginary quadratic fields by
//! reduced binary quadratic forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::poly::Poly;
use crate::arith::ring::{is_squarefree, Integers};
use crate::error::{Error, Result};
use crate::field::spec::{is_fundamental_discriminant, make_field, Declarations, FieldElement, NumberFieldSpec};
use crate::group::AbelianGroupPresentation;

fn check_squarefree(d: &BigInt) -> Result<()> {
    if d.is_zero() || d.is_one() || !is_squarefree(d) {
        return Err(Error::NotSquarefree(d.clone()));
    }
    Ok(())
}

/// Defining polynomial of the ring of integers of `Q(sqrt D)`: `X^2 - X - (D-1)/4`
/// when `D = 1 mod 4`, otherwise `X^2 - D`.
fn quadratic_poly(d: &BigInt) -> Poly<BigInt> {
    let coeffs = if d.mod_floor(&BigInt::from(4)).is_one() {
        vec![-(d - 1u32) / 4u32, BigInt::from(-1), BigInt::one()]
    } else {
        vec![-d.clone(), BigInt::zero(), BigInt::one()]
    };
    Poly::new(&Integers, coeffs)
}

/// `Q(sqrt D)` with `O = Z[beta]`, torsion and (for `D > 1`) the fundamental unit declared.
pub fn quadratic_field(d: &BigInt) -> Result<NumberFieldSpec> {
    check_squarefree(d)?;
    let g = quadratic_poly(d);
    let beta = FieldElement::from_ints(&[BigInt::zero(), BigInt::one()]);
    let minus_one = FieldElement::from_ints(&[BigInt::from(-1), BigInt::zero()]);
    let roots = if d == &BigInt::from(-1) {
        vec![(beta, 4)]
    } else if d == &BigInt::from(-3) {
        // beta = (1 + sqrt -3)/2 is a primitive sixth root of unity
        vec![(beta, 6)]
    } else {
        vec![(minus_one, 2)]
    };
    let units = if d.is_positive() { vec![real_quadratic_fundamental_unit(d)?.unit] } else { Vec::new() };
    let label = format!("Q(sqrt({d}))");
    make_field(g, Declarations { label: Some(label), units, roots_of_unity: roots })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalUnit {
    /// In the basis `1, beta` of [`quadratic_field`].
    pub unit: FieldElement,
    pub norm: i8,
    /// Index of the convergent that produced the unit.
    pub convergent_index: usize,
    pub period: usize,
}

/// Fundamental unit of `Q(sqrt D)`, `D > 1` squarefree, from the continued
/// fraction of `sqrt D` (or of `(1 + sqrt D)/2` when `D = 1 mod 4`): the first
/// convergent `p/q` whose associated element has norm `+-1`.
pub fn real_quadratic_fundamental_unit(d: &BigInt) -> Result<FundamentalUnit> {
    check_squarefree(d)?;
    if !d.is_positive() {
        return Err(Error::Precondition(format!("D = {d} is not positive")));
    }
    let one_mod_four = d.mod_floor(&BigInt::from(4)).is_one();
    let s = d.sqrt();
    // x = (P + sqrt D)/Q
    let (mut pp, mut qq) = if one_mod_four { (BigInt::one(), BigInt::from(2)) } else { (BigInt::zero(), BigInt::one()) };
    let (mut h1, mut h2) = (BigInt::one(), BigInt::zero());
    let (mut k1, mut k2) = (BigInt::zero(), BigInt::one());
    let mut seen = Vec::new();
    let mut found: Option<(FieldElement, i8, usize)> = None;
    let mut period = None;
    let w: BigInt = (d - 1u32) / 4u32;
    for n in 0.. {
        let state = (pp.clone(), qq.clone());
        if let Some(first) = seen.iter().position(|s| s == &state) {
            period = Some(n - first);
        } else {
            seen.push(state);
        }
        let a = if qq.is_positive() {
            (&pp + &s).div_floor(&qq)
        } else {
            -((&pp + &s).div_floor(&(-&qq)) + 1u32)
        };
        let h = &a * &h1 + &h2;
        let k = &a * &k1 + &k2;
        if found.is_none() {
            let (norm, unit) = if one_mod_four {
                (&h * &h - &h * &k - &k * &k * &w, FieldElement::from_ints(&[&h - &k, k.clone()]))
            } else {
                (&h * &h - d * &k * &k, FieldElement::from_ints(&[h.clone(), k.clone()]))
            };
            if norm.abs().is_one() {
                found = Some((unit, norm.to_i8().unwrap(), n));
            }
        }
        if let (Some((unit, norm, idx)), Some(period)) = (&found, period) {
            return Ok(FundamentalUnit { unit: unit.clone(), norm: *norm, convergent_index: *idx, period });
        }
        h2 = std::mem::replace(&mut h1, h);
        k2 = std::mem::replace(&mut k1, k);
        pp = &a * &qq - &pp;
        qq = (d - &pp * &pp) / &qq;
    }
    unreachable!()
}

/// A primitive positive definite form `ax^2 + bxy + cy^2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl BinaryForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let BinaryForm { a, b, c } = *self;
        b.abs() <= a && a <= c && !(b < 0 && (-b == a || a == c))
    }

    pub fn reduce(self) -> BinaryForm {
        let d = self.discriminant() as i128;
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        loop {
            if b.abs() > a || b == -a {
                // b <- b + 2ak with -a < b <= a
                let k = (a - b).div_euclid(2 * a);
                b += 2 * a * k;
                c = (b * b - d) / (4 * a);
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            break;
        }
        BinaryForm { a: a as i64, b: b as i64, c: c as i64 }
    }

    /// Gauss composition followed by reduction.
    pub fn compose(&self, other: &BinaryForm) -> BinaryForm {
        let d = self.discriminant() as i128;
        let (a1, b1) = (self.a as i128, self.b as i128);
        let (a2, b2) = (other.a as i128, other.b as i128);
        let s = (b1 + b2) / 2;
        let e1 = a1.extended_gcd(&a2);
        let e2 = e1.gcd.extended_gcd(&s);
        let e = e2.gcd;
        let (u, v, w) = (e2.x * e1.x, e2.x * e1.y, e2.y);
        let a3 = a1 * a2 / (e * e);
        let b3 = ((u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + d) / 2) / e).mod_floor(&(2 * a3));
        let c3 = (b3 * b3 - d) / (4 * a3);
        debug_assert_eq!((b3 * b3 - d) % (4 * a3), 0);
        BinaryForm { a: a3 as i64, b: b3 as i64, c: c3 as i64 }.reduce()
    }

    pub fn principal(d: i64) -> BinaryForm {
        let b = d.rem_euclid(2);
        BinaryForm { a: 1, b, c: (b * b - d) / 4 }
    }
}

/// All reduced primitive forms of discriminant `D < 0`.
pub fn reduced_forms(d: i64) -> Vec<BinaryForm> {
    let mut out = Vec::new();
    let a_max = ((-d) / 3).sqrt();
    for a in 1..=a_max {
        for b in -a..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let f = BinaryForm { a, b, c: (b * b - d) / (4 * a) };
            if f.is_reduced() && a.gcd(&b).gcd(&f.c) == 1 {
                out.push(f);
            }
        }
    }
    out
}

/// The class group of discriminant `D`, a negative fundamental discriminant.
pub fn imaginary_quadratic_class_group(d: i64) -> Result<AbelianGroupPresentation<BinaryForm>> {
    if d >= 0 || !is_fundamental_discriminant(&BigInt::from(d)) {
        return Err(Error::NotFundamental(BigInt::from(d)));
    }
    if d < -(1i64 << 40) {
        return Err(Error::ResourceLimit(format!("discriminant {d} too large")));
    }
    AbelianGroupPresentation::from_enumeration(reduced_forms(d), BinaryForm::principal(d), |x, y| x.compose(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::Ring;

    #[test]
    fn small_fundamental_units() {
        let u = real_quadratic_fundamental_unit(&2.into()).unwrap();
        assert_eq!(u.unit, FieldElement::from_ints(&[1.into(), 1.into()]));
        assert_eq!(u.norm, -1);
        let u = real_quadratic_fundamental_unit(&3.into()).unwrap();
        assert_eq!(u.unit, FieldElement::from_ints(&[2.into(), 1.into()]));
        assert_eq!(u.norm, 1);
        // (1 + sqrt 5)/2 is beta itself in the basis 1, (1+sqrt 5)/2
        let u = real_quadratic_fundamental_unit(&5.into()).unwrap();
        assert_eq!(u.unit, FieldElement::from_ints(&[0.into(), 1.into()]));
        assert_eq!(u.norm, -1);
        assert!(matches!(real_quadratic_fundamental_unit(&12.into()), Err(Error::NotSquarefree(_))));
    }

    #[test]
    fn quadratic_fields_carry_units() {
        let f = quadratic_field(&BigInt::from(2)).unwrap();
        assert_eq!(f.unit_rank(), 1);
        assert_eq!(f.declared_free_units(), 1);
        let g = quadratic_field(&BigInt::from(-3)).unwrap();
        let (z, n) = g.declared_roots_of_unity()[0].clone();
        assert_eq!(n, 6);
        assert!(g.is_one(&g.pow(&z, 6)));
    }

    #[test]
    fn class_groups_of_small_discriminants() {
        assert!(imaginary_quadratic_class_group(-4).unwrap().invariant_factors.is_empty());
        assert!(imaginary_quadratic_class_group(-3).unwrap().invariant_factors.is_empty());
        let g = imaginary_quadratic_class_group(-20).unwrap();
        assert_eq!(g.invariant_factors, vec![BigInt::from(2)]);
        assert_eq!(reduced_forms(-20), vec![BinaryForm { a: 1, b: 0, c: 5 }, BinaryForm { a: 2, b: 2, c: 3 }]);
        assert!(imaginary_quadratic_class_group(-12).is_err());
    }

    #[test]
    fn composition_is_a_group_law() {
        for d in [-23i64, -47, -56, -84, -71] {
            let forms = reduced_forms(d);
            let e = BinaryForm::principal(d);
            for x in &forms {
                assert_eq!(x.compose(&e), *x);
                for y in &forms {
                    let xy = x.compose(y);
                    assert_eq!(xy, y.compose(x));
                    assert!(xy.is_reduced() && xy.discriminant() == d);
                    for z in &forms {
                        assert_eq!(xy.compose(z), x.compose(&y.compose(z)));
                    }
                }
            }
        }
    }
}
