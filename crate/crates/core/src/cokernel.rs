//! Unit groups of residue rings, the cokernel `(O_F/m)^x / phi(O_F^x)` and
//! capitulation of its generators.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::ring::Ring;
use crate::capitulation::{capitulation_extension, CapitulationCertificate};
use crate::error::{Error, Result};
use crate::field::residue::{ResidueElem, ResidueRing};
use crate::field::spec::{FieldElement, NumberFieldSpec};
use crate::group::{AbelianGroupPresentation, Quotient};

/// Default bound on the size of any ring that gets enumerated.
pub const DEFAULT_CAP: u64 = 1_000_000;

pub type UnitGroup = AbelianGroupPresentation<ResidueElem>;

pub fn finite_ring_units(ring: &ResidueRing) -> Result<UnitGroup> {
    finite_ring_units_capped(ring, DEFAULT_CAP)
}

pub fn finite_ring_units_capped(ring: &ResidueRing, cap: u64) -> Result<UnitGroup> {
    let units: Vec<ResidueElem> = ring.elements(cap)?.into_iter().filter(|x| ring.invert(x).is_ok()).collect();
    AbelianGroupPresentation::from_enumeration(units, ring.one(), |a, b| ring.mul(a, b))
}

/// `(O_F/m)^x` modulo the image of the global unit generators.
#[derive(Clone, Debug)]
pub struct UnitCokernel {
    pub field: NumberFieldSpec,
    pub modulus: u64,
    pub ring: ResidueRing,
    pub units: UnitGroup,
    pub global_generators: Vec<FieldElement>,
    pub global_images: Vec<ResidueElem>,
    pub quotient: Quotient,
    /// Lexicographically smallest unit in each generator class, coefficients in `[0, m)`.
    pub generator_lifts: Vec<FieldElement>,
}

impl UnitCokernel {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.quotient.invariant_factors()
    }

    pub fn order(&self) -> BigInt {
        self.quotient.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.quotient.is_trivial()
    }

    /// Order of `phi(O_F^x)` inside `(O_F/m)^x`.
    pub fn image_order(&self) -> BigInt {
        BigInt::from(self.units.order()) / self.order()
    }

    /// Coordinates of the class of `x` in the invariant-factor basis.
    pub fn class_of(&self, x: &ResidueElem) -> Result<Vec<BigInt>> {
        let e = self
            .units
            .dlog(&self.ring.reduce(x.clone()))
            .ok_or_else(|| Error::NotAUnit { witness: format!("{x:?} is not invertible mod {}", self.modulus) })?;
        Ok(self.quotient.coordinates(e))
    }

    /// The first unit in enumeration order whose class is `class`.
    pub fn canonical_lift(&self, class: &[BigInt]) -> Option<ResidueElem> {
        self.units.elements().iter().find(|x| self.quotient.coordinates(self.units.dlog(x).unwrap()) == class).cloned()
    }

    /// One certificate per generator lift.
    pub fn capitulate(&self) -> Result<Vec<(FieldElement, CapitulationCertificate)>> {
        self.generator_lifts
            .iter()
            .map(|u| Ok((u.clone(), capitulation_extension(&self.field, self.modulus, u)?)))
            .collect()
    }
}

pub fn unit_cokernel(field: &NumberFieldSpec, m: u64) -> Result<UnitCokernel> {
    unit_cokernel_capped(field, m, DEFAULT_CAP)
}

pub fn unit_cokernel_capped(field: &NumberFieldSpec, m: u64, cap: u64) -> Result<UnitCokernel> {
    if field.declared_free_units() < field.unit_rank() {
        return Err(Error::MissingUnitData(format!(
            "{} has unit rank {} but {} fundamental units are declared",
            field.label(),
            field.unit_rank(),
            field.declared_free_units()
        )));
    }
    let ring = ResidueRing::new(field, BigInt::from(m))?;
    let units = finite_ring_units_capped(&ring, cap)?;
    let global_generators = field.unit_group_generators();
    let global_images =
        global_generators.iter().map(|w| ring.from_field(w)).collect::<Result<Vec<_>>>()?;
    let quotient = units.quotient(&global_images)?;
    let mut cok = UnitCokernel {
        field: field.clone(),
        modulus: m,
        ring,
        units,
        global_generators,
        global_images,
        quotient,
        generator_lifts: Vec::new(),
    };
    let r = cok.invariant_factors().len();
    for i in 0..r {
        let mut class = vec![BigInt::zero(); r];
        class[i] = BigInt::one();
        let lift = cok.canonical_lift(&class).ok_or_else(|| Error::Invariant("empty cokernel class".into()))?;
        cok.generator_lifts.push(FieldElement::from_ints(&lift));
    }
    Ok(cok)
}

/// Every generator of the unit cokernel together with its capitulation certificate.
pub fn capitulate_cokernel(field: &NumberFieldSpec, m: u64) -> Result<Vec<(FieldElement, CapitulationCertificate)>> {
    unit_cokernel(field, m)?.capitulate()
}

/// Elements of `(O_F/m)[X_1..X_k]/(f_1..f_k)`: exponent vector to coefficient.
type Joint = BTreeMap<Vec<usize>, Vec<BigInt>>;

struct JointRing<'a> {
    field: &'a NumberFieldSpec,
    m: BigInt,
    /// Monic `f_j`, coefficients reduced mod `m`.
    fs: Vec<Vec<Vec<BigInt>>>,
}

impl JointRing<'_> {
    fn vars(&self) -> usize {
        self.fs.len()
    }

    fn reduce_coeff(&self, c: &[BigInt]) -> Vec<BigInt> {
        c.iter().map(|x| x.mod_floor(&self.m)).collect()
    }

    fn add_term(&self, acc: &mut Joint, e: Vec<usize>, c: &[BigInt]) {
        let c = self.reduce_coeff(c);
        match acc.entry(e) {
            Entry::Occupied(mut o) => {
                for (x, y) in o.get_mut().iter_mut().zip(&c) {
                    *x = (&*x + y).mod_floor(&self.m);
                }
                if o.get().iter().all(Zero::is_zero) {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if !c.iter().all(Zero::is_zero) {
                    v.insert(c);
                }
            }
        }
    }

    fn constant(&self, c: &[BigInt]) -> Joint {
        let mut out = Joint::new();
        self.add_term(&mut out, vec![0; self.vars()], c);
        out
    }

    /// `sum_k p_k X_j^k`.
    fn univariate(&self, j: usize, p: &[Vec<BigInt>]) -> Joint {
        let mut out = Joint::new();
        for (k, c) in p.iter().enumerate() {
            let mut e = vec![0; self.vars()];
            e[j] = k;
            self.add_term(&mut out, e, c);
        }
        self.reduce(out)
    }

    /// Rewrites `X_j^{e}` for `e >= deg f_j` until every exponent is in range.
    fn reduce(&self, mut a: Joint) -> Joint {
        for (j, f) in self.fs.iter().enumerate() {
            let t = f.len() - 1;
            let top = a.keys().map(|e| e[j]).max().unwrap_or(0);
            for level in (t..=top).rev() {
                let hits: Vec<Vec<usize>> = a.keys().filter(|e| e[j] == level).cloned().collect();
                for e in hits {
                    let c = a.remove(&e).unwrap();
                    for (i, fi) in f.iter().enumerate().take(t) {
                        let mut e2 = e.clone();
                        e2[j] = level - t + i;
                        let prod: Vec<BigInt> = self.field.integral_mul(&c, fi).iter().map(|x| -x).collect();
                        self.add_term(&mut a, e2, &prod);
                    }
                }
            }
        }
        a
    }

    fn mul(&self, a: &Joint, b: &Joint) -> Joint {
        let mut out = Joint::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                self.add_term(&mut out, e, &self.field.integral_mul(ca, cb));
            }
        }
        self.reduce(out)
    }

    fn is_one(&self, a: &Joint) -> bool {
        *a == self.constant(&self.field.one().to_ints().unwrap())
    }
}

pub fn joint_residue_check(field: &NumberFieldSpec, m: u64, certificates: &[CapitulationCertificate]) -> Result<bool> {
    joint_residue_check_capped(field, m, certificates, DEFAULT_CAP)
}

/// Compositum-level check in `(O_F/m)[X_1..X_k]/(f_1..f_k)`: each `u_j - m X_j`
/// reduces to `u_j`, times its transported inverse is 1, and so is the product
/// of all of them against the product of all inverses.
pub fn joint_residue_check_capped(
    field: &NumberFieldSpec,
    m: u64,
    certificates: &[CapitulationCertificate],
    cap: u64,
) -> Result<bool> {
    let size = certificates
        .iter()
        .try_fold(BigInt::from(field.degree()), |acc, c| Some(acc * BigInt::from(c.f.len().checked_sub(1)?)))
        .ok_or_else(|| Error::Input("empty extension polynomial".into()))?;
    if size > BigInt::from(cap) {
        return Err(Error::ResourceLimit(format!("joint residue ring of rank {size} exceeds cap {cap}")));
    }
    if certificates.iter().any(|c| c.m != m) {
        return Ok(false);
    }
    let fs = certificates
        .iter()
        .map(|c| c.f.iter().map(FieldElement::try_ints).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let ring = JointRing { field, m: BigInt::from(m), fs };
    let mut eps_all = ring.constant(&field.one().to_ints().unwrap());
    let mut inv_all = eps_all.clone();
    for (j, cert) in certificates.iter().enumerate() {
        let u = ring.constant(&cert.u.try_ints()?);
        let eps = ring.univariate(j, &cert.unit.epsilon.iter().map(FieldElement::try_ints).collect::<Result<Vec<_>>>()?);
        let inv = ring.univariate(j, &cert.unit.inverse.iter().map(FieldElement::try_ints).collect::<Result<Vec<_>>>()?);
        if eps != u || !ring.is_one(&ring.mul(&eps, &inv)) {
            return Ok(false);
        }
        eps_all = ring.mul(&eps_all, &eps);
        inv_all = ring.mul(&inv_all, &inv);
    }
    Ok(ring.is_one(&ring.mul(&eps_all, &inv_all)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::quadratic::quadratic_field;

    fn q() -> NumberFieldSpec {
        NumberFieldSpec::rationals()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn units_of_small_rings() {
        let z8 = ResidueRing::new(&q(), 8.into()).unwrap();
        let u = finite_ring_units(&z8).unwrap();
        assert_eq!(u.invariant_factors, ints(&[2, 2]));
        assert_eq!(u.generators, vec![ints(&[7]), ints(&[5])]);
        let zi = quadratic_field(&BigInt::from(-1)).unwrap();
        let r = ResidueRing::new(&zi, 2.into()).unwrap();
        let u = finite_ring_units(&r).unwrap();
        assert_eq!(u.invariant_factors, ints(&[2]));
        assert_eq!(u.generators, vec![ints(&[0, 1])]);
        let z2 = ResidueRing::new(&q(), 2.into()).unwrap();
        assert!(finite_ring_units(&z2).unwrap().invariant_factors.is_empty());
        assert!(matches!(finite_ring_units_capped(&z8, 7), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn rational_cokernels() {
        let c = unit_cokernel(&q(), 8).unwrap();
        assert_eq!(c.invariant_factors(), ints(&[2]));
        assert_eq!(c.generator_lifts, vec![q().element(&[3])]);
        assert!(unit_cokernel(&q(), 3).unwrap().is_trivial());
        let c = unit_cokernel(&q(), 12).unwrap();
        assert_eq!(c.generator_lifts, vec![q().element(&[5])]);
        assert_eq!(c.image_order(), BigInt::from(2));
    }

    #[test]
    fn missing_units_are_reported() {
        let f = quadratic_field(&BigInt::from(2)).unwrap().with_units(Vec::new()).unwrap();
        assert!(matches!(unit_cokernel(&f, 5), Err(Error::MissingUnitData(_))));
    }

    #[test]
    fn pipeline_for_eight() {
        let certs = capitulate_cokernel(&q(), 8).unwrap();
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].1.t, 16);
        assert!(certs[0].1.checks.all_pass());
        assert!(capitulate_cokernel(&q(), 3).unwrap().is_empty());
        let certs: Vec<_> = certs.into_iter().map(|(_, c)| c).collect();
        assert!(joint_residue_check(&q(), 8, &certs).unwrap());
    }

    #[test]
    fn joint_check_with_two_variables() {
        let certs: Vec<_> = [5, 7].iter().map(|&u| capitulation_extension(&q(), 12, &q().element(&[u])).unwrap()).collect();
        assert!(joint_residue_check(&q(), 12, &certs).unwrap());
        let mut bad = certs.clone();
        bad[1].unit.inverse[0] = q().element(&[1]);
        assert!(!joint_residue_check(&q(), 12, &bad).unwrap());
        assert!(matches!(joint_residue_check_capped(&q(), 12, &certs, 10), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn joint_ring_reduces_powers() {
        let f = |v: &[i64]| v.iter().map(|&x| ints(&[x])).collect::<Vec<_>>();
        // X^2 = X + 1 over Z/7, Y^2 = 3
        let ring = JointRing { field: &q(), m: 7.into(), fs: vec![f(&[-1, -1, 1]), f(&[-3, 0, 1])] };
        let x = ring.univariate(0, &f(&[0, 1]));
        let y = ring.univariate(1, &f(&[0, 1]));
        let x3 = ring.mul(&ring.mul(&x, &x), &x);
        assert_eq!(x3, ring.univariate(0, &f(&[1, 2])));
        let y2 = ring.mul(&y, &y);
        assert_eq!(y2, ring.constant(&ints(&[3])));
        let xy = ring.mul(&x, &y);
        assert_eq!(xy.len(), 1);
    }
}
