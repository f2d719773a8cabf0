//! The maximal orders `Lambda_{a,r}` of `Mat_r(F)`: `O` in the upper-left
//! `(r-1) x (r-1)` block and the corner, `a^{-1}` in the last column and `a` in
//! the last row.

use num_rational::BigRational;
use num_traits::Signed;

use crate::arith::lattice::Lattice;
use crate::arith::ring::Ring;
use crate::error::{Error, Result};
use crate::field::ideal::Ideal;
use crate::field::spec::{FieldElement, NumberFieldSpec};

/// An `O_F`-lattice in `Mat_r(F)`, block-shaped like `Lambda_{a,r}`. Matrices
/// are flattened row-major, each entry contributing its `d` coordinates.
#[derive(Clone, Debug)]
pub struct LambdaOrder {
    pub field: NumberFieldSpec,
    pub ideal: Ideal,
    pub size: usize,
    /// Ideal in the last column above the corner.
    pub column_ideal: Ideal,
    /// Ideal in the last row left of the corner.
    pub row_ideal: Ideal,
    basis: Vec<Vec<BigRational>>,
    lattice: Lattice,
}

/// A matrix as `r * r` entries, row-major.
pub type FieldMatrix = Vec<FieldElement>;

fn entry_ideal<'a>(o: &'a Ideal, col: &'a Ideal, row: &'a Ideal, r: usize, i: usize, j: usize) -> &'a Ideal {
    let last = r - 1;
    match (i == last, j == last) {
        (false, true) => col,
        (true, false) => row,
        _ => o,
    }
}

fn flatten(field: &NumberFieldSpec, m: &[FieldElement]) -> Vec<BigRational> {
    let d = field.degree();
    m.iter().flat_map(|x| {
        let mut c = x.coeffs().to_vec();
        c.resize(d, BigRational::from_integer(0.into()));
        c
    })
    .collect()
}

fn single_entry(field: &NumberFieldSpec, r: usize, i: usize, j: usize, x: FieldElement) -> FieldMatrix {
    let mut m = vec![field.zero(); r * r];
    m[i * r + j] = x;
    m
}

/// Block lattice with arbitrary ideals in the last column and row; `lambda_order`
/// uses `a^{-1}` and `a`.
pub fn block_lattice(field: &NumberFieldSpec, ideal: &Ideal, column_ideal: Ideal, row_ideal: Ideal, r: usize) -> Result<LambdaOrder> {
    if r == 0 {
        return Err(Error::Input("matrix size must be at least 1".into()));
    }
    let o = Ideal::unit(field);
    let mut basis = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for x in entry_ideal(&o, &column_ideal, &row_ideal, r, i, j).z_basis(field) {
                basis.push(flatten(field, &single_entry(field, r, i, j, x)));
            }
        }
    }
    let lattice = Lattice::from_rat_rows(r * r * field.degree(), &basis);
    Ok(LambdaOrder { field: field.clone(), ideal: ideal.clone(), size: r, column_ideal, row_ideal, basis, lattice })
}

pub fn lambda_order(field: &NumberFieldSpec, ideal: &Ideal, r: usize) -> Result<LambdaOrder> {
    if ideal.lattice().rank() < field.degree() {
        return Err(Error::Input("the zero ideal does not define an order".into()));
    }
    if !ideal.is_integral() {
        return Err(Error::Input("the ideal must be integral".into()));
    }
    block_lattice(field, ideal, ideal.inverse(field), ideal.clone(), r)
}

impl LambdaOrder {
    /// `r^2 d` basis matrices, each with a single nonzero entry.
    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn contains(&self, m: &[FieldElement]) -> bool {
        self.lattice.contains(&flatten(&self.field, m))
    }

    pub fn contains_identity(&self) -> bool {
        let r = self.size;
        let id: FieldMatrix =
            (0..r * r).map(|k| if k / r == k % r { self.field.one() } else { self.field.zero() }).collect();
        self.contains(&id)
    }

    fn unflatten(&self, v: &[BigRational]) -> FieldMatrix {
        v.chunks(self.field.degree()).map(|c| FieldElement::from_rationals(c.to_vec())).collect()
    }

    fn matmul(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldMatrix {
        let r = self.size;
        let f = &self.field;
        (0..r * r)
            .map(|k| {
                let (i, j) = (k / r, k % r);
                (0..r).fold(f.zero(), |acc, l| f.add(&acc, &f.mul(&a[i * r + l], &b[l * r + j])))
            })
            .collect()
    }

    /// First pair of basis indices whose product leaves the lattice.
    pub fn closure_violation(&self) -> Option<(usize, usize)> {
        let mats: Vec<FieldMatrix> = self.basis.iter().map(|v| self.unflatten(v)).collect();
        for (x, a) in mats.iter().enumerate() {
            for (y, b) in mats.iter().enumerate() {
                if !self.contains(&self.matmul(a, b)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// `D^{-1} Lambda D` for `D = diag(1, ..., 1, alpha)`.
    pub fn conjugated(&self, alpha: &FieldElement) -> Result<Lattice> {
        let f = &self.field;
        let inv = f.inv(alpha).ok_or_else(|| Error::Input("conjugator must be nonzero".into()))?;
        let r = self.size;
        let last = r - 1;
        let rows: Vec<Vec<BigRational>> = self
            .basis
            .iter()
            .map(|v| {
                let m: FieldMatrix = self
                    .unflatten(v)
                    .into_iter()
                    .enumerate()
                    .map(|(k, x)| match (k / r == last, k % r == last) {
                        (false, true) => f.mul(&x, alpha),
                        (true, false) => f.mul(&inv, &x),
                        _ => x,
                    })
                    .collect();
                flatten(f, &m)
            })
            .collect();
        Ok(Lattice::from_rat_rows(self.lattice.dim(), &rows))
    }
}

pub fn verify_ring_closure(order: &LambdaOrder) -> bool {
    order.closure_violation().is_none()
}

/// Field embedding `O_F -> O_L` given by the image of `beta_F`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: NumberFieldSpec,
    pub target: NumberFieldSpec,
    pub beta_image: FieldElement,
}

impl Embedding {
    pub fn new(source: &NumberFieldSpec, target: &NumberFieldSpec, beta_image: FieldElement) -> Result<Self> {
        let e = Embedding { source: source.clone(), target: target.clone(), beta_image };
        let g = source.defining_poly().coeffs();
        let at = g.iter().rev().fold(target.zero(), |acc, c| target.add(&target.mul(&acc, &e.beta_image), &target.from_int(c)));
        if !target.is_zero(&at) {
            return Err(Error::Declaration(format!("{} is not a root of the defining polynomial of {}", e.beta_image, source.label())));
        }
        Ok(e)
    }

    pub fn map(&self, x: &FieldElement) -> FieldElement {
        let t = &self.target;
        x.coeffs().iter().rev().fold(t.zero(), |acc, c| t.add(&t.mul(&acc, &self.beta_image), &t.element_from_rationals(std::slice::from_ref(c))))
    }

    /// `a O_L`.
    pub fn extend_ideal(&self, a: &Ideal) -> Result<Ideal> {
        let gens: Vec<FieldElement> = a.z_basis(&self.source).iter().map(|x| self.map(x)).collect();
        Ideal::from_generators(&self.target, &gens)
    }
}

/// `Lambda_{a,r} (x) O_L = Lambda_{a O_L, r}`.
pub fn extend_scalars(order: &LambdaOrder, embedding: Option<&Embedding>) -> Result<LambdaOrder> {
    let e = embedding.ok_or_else(|| Error::Precondition("missing embedding data for the scalar extension".into()))?;
    if e.source.defining_poly() != order.field.defining_poly() {
        return Err(Error::Precondition("embedding source does not match the order's field".into()));
    }
    lambda_order(&e.target, &e.extend_ideal(&order.ideal)?, order.size)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    pub alpha: FieldElement,
    /// `(alpha) = a`.
    pub generates: bool,
    /// `|N(alpha)| = N(a)`.
    pub norm_matches: bool,
    /// `D^{-1} Lambda D` is contained in `Mat_r(O)`.
    pub forward: bool,
    /// `Mat_r(O)` is contained in `D^{-1} Lambda D`.
    pub backward: bool,
}

impl IsoCertificate {
    pub fn passed(&self) -> bool {
        self.generates && self.forward && self.backward
    }
}

/// `Mat_r(O)` as a lattice.
pub fn full_matrix_lattice(field: &NumberFieldSpec, r: usize) -> Lattice {
    let o = Ideal::unit(field);
    block_lattice(field, &o, o.clone(), o.clone(), r).expect("r >= 1").lattice
}

pub fn matrix_ring_iso_certificate(order: &LambdaOrder, alpha: &FieldElement) -> Result<IsoCertificate> {
    let f = &order.field;
    if f.is_zero(alpha) {
        return Err(Error::Input("conjugator must be nonzero".into()));
    }
    let generates = Ideal::principal(f, alpha)? == order.ideal;
    let norm_matches = f.norm(alpha).abs() == order.ideal.norm();
    let conj = order.conjugated(alpha)?;
    let full = full_matrix_lattice(f, order.size);
    Ok(IsoCertificate {
        alpha: alpha.clone(),
        generates,
        norm_matches,
        forward: full.contains_lattice(&conj),
        backward: conj.contains_lattice(&full),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoritaRank {
    /// Rank over `O` of a free module of rank `t` over `Mat_r(O)`.
    pub o_rank: u64,
    pub recovered: u64,
}

pub fn morita_rank(r: u64, t: u64) -> Result<MoritaRank> {
    if r == 0 || t == 0 {
        return Err(Error::Input("ranks must be positive".into()));
    }
    let o_rank = r.checked_mul(t).ok_or_else(|| Error::Input("rank overflow".into()))?;
    Ok(MoritaRank { o_rank, recovered: o_rank / r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::quadratic::quadratic_field;

    fn q() -> NumberFieldSpec {
        NumberFieldSpec::rationals()
    }

    #[test]
    fn rational_orders() {
        let o = Ideal::unit(&q());
        let l = lambda_order(&q(), &o, 2).unwrap();
        assert_eq!(l.lattice(), &full_matrix_lattice(&q(), 2));
        assert!(verify_ring_closure(&l) && l.contains_identity());
        let three = Ideal::principal(&q(), &q().element(&[3])).unwrap();
        let l = lambda_order(&q(), &three, 1).unwrap();
        assert_eq!(l.lattice(), &full_matrix_lattice(&q(), 1));
        assert!(lambda_order(&q(), &o, 0).is_err());
    }

    #[test]
    fn non_principal_ideal_order() {
        let f = quadratic_field(&(-5).into()).unwrap();
        let a = Ideal::from_generators(&f, &[f.element(&[2, 0]), f.element(&[1, 1])]).unwrap();
        let l = lambda_order(&f, &a, 2).unwrap();
        assert_eq!(l.basis().len(), 8);
        assert!(verify_ring_closure(&l));
        let bad = block_lattice(&f, &a, a.inverse(&f), a.inverse(&f), 2).unwrap();
        assert!(bad.closure_violation().is_some());
    }

    #[test]
    fn conjugation_by_two() {
        let two = q().element(&[2]);
        let l = lambda_order(&q(), &Ideal::principal(&q(), &two).unwrap(), 2).unwrap();
        let c = matrix_ring_iso_certificate(&l, &two).unwrap();
        assert!(c.passed() && c.norm_matches);
        let bad = matrix_ring_iso_certificate(&l, &q().element(&[4])).unwrap();
        assert!(!bad.passed() && !bad.forward);
        assert!(c.alpha.coeffs()[0].is_positive());
    }

    #[test]
    fn wrong_generator_fails() {
        let f = quadratic_field(&(-5).into()).unwrap();
        let alpha = f.element(&[1, 1]);
        let a = Ideal::from_generators(&f, &[f.element(&[2, 0]), alpha.clone()]).unwrap();
        let c = matrix_ring_iso_certificate(&lambda_order(&f, &a, 2).unwrap(), &alpha).unwrap();
        assert!(!c.generates && !c.norm_matches && !c.passed());
    }

    #[test]
    fn morita() {
        assert_eq!(morita_rank(3, 2).unwrap(), MoritaRank { o_rank: 6, recovered: 2 });
        assert!(morita_rank(0, 2).is_err());
    }
}
