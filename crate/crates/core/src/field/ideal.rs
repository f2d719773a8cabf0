//! Fractional ideals of `Z[beta]` as full-rank lattices in the power basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::lattice::Lattice;
use crate::arith::matrix::IntMatrix;
use crate::arith::normal_form::hnf;
use crate::arith::ring::Ring;
use crate::error::{Error, Result};
use crate::field::spec::{FieldElement, NumberFieldSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    lattice: Lattice,
}

/// Outcome of a bounded principality search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrincipalSearch {
    Principal(FieldElement),
    /// The search box is provably complete and holds no generator.
    CertifiedNonPrincipal,
    Inconclusive,
}

impl Ideal {
    /// The `O_F`-ideal generated by `gens`.
    pub fn from_generators(field: &NumberFieldSpec, gens: &[FieldElement]) -> Result<Self> {
        let d = field.degree();
        let mut rows = Vec::with_capacity(gens.len() * d);
        for g in gens {
            for j in 0..d {
                rows.push(field.mul(g, &field.beta_power(j)).coeffs().to_vec());
            }
        }
        let lattice = Lattice::from_rat_rows(d, &rows);
        if lattice.rank() != d {
            return Err(Error::Input("zero ideal".into()));
        }
        Ok(Ideal { lattice })
    }

    pub fn principal(field: &NumberFieldSpec, x: &FieldElement) -> Result<Self> {
        Self::from_generators(field, std::slice::from_ref(x))
    }

    pub fn unit(field: &NumberFieldSpec) -> Self {
        Self::principal(field, &field.one()).expect("nonzero")
    }

    /// From a Z-basis; rejects lattices that are not `O_F`-modules.
    pub fn from_z_basis(field: &NumberFieldSpec, basis: &[FieldElement]) -> Result<Self> {
        let rows: Vec<Vec<BigRational>> = basis.iter().map(|b| b.coeffs().to_vec()).collect();
        let lattice = Lattice::from_rat_rows(field.degree(), &rows);
        if lattice.rank() != field.degree() {
            return Err(Error::Input("ideal basis is not of full rank".into()));
        }
        let ideal = Ideal { lattice };
        if !ideal.is_beta_closed(field) {
            return Err(Error::Input("lattice is not closed under multiplication by beta".into()));
        }
        Ok(ideal)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// HNF rows of `denominator * I`.
    pub fn hnf(&self) -> &IntMatrix {
        self.lattice.scaled_basis()
    }

    pub fn denominator(&self) -> &BigInt {
        self.lattice.denominator()
    }

    pub fn z_basis(&self, field: &NumberFieldSpec) -> Vec<FieldElement> {
        self.lattice.basis().into_iter().map(|v| field.element_from_rationals(&v)).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.lattice.is_integral()
    }

    pub fn norm(&self) -> BigRational {
        self.lattice.covolume()
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        self.lattice.contains(x.coeffs())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        self.lattice.contains_lattice(&other.lattice)
    }

    pub fn is_beta_closed(&self, field: &NumberFieldSpec) -> bool {
        let beta = field.beta_power(1);
        self.z_basis(field).iter().all(|b| self.contains(&field.mul(b, &beta)))
    }

    pub fn is_unit_ideal(&self, field: &NumberFieldSpec) -> bool {
        *self == Self::unit(field)
    }

    pub fn mul(&self, field: &NumberFieldSpec, other: &Ideal) -> Ideal {
        let (a, b) = (self.z_basis(field), other.z_basis(field));
        let rows: Vec<Vec<BigRational>> =
            a.iter().flat_map(|x| b.iter().map(move |y| (x, y))).map(|(x, y)| field.mul(x, y).coeffs().to_vec()).collect();
        Ideal { lattice: Lattice::from_rat_rows(field.degree(), &rows) }
    }

    pub fn pow(&self, field: &NumberFieldSpec, k: u32) -> Ideal {
        (0..k).fold(Self::unit(field), |acc, _| acc.mul(field, self))
    }

    pub fn add(&self, other: &Ideal) -> Ideal {
        Ideal { lattice: self.lattice.sum(&other.lattice) }
    }

    pub fn scale(&self, field: &NumberFieldSpec, x: &FieldElement) -> Result<Ideal> {
        Ok(self.mul(field, &Self::principal(field, x)?))
    }

    /// `I^{-1} = {x : x I \subseteq O_F}`, computed as `(1/N) {x in O_F : x I \subseteq N O_F}`
    /// with `N` a nonzero integer in `I`.
    pub fn inverse(&self, field: &NumberFieldSpec) -> Ideal {
        let d = field.degree();
        // I = (1/k) J with J integral, so I^{-1} = k J^{-1}
        let k = self.denominator().clone();
        let jbasis = self.hnf().row_vecs();
        let n = self.hnf().det().abs();
        // row r: (beta^r j_1, ..., beta^r j_d | e_r), then N on the first block
        let w = d * d;
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(d + w);
        for r in 0..d {
            let br = field.beta_power(r).to_ints().unwrap();
            let mut row = Vec::with_capacity(w + d);
            for jb in &jbasis {
                row.extend(field.integral_mul(&br, jb));
            }
            let mut tail = vec![BigInt::zero(); d];
            tail[r] = BigInt::one();
            row.extend(tail);
            rows.push(row);
        }
        for c in 0..w {
            let mut row = vec![BigInt::zero(); w + d];
            row[c] = n.clone();
            rows.push(row);
        }
        let h = hnf(&IntMatrix::from_rows(rows));
        let kernel: Vec<Vec<BigRational>> = (0..h.rank())
            .map(|i| h.h.row(i))
            .filter(|row| row[..w].iter().all(Zero::is_zero))
            .map(|row| row[w..].iter().map(|x| BigRational::new(x * &k, n.clone())).collect())
            .collect();
        Ideal { lattice: Lattice::from_rat_rows(d, &kernel) }
    }
}

/// `(x) + (m) = O_F`.
pub fn coprime_to_integer(field: &NumberFieldSpec, x: &FieldElement, m: &BigInt) -> bool {
    let Ok(ix) = Ideal::principal(field, x) else {
        return false;
    };
    let im = Ideal::principal(field, &field.from_int(m)).expect("m nonzero");
    ix.add(&im).is_unit_ideal(field)
}

fn is_imaginary_quadratic(field: &NumberFieldSpec) -> bool {
    field.degree() == 2 && field.discriminant().is_negative()
}

/// Search for `alpha in I` with `|N(alpha)| = N(I)`.
///
/// For imaginary quadratic `Z[beta]`, `beta^2 + b beta + c = 0`, the norm form is
/// `x^2 - bxy + cy^2` and every solution lies in `y^2 <= 4N/(4c-b^2)`,
/// `|2x - by| <= 2 sqrt(N)`, so an exhausted box certifies non-principality.
/// Elsewhere the search runs over small coordinates in the ideal's Z-basis and
/// never certifies failure.
pub fn is_principal_by_search(field: &NumberFieldSpec, ideal: &Ideal, bound: u64) -> Result<PrincipalSearch> {
    if !ideal.is_integral() {
        return Err(Error::Precondition("principality search needs an integral ideal".into()));
    }
    let target = ideal.norm().to_integer();
    let matches = |x: &FieldElement| ideal.contains(x) && field.norm(x).abs().to_integer() == target;
    if field.is_rationals() {
        return Ok(PrincipalSearch::Principal(field.from_int(&target)));
    }
    if is_imaginary_quadratic(field) {
        let g = field.defining_poly().coeffs();
        let (c, b) = (&g[0], &g[1]);
        let disc_abs = BigInt::from(4) * c - b * b;
        let four_n = BigInt::from(4) * &target;
        let y_max = (&four_n / &disc_abs).sqrt();
        let s = four_n.sqrt() + 1;
        let box_size = (BigInt::from(2) * &y_max + 1) * (BigInt::from(2) * &s + 1);
        if box_size > BigInt::from(bound) {
            return Ok(PrincipalSearch::Inconclusive);
        }
        let mut y = -y_max.clone();
        while y <= y_max {
            // 2x in [by - s, by + s]
            let lo = num_integer::Integer::div_floor(&(b * &y - &s), &BigInt::from(2));
            let hi = num_integer::Integer::div_floor(&(b * &y + &s), &BigInt::from(2)) + 1;
            let mut x = lo;
            while x <= hi {
                let cand = field.element_from_ints(&[x.clone(), y.clone()]);
                if matches(&cand) {
                    return Ok(PrincipalSearch::Principal(cand));
                }
                x += 1;
            }
            y += 1;
        }
        return Ok(PrincipalSearch::CertifiedNonPrincipal);
    }
    let basis = ideal.z_basis(field);
    let d = basis.len();
    let mut radius: i64 = 1;
    loop {
        let side = (2 * radius + 1) as u64;
        let Some(count) = side.checked_pow(d as u32).filter(|&c| c <= bound) else {
            return Ok(PrincipalSearch::Inconclusive);
        };
        for idx in 0..count {
            let mut rest = idx;
            let mut coords = Vec::with_capacity(d);
            for _ in 0..d {
                coords.push((rest % side) as i64 - radius);
                rest /= side;
            }
            // only the shell; the interior was covered by smaller radii
            if radius > 1 && coords.iter().all(|c| c.abs() < radius) {
                continue;
            }
            let cand = coords.iter().zip(&basis).fold(field.zero(), |acc, (&c, b)| {
                field.add(&acc, &field.mul(&field.from_i64(c), b))
            });
            if !field.is_zero(&cand) && matches(&cand) {
                return Ok(PrincipalSearch::Principal(cand));
            }
        }
        radius += 1;
    }
}
