//! Finite rings `O_F/N` and `O_F[X]/(f)` mod `N`, with multiplication-matrix arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::matrix::IntMatrix;
use crate::arith::normal_form::snf;
use crate::arith::ring::Ring;
use crate::error::{Error, Result};
use crate::field::spec::{mul_int_mod_g, FieldElement, NumberFieldSpec};

/// Elements are integer vectors of length `d * k`; index `j * d + i` holds the
/// coefficient of `beta^i X^j`, reduced into `[0, N)`.
#[derive(Clone, Debug)]
pub struct ResidueRing {
    field: NumberFieldSpec,
    modulus: BigInt,
    /// Monic extension polynomial over `O_F`, as integer coefficient vectors.
    ext: Option<Vec<Vec<BigInt>>>,
}

pub type ResidueElem = Vec<BigInt>;

impl ResidueRing {
    pub fn new(field: &NumberFieldSpec, modulus: BigInt) -> Result<Self> {
        if modulus < BigInt::from(2) {
            return Err(Error::Input(format!("modulus must be >= 2, got {modulus}")));
        }
        Ok(ResidueRing { field: field.clone(), modulus, ext: None })
    }

    /// `O_F[X]/(f)` mod `N`; `f` must be monic with integral coefficients.
    pub fn with_extension(field: &NumberFieldSpec, f: &[FieldElement], modulus: BigInt) -> Result<Self> {
        let mut ring = Self::new(field, modulus)?;
        if f.len() < 2 || f.last() != Some(&field.one()) {
            return Err(Error::NotMonic("extension polynomial".into()));
        }
        let coeffs = f.iter().map(FieldElement::try_ints).collect::<Result<Vec<_>>>()?;
        ring.ext = Some(coeffs);
        Ok(ring)
    }

    pub fn field(&self) -> &NumberFieldSpec {
        &self.field
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// Number of `O_F`-coefficients per element, `deg f` (1 without extension).
    pub fn ext_degree(&self) -> usize {
        self.ext.as_ref().map_or(1, |f| f.len() - 1)
    }

    /// Rank over `Z/N`.
    pub fn rank(&self) -> usize {
        self.field.degree() * self.ext_degree()
    }

    pub fn cardinality(&self) -> BigInt {
        num_traits::pow(self.modulus.clone(), self.rank())
    }

    pub fn reduce(&self, mut v: ResidueElem) -> ResidueElem {
        for x in v.iter_mut() {
            *x = x.mod_floor(&self.modulus);
        }
        v
    }

    pub fn from_ints(&self, coeffs: &[BigInt]) -> ResidueElem {
        let mut v = coeffs.to_vec();
        v.resize(self.rank(), BigInt::zero());
        self.reduce(v)
    }

    pub fn from_field(&self, x: &FieldElement) -> Result<ResidueElem> {
        Ok(self.from_ints(&x.try_ints()?))
    }

    pub fn basis_vector(&self, k: usize) -> ResidueElem {
        let mut v = vec![BigInt::zero(); self.rank()];
        v[k] = BigInt::one();
        v
    }

    /// Multiplication-by-`x` on the `Z/N` basis; column `k` holds `x * e_k`.
    pub fn mul_matrix(&self, x: &ResidueElem) -> IntMatrix {
        let n = self.rank();
        let cols: Vec<ResidueElem> = (0..n).map(|k| self.mul(x, &self.basis_vector(k))).collect();
        IntMatrix::from_fn(n, n, |i, j| cols[j][i].clone())
    }

    pub fn is_unit(&self, x: &ResidueElem) -> bool {
        self.mul_matrix(x).det().gcd(&self.modulus).is_one()
    }

    /// Solves `M_x y = e_1 (mod N)` through the Smith form of `M_x`.
    pub fn invert(&self, x: &ResidueElem) -> Result<ResidueElem> {
        let m = self.mul_matrix(x);
        let s = snf(&m);
        let n = self.rank();
        // D z = U e_1, y = V z
        let mut z = Vec::with_capacity(n);
        for i in 0..n {
            let d = &s.invariant_factors[i];
            let g = d.gcd(&self.modulus);
            if !g.is_one() {
                return Err(Error::NotAUnit { witness: format!("invariant factor {d} shares {g} with {}", self.modulus) });
            }
            let di = mod_inverse(d, &self.modulus).expect("coprime");
            z.push((&s.u[(i, 0)] * di).mod_floor(&self.modulus));
        }
        let y: Vec<BigInt> = (0..n).map(|i| (0..n).map(|j| &s.v[(i, j)] * &z[j]).sum()).collect();
        let y = self.reduce(y);
        debug_assert!(self.is_one(&self.mul(x, &y)));
        Ok(y)
    }

    /// Every element, in lexicographic order of coefficient vectors (`beta^0` slowest).
    pub fn elements(&self, cap: u64) -> Result<Vec<ResidueElem>> {
        let card = self.cardinality();
        if card > BigInt::from(cap) {
            return Err(Error::ResourceLimit(format!("ring of size {card} exceeds cap {cap}")));
        }
        let n = self.rank();
        let m: u64 = (&self.modulus).try_into().expect("small modulus");
        let total: u64 = (&card).try_into().unwrap();
        let mut out = Vec::with_capacity(total as usize);
        let mut digits = vec![0u64; n];
        for _ in 0..total {
            out.push(digits.iter().map(|&x| BigInt::from(x)).collect());
            for k in (0..n).rev() {
                digits[k] += 1;
                if digits[k] < m {
                    break;
                }
                digits[k] = 0;
            }
        }
        Ok(out)
    }

    fn mul_unreduced(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let g = self.field.g_coeffs();
        let d = self.field.degree();
        let Some(f) = &self.ext else {
            return mul_int_mod_g(g, a, b);
        };
        let k = f.len() - 1;
        let blocks = |v: &[BigInt]| -> Vec<Vec<BigInt>> { v.chunks(d).map(<[BigInt]>::to_vec).collect() };
        let (ab, bb) = (blocks(a), blocks(b));
        let mut prod = vec![vec![BigInt::zero(); d]; 2 * k - 1];
        for (i, x) in ab.iter().enumerate() {
            if x.iter().all(Zero::is_zero) {
                continue;
            }
            for (j, y) in bb.iter().enumerate() {
                if y.iter().all(Zero::is_zero) {
                    continue;
                }
                let xy = mul_int_mod_g(g, x, y);
                for (p, q) in prod[i + j].iter_mut().zip(xy) {
                    *p += q;
                }
            }
        }
        for top in (k..prod.len()).rev() {
            let c = std::mem::take(&mut prod[top]);
            if c.iter().all(Zero::is_zero) {
                continue;
            }
            for (j, fj) in f.iter().take(k).enumerate() {
                let t = mul_int_mod_g(g, &c, fj);
                for (p, q) in prod[top - k + j].iter_mut().zip(t) {
                    *p -= q;
                }
            }
        }
        prod.truncate(k);
        prod.into_iter().flatten().collect()
    }
}

/// Inverse of `a` modulo `n`, if it exists, in `[0, n)`.
pub fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(n).extended_gcd(n);
    e.gcd.is_one().then(|| e.x.mod_floor(n))
}

impl Ring for ResidueRing {
    type Elem = ResidueElem;

    fn zero(&self) -> ResidueElem {
        vec![BigInt::zero(); self.rank()]
    }

    fn one(&self) -> ResidueElem {
        self.basis_vector(0)
    }

    fn from_int(&self, n: &BigInt) -> ResidueElem {
        let mut v = self.zero();
        v[0] = n.mod_floor(&self.modulus);
        v
    }

    fn add(&self, a: &ResidueElem, b: &ResidueElem) -> ResidueElem {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    fn neg(&self, a: &ResidueElem) -> ResidueElem {
        self.reduce(a.iter().map(|x| -x).collect())
    }

    fn mul(&self, a: &ResidueElem, b: &ResidueElem) -> ResidueElem {
        self.reduce(self.mul_unreduced(a, b))
    }

    fn inv(&self, a: &ResidueElem) -> Option<ResidueElem> {
        self.invert(a).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::IntPoly;
    use crate::field::spec::{make_field, Declarations};

    fn z_mod(n: i64) -> ResidueRing {
        ResidueRing::new(&NumberFieldSpec::rationals(), n.into()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn inverse_mod_nine() {
        let r = z_mod(9);
        assert_eq!(r.invert(&ints(&[2])).unwrap(), ints(&[5]));
    }

    #[test]
    fn two_is_not_a_unit_mod_eight() {
        let r = z_mod(8);
        assert!(matches!(r.invert(&ints(&[2])), Err(Error::NotAUnit { .. })));
        assert!(!r.is_unit(&ints(&[2])));
    }

    #[test]
    fn field_with_four_elements() {
        // (Z/2)[X]/(X^2+X+1) as Z[beta]/(2) with g = X^2+X+1
        let g = IntPoly::from_i64(&[1, 1, 1]);
        let f = make_field(g, Declarations::default()).unwrap();
        let r = ResidueRing::new(&f, 2.into()).unwrap();
        let x = ints(&[0, 1]);
        assert_eq!(r.invert(&x).unwrap(), ints(&[1, 1]));
        // exhaustive: every nonzero element is a unit and inverts correctly
        for e in r.elements(100).unwrap() {
            if r.is_zero(&e) {
                assert!(r.invert(&e).is_err());
            } else {
                assert!(r.is_one(&r.mul(&e, &r.invert(&e).unwrap())));
            }
        }
    }

    #[test]
    fn extension_ring_multiplication() {
        // (Z/5)[X]/(X^2 - 2): X * X = 2
        let q = NumberFieldSpec::rationals();
        let f = vec![q.from_i64(-2), q.zero(), q.one()];
        let r = ResidueRing::with_extension(&q, &f, 5.into()).unwrap();
        assert_eq!(r.ext_degree(), 2);
        assert_eq!(r.mul(&ints(&[0, 1]), &ints(&[0, 1])), ints(&[2, 0]));
        let inv = r.invert(&ints(&[0, 1])).unwrap();
        assert_eq!(inv, ints(&[0, 3]));
        assert_eq!(r.cardinality(), BigInt::from(25));
    }

    #[test]
    fn modulus_checked() {
        assert!(ResidueRing::new(&NumberFieldSpec::rationals(), 1.into()).is_err());
    }
}
