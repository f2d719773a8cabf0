//! Units congruent to `u` modulo `m` in an extension unramified above `m`.
//!
//! For `(u, m) = 1` pick `t` with `u^t = 1 mod m^2`, `m | t`, `t >= m + 4`, solve
//! `a u^{t-1} + b m^t = (1 - u^t)/m`, set `c = a - m^{t-1}`, `d = bm + u^{t-1}` and
//!
//! ```text
//! f(X) = X^t + c X^{t-1} - m X^{m+2} + u X^{m+1} + d.
//! ```
//!
//! Then `m^t f(u/m) = 1`, so `eps = u - mX` is a unit of `O_F[X]/(f)`, and
//! `f' = u X^m mod m` makes `f` separable modulo every prime above `m`.

mod unramified;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::ring::Ring;
use crate::arith::sparse::SparseMatrix;
use crate::error::{Error, Result};
use crate::field::ideal::coprime_to_integer;
use crate::field::residue::ResidueRing;
use crate::field::spec::{FieldElement, NumberFieldSpec};

pub use unramified::separable_above;

/// Integral element of `O_F` as integer coordinates.
type Coords = Vec<BigInt>;

fn int_pow(field: &NumberFieldSpec, x: &[BigInt], mut e: u64) -> Coords {
    let mut acc = field.one().to_ints().unwrap();
    let mut base = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = field.integral_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = field.integral_mul(&base, &base);
        }
    }
    acc
}

fn add(a: &[BigInt], b: &[BigInt]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(c: &BigInt, a: &[BigInt]) -> Coords {
    a.iter().map(|x| c * x).collect()
}

fn div_exact(a: &[BigInt], n: &BigInt) -> Option<Coords> {
    a.iter()
        .map(|x| {
            let (q, r) = x.div_rem(n);
            r.is_zero().then_some(q)
        })
        .collect()
}

fn constant(field: &NumberFieldSpec, n: &BigInt) -> Coords {
    field.from_int(n).to_ints().unwrap()
}

fn coords(field: &NumberFieldSpec, x: &FieldElement) -> Result<Coords> {
    let v = x.try_ints()?;
    if v.len() != field.degree() {
        return Err(Error::Input(format!("{x} has the wrong number of coefficients")));
    }
    Ok(v)
}

fn check_modulus(m: u64) -> Result<BigInt> {
    if m < 2 {
        return Err(Error::Input(format!("modulus must be >= 2, got {m}")));
    }
    Ok(BigInt::from(m))
}

/// Smallest multiple of `lcm(ord(u mod m^2), m)` that is at least `m + 4`.
pub fn choose_t(field: &NumberFieldSpec, m: u64, u: &FieldElement) -> Result<u64> {
    let mb = check_modulus(m)?;
    let ring = ResidueRing::new(field, &mb * &mb)?;
    let ur = ring.from_field(u)?;
    if !ring.is_unit(&ur) {
        return Err(Error::NotCoprime { u: u.to_string(), m: mb });
    }
    let cap = ring.cardinality();
    let mut p = ur.clone();
    let mut ord: u64 = 1;
    while !ring.is_one(&p) {
        p = ring.mul(&p, &ur);
        ord += 1;
        if BigInt::from(ord) > cap {
            return Err(Error::Invariant("multiplicative order exceeds ring size".into()));
        }
    }
    let step = ord.lcm(&m);
    Ok(step * (m + 4).div_ceil(step))
}

/// `(a, b)` with `a u^{t-1} + b m^t = (1 - u^t)/m`, `a` reduced into `[0, m^t)`.
pub fn bezout_lift(field: &NumberFieldSpec, m: u64, u: &FieldElement, t: u64) -> Result<(FieldElement, FieldElement)> {
    let mb = check_modulus(m)?;
    let uc = coords(field, u)?;
    let ut1 = int_pow(field, &uc, t - 1);
    let ut = field.integral_mul(&ut1, &uc);
    let one = constant(field, &BigInt::one());
    let w = div_exact(&sub(&one, &ut), &mb)
        .ok_or_else(|| Error::Invariant("(1 - u^t)/m is not integral; u^t != 1 mod m".into()))?;
    let mt = num_traits::pow(mb.clone(), t as usize);
    let ring = ResidueRing::new(field, mt.clone())?;
    let inv = ring.invert(&ring.from_ints(&ut1))?;
    let a = ring.mul(&ring.from_ints(&w), &inv);
    let b = div_exact(&sub(&w, &field.integral_mul(&a, &ut1)), &mt)
        .ok_or_else(|| Error::Invariant("b = ((1 - u^t)/m - a u^{t-1}) / m^t is not integral".into()))?;
    if add(&field.integral_mul(&a, &ut1), &scale(&mt, &b)) != w {
        return Err(Error::Invariant("a u^{t-1} + b m^t != (1 - u^t)/m".into()));
    }
    Ok((FieldElement::from_ints(&a), FieldElement::from_ints(&b)))
}

/// `c = a - m^{t-1}`, `d = b m + u^{t-1}`, with `c u^{t-1} + d m^{t-1} = (1-u^t)/m`,
/// `m | c` and `(d, m) = 1` verified.
pub fn cd_transform(
    field: &NumberFieldSpec,
    a: &FieldElement,
    b: &FieldElement,
    m: u64,
    t: u64,
    u: &FieldElement,
) -> Result<(FieldElement, FieldElement)> {
    let mb = check_modulus(m)?;
    let (ac, bc, uc) = (coords(field, a)?, coords(field, b)?, coords(field, u)?);
    let mt1 = num_traits::pow(mb.clone(), t as usize - 1);
    let ut1 = int_pow(field, &uc, t - 1);
    let ut = field.integral_mul(&ut1, &uc);
    let c = sub(&ac, &constant(field, &mt1));
    let d = add(&scale(&mb, &bc), &ut1);
    let lhs = add(&field.integral_mul(&c, &ut1), &scale(&mt1, &d));
    let rhs = div_exact(&sub(&constant(field, &BigInt::one()), &ut), &mb);
    if rhs.as_ref() != Some(&lhs) {
        return Err(Error::Invariant("c u^{t-1} + d m^{t-1} != (1 - u^t)/m".into()));
    }
    let (c, d) = (FieldElement::from_ints(&c), FieldElement::from_ints(&d));
    if !divisible_by(&c, &mb) {
        return Err(Error::Invariant("m does not divide c".into()));
    }
    if !coprime_to_integer(field, &d, &mb) {
        return Err(Error::Invariant("(d) + (m) != O_F".into()));
    }
    Ok((c, d))
}

fn divisible_by(x: &FieldElement, m: &BigInt) -> bool {
    x.to_ints().is_some_and(|v| v.iter().all(|c| c.is_multiple_of(m)))
}

/// `X^t + c X^{t-1} - m X^{m+2} + u X^{m+1} + d`, ascending.
pub fn build_poly(
    field: &NumberFieldSpec,
    c: &FieldElement,
    d: &FieldElement,
    m: u64,
    u: &FieldElement,
    t: u64,
) -> Result<Vec<FieldElement>> {
    if t < m + 4 {
        return Err(Error::Precondition(format!("t = {t} < m + 4 = {}", m + 4)));
    }
    let (t, mu) = (t as usize, m as usize);
    let mut f = vec![field.zero(); t + 1];
    f[t] = field.one();
    f[t - 1] = c.clone();
    f[mu + 2] = field.from_int(&-BigInt::from(m));
    f[mu + 1] = u.clone();
    f[0] = d.clone();
    Ok(f)
}

fn poly_coords(field: &NumberFieldSpec, f: &[FieldElement]) -> Result<Vec<Coords>> {
    f.iter().map(|c| coords(field, c)).collect()
}

/// `m^t f(u/m) = sum f_k u^k m^{t-k}`, by Horner's rule in `O_F`.
pub fn product_value(field: &NumberFieldSpec, f: &[FieldElement], m: u64, u: &FieldElement) -> Result<FieldElement> {
    let fc = poly_coords(field, f)?;
    let uc = coords(field, u)?;
    let mb = BigInt::from(m);
    let t = fc.len() - 1;
    let mut acc = fc[t].clone();
    let mut mpow = BigInt::one();
    for k in (0..t).rev() {
        mpow *= &mb;
        acc = field.integral_mul(&acc, &uc);
        if fc[k].iter().any(|x| !x.is_zero()) {
            acc = add(&acc, &scale(&mpow, &fc[k]));
        }
    }
    Ok(FieldElement::from_ints(&acc))
}

pub fn verify_product_one(field: &NumberFieldSpec, f: &[FieldElement], m: u64, u: &FieldElement) -> bool {
    product_value(field, f, m, u).is_ok_and(|v| field.is_one(&v))
}

/// Exact product in `O_F[X]/(f)` for monic `f`; operands have `deg f` coefficients.
pub fn mul_mod_monic(field: &NumberFieldSpec, a: &[Coords], b: &[Coords], f: &[Coords]) -> Vec<Coords> {
    let t = f.len() - 1;
    let d = field.degree();
    let zero = vec![BigInt::zero(); d];
    let is_zero = |v: &Coords| v.iter().all(Zero::is_zero);
    let mut prod = vec![zero.clone(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        if is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !is_zero(y) {
                prod[i + j] = add(&prod[i + j], &field.integral_mul(x, y));
            }
        }
    }
    for top in (t..prod.len()).rev() {
        let c = std::mem::replace(&mut prod[top], zero.clone());
        if is_zero(&c) {
            continue;
        }
        for (j, fj) in f.iter().take(t).enumerate() {
            if !is_zero(fj) {
                prod[top - t + j] = sub(&prod[top - t + j], &field.integral_mul(&c, fj));
            }
        }
    }
    prod.truncate(t);
    prod.resize(t, zero);
    prod
}

/// The unit `eps = u - mX` of `A_f = O_F[X]/(f)` and its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCertificate {
    /// Coefficients of `eps` in `X`, padded to `deg f`.
    pub epsilon: Vec<FieldElement>,
    pub inverse: Vec<FieldElement>,
    /// Determinant over Z of multiplication by `eps` on `A_f`.
    pub determinant: BigInt,
    pub inverse_verified: bool,
    pub congruence: bool,
}

impl UnitCertificate {
    pub fn is_unit(&self) -> bool {
        self.determinant.abs().is_one() && self.inverse_verified
    }
}

/// Sparse multiplication matrix of `x` on the Z-basis `beta^i X^j` of `A_f`
/// (column `j d + i`).
pub fn algebra_mul_matrix(field: &NumberFieldSpec, x: &[Coords], f: &[Coords]) -> SparseMatrix {
    let t = f.len() - 1;
    let d = field.degree();
    let n = t * d;
    let mut cols = Vec::with_capacity(n);
    for j in 0..t {
        for i in 0..d {
            let mut e = vec![vec![BigInt::zero(); d]; t];
            e[j][i] = BigInt::one();
            let img = mul_mod_monic(field, x, &e, f);
            let col: Vec<(usize, BigInt)> = img
                .into_iter()
                .enumerate()
                .flat_map(|(jj, v)| v.into_iter().enumerate().map(move |(ii, c)| (jj * d + ii, c)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            cols.push(col);
        }
    }
    SparseMatrix::from_columns(n, &cols)
}

/// Inverse of `u - mX` modulo monic `f`: from `m^t (f(X) - f(u/m)) = (mX - u) S(X)`,
/// `S = sum m^k Q_k X^k` with `Q_{t-1} = 1`, `Q_{k-1} = m^{t-k} f_k + u Q_k`,
/// we get `(u - mX) S = m^t f(u/m)`, which is 1 for a valid certificate.
fn epsilon_inverse(field: &NumberFieldSpec, fc: &[Coords], m: &BigInt, uc: &[BigInt]) -> Vec<Coords> {
    let t = fc.len() - 1;
    let mut q = vec![Vec::new(); t];
    q[t - 1] = constant(field, &BigInt::one());
    let mut mpow = m.clone();
    for k in (1..t).rev() {
        q[k - 1] = add(&scale(&mpow, &fc[k]), &field.integral_mul(uc, &q[k]));
        mpow *= m;
    }
    let mut mk = BigInt::one();
    q.into_iter()
        .map(|qk| {
            let s = scale(&mk, &qk);
            mk *= m;
            s
        })
        .collect()
}

pub fn unit_certificate(field: &NumberFieldSpec, f: &[FieldElement], m: u64, u: &FieldElement) -> Result<UnitCertificate> {
    let fc = poly_coords(field, f)?;
    if fc.len() < 2 || fc.last() != Some(&constant(field, &BigInt::one())) {
        return Err(Error::NotMonic("f".into()));
    }
    let t = fc.len() - 1;
    let mb = BigInt::from(m);
    let uc = coords(field, u)?;
    let d = field.degree();
    let mut eps = vec![vec![BigInt::zero(); d]; t];
    eps[0] = uc.clone();
    if t > 1 {
        eps[1] = constant(field, &-mb.clone());
    } else {
        // X = -f_0 when t = 1
        eps[0] = add(&uc, &field.integral_mul(&constant(field, &mb), &fc[0]));
    }
    let inv = epsilon_inverse(field, &fc, &mb, &uc);
    let mut one = vec![vec![BigInt::zero(); d]; t];
    one[0] = constant(field, &BigInt::one());
    let inverse_verified = mul_mod_monic(field, &eps, &inv, &fc) == one;
    let determinant = algebra_mul_matrix(field, &eps, &fc).det();
    let mut diff = eps.clone();
    diff[0] = sub(&diff[0], &uc);
    let congruence = diff.iter().flatten().all(|c| c.is_multiple_of(&mb));
    let to_elems = |v: Vec<Coords>| v.iter().map(|c| FieldElement::from_ints(c)).collect::<Vec<_>>();
    Ok(UnitCertificate { epsilon: to_elems(eps), inverse: to_elems(inv), determinant, inverse_verified, congruence })
}

/// `Res(f, f')` is a unit in `O_F/m`: `f` is separable modulo every prime above `m`.
pub fn verify_unramified(field: &NumberFieldSpec, f: &[FieldElement], m: u64) -> bool {
    match poly_coords(field, f) {
        Ok(fc) => fc.last().is_some_and(|l| l == &constant(field, &BigInt::one())) && separable_above(field.g_coeffs(), &fc, m),
        Err(_) => false,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CapitulationChecks {
    pub product_one: bool,
    pub congruence: bool,
    pub unit: bool,
    pub unramified: bool,
    pub c_divisible: bool,
    pub d_coprime: bool,
}

impl CapitulationChecks {
    pub fn all_pass(&self) -> bool {
        self.product_one && self.congruence && self.unit && self.unramified && self.c_divisible && self.d_coprime
    }

    pub fn named(&self) -> [(&'static str, bool); 6] {
        [
            ("product_one", self.product_one),
            ("congruence", self.congruence),
            ("unit", self.unit),
            ("unramified", self.unramified),
            ("c_divisible", self.c_divisible),
            ("d_coprime", self.d_coprime),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapitulationCertificate {
    pub m: u64,
    pub u: FieldElement,
    pub t: u64,
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
    /// Ascending coefficients, `t + 1` of them.
    pub f: Vec<FieldElement>,
    pub unit: UnitCertificate,
    /// `m^t f(u/m)`.
    pub product_value: FieldElement,
    pub checks: CapitulationChecks,
}

impl CapitulationCertificate {
    /// Recomputes every flag from the stored data.
    pub fn recheck(&self, field: &NumberFieldSpec) -> CapitulationChecks {
        let mb = BigInt::from(self.m);
        let inverse_ok = (|| -> Result<bool> {
            let fc = poly_coords(field, &self.f)?;
            let eps = poly_coords(field, &self.unit.epsilon)?;
            let inv = poly_coords(field, &self.unit.inverse)?;
            let mut one = vec![vec![BigInt::zero(); field.degree()]; fc.len() - 1];
            one[0] = constant(field, &BigInt::one());
            Ok(mul_mod_monic(field, &eps, &inv, &fc) == one)
        })()
        .unwrap_or(false);
        let fresh = unit_certificate(field, &self.f, self.m, &self.u).ok();
        CapitulationChecks {
            product_one: verify_product_one(field, &self.f, self.m, &self.u),
            congruence: fresh.as_ref().is_some_and(|c| c.congruence && c.epsilon == self.unit.epsilon),
            unit: inverse_ok && fresh.as_ref().is_some_and(|c| c.determinant.abs().is_one()),
            unramified: verify_unramified(field, &self.f, self.m),
            c_divisible: divisible_by(&self.c, &mb),
            d_coprime: coprime_to_integer(field, &self.d, &mb),
        }
    }
}

/// Runs the whole construction for `(F, m, u)` and records every check.
pub fn capitulation_extension(field: &NumberFieldSpec, m: u64, u: &FieldElement) -> Result<CapitulationCertificate> {
    let t = choose_t(field, m, u)?;
    let (a, b) = bezout_lift(field, m, u, t)?;
    let (c, d) = cd_transform(field, &a, &b, m, t, u)?;
    let f = build_poly(field, &c, &d, m, u, t)?;
    let product_value = product_value(field, &f, m, u)?;
    let unit = unit_certificate(field, &f, m, u)?;
    let mb = BigInt::from(m);
    let checks = CapitulationChecks {
        product_one: field.is_one(&product_value),
        congruence: unit.congruence,
        unit: unit.is_unit(),
        unramified: verify_unramified(field, &f, m),
        c_divisible: divisible_by(&c, &mb),
        d_coprime: coprime_to_integer(field, &d, &mb),
    };
    Ok(CapitulationCertificate { m, u: u.clone(), t, a, b, c, d, f, unit, product_value, checks })
}
