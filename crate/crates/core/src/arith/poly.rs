//! Dense univariate polynomials over any [`Ring`].
//!
//! Coefficients are stored in ascending degree order with no trailing zero;
//! the zero polynomial is the empty sequence.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::ring::{Integers, Rationals, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

impl<E: Clone> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// Builds a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn new<R: Ring<Elem = E>>(ring: &R, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant<R: Ring<Elem = E>>(ring: &R, c: E) -> Self {
        Self::new(ring, vec![c])
    }

    /// `c * X^k`.
    pub fn monomial<R: Ring<Elem = E>>(ring: &R, c: E, k: usize) -> Self {
        let mut v = vec![ring.zero(); k + 1];
        v[k] = c;
        Self::new(ring, v)
    }

    pub fn x<R: Ring<Elem = E>>(ring: &R) -> Self {
        Self::monomial(ring, ring.one(), 1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    /// Coefficient of `X^k` (zero beyond the degree).
    pub fn coeff<R: Ring<Elem = E>>(&self, ring: &R, k: usize) -> E {
        self.coeffs.get(k).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn map<R: Ring>(&self, target: &R, f: impl Fn(&E) -> R::Elem) -> Poly<R::Elem> {
        Poly::new(target, self.coeffs.iter().map(f).collect())
    }

    pub fn is_monic<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.leading().is_some_and(|c| ring.is_one(c))
    }
}

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(&Integers, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> RatPoly {
        self.map(&Rationals, |c| BigRational::from_integer(c.clone()))
    }
}

impl RatPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_i64(coeffs).to_rational()
    }
}

pub fn add<R: Ring>(ring: &R, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let v = (0..n)
        .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
            (Some(x), Some(y)) => ring.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    Poly::new(ring, v)
}

pub fn neg<R: Ring>(ring: &R, a: &Poly<R::Elem>) -> Poly<R::Elem> {
    Poly { coeffs: a.coeffs.iter().map(|c| ring.neg(c)).collect() }
}

pub fn sub<R: Ring>(ring: &R, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
    add(ring, a, &neg(ring, b))
}

pub fn scale<R: Ring>(ring: &R, c: &R::Elem, a: &Poly<R::Elem>) -> Poly<R::Elem> {
    Poly::new(ring, a.coeffs.iter().map(|x| ring.mul(c, x)).collect())
}

/// Schoolbook product; zero coefficients are skipped so sparse inputs stay cheap.
pub fn mul<R: Ring>(ring: &R, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut out = vec![ring.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if ring.is_zero(y) {
                continue;
            }
            out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
        }
    }
    Poly::new(ring, out)
}

pub fn derivative<R: Ring>(ring: &R, a: &Poly<R::Elem>) -> Poly<R::Elem> {
    let v = a
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ring.mul(&ring.from_int(&BigInt::from(i)), c))
        .collect();
    Poly::new(ring, v)
}

/// Horner evaluation.
pub fn eval<R: Ring>(ring: &R, a: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
    a.coeffs
        .iter()
        .rev()
        .fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, x), c))
}

/// Quotient and remainder; the divisor's leading coefficient must be a unit.
pub fn divrem<R: Ring>(
    ring: &R,
    a: &Poly<R::Elem>,
    b: &Poly<R::Elem>,
) -> Result<(Poly<R::Elem>, Poly<R::Elem>)> {
    let db = b.degree().ok_or(Error::NonInvertibleLeading)?;
    let lead_inv = ring.inv(b.leading().unwrap()).ok_or(Error::NonInvertibleLeading)?;
    let Some(da) = a.degree() else {
        return Ok((Poly::zero(), Poly::zero()));
    };
    if da < db {
        return Ok((Poly::zero(), a.clone()));
    }
    let mut rem = a.coeffs.clone();
    let mut quot = vec![ring.zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = &rem[k + db];
        if ring.is_zero(c) {
            continue;
        }
        let q = ring.mul(c, &lead_inv);
        for (j, bj) in b.coeffs.iter().enumerate() {
            if ring.is_zero(bj) {
                continue;
            }
            rem[k + j] = ring.sub(&rem[k + j], &ring.mul(&q, bj));
        }
        quot[k] = q;
    }
    rem.truncate(db);
    Ok((Poly::new(ring, quot), Poly::new(ring, rem)))
}

pub fn rem<R: Ring>(ring: &R, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
    divrem(ring, a, b).map(|(_, r)| r)
}

pub fn mulmod<R: Ring>(
    ring: &R,
    a: &Poly<R::Elem>,
    b: &Poly<R::Elem>,
    modulus: &Poly<R::Elem>,
) -> Result<Poly<R::Elem>> {
    rem(ring, &mul(ring, a, b), modulus)
}

pub fn powmod<R: Ring>(
    ring: &R,
    a: &Poly<R::Elem>,
    mut e: u64,
    modulus: &Poly<R::Elem>,
) -> Result<Poly<R::Elem>> {
    let mut base = rem(ring, a, modulus)?;
    let mut acc = rem(ring, &Poly::constant(ring, ring.one()), modulus)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(ring, &acc, &base, modulus)?;
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(ring, &base, &base, modulus)?;
        }
    }
    Ok(acc)
}

/// Scales to a monic polynomial; `None` if the leading coefficient is not a unit.
pub fn monic<R: Ring>(ring: &R, a: &Poly<R::Elem>) -> Option<Poly<R::Elem>> {
    let li = ring.inv(a.leading()?)?;
    Some(scale(ring, &li, a))
}

/// Monic gcd over a field.
pub fn gcd<R: Ring>(ring: &R, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = rem(ring, &x, &y).expect("field coefficients");
        x = y;
        y = r;
    }
    monic(ring, &x).unwrap_or(x)
}

/// Extended gcd over a field: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn xgcd<R: Ring>(
    ring: &R,
    a: &Poly<R::Elem>,
    b: &Poly<R::Elem>,
) -> (Poly<R::Elem>, Poly<R::Elem>, Poly<R::Elem>) {
    let one = Poly::constant(ring, ring.one());
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one.clone(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), one);
    while !r1.is_zero() {
        let (q, r) = divrem(ring, &r0, &r1).expect("field coefficients");
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(ring, &s0, &mul(ring, &q, &s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(ring, &t0, &mul(ring, &q, &t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.leading().and_then(|c| ring.inv(c)) {
        Some(li) => (scale(ring, &li, &r0), scale(ring, &li, &s0), scale(ring, &li, &t0)),
        None => (r0, s0, t0),
    }
}
