//! Resultants via the subresultant pseudo-remainder sequence.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::matrix::Matrix;
use crate::arith::poly::{self, Poly, RatPoly};
use crate::arith::ring::{ExactDivision, Rationals, Ring};
use crate::error::{Error, Result};

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`, computed without division.
pub fn pseudo_remainder<R: Ring>(ring: &R, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return a.clone();
    };
    if da < db {
        return a.clone();
    }
    let lb = b.leading().unwrap().clone();
    let mut r = a.coeffs().to_vec();
    let mut deg = da;
    let mut steps = da - db + 1;
    loop {
        if deg < db || r.is_empty() {
            break;
        }
        let lr = r[deg].clone();
        // r <- lb * r - lr * X^(deg-db) * b
        for c in r.iter_mut() {
            *c = ring.mul(c, &lb);
        }
        for (j, bj) in b.coeffs().iter().enumerate() {
            let k = deg - db + j;
            r[k] = ring.sub(&r[k], &ring.mul(&lr, bj));
        }
        steps -= 1;
        r.truncate(deg);
        while r.last().is_some_and(|c| ring.is_zero(c)) {
            r.pop();
        }
        match r.len().checked_sub(1) {
            Some(d) => deg = d,
            None => break,
        }
    }
    // leftover factors of lc(b) when the degree dropped by more than one per step
    let fix = ring.pow(&lb, steps as u64);
    Poly::new(ring, r.iter().map(|c| ring.mul(c, &fix)).collect())
}

/// Resultant over an integral domain with exact division.
pub fn resultant_in<R: ExactDivision>(
    ring: &R,
    f: &Poly<R::Elem>,
    g: &Poly<R::Elem>,
) -> Result<R::Elem> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    if f.is_zero() || g.is_zero() {
        return Ok(ring.zero());
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut negate = false;
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            negate = true;
        }
    }
    let mut gg = ring.one();
    let mut h = ring.one();
    loop {
        let db = b.degree().unwrap();
        if db == 0 {
            break;
        }
        let da = a.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = pseudo_remainder(ring, &a, &b);
        a = b;
        if r.is_zero() {
            return Ok(ring.zero());
        }
        let divisor = ring.mul(&gg, &ring.pow(&h, delta as u64));
        b = Poly::new(
            ring,
            r.coeffs()
                .iter()
                .map(|c| ring.div_exact(c, &divisor).expect("subresultant division is exact"))
                .collect(),
        );
        gg = a.leading().unwrap().clone();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            let num = ring.pow(&gg, delta as u64);
            let den = ring.pow(&h, delta as u64 - 1);
            ring.div_exact(&num, &den).expect("subresultant division is exact")
        };
    }
    // b is a nonzero constant
    let da = a.degree().unwrap() as u64;
    let lb = b.leading().unwrap();
    let out = if da == 0 {
        ring.one()
    } else {
        let num = ring.pow(lb, da);
        let den = ring.pow(&h, da - 1);
        ring.div_exact(&num, &den).expect("subresultant division is exact")
    };
    Ok(if negate { ring.neg(&out) } else { out })
}

pub fn resultant(f: &RatPoly, g: &RatPoly) -> Result<BigRational> {
    resultant_in(&Rationals, f, g)
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n), `(m+n) x (m+n)`.
pub fn sylvester_matrix<R: Ring>(ring: &R, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Matrix<R::Elem> {
    let m = f.degree().unwrap_or(0);
    let n = g.degree().unwrap_or(0);
    let size = m + n;
    let mut s = Matrix::filled(size, size, ring.zero());
    for i in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            s[(i, i + k)] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            s[(n + i, i + k)] = c.clone();
        }
    }
    s
}

/// `disc`-style helper: `Res(f, f')`.
pub fn resultant_with_derivative<R: ExactDivision>(ring: &R, f: &Poly<R::Elem>) -> Result<R::Elem> {
    resultant_in(ring, f, &poly::derivative(ring, f))
}

pub fn int_resultant(f: &Poly<BigInt>, g: &Poly<BigInt>) -> Result<BigInt> {
    resultant_in(&crate::arith::ring::Integers, f, g)
}
