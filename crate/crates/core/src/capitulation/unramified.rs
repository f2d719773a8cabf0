//! Separability of `f` modulo every prime of `O_F` above `m`.
//!
//! `O_F/p = F_p[Y]/(g)`, whose reduction `F_p[Y]/(rad g)` is a product of the
//! residue fields at the primes above `p`. Euclid's algorithm on `f, f'` runs
//! over that product, splitting the modulus whenever a leading coefficient is a
//! zero divisor, so no factorisation of `g` is ever needed.

use num_bigint::BigInt;

use crate::arith::poly::{self, Poly};
use crate::arith::ring::{prime_divisors, PrimeField, Ring};

type Fp = Poly<u64>;

/// Squarefree part of `a` over `F_p`.
fn radical(fp: &PrimeField, a: &Fp) -> Fp {
    if a.degree().unwrap_or(0) == 0 {
        return Poly::constant(fp, 1);
    }
    let da = poly::derivative(fp, a);
    if da.is_zero() {
        // a = b(X^p) = b(X)^p over F_p
        let p = fp.modulus() as usize;
        let b: Vec<u64> = a.coeffs().iter().step_by(p).copied().collect();
        return radical(fp, &Poly::new(fp, b));
    }
    let c = poly::gcd(fp, a, &da);
    let w = poly::divrem(fp, a, &c).unwrap().0;
    let rc = radical(fp, &c);
    let common = poly::gcd(fp, &w, &rc);
    let lcm = poly::divrem(fp, &poly::mul(fp, &w, &rc), &common).unwrap().0;
    poly::monic(fp, &lcm).unwrap()
}

/// Polynomials in `X` over `F_p[Y]/(h)`, ascending in `X`.
struct Component<'a> {
    fp: &'a PrimeField,
    h: Fp,
}

impl Component<'_> {
    fn reduce(&self, a: &Fp) -> Fp {
        poly::rem(self.fp, a, &self.h).unwrap()
    }

    fn reduce_all(&self, a: &[Fp]) -> Vec<Fp> {
        let mut v: Vec<Fp> = a.iter().map(|c| self.reduce(c)).collect();
        while v.last().is_some_and(Poly::is_zero) {
            v.pop();
        }
        v
    }

    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        poly::mulmod(self.fp, a, b, &self.h).unwrap()
    }

    fn inv(&self, a: &Fp) -> Fp {
        let (_, s, _) = poly::xgcd(self.fp, a, &self.h);
        self.reduce(&s)
    }

    /// `a mod b` for `b` with invertible leading coefficient.
    fn rem(&self, a: &[Fp], b: &[Fp]) -> Vec<Fp> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let li = self.inv(b.last().unwrap());
        while r.len() > db {
            let top = r.len() - 1;
            let q = self.mul(r.last().unwrap(), &li);
            for (j, bj) in b.iter().enumerate() {
                let t = self.mul(&q, bj);
                r[top - db + j] = self.reduce(&poly::sub(self.fp, &r[top - db + j], &t));
            }
            while r.last().is_some_and(Poly::is_zero) {
                r.pop();
            }
        }
        r
    }

    /// Whether `gcd(a, b) = 1` in every field factor of `F_p[Y]/(h)`.
    fn coprime(&self, a: Vec<Fp>, b: Vec<Fp>) -> bool {
        let (mut a, mut b) = (self.reduce_all(&a), self.reduce_all(&b));
        loop {
            if b.is_empty() {
                return a.len() == 1;
            }
            let g = poly::gcd(self.fp, b.last().unwrap(), &self.h);
            if g.degree().unwrap_or(0) > 0 {
                let rest = poly::divrem(self.fp, &self.h, &g).unwrap().0;
                return [g, rest].into_iter().all(|h| {
                    let c = Component { fp: self.fp, h };
                    c.coprime(a.clone(), b.clone())
                });
            }
            let r = self.rem(&a, &b);
            a = std::mem::replace(&mut b, r);
        }
    }
}

/// `f` monic over `O_F` (integer coefficient vectors, ascending): true iff
/// `f mod P` is separable for every prime `P | m`, i.e. `Res(f, f')` is a unit
/// in `O_F/m`.
pub fn separable_above(g: &[BigInt], f: &[Vec<BigInt>], m: u64) -> bool {
    prime_divisors(m).into_iter().all(|p| {
        let fp = PrimeField::new(p);
        let gbar = Poly::new(&fp, g.iter().map(|c| fp.reduce(c)).collect());
        let comp = Component { fp: &fp, h: radical(&fp, &gbar) };
        let lift = |v: &[BigInt]| Poly::new(&fp, v.iter().map(|c| fp.reduce(c)).collect());
        let fbar: Vec<Fp> = f.iter().map(|c| lift(c)).collect();
        let dfbar: Vec<Fp> = fbar
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| poly::scale(&fp, &fp.from_i64(k as i64), c))
            .collect();
        comp.coprime(fbar, dfbar)
    })
}
