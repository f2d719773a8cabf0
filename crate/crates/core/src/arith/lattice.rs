//! Rational lattices in `Q^n`, stored as `(1/denom) * HNF` with the
//! denominator in lowest terms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::matrix::IntMatrix;
use crate::arith::normal_form::hnf;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    denom: BigInt,
    basis: IntMatrix,
}

fn lcm_of_denominators<'a>(vs: impl Iterator<Item = &'a BigRational>) -> BigInt {
    vs.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

impl Lattice {
    /// Z-span of integer row vectors.
    pub fn from_int_rows(dim: usize, rows: &[Vec<BigInt>]) -> Self {
        Self::from_scaled(dim, rows, BigInt::one())
    }

    /// Z-span of rational row vectors.
    pub fn from_rat_rows(dim: usize, rows: &[Vec<BigRational>]) -> Self {
        let d = lcm_of_denominators(rows.iter().flatten());
        let ints: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|x| (x * BigRational::from_integer(d.clone())).to_integer()).collect())
            .collect();
        Self::from_scaled(dim, &ints, d)
    }

    fn from_scaled(dim: usize, rows: &[Vec<BigInt>], denom: BigInt) -> Self {
        let basis = if rows.is_empty() {
            IntMatrix::zeros(0, dim)
        } else {
            hnf(&IntMatrix::from_rows(rows.to_vec())).basis()
        };
        let mut l = Lattice { dim, denom, basis };
        l.normalize();
        l
    }

    fn normalize(&mut self) {
        let mut g = self.denom.clone();
        for i in 0..self.basis.rows() {
            for x in self.basis.row(i) {
                g = g.gcd(x);
            }
        }
        if !g.is_one() && !g.is_zero() {
            self.basis = self.basis.map(|x| x / &g);
            self.denom /= &g;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    /// HNF rows of `denom * L`.
    pub fn scaled_basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        (0..self.basis.rows())
            .map(|i| {
                self.basis
                    .row(i)
                    .iter()
                    .map(|x| BigRational::new(x.clone(), self.denom.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }

    /// `|det|` of the basis divided by `denom^rank`; the covolume for full rank.
    pub fn covolume(&self) -> BigRational {
        if self.rank() != self.dim {
            return BigRational::zero();
        }
        let det: BigInt = (0..self.rank())
            .map(|i| {
                let c = self.basis.row(i).iter().position(|x| !x.is_zero()).unwrap();
                self.basis[(i, c)].clone()
            })
            .product();
        BigRational::new(det.abs(), num_traits::pow(self.denom.clone(), self.dim))
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let d = BigRational::from_integer(self.denom.clone());
        let mut w = Vec::with_capacity(self.dim);
        for x in v {
            let y = x * &d;
            if !y.is_integer() {
                return false;
            }
            w.push(y.to_integer());
        }
        self.contains_scaled(w)
    }

    pub fn contains_int(&self, v: &[BigInt]) -> bool {
        self.contains_scaled(v.iter().map(|x| x * &self.denom).collect())
    }

    fn contains_scaled(&self, mut w: Vec<BigInt>) -> bool {
        for i in 0..self.basis.rows() {
            let row = self.basis.row(i);
            let c = row.iter().position(|x| !x.is_zero()).unwrap();
            if w[..c].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, r) = w[c].div_rem(&row[c]);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (wj, bj) in w.iter_mut().zip(row) {
                    *wj -= &q * bj;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut rows = self.basis();
        rows.extend(other.basis());
        Lattice::from_rat_rows(self.dim, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn membership_and_covolume() {
        let l = Lattice::from_rat_rows(2, &[vec![r(1, 2), r(0, 1)], vec![r(0, 1), r(3, 1)]]);
        assert!(l.contains(&[r(3, 2), r(6, 1)]));
        assert!(!l.contains(&[r(1, 3), r(0, 1)]));
        assert!(!l.contains(&[r(0, 1), r(1, 1)]));
        assert_eq!(l.covolume(), r(3, 2));
    }

    #[test]
    fn canonical_equality() {
        let a = Lattice::from_int_rows(2, &[vec![2.into(), 0.into()], vec![1.into(), 1.into()]]);
        let b = Lattice::from_int_rows(2, &[vec![1.into(), 1.into()], vec![0.into(), 2.into()], vec![3.into(), 3.into()]]);
        assert_eq!(a, b);
        let half = Lattice::from_rat_rows(1, &[vec![r(2, 4)]]);
        assert_eq!(half.denominator(), &BigInt::from(2));
    }
}
