//! Finite abelian groups: structure from enumeration, cokernels via Smith form.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::matrix::IntMatrix;
use crate::arith::normal_form::{hnf, snf};
use crate::error::{Error, Result};

/// `Z^n / rowspan(R)` in Smith coordinates.
#[derive(Clone, Debug)]
pub struct Cokernel {
    /// All `n` diagonal entries; zeros mark free summands.
    factors: Vec<BigInt>,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Cokernel {
    pub fn of(relations: &IntMatrix) -> Self {
        let n = relations.cols();
        let s = snf(relations);
        let mut factors = s.invariant_factors.clone();
        factors.resize(n, BigInt::zero());
        Cokernel { factors, v: s.v, v_inv: s.v_inv }
    }

    fn nontrivial(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.factors.len()).filter(|&i| !self.factors[i].is_one())
    }

    /// Invariant factors other than 1, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.nontrivial().map(|i| self.factors[i].clone()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|d| !d.is_zero())
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.factors.iter().product())
    }

    /// Coordinates of the class of `x` in `(+) Z/d_i`, one per nontrivial factor.
    pub fn coordinates(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.v.rows());
        self.nontrivial()
            .map(|i| {
                let c: BigInt = x.iter().enumerate().map(|(k, xk)| xk * &self.v[(k, i)]).sum();
                if self.factors[i].is_zero() {
                    c
                } else {
                    c.mod_floor(&self.factors[i])
                }
            })
            .collect()
    }

    /// Exponent vectors whose classes generate the nontrivial cyclic factors.
    pub fn generator_vectors(&self) -> Vec<Vec<BigInt>> {
        self.nontrivial().map(|i| self.v_inv.row(i).to_vec()).collect()
    }
}

/// A finite abelian group presented by generators, a relation matrix and a
/// discrete-log table.
#[derive(Clone, Debug)]
pub struct AbelianGroupPresentation<T: Clone + Eq + Hash> {
    pub generators: Vec<T>,
    /// Rows are relations among `generators`.
    pub relations: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
    pub identity: T,
    dlog: HashMap<T, Vec<BigInt>>,
    elements: Vec<T>,
}

fn order_of<T: Clone + Eq>(x: &T, identity: &T, op: &impl Fn(&T, &T) -> T, cap: usize) -> Result<usize> {
    let mut p = x.clone();
    for k in 1..=cap {
        if &p == identity {
            return Ok(k);
        }
        p = op(&p, x);
    }
    Err(Error::Invariant("element order exceeds group size".into()))
}

impl<T: Clone + Eq + Hash> AbelianGroupPresentation<T> {
    /// Structure of the group on `elements` by generator peeling: repeatedly
    /// adjoin an element of maximal order outside the current subgroup (the
    /// last such element in enumeration order).
    pub fn from_enumeration(elements: Vec<T>, identity: T, op: impl Fn(&T, &T) -> T) -> Result<Self> {
        let n = elements.len();
        if !elements.contains(&identity) {
            return Err(Error::Invariant("identity missing from enumeration".into()));
        }
        let orders: Vec<usize> =
            elements.iter().map(|x| order_of(x, &identity, &op, n)).collect::<Result<_>>()?;
        let mut sub: HashMap<T, Vec<BigInt>> = HashMap::from([(identity.clone(), Vec::new())]);
        let mut generators = Vec::new();
        let mut rel_rows: Vec<Vec<BigInt>> = Vec::new();
        while sub.len() < n {
            let (idx, _) = elements
                .iter()
                .enumerate()
                .filter(|(_, x)| !sub.contains_key(*x))
                .max_by(|(i, _), (j, _)| orders[*i].cmp(&orders[*j]).then(i.cmp(j)))
                .unwrap();
            let g = elements[idx].clone();
            let ngen = generators.len();
            let mut powers = vec![identity.clone()];
            let mut p = g.clone();
            while !sub.contains_key(&p) {
                powers.push(p.clone());
                p = op(&p, &g);
            }
            let k = powers.len();
            let mut rel: Vec<BigInt> = sub[&p].iter().map(|e| -e).collect();
            rel.resize(ngen, BigInt::zero());
            rel.push(BigInt::from(k));
            rel_rows.push(rel);
            let mut next = HashMap::with_capacity(sub.len() * k);
            for (s, e) in &sub {
                for (j, gj) in powers.iter().enumerate() {
                    let mut ej = e.clone();
                    ej.resize(ngen, BigInt::zero());
                    ej.push(BigInt::from(j));
                    next.insert(op(s, gj), ej);
                }
            }
            sub = next;
            generators.push(g);
        }
        let r = generators.len();
        for (_, e) in sub.iter_mut() {
            e.resize(r, BigInt::zero());
        }
        for row in rel_rows.iter_mut() {
            row.resize(r, BigInt::zero());
        }
        let relations = if r == 0 { IntMatrix::zeros(0, 0) } else { IntMatrix::from_rows(rel_rows) };
        let invariant_factors = Cokernel::of(&relations).invariant_factors();
        Ok(AbelianGroupPresentation { generators, relations, invariant_factors, identity, dlog: sub, elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn exponent(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Exponent vector of `x` over `generators`.
    pub fn dlog(&self, x: &T) -> Option<&[BigInt]> {
        self.dlog.get(x).map(Vec::as_slice)
    }

    pub fn contains(&self, x: &T) -> bool {
        self.dlog.contains_key(x)
    }

    /// The quotient by the subgroup generated by `subgroup`.
    pub fn quotient(&self, subgroup: &[T]) -> Result<Quotient> {
        let mut rows: Vec<Vec<BigInt>> = (0..self.relations.rows()).map(|i| self.relations.row(i).to_vec()).collect();
        for s in subgroup {
            let e = self.dlog(s).ok_or_else(|| Error::Invariant("subgroup element outside the group".into()))?;
            rows.push(e.to_vec());
        }
        Ok(Quotient::new(self.rank(), rows))
    }

    /// Order of the subgroup generated by `gens`.
    pub fn subgroup_order(&self, gens: &[T]) -> Result<BigInt> {
        let q = self.quotient(gens)?;
        Ok(BigInt::from(self.order()) / q.order())
    }
}

/// `Z^r / (relations + subgroup)`; the group is always finite here.
#[derive(Clone, Debug)]
pub struct Quotient {
    cokernel: Cokernel,
    rank: usize,
}

impl Quotient {
    /// `Z^rank` modulo the span of `rows`.
    pub fn new(rank: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let m = if rows.is_empty() || rank == 0 {
            IntMatrix::zeros(0, rank)
        } else if rows.len() > rank {
            // many subgroup generators: the HNF basis spans the same lattice
            hnf(&IntMatrix::from_rows(rows)).basis()
        } else {
            IntMatrix::from_rows(rows)
        };
        Quotient { cokernel: Cokernel::of(&m), rank }
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.cokernel.invariant_factors()
    }

    pub fn order(&self) -> BigInt {
        self.cokernel.order().expect("finite quotient")
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors().is_empty()
    }

    pub fn coordinates(&self, exps: &[BigInt]) -> Vec<BigInt> {
        if self.rank == 0 {
            return Vec::new();
        }
        self.cokernel.coordinates(exps)
    }

    pub fn generator_vectors(&self) -> Vec<Vec<BigInt>> {
        if self.rank == 0 {
            return Vec::new();
        }
        self.cokernel.generator_vectors()
    }
}

/// Order statistics `order -> count` of `(+) Z/d_i`, used to compare groups.
pub fn order_statistics(invariant_factors: &[BigInt]) -> std::collections::BTreeMap<u64, u64> {
    let ds: Vec<u64> = invariant_factors.iter().map(|d| d.try_into().expect("small factor")).collect();
    let mut out = std::collections::BTreeMap::new();
    let total: u64 = ds.iter().product();
    for idx in 0..total {
        let mut rest = idx;
        let mut ord = 1u64;
        for &d in &ds {
            let x = rest % d;
            rest /= d;
            ord = ord.lcm(&(d / x.gcd(&d)));
        }
        *out.entry(ord).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_units(n: u64) -> AbelianGroupPresentation<u64> {
        let units: Vec<u64> = (1..n).filter(|x| x.gcd(&n) == 1).collect();
        AbelianGroupPresentation::from_enumeration(units, 1, |a, b| a * b % n).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn units_mod_eight() {
        let g = cyclic_units(8);
        assert_eq!(g.invariant_factors, big(&[2, 2]));
        assert_eq!(g.order(), 4);
        for x in g.elements() {
            let e = g.dlog(x).unwrap();
            let mut p = 1u64;
            for (gen, k) in g.generators.iter().zip(e) {
                for _ in 0..u64::try_from(k).unwrap() {
                    p = p * gen % 8;
                }
            }
            assert_eq!(p, *x);
        }
    }

    #[test]
    fn cyclic_and_trivial() {
        assert_eq!(cyclic_units(9).invariant_factors, big(&[6]));
        assert!(cyclic_units(2).invariant_factors.is_empty());
        assert_eq!(cyclic_units(15).invariant_factors, big(&[2, 4]));
    }

    #[test]
    fn quotient_by_minus_one() {
        let g = cyclic_units(8);
        let q = g.quotient(&[7]).unwrap();
        assert_eq!(q.invariant_factors(), big(&[2]));
        assert_eq!(q.coordinates(g.dlog(&7).unwrap()), big(&[0]));
        assert_ne!(q.coordinates(g.dlog(&3).unwrap()), big(&[0]));
        assert_eq!(q.coordinates(g.dlog(&3).unwrap()), q.coordinates(g.dlog(&5).unwrap()));
        assert_eq!(g.subgroup_order(&[7]).unwrap(), BigInt::from(2));
    }

    #[test]
    fn order_statistics_of_klein_group() {
        let s = order_statistics(&big(&[2, 2]));
        assert_eq!(s.get(&1), Some(&1));
        assert_eq!(s.get(&2), Some(&3));
    }
}
