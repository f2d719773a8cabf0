//! Naive reference computations by exhaustive enumeration and breadth-first
//! closure. They share no code with the normal-form based routines and exist
//! to cross-check them on small inputs.

use std::collections::{BTreeMap, HashSet};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::spec::NumberFieldSpec;

type Elem = Vec<BigInt>;

/// Every element of `O_F/m` as a coordinate vector in `[0, m)^d`.
pub fn residues(field: &NumberFieldSpec, m: u64) -> Vec<Elem> {
    let mut out = vec![Vec::new()];
    for _ in 0..field.degree() {
        out = out.into_iter().flat_map(|v| (0..m).map(move |x| [v.clone(), vec![BigInt::from(x)]].concat())).collect();
    }
    out
}

pub fn mul_mod(field: &NumberFieldSpec, a: &[BigInt], b: &[BigInt], m: u64) -> Elem {
    let mb = BigInt::from(m);
    field.integral_mul(a, b).into_iter().map(|x| x.mod_floor(&mb)).collect()
}

fn reduce(x: &[BigInt], m: u64) -> Elem {
    let mb = BigInt::from(m);
    x.iter().map(|c| c.mod_floor(&mb)).collect()
}

fn one(field: &NumberFieldSpec) -> Elem {
    let mut v = vec![BigInt::zero(); field.degree()];
    v[0] = BigInt::one();
    v
}

/// Units of `O_F/m`, found by searching for an inverse of every element.
pub fn units(field: &NumberFieldSpec, m: u64) -> Vec<Elem> {
    let all = residues(field, m);
    let e = one(field);
    all.iter().filter(|x| all.iter().any(|y| mul_mod(field, x, y, m) == e)).cloned().collect()
}

pub fn closure<T: Clone + Eq + Hash>(gens: &[T], identity: T, op: impl Fn(&T, &T) -> T) -> HashSet<T> {
    let mut seen = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = op(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// Subgroup of `(O_F/m)^x` generated by the images of the declared unit generators.
pub fn global_unit_image(field: &NumberFieldSpec, m: u64) -> HashSet<Elem> {
    let gens: Vec<Elem> = field.unit_group_generators().iter().map(|w| reduce(&w.to_ints().unwrap(), m)).collect();
    closure(&gens, one(field), |a, b| mul_mod(field, a, b, m))
}

/// `order -> count` over the cosets of `sub` in `group`, with `x^k` computed by repeated multiplication.
pub fn coset_order_statistics<T: Clone + Eq + Hash>(
    group: &[T],
    sub: &HashSet<T>,
    op: impl Fn(&T, &T) -> T,
) -> BTreeMap<u64, u64> {
    let mut stats = BTreeMap::new();
    for x in group {
        let mut k = 1u64;
        let mut p = x.clone();
        while !sub.contains(&p) {
            p = op(&p, x);
            k += 1;
        }
        *stats.entry(k).or_insert(0u64) += 1;
    }
    let h = sub.len() as u64;
    stats.into_iter().map(|(k, c)| (k, c / h)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelOracle {
    pub ambient_order: usize,
    pub subring_size: usize,
    pub join_order: usize,
    pub quotient_order: usize,
    pub quotient_statistics: BTreeMap<u64, u64>,
}

/// `D` for `O_F[G] -> prod O_F` given the images of the group elements, by
/// enumerating the subring mod `m` additively and the unit join multiplicatively.
pub fn kernel_group(field: &NumberFieldSpec, images: &[Vec<Elem>], m: u64) -> KernelOracle {
    let s = images.len();
    let d = field.degree();
    let mb = BigInt::from(m);
    // Z-module generators beta^j * image(g)
    let mut add_gens: Vec<Vec<Elem>> = Vec::new();
    for img in images {
        for j in 0..d {
            let mut bj = vec![BigInt::zero(); d];
            bj[j] = BigInt::one();
            add_gens.push(img.iter().map(|c| mul_mod(field, &bj, c, m)).collect());
        }
    }
    let zero: Vec<Elem> = vec![vec![BigInt::zero(); d]; s];
    let subring = closure(&add_gens, zero, |a, b| {
        a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p + q).mod_floor(&mb)).collect()).collect()
    });
    let u = units(field, m);
    let unit_set: HashSet<&Elem> = u.iter().collect();
    let mut ambient: Vec<Vec<Elem>> = vec![Vec::new()];
    for _ in 0..s {
        ambient = ambient.into_iter().flat_map(|t| u.iter().map(move |x| [t.clone(), vec![x.clone()]].concat())).collect();
    }
    let e = one(field);
    let id: Vec<Elem> = vec![e.clone(); s];
    let mut gens: Vec<Vec<Elem>> = subring.iter().filter(|t| t.iter().all(|x| unit_set.contains(x))).cloned().collect();
    for w in field.unit_group_generators() {
        let w = reduce(&w.to_ints().unwrap(), m);
        for i in 0..s {
            let mut t = id.clone();
            t[i] = w.clone();
            gens.push(t);
        }
    }
    gens.sort();
    let op = |a: &Vec<Elem>, b: &Vec<Elem>| -> Vec<Elem> { a.iter().zip(b).map(|(x, y)| mul_mod(field, x, y, m)).collect() };
    let join = closure(&gens, id.clone(), op);
    let quotient_statistics = coset_order_statistics(&ambient, &join, op);
    KernelOracle {
        ambient_order: ambient.len(),
        subring_size: subring.len(),
        join_order: join.len(),
        quotient_order: ambient.len() / join.len(),
        quotient_statistics,
    }
}
