//! Exact determinants of sparse integer matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::matrix::IntMatrix;

/// A square matrix stored as sparse rows.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    n: usize,
    rows: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseMatrix {
    pub fn new(n: usize) -> Self {
        SparseMatrix { n, rows: vec![BTreeMap::new(); n] }
    }

    /// From columns given as `(row, value)` lists.
    pub fn from_columns(n: usize, columns: &[Vec<(usize, BigInt)>]) -> Self {
        let mut m = Self::new(n);
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                m.add_entry(*i, j, v.clone());
            }
        }
        m
    }

    pub fn add_entry(&mut self, i: usize, j: usize, v: BigInt) {
        let e = self.rows[i].entry(j).or_insert_with(BigInt::zero);
        *e += v;
        if e.is_zero() {
            self.rows[i].remove(&j);
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn to_dense(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |i, j| self.rows[i].get(&j).cloned().unwrap_or_default())
    }

    /// Gaussian elimination over Q, choosing in each column the candidate pivot
    /// row with the fewest nonzeros.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        let mut rows: Vec<BTreeMap<usize, BigRational>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(&j, v)| (j, BigRational::from_integer(v.clone()))).collect())
            .collect();
        // column -> rows with a nonzero there, kept in sync with fill-in
        let mut col_rows: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); n];
        for (i, r) in rows.iter().enumerate() {
            for &j in r.keys() {
                col_rows[j].insert(i);
            }
        }
        let mut used = vec![false; n];
        let mut perm = vec![0usize; n];
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(&p) = col_rows[k].iter().filter(|&&i| !used[i]).min_by_key(|&&i| rows[i].len()) else {
                return BigInt::zero();
            };
            used[p] = true;
            perm[k] = p;
            let prow = rows[p].clone();
            let pivot = prow[&k].clone();
            det *= &pivot;
            let targets: Vec<usize> = col_rows[k].iter().copied().filter(|&i| !used[i]).collect();
            for i in targets {
                let factor = &rows[i][&k] / &pivot;
                for (&j, v) in prow.range(k..) {
                    let entry = rows[i].entry(j).or_insert_with(BigRational::zero);
                    *entry -= &factor * v;
                    if entry.is_zero() {
                        rows[i].remove(&j);
                        col_rows[j].remove(&i);
                    } else {
                        col_rows[j].insert(i);
                    }
                }
            }
        }
        if permutation_is_odd(&perm) {
            det = -det;
        }
        assert!(det.is_integer(), "determinant of an integer matrix is integral");
        det.to_integer()
    }
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 1
}
