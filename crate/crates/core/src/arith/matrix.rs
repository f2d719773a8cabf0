//! Dense row-major matrices over a [`Ring`].

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;

use crate::arith::ring::{ExactDivision, Integers, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

pub type IntMatrix = Matrix<BigInt>;

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for i in 0..self.rows {
            l.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        l.finish()
    }
}

impl IntMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, BigInt::from(0))
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| BigInt::from((i == j) as i64))
    }

    pub fn diag(entries: &[BigInt]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { BigInt::from(0) })
    }

    pub fn det(&self) -> BigInt {
        det_bareiss(&Integers, self)
    }

    pub fn mul(&self, other: &Self) -> Self {
        mat_mul(&Integers, self, other)
    }
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
}

pub fn mat_mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch");
    let mut out = Matrix::filled(a.rows, b.cols, ring.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = &a[(i, k)];
            if ring.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = &b[(k, j)];
                if ring.is_zero(y) {
                    continue;
                }
                out[(i, j)] = ring.add(&out[(i, j)], &ring.mul(x, y));
            }
        }
    }
    out
}

pub fn mat_vec<R: Ring>(ring: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    assert_eq!(a.cols, v.len(), "dimension mismatch");
    (0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .zip(v)
                .filter(|(x, y)| !ring.is_zero(x) && !ring.is_zero(y))
                .fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))
        })
        .collect()
}

/// Fraction-free determinant over an integral domain.
pub fn det_bareiss<R: ExactDivision>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return ring.one();
    }
    let mut a = m.clone();
    let mut sign_flip = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&a[(k, k)]) {
            let Some(p) = (k + 1..n).find(|&i| !ring.is_zero(&a[(i, k)])) else {
                return ring.zero();
            };
            a.swap_rows(k, p);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(
                    &ring.mul(&a[(i, j)], &a[(k, k)]),
                    &ring.mul(&a[(i, k)], &a[(k, j)]),
                );
                a[(i, j)] = ring.div_exact(&num, &prev).expect("Bareiss division is exact");
            }
            a[(i, k)] = ring.zero();
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    if sign_flip {
        ring.neg(&d)
    } else {
        d
    }
}

/// Row-reduced echelon data from Gaussian elimination over a field.
struct Elimination<E> {
    upper: Matrix<E>,
    rhs: Option<Vec<E>>,
    swaps: usize,
    singular: bool,
}

/// Gaussian elimination that skips zero entries; sparse structured inputs
/// (companion-like multiplication matrices) cost far less than `n^3`.
fn eliminate<R: Ring>(ring: &R, m: &Matrix<R::Elem>, rhs: Option<&[R::Elem]>) -> Elimination<R::Elem> {
    let n = m.rows;
    let mut a = m.clone();
    let mut b = rhs.map(<[R::Elem]>::to_vec);
    let mut swaps = 0;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !ring.is_zero(&a[(i, k)])) else {
            return Elimination { upper: a, rhs: b, swaps, singular: true };
        };
        if p != k {
            a.swap_rows(p, k);
            if let Some(b) = b.as_mut() {
                b.swap(p, k);
            }
            swaps += 1;
        }
        let pivot_inv = ring.inv(&a[(k, k)]).expect("nonzero field element is invertible");
        let pivot_cols: Vec<usize> = (k + 1..n).filter(|&j| !ring.is_zero(&a[(k, j)])).collect();
        for i in k + 1..n {
            if ring.is_zero(&a[(i, k)]) {
                continue;
            }
            let factor = ring.mul(&a[(i, k)], &pivot_inv);
            for &j in &pivot_cols {
                let v = ring.sub(&a[(i, j)], &ring.mul(&factor, &a[(k, j)]));
                a[(i, j)] = v;
            }
            a[(i, k)] = ring.zero();
            if let Some(b) = b.as_mut() {
                if !ring.is_zero(&b[k]) {
                    b[i] = ring.sub(&b[i], &ring.mul(&factor, &b[k]));
                }
            }
        }
    }
    Elimination { upper: a, rhs: b, swaps, singular: false }
}

/// Determinant over a field by elimination.
pub fn det_field<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let e = eliminate(ring, m, None);
    if e.singular {
        return ring.zero();
    }
    let d = (0..m.rows).fold(ring.one(), |acc, i| ring.mul(&acc, &e.upper[(i, i)]));
    if e.swaps % 2 == 1 {
        ring.neg(&d)
    } else {
        d
    }
}

/// Solves `m * x = rhs` over a field; `None` when `m` is singular.
pub fn solve_field<R: Ring>(ring: &R, m: &Matrix<R::Elem>, rhs: &[R::Elem]) -> Option<Vec<R::Elem>> {
    assert!(m.is_square(), "solve needs a square matrix");
    assert_eq!(m.rows, rhs.len(), "dimension mismatch");
    let n = m.rows;
    let e = eliminate(ring, m, Some(rhs));
    if e.singular {
        return None;
    }
    let u = e.upper;
    let b = e.rhs.unwrap();
    let mut x = vec![ring.zero(); n];
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            if ring.is_zero(&u[(i, j)]) || ring.is_zero(&x[j]) {
                continue;
            }
            acc = ring.sub(&acc, &ring.mul(&u[(i, j)], &x[j]));
        }
        x[i] = ring.mul(&acc, &ring.inv(&u[(i, i)])?);
    }
    Some(x)
}

/// Inverse over a field.
pub fn inverse_field<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Option<Matrix<R::Elem>> {
    let n = m.rows;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<_> = (0..n).map(|i| if i == j { ring.one() } else { ring.zero() }).collect();
        cols.push(solve_field(ring, m, &e)?);
    }
    Some(Matrix::from_fn(n, n, |i, j| cols[j][i].clone()))
}
