//! Hermite and Smith normal forms of integer matrices with explicit
//! unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::matrix::IntMatrix;

/// Row Hermite normal form: `H = U * M`, `U` unimodular.
///
/// `H` is upper echelon with positive pivots, every entry above a pivot lies in
/// `[0, pivot)`, and zero rows sit at the bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Column index of the pivot in each nonzero row.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows of `H`.
    pub fn basis(&self) -> IntMatrix {
        IntMatrix::from_rows((0..self.rank()).map(|i| self.h.row(i).to_vec()).collect())
    }
}

fn row_combine(
    m: &mut IntMatrix,
    r: usize,
    i: usize,
    (s, t): (&BigInt, &BigInt),
    (p, q): (&BigInt, &BigInt),
) {
    // row_r <- s*row_r + t*row_i ; row_i <- p*row_r + q*row_i
    for j in 0..m.cols() {
        let a = m[(r, j)].clone();
        let b = m[(i, j)].clone();
        m[(r, j)] = s * &a + t * &b;
        m[(i, j)] = p * &a + q * &b;
    }
}

fn row_axpy(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    // row_target -= q * row_src
    if q.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let v = &m[(src, j)] * q;
        m[(target, j)] -= v;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        let v = -&m[(r, j)];
        m[(r, j)] = v;
    }
}

pub fn hnf(m: &IntMatrix) -> HermiteForm {
    let (rows, cols) = m.shape();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            let a = h[(r, c)].clone();
            let b = h[(i, c)].clone();
            let e = a.extended_gcd(&b);
            let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
            // [[x, y], [-b/g, a/g]] has determinant 1
            let nb = -bg;
            row_combine(&mut h, r, i, (&e.x, &e.y), (&nb, &ag));
            row_combine(&mut u, r, i, (&e.x, &e.y), (&nb, &ag));
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let p = h[(r, c)].clone();
        for k in 0..r {
            let q = h[(k, c)].div_floor(&p);
            row_axpy(&mut h, k, r, &q);
            row_axpy(&mut u, k, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    HermiteForm { h, u, pivots }
}

/// `U * M * V = diag(d_1, ..., d_k)` with `d_1 | d_2 | ...`, nonzero factors first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().take_while(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix `U * M * V`, of the input's shape.
    pub fn diagonal(&self) -> IntMatrix {
        let (m, n) = (self.u.rows(), self.v.rows());
        IntMatrix::from_fn(m, n, |i, j| {
            if i == j {
                self.invariant_factors[i].clone()
            } else {
                BigInt::zero()
            }
        })
    }
}

struct SmithCalc {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SmithCalc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row_i -= q * row_t
    fn row_op(&mut self, i: usize, t: usize, q: &BigInt) {
        row_axpy(&mut self.a, i, t, q);
        row_axpy(&mut self.u, i, t, q);
    }

    /// col_j -= q * col_t
    fn col_op(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.a.rows() {
            let x = &self.a[(i, t)] * q;
            self.a[(i, j)] -= x;
        }
        for i in 0..self.v.rows() {
            let x = &self.v[(i, t)] * q;
            self.v[(i, j)] -= x;
        }
        // inverse of the column operation acts on rows of V^{-1}: row_t += q * row_j
        for k in 0..self.v_inv.cols() {
            let x = &self.v_inv[(j, k)] * q;
            self.v_inv[(t, k)] += x;
        }
    }

    fn smallest_in(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.a.shape();
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

pub fn snf(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = m.shape();
    let mut s = SmithCalc {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let k = rows.min(cols);
    for t in 0..k {
        loop {
            let Some((pi, pj)) = s.smallest_in(t) else {
                break;
            };
            s.swap_rows(t, pi);
            s.swap_cols(t, pj);
            let p = s.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = s.a[(i, t)].div_floor(&p);
                s.row_op(i, t, &q);
                clean &= s.a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = s.a[(t, j)].div_floor(&p);
                s.col_op(j, t, &q);
                clean &= s.a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.a[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    s.row_op(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s.a[(t, t)].is_negative() {
            negate_row(&mut s.a, t);
            negate_row(&mut s.u, t);
        }
    }
    let invariant_factors = (0..k).map(|i| s.a[(i, i)].clone()).collect();
    SmithForm { invariant_factors, u: s.u, v: s.v, v_inv: s.v_inv }
}

/// Whether `h` satisfies the row-HNF shape predicate.
pub fn is_row_hnf(h: &IntMatrix) -> bool {
    let (rows, cols) = h.shape();
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..rows {
        let lead = (0..cols).find(|&j| !h[(i, j)].is_zero());
        match lead {
            None => seen_zero_row = true,
            Some(c) => {
                if seen_zero_row || last_pivot.is_some_and(|p| c <= p) {
                    return false;
                }
                let p = &h[(i, c)];
                if !p.is_positive() {
                    return false;
                }
                if (0..i).any(|k| h[(k, c)].is_negative() || &h[(k, c)] >= p) {
                    return false;
                }
                last_pivot = Some(c);
            }
        }
    }
    true
}
