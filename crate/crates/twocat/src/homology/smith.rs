//! Dense integer matrices and their Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigInt>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.data[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.data {
            r.swap(i, j);
        }
    }

    /// `row_i += c · row_j`.
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.cols {
            if !self.data[j][k].is_zero() {
                let v = &self.data[j][k] * c;
                self.data[i][k] += v;
            }
        }
    }

    /// `col_i += c · col_j`.
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for r in &mut self.data {
            if !r[j].is_zero() {
                let v = &r[j] * c;
                r[i] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.data[i] {
            *v = -std::mem::take(v);
        }
    }
}

/// `left · m · right = diag(invariants, 0, …)` with unimodular `left` and
/// `right`; the inverses are tracked alongside.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Nonzero invariant factors, positive, each dividing the next.
    pub invariants: Vec<BigInt>,
    pub left: Matrix,
    pub left_inv: Matrix,
    pub right: Matrix,
    pub right_inv: Matrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

struct Reduction {
    m: Matrix,
    left: Matrix,
    left_inv: Matrix,
    right: Matrix,
    right_inv: Matrix,
}

impl Reduction {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.m.swap_rows(i, j);
            self.left.swap_rows(i, j);
            self.left_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            self.m.swap_cols(i, j);
            self.right.swap_cols(i, j);
            self.right_inv.swap_rows(i, j);
        }
    }

    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        self.m.add_row(i, j, c);
        self.left.add_row(i, j, c);
        self.left_inv.add_col(j, i, &-c);
    }

    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        self.m.add_col(i, j, c);
        self.right.add_col(i, j, c);
        self.right_inv.add_row(j, i, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.left.negate_row(i);
        for r in &mut self.left_inv.data {
            r[i] = -std::mem::take(&mut r[i]);
        }
    }

    /// Position of a nonzero entry of least absolute value at or beyond `(t, t)`.
    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m.rows {
            for j in t..self.m.cols {
                let v = &self.m.data[i][j];
                if v.is_zero() {
                    continue;
                }
                if best.map_or(true, |(a, b)| v.abs() < self.m.data[a][b].abs()) {
                    best = Some((i, j));
                    if v.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Clears row and column `t` apart from the pivot. Returns false if a
    /// remainder appeared and the pivot has to be chosen again.
    fn clear(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.m.rows {
            if self.m.data[i][t].is_zero() {
                continue;
            }
            let q = self.m.data[i][t].div_floor(&self.m.data[t][t]);
            self.add_row(i, t, &-q);
            clean &= self.m.data[i][t].is_zero();
        }
        for j in t + 1..self.m.cols {
            if self.m.data[t][j].is_zero() {
                continue;
            }
            let q = self.m.data[t][j].div_floor(&self.m.data[t][t]);
            self.add_col(j, t, &-q);
            clean &= self.m.data[t][j].is_zero();
        }
        clean
    }
}

/// Smith normal form by row and column reduction, pivoting on an entry of
/// least absolute value.
pub fn smith(m: &Matrix) -> Smith {
    let mut r = Reduction {
        left: Matrix::identity(m.rows),
        left_inv: Matrix::identity(m.rows),
        right: Matrix::identity(m.cols),
        right_inv: Matrix::identity(m.cols),
        m: m.clone(),
    };
    let mut invariants = Vec::new();
    let mut t = 0;
    while let Some((i, j)) = r.smallest(t) {
        r.swap_rows(t, i);
        r.swap_cols(t, j);
        loop {
            if !r.clear(t) {
                if let Some((i, j)) = r.smallest(t) {
                    r.swap_rows(t, i);
                    r.swap_cols(t, j);
                }
                continue;
            }
            let pivot = r.m.data[t][t].clone();
            let stray = (t + 1..r.m.rows)
                .find(|&i| (t + 1..r.m.cols).any(|j| !r.m.data[i][j].is_multiple_of(&pivot)));
            match stray {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.m.data[t][t].is_negative() {
            r.negate_row(t);
        }
        invariants.push(r.m.data[t][t].clone());
        t += 1;
    }
    Smith {
        invariants,
        left: r.left,
        left_inv: r.left_inv,
        right: r.right,
        right_inv: r.right_inv,
    }
}
