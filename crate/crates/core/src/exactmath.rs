//! Exact integer and rational linear algebra.
//!
//! Everything here works on arbitrary-precision integers. Elimination is
//! fraction-free (Bareiss), so intermediate entries stay bounded by minors of
//! the input instead of growing like products of pivots.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer used throughout the crate.
pub type Int = BigInt;
/// Exact rational in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

/// Gcd of all entries (0 for the zero vector).
pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides out the content of `v`, leaving a primitive vector (or zero).
pub fn make_primitive(v: &mut [Int]) {
    let g = gcd_all(v);
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Dense integer matrix stored in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i).to_vec())).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed for the zero-row case.
    pub fn from_rows(rows: &[Vec<Int>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length must equal column count");
            data.extend(r.iter().cloned());
        }
        Self { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows(&rows, cols)
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[Int]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] += c * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j] * c;
            self.data[target * self.cols + j] += s;
        }
    }

    /// col[target] += c * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source] * c;
            self.data[i * self.cols + target] += s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

/// Fraction-free forward elimination in place. Returns the pivot columns and
/// the sign of the row permutation applied.
fn bareiss_echelon(a: &mut [Vec<Int>], cols: usize) -> (Vec<usize>, bool) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = Int::one();
    let mut r = 0;
    let mut flipped = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            flipped = !flipped;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = Int::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (pivots, flipped)
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    let mut rows = m.to_rows();
    bareiss_echelon(&mut rows, m.cols()).0.len()
}

/// Rank of a list of integer vectors of common length `cols`.
pub fn rank_of_rows(rows: &[Vec<Int>], cols: usize) -> usize {
    let mut rows = rows.to_vec();
    bareiss_echelon(&mut rows, cols).0.len()
}

/// Determinant of a square matrix.
pub fn determinant(m: &IntMatrix) -> Int {
    assert_eq!(m.rows(), m.cols(), "determinant needs a square matrix");
    let n = m.rows();
    if n == 0 {
        return Int::one();
    }
    let mut rows = m.to_rows();
    let (pivots, flipped) = bareiss_echelon(&mut rows, n);
    if pivots.len() < n {
        return Int::zero();
    }
    let det = rows[n - 1][n - 1].clone();
    if flipped {
        -det
    } else {
        det
    }
}

/// One exact solution of `m x = rhs`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve_rational(m: &IntMatrix, rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(rhs.len(), m.rows(), "rhs length must equal row count");
    let n = m.cols();
    let denom = rhs.iter().fold(Int::one(), |l, q| l.lcm(q.denom()));
    let mut aug: Vec<Vec<Int>> = (0..m.rows())
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push((&rhs[i] * Rational::from_integer(denom.clone())).to_integer());
            row
        })
        .collect();
    let (pivots, _) = bareiss_echelon(&mut aug, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut acc = Rational::from_integer(aug[r][n].clone());
        for j in c + 1..n {
            if !aug[r][j].is_zero() {
                acc -= Rational::from_integer(aug[r][j].clone()) * &x[j];
            }
        }
        x[c] = acc / Rational::from_integer(aug[r][c].clone());
    }
    let scale = Rational::from_integer(denom);
    Some(x.into_iter().map(|v| v / &scale).collect())
}

/// Result of a Smith normal form computation: `left * m * right` equals the
/// diagonal matrix with entries `diagonal` (each dividing the next), and
/// `right_inverse` is the exact inverse of `right`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<Int>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub right_inverse: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut right_inv = IntMatrix::identity(cols);

    // Column operations are mirrored on `right` and inverted on `right_inv`.
    let col_swap = |a: &mut IntMatrix, r: &mut IntMatrix, ri: &mut IntMatrix, x: usize, y: usize| {
        a.swap_cols(x, y);
        r.swap_cols(x, y);
        ri.swap_rows(x, y);
    };
    let col_add = |a: &mut IntMatrix, r: &mut IntMatrix, ri: &mut IntMatrix, t: usize, s: usize, c: &Int| {
        a.add_col_multiple(t, s, c);
        r.add_col_multiple(t, s, c);
        ri.add_row_multiple(s, t, &-c);
    };

    let steps = rows.min(cols);
    let mut diag = Vec::with_capacity(steps);
    for t in 0..steps {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            col_swap(&mut a, &mut right, &mut right_inv, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if !a[(i, t)].is_zero() {
                    let q = a[(i, t)].div_floor(&a[(t, t)]);
                    a.add_row_multiple(i, t, &-&q);
                    left.add_row_multiple(i, t, &-&q);
                    clean &= a[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero() {
                    let q = a[(t, j)].div_floor(&a[(t, t)]);
                    col_add(&mut a, &mut right, &mut right_inv, j, t, &-&q);
                    clean &= a[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&a[(t, t)]));
            match bad {
                Some((i, _)) => {
                    a.add_row_multiple(t, i, &Int::one());
                    left.add_row_multiple(t, i, &Int::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        diag.push(a[(t, t)].clone());
    }
    SmithForm { diagonal: diag, left, right, right_inverse: right_inv }
}

/// Index of a lattice, either finite or infinite (rank deficient).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(Int),
    Infinite,
}

/// Index of the lattice spanned by the rows of `generators` inside Z^cols.
pub fn lattice_index(generators: &IntMatrix) -> LatticeIndex {
    let snf = smith_normal_form(generators);
    if snf.rank() < generators.cols() {
        return LatticeIndex::Infinite;
    }
    LatticeIndex::Finite(snf.diagonal.iter().fold(Int::one(), |p, d| p * d))
}

/// Basis of the saturation Z^cols ∩ span_Q(rows of `generators`).
pub fn saturation_basis(generators: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(generators);
    let k = snf.rank();
    let rows: Vec<Vec<Int>> = (0..k).map(|i| snf.right_inverse.row(i).to_vec()).collect();
    IntMatrix::from_rows(&rows, generators.cols())
}
