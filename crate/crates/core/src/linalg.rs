//! Dense exact matrices.
//!
//! Ranks are computed with fraction-free (Bareiss) elimination over the
//! integers; rational matrices are first cleared of denominators row by row,
//! which does not change the rank.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self
    where
        T: One,
    {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::LengthMismatch { expected: c, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
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

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = &T> + '_ {
        (0..self.rows).map(move |i| &self.data[i * self.cols + j])
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[T]>::to_vec).collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + core::ops::Mul<Output = T> + core::ops::Add<Output = T>,
{
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::LengthMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::LengthMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a.clone() * rhs[(k, l)].clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }
}

/// Rank of an integer matrix by fraction-free Gaussian elimination.
pub fn rank_integer(m: &Matrix<BigInt>) -> usize {
    let mut a = m.to_rows();
    let rows = m.rows();
    let cols = m.cols();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let lead = core::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let num = &pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = num.div_floor(&prev);
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Rank of a rational matrix.
pub fn rank_rational(m: &Matrix<BigRational>) -> usize {
    let mut ints = Matrix::<BigInt>::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        let lcm = m.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        for j in 0..m.cols() {
            let x = &m[(i, j)];
            ints[(i, j)] = x.numer() * (&lcm / x.denom());
        }
    }
    rank_integer(&ints)
}

/// Symmetric matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix(Matrix<BigRational>);

impl SymMatrix {
    pub fn new(m: Matrix<BigRational>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSymmetric);
        }
        for i in 0..m.rows() {
            for j in 0..i {
                if m[(i, j)] != m[(j, i)] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(Self(m))
    }

    pub fn from_integers(m: &Matrix<BigInt>) -> Result<Self> {
        Self::new(m.map(|x| BigRational::from_integer(x.clone())))
    }

    /// `gᵀ g`, positive semidefinite by construction.
    pub fn gram(g: &Matrix<BigRational>) -> Self {
        let gram = g.transpose().mul(g).expect("gᵀg is always conformable");
        Self(gram)
    }

    pub fn zeros(n: usize) -> Self {
        Self(Matrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix<BigRational> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<BigRational> {
        self.0
    }

    pub fn rank(&self) -> usize {
        rank_rational(&self.0)
    }

    pub fn nullity(&self) -> usize {
        self.dim() - self.rank()
    }

    /// Quadratic form `xᵀ A x`.
    pub fn quadratic_form(&self, x: &[BigRational]) -> Result<BigRational> {
        let ax = self.0.mul_vec(x)?;
        Ok(ax.iter().zip(x).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
    }

    /// Symmetric elimination without pivoting (LDLᵀ). A positive
    /// semidefinite matrix has non-negative pivots, and a zero pivot forces
    /// its whole remaining row to vanish.
    pub fn is_positive_semidefinite(&self) -> bool {
        let n = self.dim();
        let mut a = self.0.to_rows();
        for k in 0..n {
            let pivot = a[k][k].clone();
            if pivot.is_negative() {
                return false;
            }
            if pivot.is_zero() {
                if a[k][k + 1..].iter().any(|x| !x.is_zero()) {
                    return false;
                }
                continue;
            }
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &pivot;
                for j in k + 1..n {
                    let v = &a[i][j] - &factor * &a[k][j];
                    a[i][j] = v;
                }
                a[i][k] = BigRational::zero();
            }
        }
        true
    }

    /// Kronecker sum `A ⊗ I + I ⊗ B`.
    pub fn kronecker_sum(&self, other: &Self) -> Self {
        let left = self.0.kron(&Matrix::identity(other.dim()));
        let right = Matrix::identity(self.dim()).kron(&other.0);
        Self(left.add(&right).expect("both factors have the same shape"))
    }
}
