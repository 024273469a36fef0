//! Dense matrices over [`Scalar`] with fraction-free (Bareiss) elimination.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn pow(&self, e: u32) -> Matrix {
        (0..e).fold(Matrix::identity(self.rows), |acc, _| acc.mul(self))
    }

    /// Rank by Bareiss elimination; every division is exact.
    pub fn rank(&self) -> usize {
        if let Some(rows) = self.rational_rows() {
            return rational_rank(rows);
        }
        let mut m: Vec<Vec<Scalar>> =
            (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect();
        let mut prev = Scalar::one();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][c].clone();
            for i in rank + 1..self.rows {
                let lead = std::mem::take(&mut m[i][c]);
                for j in c + 1..self.cols {
                    let v = &(&pivot * &m[i][j]) - &(&lead * &m[rank][j]);
                    m[i][j] = &v / &prev;
                }
            }
            prev = pivot;
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

impl Matrix {
    /// The entries as rationals, if none involves `q` or `eps`.
    fn rational_rows(&self) -> Option<Vec<Vec<BigRational>>> {
        let mut rows = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for c in 0..self.cols {
                row.push(self.get(r, c).as_constant()?.as_rational()?.clone());
            }
            rows.push(row);
        }
        Some(rows)
    }
}

/// Plain Gaussian elimination over Q, for matrices without symbolic entries.
fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in rank + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..cols {
                let v = &m[rank][j] * &f;
                m[i][j] -= v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::integer(x)).collect()).collect())
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(int_matrix(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(int_matrix(&[&[0, 1, 0], &[0, 0, 1], &[0, 1, 1]]).rank(), 2);
        assert_eq!(Matrix::identity(4).rank(), 4);
        assert_eq!(Matrix::zeros(3, 5).rank(), 0);
        assert_eq!(int_matrix(&[&[0, 0], &[0, 3], &[1, 0]]).rank(), 2);
    }

    #[test]
    fn rank_over_rational_functions() {
        let q = Scalar::q();
        let one = Scalar::one();
        // [[1, q], [q, q^2]] is singular, [[1, q], [q, 1]] is not
        let m = Matrix::from_rows(vec![vec![one.clone(), q.clone()], vec![q.clone(), &q * &q]]);
        assert_eq!(m.rank(), 1);
        let m = Matrix::from_rows(vec![vec![one.clone(), q.clone()], vec![q.clone(), one]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn multiplication() {
        let a = int_matrix(&[&[1, 2], &[3, 4]]);
        let b = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), int_matrix(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.pow(0), Matrix::identity(2));
    }
}
