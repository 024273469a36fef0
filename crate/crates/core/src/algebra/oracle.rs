//! Literal `n x n` clock and shift matrices over Q(eps_n), used as an
//! independent model of the clock-shift presentation.

use super::{AlgebraElement, Family};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct MatrixModel {
    n: u32,
    clock: Matrix,
    shift: Matrix,
}

impl MatrixModel {
    /// `p = diag(1, eps, ..., eps^{n-1})`; `qh` has `1` in the top-right corner
    /// and `eps^i` at `(i, i-1)`.
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("matrix model needs n >= 2".into()));
        }
        let size = n as usize;
        let mut clock = Matrix::zeros(size, size);
        let mut shift = Matrix::zeros(size, size);
        for i in 0..size {
            clock.set(i, i, Scalar::eps(n, i as i64));
        }
        shift.set(0, size - 1, Scalar::one());
        for i in 1..size {
            shift.set(i, i - 1, Scalar::eps(n, i as i64));
        }
        Ok(Self { n, clock, shift })
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn clock(&self) -> &Matrix {
        &self.clock
    }

    pub fn shift(&self) -> &Matrix {
        &self.shift
    }

    /// `p^a qh^b`.
    pub fn basis_matrix(&self, a: u32, b: u32) -> Matrix {
        self.clock.pow(a).mul(&self.shift.pow(b))
    }

    pub fn model(&self, u: &AlgebraElement) -> Result<Matrix> {
        if u.presentation().family() != (Family::ClockShift { n: self.n }) {
            return Err(Error::PresentationMismatch);
        }
        let size = self.n as usize;
        let mut acc = Matrix::zeros(size, size);
        for (m, c) in u.terms() {
            let e = m.exponents();
            let term = self.basis_matrix(e[0] as u32, e[1] as u32).scale(c);
            acc = add(&acc, &term);
        }
        Ok(acc)
    }

    /// Coordinates of every basis matrix as the rows of an `n^2 x n^2` matrix.
    pub fn coordinate_matrix(&self) -> Matrix {
        let n = self.n;
        let mut rows = vec![];
        for a in 0..n {
            for b in 0..n {
                let m = self.basis_matrix(a, b);
                let mut row = vec![];
                for i in 0..n as usize {
                    for j in 0..n as usize {
                        row.push(m.get(i, j).clone());
                    }
                }
                rows.push(row);
            }
        }
        Matrix::from_rows(rows)
    }
}

fn add(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, a.get(i, j) + b.get(i, j));
        }
    }
    out
}
