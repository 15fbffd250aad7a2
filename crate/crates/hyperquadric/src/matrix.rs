//! Small square matrices with entries in 𝔄^δ.
//!
//! Since 𝔄^δ is commutative, determinants and adjugates are given by the usual
//! cofactor formulas.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{AElem, AlgebraError, Delta, NumElem};
use crate::scalar::Scalar;

/// A square `N × N` matrix over 𝔄^δ.
#[derive(Clone, PartialEq)]
pub struct Mat<S, const N: usize> {
    pub delta: Delta,
    pub m: [[AElem<S>; N]; N],
}

pub type Mat3<S> = Mat<S, 3>;
pub type Mat4<S> = Mat<S, 4>;

impl<S: Scalar, const N: usize> Mat<S, N> {
    pub fn from_fn(delta: Delta, mut f: impl FnMut(usize, usize) -> AElem<S>) -> Self {
        Mat { delta, m: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))) }
    }

    pub fn zero(delta: Delta) -> Self {
        Self::from_fn(delta, |_, _| AElem::zero(delta))
    }

    pub fn identity(delta: Delta) -> Self {
        Self::from_fn(delta, |i, j| if i == j { AElem::one(delta) } else { AElem::zero(delta) })
    }

    pub fn get(&self, i: usize, j: usize) -> &AElem<S> {
        &self.m[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: AElem<S>) {
        self.m[i][j] = x;
    }

    /// Entrywise conjugation.
    pub fn conj(&self) -> Self {
        Self::from_fn(self.delta, |i, j| self.m[i][j].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.delta, |i, j| self.m[j][i].clone())
    }

    /// Conjugate transpose (transposition of the block matrix, conjugation of entries).
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.delta, |i, j| self.m[j][i].conj())
    }

    pub fn scale(&self, s: &AElem<S>) -> Self {
        Self::from_fn(self.delta, |i, j| self.m[i][j].clone() * s.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(AElem::is_zero)
    }

    pub fn trace(&self) -> AElem<S> {
        (0..N).fold(AElem::zero(self.delta), |acc, i| acc + self.m[i][i].clone())
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn det(&self) -> AElem<S> {
        det_rec(self.delta, &self.rows())
    }

    fn rows(&self) -> Vec<Vec<AElem<S>>> {
        self.m.iter().map(|r| r.to_vec()).collect()
    }

    /// Transposed cofactor matrix.
    pub fn adjugate(&self) -> Self {
        let rows = self.rows();
        Self::from_fn(self.delta, |i, j| {
            let minor: Vec<Vec<AElem<S>>> = rows
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != j)
                .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != i).map(|(_, x)| x.clone()).collect())
                .collect();
            let d = det_rec(self.delta, &minor);
            if (i + j) % 2 == 0 {
                d
            } else {
                -d
            }
        })
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let di = self.det().inv()?;
        Ok(self.adjugate().scale(&di))
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, x: &[AElem<S>; N]) -> [AElem<S>; N] {
        std::array::from_fn(|j| (0..N).fold(AElem::zero(self.delta), |acc, k| acc + x[k].clone() * self.m[k][j].clone()))
    }

    pub fn to_c64(&self) -> Mat<num_complex::Complex64, N> {
        Mat::from_fn(self.delta, |i, j| self.m[i][j].to_c64())
    }

    /// `self·other - other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.clone() * other.clone() - other.clone() * self.clone()
    }
}

impl<const N: usize> Mat<num_complex::Complex64, N> {
    pub fn norm_max(&self) -> f64 {
        self.m.iter().flatten().map(NumElem::norm_max).fold(0.0, f64::max)
    }
}

fn det_rec<S: Scalar>(delta: Delta, rows: &[Vec<AElem<S>>]) -> AElem<S> {
    let n = rows.len();
    if n == 0 {
        return AElem::one(delta);
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = AElem::zero(delta);
    for c in 0..n {
        if rows[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<AElem<S>>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = rows[0][c].clone() * det_rec(delta, &minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

impl<S: Scalar, const N: usize> Add for Mat<S, N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::from_fn(self.delta, |i, j| self.m[i][j].clone() + o.m[i][j].clone())
    }
}

impl<S: Scalar, const N: usize> Sub for Mat<S, N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::from_fn(self.delta, |i, j| self.m[i][j].clone() - o.m[i][j].clone())
    }
}

impl<S: Scalar, const N: usize> Neg for Mat<S, N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(self.delta, |i, j| -self.m[i][j].clone())
    }
}

impl<S: Scalar, const N: usize> Mul for Mat<S, N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::from_fn(self.delta, |i, j| {
            let mut acc = AElem::zero(self.delta);
            for k in 0..N {
                if self.m[i][k].is_zero() || o.m[k][j].is_zero() {
                    continue;
                }
                acc += self.m[i][k].clone() * o.m[k][j].clone();
            }
            acc
        })
    }
}

impl<S: fmt::Debug, const N: usize> fmt::Debug for Mat<S, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}
