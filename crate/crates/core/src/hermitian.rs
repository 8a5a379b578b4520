// Copyright 2026 The zeno-dfs Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Hermitian eigendecomposition and the exponentials built on it.

use nalgebra::{DMatrix, DVector, Dim, Matrix, RawStorage, SymmetricEigen};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cis, real, tolerance, to_f64, Real};

/// Largest elementwise modulus.
pub fn max_abs<T, R, C, S>(m: &Matrix<Complex<T>, R, C, S>) -> T
where
    T: Real,
    R: Dim,
    C: Dim,
    S: RawStorage<Complex<T>, R, C>,
{
    m.iter()
        .map(|z| z.norm_sqr())
        .fold(T::zero(), |a, b| if b > a { b } else { a })
        .sqrt()
}

/// Frobenius norm.
pub fn frobenius<T, R, C, S>(m: &Matrix<Complex<T>, R, C, S>) -> T
where
    T: Real,
    R: Dim,
    C: Dim,
    S: RawStorage<Complex<T>, R, C>,
{
    m.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt()
}

/// `max |A - A†|` for a square matrix.
pub fn hermiticity_defect<T, D, S>(m: &Matrix<Complex<T>, D, D, S>) -> T
where
    T: Real,
    D: Dim,
    S: RawStorage<Complex<T>, D, D>,
{
    let n = m.nrows();
    let mut worst = T::zero();
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm_sqr();
            if d > worst {
                worst = d;
            }
        }
    }
    worst.sqrt()
}

/// Spectral decomposition `H = V diag(E) V†` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T: Real> {
    pub values: DVector<T>,
    pub vectors: DMatrix<Complex<T>>,
}

impl<T: Real> HermitianEigen<T> {
    /// Decomposes `h`, rejecting inputs whose Hermiticity defect exceeds
    /// `1e-12 * max(1, max|h|)` (scaled to the precision of `T`).
    pub fn new(h: DMatrix<Complex<T>>) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::Argument(format!(
                "matrix is {}x{}, expected square",
                h.nrows(),
                h.ncols()
            )));
        }
        let scale = max_abs(&h).max(T::one());
        let defect = hermiticity_defect(&h);
        if defect > tolerance::<T>(1e-12) * scale {
            return Err(Error::Validation(format!(
                "matrix is not Hermitian: max |A - A^dagger| = {:e}",
                to_f64(defect)
            )));
        }
        let sym = (&h + h.adjoint()) * real(crate::scalar::lit::<T>(0.5));
        let eig = SymmetricEigen::new(sym);
        Ok(Self {
            values: eig.eigenvalues,
            vectors: eig.eigenvectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `exp(-i H t)`.
    pub fn propagator(&self, t: T) -> DMatrix<Complex<T>> {
        self.phase_function(|e| cis(-e * t))
    }

    /// `V diag(g(E)) V†` for an arbitrary complex spectral function.
    pub fn phase_function(&self, g: impl Fn(T) -> Complex<T>) -> DMatrix<Complex<T>> {
        let n = self.dim();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            let p = g(self.values[j]);
            for i in 0..n {
                scaled[(i, j)] *= p;
            }
        }
        scaled * self.vectors.adjoint()
    }

    /// `exp(-i H t) v` without forming the propagator.
    pub fn evolve(&self, t: T, v: &DVector<Complex<T>>) -> DVector<Complex<T>> {
        let mut c = self.vectors.ad_mul(v);
        for (cj, &e) in c.iter_mut().zip(self.values.iter()) {
            *cj *= cis(-e * t);
        }
        &self.vectors * c
    }

    /// Largest minus smallest eigenvalue.
    pub fn spread(&self) -> T {
        if self.dim() == 0 {
            return T::zero();
        }
        self.values.max() - self.values.min()
    }
}

/// Largest elementwise deviation of `U†U` from the identity.
pub fn unitarity_defect<T, D, S>(u: &Matrix<Complex<T>, D, D, S>) -> T
where
    T: Real,
    D: Dim,
    S: RawStorage<Complex<T>, D, D>,
{
    let n = u.nrows();
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..n {
                acc += u[(k, i)].conj() * u[(k, j)];
            }
            if i == j {
                acc -= Complex::new(T::one(), T::zero());
            }
            let d = acc.norm_sqr();
            if d > worst {
                worst = d;
            }
        }
    }
    worst.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hermitian_input() {
        let mut m = DMatrix::<Complex<f64>>::zeros(2, 2);
        m[(0, 1)] = Complex::new(1.0, 0.0);
        assert!(matches!(HermitianEigen::new(m), Err(Error::Validation(_))));
    }

    #[test]
    fn rejects_rectangular_input() {
        let m = DMatrix::<Complex<f64>>::zeros(2, 3);
        assert!(matches!(HermitianEigen::new(m), Err(Error::Argument(_))));
    }

    #[test]
    fn evolve_matches_propagator() {
        let h = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex::new(1.0, 0.0),
                Complex::new(0.3, -0.2),
                Complex::new(0.3, 0.2),
                Complex::new(-0.5, 0.0),
            ],
        );
        let eig = HermitianEigen::new(h).unwrap();
        let v = DVector::from_vec(vec![Complex::new(0.6, 0.0), Complex::new(0.0, 0.8)]);
        let a = eig.evolve(0.7, &v);
        let b = eig.propagator(0.7) * &v;
        assert!(max_abs(&(a - b)) < 1e-15);
        assert!(unitarity_defect(&eig.propagator(0.7)) < 1e-14);
    }
}
