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

//! Dense operator algebra on the 16-dimensional space of four spin-1/2 qubits.
//!
//! Basis convention: qubit 1 is the most significant bit of the basis index,
//! spin up is bit value 0 and spin down is bit value 1. So `|↑↑↑↓⟩` has index 1
//! and `|↓↑↑↑⟩` has index 8. Units are ħ = 1 throughout.

use nalgebra::{DMatrix, SMatrix, SVector};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hermitian::{frobenius, unitarity_defect, HermitianEigen};
use crate::scalar::{cis, imag, lit, real, to_f64, tolerance, Real};

pub const NUM_QUBITS: usize = 4;
pub const DIM: usize = 1 << NUM_QUBITS;

pub type Operator16<T> = SMatrix<Complex<T>, DIM, DIM>;
pub type StateVec16<T> = SVector<Complex<T>, DIM>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];
}

/// Sign label for ladder operators, `χ_±` trajectories and bath exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value<T: Real>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }
}

/// Bit mask of qubit `n` (1-based) inside a basis index.
#[inline]
pub fn qubit_mask(n: usize) -> usize {
    1 << (NUM_QUBITS - n)
}

/// `M_z` of a basis state: `(4 - 2·#down) / 2`.
#[inline]
pub fn magnetization(index: usize) -> i32 {
    (NUM_QUBITS as i32 - 2 * index.count_ones() as i32) / 2
}

/// Basis indices of the `M_z = m` sector, ascending.
pub fn sector_indices(m: i32) -> Vec<usize> {
    (0..DIM)
        .filter(|&i| magnetization(i) == m)
        .collect()
}

/// Pauli matrix `σ_axis` acting on qubit `n ∈ 1..=4`.
pub fn pauli_op<T: Real>(n: usize, axis: PauliAxis) -> Result<Operator16<T>> {
    if !(1..=NUM_QUBITS).contains(&n) {
        return Err(Error::Argument(format!(
            "qubit index {n} out of range 1..={NUM_QUBITS}"
        )));
    }
    let mask = qubit_mask(n);
    let one = T::one();
    let mut op = Operator16::<T>::zeros();
    for col in 0..DIM {
        let down = col & mask != 0;
        match axis {
            PauliAxis::Z => op[(col, col)] = real(if down { -one } else { one }),
            PauliAxis::X => op[(col ^ mask, col)] = real(one),
            // σ_y|↑⟩ = i|↓⟩, σ_y|↓⟩ = -i|↑⟩
            PauliAxis::Y => op[(col ^ mask, col)] = imag(if down { -one } else { one }),
        }
    }
    Ok(op)
}

/// Collective angular momentum `J_axis = ½ Σ_n σ_axis^(n)`.
pub fn collective_j<T: Real>(axis: PauliAxis) -> Operator16<T> {
    let half = real(lit::<T>(0.5));
    (1..=NUM_QUBITS)
        .map(|n| pauli_op::<T>(n, axis).expect("qubit index in range"))
        .fold(Operator16::zeros(), |acc, s| acc + s)
        * half
}

/// `J_± = J_x ± i J_y`.
pub fn ladder<T: Real>(sign: Sign) -> Operator16<T> {
    let jx = collective_j::<T>(PauliAxis::X);
    let jy = collective_j::<T>(PauliAxis::Y) * imag(T::one());
    match sign {
        Sign::Plus => jx + jy,
        Sign::Minus => jx - jy,
    }
}

pub fn commutator<T: Real>(a: &Operator16<T>, b: &Operator16<T>) -> Operator16<T> {
    a * b - b * a
}

/// Frobenius norm of `AB - BA`.
pub fn commutator_norm<T: Real>(a: &Operator16<T>, b: &Operator16<T>) -> T {
    frobenius(&commutator(a, b))
}

/// Eigendecomposition of a Hermitian 16×16 operator, kept for repeated
/// propagation at many times.
#[derive(Clone, Debug)]
pub struct Spectrum16<T: Real> {
    pub values: SVector<T, DIM>,
    pub vectors: Operator16<T>,
}

impl<T: Real> Spectrum16<T> {
    pub fn new(h: &Operator16<T>) -> Result<Self> {
        let eig = HermitianEigen::new(DMatrix::from_iterator(DIM, DIM, h.iter().copied()))?;
        Ok(Self {
            values: SVector::from_iterator(eig.values.iter().copied()),
            vectors: Operator16::from_iterator(eig.vectors.iter().copied()),
        })
    }

    /// `exp(-i H t)`.
    pub fn propagator(&self, t: T) -> Operator16<T> {
        let mut scaled = self.vectors;
        for j in 0..DIM {
            let p = cis(-self.values[j] * t);
            for i in 0..DIM {
                scaled[(i, j)] *= p;
            }
        }
        scaled * self.vectors.adjoint()
    }

    /// `exp(-i H t) v`.
    pub fn evolve(&self, t: T, v: &StateVec16<T>) -> StateVec16<T> {
        let mut c = self.vectors.ad_mul(v);
        for j in 0..DIM {
            c[j] *= cis(-self.values[j] * t);
        }
        self.vectors * c
    }

    pub fn spread(&self) -> T {
        self.values.max() - self.values.min()
    }
}

/// `exp(-i H t)` for Hermitian `H`, via eigendecomposition.
///
/// Fails if `H` is not Hermitian within `1e-12` (relative to its largest
/// entry) or if the result is not unitary within `1e-12`.
pub fn expm_unitary<T: Real>(h: &Operator16<T>, t: T) -> Result<Operator16<T>> {
    let u = Spectrum16::new(h)?.propagator(t);
    let defect = unitarity_defect(&u);
    if defect > tolerance::<T>(1e-12) {
        return Err(Error::Validation(format!(
            "propagator failed unitarity check: max |U^dagger U - 1| = {:e}",
            to_f64(defect)
        )));
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::max_abs;

    type Op = Operator16<f64>;

    fn basis(i: usize) -> StateVec16<f64> {
        let mut v = StateVec16::zeros();
        v[i] = Complex::new(1.0, 0.0);
        v
    }

    #[test]
    fn sigma_z_on_last_qubit_sees_spin_down() {
        let z4 = pauli_op::<f64>(4, PauliAxis::Z).unwrap();
        assert!(max_abs(&(z4 * basis(1) + basis(1))) < 1e-15);
    }

    #[test]
    fn out_of_range_qubit_is_rejected() {
        assert!(matches!(pauli_op::<f64>(0, PauliAxis::X), Err(Error::Argument(_))));
        assert!(matches!(pauli_op::<f64>(5, PauliAxis::Z), Err(Error::Argument(_))));
    }

    #[test]
    fn su2_commutation_on_one_qubit() {
        let x = pauli_op::<f64>(1, PauliAxis::X).unwrap();
        let y = pauli_op::<f64>(1, PauliAxis::Y).unwrap();
        let z = pauli_op::<f64>(1, PauliAxis::Z).unwrap();
        let diff = commutator(&x, &y) - z * Complex::new(0.0, 2.0);
        assert!(max_abs(&diff) < 1e-15);
    }

    #[test]
    fn distinct_qubits_commute() {
        let x1 = pauli_op::<f64>(1, PauliAxis::X).unwrap();
        let y2 = pauli_op::<f64>(2, PauliAxis::Y).unwrap();
        assert_eq!(commutator_norm(&x1, &y2), 0.0);
    }

    #[test]
    fn pauli_product_table() {
        // σ_a σ_b = δ_ab 1 + i ε_abc σ_c
        let levi = |a: usize, b: usize, c: usize| -> f64 {
            match (a, b, c) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
                _ => 0.0,
            }
        };
        for n in 1..=4 {
            let s: Vec<Op> = PauliAxis::ALL
                .iter()
                .map(|&a| pauli_op(n, a).unwrap())
                .collect();
            for a in 0..3 {
                for b in 0..3 {
                    let mut expected = if a == b { Op::identity() } else { Op::zeros() };
                    for c in 0..3 {
                        expected += s[c] * Complex::new(0.0, levi(a, b, c));
                    }
                    assert!(max_abs(&(s[a] * s[b] - expected)) < 1e-14);
                }
            }
            for op in &s {
                assert!(crate::hermitian::hermiticity_defect(op) == 0.0);
                assert_eq!(op.trace(), Complex::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn jz_diagonal_follows_popcount() {
        let jz = collective_j::<f64>(PauliAxis::Z);
        for i in 0..DIM {
            let expected = (4.0 - 2.0 * i.count_ones() as f64) / 2.0;
            assert_eq!(jz[(i, i)], Complex::new(expected, 0.0));
            assert_eq!(magnetization(i) as f64, expected);
        }
        assert!(max_abs(&(jz * basis(1) - basis(1))) < 1e-15);
        let plus_one = (0..DIM).filter(|&i| jz[(i, i)].re == 1.0).count();
        assert_eq!(plus_one, 4);
    }

    #[test]
    fn sector_sizes_are_binomial() {
        let sizes: Vec<usize> = (-2..=2).map(|m| sector_indices(m).len()).collect();
        assert_eq!(sizes, vec![1, 4, 6, 4, 1]);
        assert_eq!(sector_indices(1), vec![1, 2, 4, 8]);
    }

    #[test]
    fn ladder_algebra() {
        let jx = collective_j::<f64>(PauliAxis::X);
        let jz = collective_j::<f64>(PauliAxis::Z);
        let jp = ladder::<f64>(Sign::Plus);
        let jm = ladder::<f64>(Sign::Minus);
        assert!(max_abs(&(jx - (jp + jm) * Complex::new(0.5, 0.0))) < 1e-15);
        assert!(max_abs(&(commutator(&jz, &jp) - jp)) < 1e-15);
        assert!(max_abs(&(commutator(&jz, &jm) + jm)) < 1e-15);
        assert!(max_abs(&(jp * basis(0))) < 1e-15);
    }

    #[test]
    fn lowering_four_times_annihilates_every_state() {
        // Brute force over the computational basis: M_z decreases by one per
        // application and no state survives past M_z = -2.
        let jm = ladder::<f64>(Sign::Minus);
        let jz = collective_j::<f64>(PauliAxis::Z);
        for i in 0..DIM {
            let mut v = basis(i);
            let m0 = magnetization(i);
            for step in 1..=4 {
                v = jm * v;
                let m = m0 - step;
                if m < -2 {
                    assert!(max_abs(&v) < 1e-12, "index {i} step {step}");
                } else {
                    assert!(max_abs(&(jz * v - v * Complex::new(m as f64, 0.0))) < 1e-12);
                }
            }
        }
        // M_z = +1 states: two lowerings leave M_z = -1, four leave nothing.
        for &i in &[1usize, 2, 4, 8] {
            let v = jm * jm * jm * basis(i);
            assert!(max_abs(&v) > 0.1);
            assert!(max_abs(&(jm * v)) < 1e-12);
        }
    }

    #[test]
    fn commutator_norm_of_jx_jz_equals_norm_of_jy() {
        // [J_x, J_z] = -i J_y
        let jx = collective_j::<f64>(PauliAxis::X);
        let jy = collective_j::<f64>(PauliAxis::Y);
        let jz = collective_j::<f64>(PauliAxis::Z);
        let expected = frobenius(&(jy * Complex::new(0.0, 1.0)));
        assert!((commutator_norm(&jx, &jz) - expected).abs() < 1e-13);
        assert_eq!(commutator_norm(&jz, &(jz * jz)), 0.0);
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let u = expm_unitary(&Op::zeros(), 3.7).unwrap();
        assert!(max_abs(&(u - Op::identity())) < 1e-15);
    }

    #[test]
    fn expm_rejects_non_hermitian() {
        let mut h = Op::zeros();
        h[(0, 3)] = Complex::new(1.0, 0.0);
        assert!(matches!(expm_unitary(&h, 1.0), Err(Error::Validation(_))));
    }

    #[test]
    fn expm_works_in_single_precision() {
        let jx = collective_j::<f32>(PauliAxis::X);
        let u = expm_unitary(&jx, 0.8f32).unwrap();
        let v = expm_unitary(&jx, -0.8f32).unwrap();
        assert!(max_abs(&(u * v - Operator16::<f32>::identity())) < 1e-5);
    }
}
