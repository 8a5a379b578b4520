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

//! The `M_z = +1` decoherence-free subspace and its two abstract qubits.
//!
//! Ordered basis: `|0,0⟩ ≡ |↑↑↑↓⟩`, `|0,1⟩ ≡ |↑↑↓↑⟩`, `|1,0⟩ ≡ |↑↓↑↑⟩`,
//! `|1,1⟩ ≡ |↓↑↑↑⟩`.

use nalgebra::{SMatrix, SVector};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hermitian::frobenius;
use crate::scalar::{lit, real, to_f64, tolerance, Real};
use crate::spin::{Operator16, StateVec16};

pub const DFS_DIM: usize = 4;

/// Computational-basis indices of the ordered DFS basis.
pub const DFS_BASIS: [usize; DFS_DIM] = [1, 2, 4, 8];

/// Mirror subspace `M_z = -1` (single spin up), same abstract ordering.
/// Representable but not used by the gate set.
pub const DFS_BASIS_MIRROR: [usize; DFS_DIM] = [14, 13, 11, 7];

pub type DfsVector<T> = SVector<Complex<T>, DFS_DIM>;
/// 4×4 operator in the ordered DFS basis (restricted Hamiltonians and gate unitaries).
pub type DfsMatrix<T> = SMatrix<Complex<T>, DFS_DIM, DFS_DIM>;
pub type Hermitian4<T> = DfsMatrix<T>;

pub fn dfs_basis_indices() -> [usize; DFS_DIM] {
    DFS_BASIS
}

/// What `encode` does with an input that is not unit-norm.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    #[default]
    Strict,
    Normalize,
}

/// Abstract state `a00|0,0⟩ + a01|0,1⟩ + a10|1,0⟩ + a11|1,1⟩`.
pub fn abstract_state<T: Real>(amplitudes: [Complex<T>; DFS_DIM]) -> DfsVector<T> {
    DfsVector::from_row_slice(&amplitudes)
}

/// `(|1,0⟩ - |0,0⟩)/√2`.
pub fn default_initial_state<T: Real>() -> DfsVector<T> {
    let h = real(lit::<T>(0.5).sqrt());
    let z = real(T::zero());
    abstract_state([-h, z, h, z])
}

/// Embeds an abstract state into the 16-dimensional space.
pub fn encode<T: Real>(v: &DfsVector<T>, mode: Normalization) -> Result<StateVec16<T>> {
    let norm = v.norm_squared().sqrt();
    let v = match mode {
        Normalization::Strict => {
            if (norm - T::one()).abs() > tolerance::<T>(1e-12) {
                return Err(Error::Validation(format!(
                    "DFS state has norm {}, expected 1",
                    to_f64(norm)
                )));
            }
            *v
        }
        Normalization::Normalize => {
            if norm == T::zero() {
                return Err(Error::Validation("DFS state is the zero vector".into()));
            }
            v.unscale(norm)
        }
    };
    let mut s = StateVec16::zeros();
    for (k, &idx) in DFS_BASIS.iter().enumerate() {
        s[idx] = v[k];
    }
    Ok(s)
}

/// DFS amplitudes of `s` (unnormalized) and the squared norm outside the DFS.
pub fn decode<T: Real>(s: &StateVec16<T>) -> (DfsVector<T>, T) {
    let mut v = DfsVector::zeros();
    for (k, &idx) in DFS_BASIS.iter().enumerate() {
        v[k] = s[idx];
    }
    let inside = v.norm_squared();
    let total = s.norm_squared();
    let leak = (total - inside).max(T::zero());
    (v, leak)
}

/// `B_ij = ⟨basis_i|A|basis_j⟩` in the ordered DFS basis.
pub fn restrict<T: Real>(a: &Operator16<T>) -> DfsMatrix<T> {
    DfsMatrix::from_fn(|i, j| a[(DFS_BASIS[i], DFS_BASIS[j])])
}

/// Orthogonal projector onto the DFS.
pub fn projector<T: Real>() -> Operator16<T> {
    let mut p = Operator16::zeros();
    for &i in &DFS_BASIS {
        p[(i, i)] = real(T::one());
    }
    p
}

/// `‖(1 - P) U P‖_F`: how much of the DFS an operator maps outside it.
pub fn leakage_norm<T: Real>(u: &Operator16<T>) -> T {
    let p = projector::<T>();
    let q = Operator16::identity() - p;
    frobenius(&(q * u * p))
}
