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

//! Spin-boson control Hamiltonians, the five-gate universal set, and the
//! checks that tie them to their target unitaries inside the DFS.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix3, Vector3};
use num_complex::Complex;

use crate::dfs::{leakage_norm, restrict, DfsMatrix, DFS_DIM};
use crate::error::{Error, Result};
use crate::hermitian::{hermiticity_defect, max_abs};
use crate::scalar::{cis, lit, real, Real};
use crate::spin::{
    collective_j, commutator_norm, expm_unitary, pauli_op, Operator16, PauliAxis, NUM_QUBITS,
};

/// Ordered qubit pairs `(m, n)` with `m < n`, the index order used by the
/// per-pair coupling arrays.
pub const PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

pub fn pair_index(m: usize, n: usize) -> Option<usize> {
    let (a, b) = if m < n { (m, n) } else { (n, m) };
    PAIRS.iter().position(|&p| p == (a, b))
}

fn sigma<T: Real>(n: usize, axis: PauliAxis) -> Operator16<T> {
    pauli_op(n, axis).expect("qubit index in range")
}

/// Local fields and two-qubit coupling matrices of the general spin-boson
/// control Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralCoupling<T: Real> {
    /// `B^(n)` for qubits 1..=4.
    pub fields: [Vector3<T>; NUM_QUBITS],
    /// `G^(mn)` for the pairs in [`PAIRS`] order; rows and columns are (x, y, z).
    pub couplings: [Matrix3<T>; 6],
}

impl<T: Real> Default for GeneralCoupling<T> {
    fn default() -> Self {
        Self {
            fields: [Vector3::zeros(); NUM_QUBITS],
            couplings: [Matrix3::zeros(); 6],
        }
    }
}

impl<T: Real> GeneralCoupling<T> {
    /// Largest entry that is not of the `J_z`-commuting form:
    /// `B_x`, `B_y`, any `G` entry mixing z with x/y, `G_xx - G_yy`, `G_xy + G_yx`.
    pub fn forbidden_magnitude(&self) -> T {
        let mut worst = T::zero();
        let mut see = |x: T| {
            if x.abs() > worst {
                worst = x.abs();
            }
        };
        for b in &self.fields {
            see(b[0]);
            see(b[1]);
        }
        for g in &self.couplings {
            see(g[(0, 2)]);
            see(g[(1, 2)]);
            see(g[(2, 0)]);
            see(g[(2, 1)]);
            see(g[(0, 0)] - g[(1, 1)]);
            see(g[(0, 1)] + g[(1, 0)]);
        }
        worst
    }
}

/// The 22 independent coefficients of the `J_z`-commuting Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutingCoupling<T: Real> {
    pub bz: [T; NUM_QUBITS],
    pub gzz: [T; 6],
    pub gxx: [T; 6],
    pub gxy: [T; 6],
}

impl<T: Real> Default for CommutingCoupling<T> {
    fn default() -> Self {
        Self {
            bz: [T::zero(); NUM_QUBITS],
            gzz: [T::zero(); 6],
            gxx: [T::zero(); 6],
            gxy: [T::zero(); 6],
        }
    }
}

impl<T: Real> CommutingCoupling<T> {
    pub const NUM_PARAMETERS: usize = 22;

    /// Parameters in the order `bz, gzz, gxx, gxy`.
    pub fn to_vec(&self) -> Vec<T> {
        self.bz
            .iter()
            .chain(&self.gzz)
            .chain(&self.gxx)
            .chain(&self.gxy)
            .copied()
            .collect()
    }

    pub fn from_slice(p: &[T]) -> Result<Self> {
        if p.len() != Self::NUM_PARAMETERS {
            return Err(Error::Argument(format!(
                "expected {} parameters, got {}",
                Self::NUM_PARAMETERS,
                p.len()
            )));
        }
        let mut c = Self::default();
        c.bz.copy_from_slice(&p[0..4]);
        c.gzz.copy_from_slice(&p[4..10]);
        c.gxx.copy_from_slice(&p[10..16]);
        c.gxy.copy_from_slice(&p[16..22]);
        Ok(c)
    }

    /// The same Hamiltonian written as a general coupling.
    pub fn to_general(&self) -> GeneralCoupling<T> {
        let mut g = GeneralCoupling::default();
        for n in 0..NUM_QUBITS {
            g.fields[n] = Vector3::new(T::zero(), T::zero(), self.bz[n]);
        }
        for k in 0..6 {
            let (xx, xy, zz) = (self.gxx[k], self.gxy[k], self.gzz[k]);
            g.couplings[k] = Matrix3::new(
                xx, xy, T::zero(), //
                -xy, xx, T::zero(), //
                T::zero(), T::zero(), zz,
            );
        }
        g
    }
}

/// `H = -½ Σ_n B^(n)·Σ^(n) + ¼ Σ_{m<n} Σ^(m)ᵀ G^(mn) Σ^(n)`, symmetrized.
///
/// Returns the Hermitian part and the norm of the anti-Hermitian part that was
/// discarded (zero for real couplings on distinct qubits).
pub fn build_general<T: Real>(c: &GeneralCoupling<T>) -> (Operator16<T>, T) {
    let mut h = Operator16::zeros();
    let half = lit::<T>(0.5);
    let quarter = lit::<T>(0.25);
    for n in 1..=NUM_QUBITS {
        for (a, &axis) in PauliAxis::ALL.iter().enumerate() {
            let b = c.fields[n - 1][a];
            if b != T::zero() {
                h -= sigma::<T>(n, axis) * real(half * b);
            }
        }
    }
    for (k, &(m, n)) in PAIRS.iter().enumerate() {
        let g = &c.couplings[k];
        for (a, &ax_m) in PauliAxis::ALL.iter().enumerate() {
            for (b, &ax_n) in PauliAxis::ALL.iter().enumerate() {
                let w = g[(a, b)];
                if w != T::zero() {
                    h += sigma::<T>(m, ax_m) * sigma::<T>(n, ax_n) * real(quarter * w);
                }
            }
        }
    }
    let asym = hermiticity_defect(&h);
    let herm = (h + h.adjoint()) * real(half);
    (herm, asym)
}

/// `H = -½ Σ_n Bz_n σ_z^(n) + ¼ Σ_{m<n} [Gzz σ_zσ_z + Gxx (σ_xσ_x + σ_yσ_y)
/// + Gxy (σ_x^(m)σ_y^(n) - σ_y^(m)σ_x^(n))]`. Commutes with `J_z`.
pub fn build_commuting<T: Real>(c: &CommutingCoupling<T>) -> Operator16<T> {
    use PauliAxis::{X, Y, Z};
    let half = lit::<T>(0.5);
    let quarter = lit::<T>(0.25);
    let mut h = Operator16::zeros();
    for n in 1..=NUM_QUBITS {
        if c.bz[n - 1] != T::zero() {
            h -= sigma::<T>(n, Z) * real(half * c.bz[n - 1]);
        }
    }
    for (k, &(m, n)) in PAIRS.iter().enumerate() {
        if c.gzz[k] != T::zero() {
            h += sigma::<T>(m, Z) * sigma::<T>(n, Z) * real(quarter * c.gzz[k]);
        }
        if c.gxx[k] != T::zero() {
            let flip = sigma::<T>(m, X) * sigma::<T>(n, X) + sigma::<T>(m, Y) * sigma::<T>(n, Y);
            h += flip * real(quarter * c.gxx[k]);
        }
        if c.gxy[k] != T::zero() {
            let twist = sigma::<T>(m, X) * sigma::<T>(n, Y) - sigma::<T>(m, Y) * sigma::<T>(n, X);
            h += twist * real(quarter * c.gxy[k]);
        }
    }
    h
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    Cnot,
    T1,
    T2,
    H1,
    H2,
    Idle,
}

impl GateKind {
    /// The five gates of the universal set (excludes `Idle`).
    pub const UNIVERSAL: [GateKind; 5] = [
        GateKind::Cnot,
        GateKind::T1,
        GateKind::T2,
        GateKind::H1,
        GateKind::H2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Cnot => "cnot",
            GateKind::T1 => "t1",
            GateKind::T2 => "t2",
            GateKind::H1 => "h1",
            GateKind::H2 => "h2",
            GateKind::Idle => "idle",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cnot" => Ok(GateKind::Cnot),
            "t1" => Ok(GateKind::T1),
            "t2" => Ok(GateKind::T2),
            "h1" => Ok(GateKind::H1),
            "h2" => Ok(GateKind::H2),
            "idle" => Ok(GateKind::Idle),
            other => Err(Error::Argument(format!("unknown gate '{other}'"))),
        }
    }
}

fn check_gate_time<T: Real>(tau: T) -> Result<()> {
    if tau > T::zero() && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::Argument(format!(
            "gate time must be positive and finite, got {}",
            crate::scalar::to_f64(tau)
        )))
    }
}

/// Coefficients realising each gate over a duration `tau`.
pub fn gate_coupling<T: Real>(kind: GateKind, tau: T) -> Result<CommutingCoupling<T>> {
    check_gate_time(tau)?;
    let pi = T::PI();
    let sqrt2 = lit::<T>(2.0).sqrt();
    let two = lit::<T>(2.0);
    let mut c = CommutingCoupling::default();
    let pair = |m, n| pair_index(m, n).expect("valid pair");
    match kind {
        GateKind::Idle => {}
        GateKind::Cnot => {
            // (π/4τ)(σz3 + σz4 - σx1σx2 - σy1σy2)
            c.bz[2] = -pi / (two * tau);
            c.bz[3] = -pi / (two * tau);
            c.gxx[pair(1, 2)] = -pi / tau;
        }
        GateKind::T1 | GateKind::T2 => {
            // -(π/8τ)(σz_a + σz4), a = 3 for T1 and 2 for T2
            let a = if kind == GateKind::T1 { 3 } else { 2 };
            c.bz[a - 1] = pi / (lit::<T>(4.0) * tau);
            c.bz[3] = pi / (lit::<T>(4.0) * tau);
        }
        GateKind::H1 | GateKind::H2 => {
            // (π/8τ)[(2-√2)(σz1 + σz_b) + (2+√2)(σz_c + σz4)
            //        - √2(flip(1,c) + flip(b,4))], with (b, c) = (2, 3) for H1
            // and (3, 2) for H2.
            let (b, cc) = if kind == GateKind::H1 { (2, 3) } else { (3, 2) };
            let low = -pi * (two - sqrt2) / (lit::<T>(4.0) * tau);
            let high = -pi * (two + sqrt2) / (lit::<T>(4.0) * tau);
            c.bz[0] = low;
            c.bz[b - 1] = low;
            c.bz[cc - 1] = high;
            c.bz[3] = high;
            let g = -pi * sqrt2 / (two * tau);
            c.gxx[pair(1, cc)] = g;
            c.gxx[pair(b, 4)] = g;
        }
    }
    Ok(c)
}

/// The gate Hamiltonian for a gate of duration `tau`; `Idle` is zero.
pub fn gate_hamiltonian<T: Real>(kind: GateKind, tau: T) -> Result<Operator16<T>> {
    Ok(build_commuting(&gate_coupling(kind, tau)?))
}

/// Target unitary of each gate in the ordered DFS basis.
pub fn target_unitary<T: Real>(kind: GateKind) -> DfsMatrix<T> {
    let o = real(T::zero());
    let l = real(T::one());
    let w = cis(T::FRAC_PI_4());
    let h = real(T::FRAC_1_SQRT_2());
    #[rustfmt::skip]
    let m = match kind {
        GateKind::Idle => [l, o, o, o,  o, l, o, o,  o, o, l, o,  o, o, o, l],
        GateKind::Cnot => [l, o, o, o,  o, l, o, o,  o, o, o, l,  o, o, l, o],
        GateKind::T1 =>   [l, o, o, o,  o, l, o, o,  o, o, w, o,  o, o, o, w],
        GateKind::T2 =>   [l, o, o, o,  o, w, o, o,  o, o, l, o,  o, o, o, w],
        GateKind::H1 =>   [h, o, h, o,  o, h, o, h,  h, o, -h, o,  o, h, o, -h],
        GateKind::H2 =>   [h, h, o, o,  h, -h, o, o,  o, o, h, h,  o, o, h, -h],
    };
    DfsMatrix::from_row_slice(&m)
}

/// Outcome of checking one gate against its target.
#[derive(Clone, Copy, Debug)]
pub struct GateVerification<T> {
    /// Largest elementwise deviation of the DFS block from the target.
    pub max_error: T,
    /// `‖(1-P) U P‖_F`.
    pub leakage: T,
    /// `‖[H, J_z]‖_F`.
    pub commutator: T,
}

impl<T: Real> GateVerification<T> {
    pub fn passes(&self, tol: T) -> bool {
        self.max_error < tol && self.leakage < tol && self.commutator < tol
    }
}

pub fn verify_gate<T: Real>(kind: GateKind, tau: T) -> Result<GateVerification<T>> {
    let h = gate_hamiltonian(kind, tau)?;
    let u = expm_unitary(&h, tau)?;
    let block = restrict(&u);
    Ok(GateVerification {
        max_error: max_abs(&(block - target_unitary::<T>(kind))),
        leakage: leakage_norm(&u),
        commutator: commutator_norm(&h, &collective_j(PauliAxis::Z)),
    })
}

/// Which coupling parameters are free in the span computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanParameters {
    All,
    /// All `G_xy` forced to zero.
    WithoutGxy,
    /// Local `B_z` fields only.
    FieldsOnly,
}

impl SpanParameters {
    fn indices(self) -> std::ops::Range<usize> {
        match self {
            SpanParameters::All => 0..22,
            SpanParameters::WithoutGxy => 0..16,
            SpanParameters::FieldsOnly => 0..4,
        }
    }
}

/// Real coordinates of a 4×4 Hermitian matrix: diagonal, then the real and
/// imaginary parts of the strict upper triangle.
fn hermitian_coordinates<T: Real>(m: &DfsMatrix<T>) -> Vec<T> {
    let mut v = Vec::with_capacity(DFS_DIM * DFS_DIM);
    for i in 0..DFS_DIM {
        v.push(m[(i, i)].re);
    }
    for i in 0..DFS_DIM {
        for j in i + 1..DFS_DIM {
            v.push(m[(i, j)].re);
            v.push(m[(i, j)].im);
        }
    }
    v
}

fn coordinates_to_hermitian<T: Real>(v: &[T]) -> DfsMatrix<T> {
    let mut m = DfsMatrix::zeros();
    for i in 0..DFS_DIM {
        m[(i, i)] = real(v[i]);
    }
    let mut k = DFS_DIM;
    for i in 0..DFS_DIM {
        for j in i + 1..DFS_DIM {
            let z = Complex::new(v[k], v[k + 1]);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
            k += 2;
        }
    }
    m
}

fn restricted_generators<T: Real>(which: SpanParameters) -> Vec<DfsMatrix<T>> {
    which
        .indices()
        .map(|k| {
            let mut p = vec![T::zero(); CommutingCoupling::<T>::NUM_PARAMETERS];
            p[k] = T::one();
            let c = CommutingCoupling::from_slice(&p).expect("22 parameters");
            restrict(&build_commuting(&c))
        })
        .collect()
}

fn numerical_rank<T: Real>(columns: &[Vec<T>], threshold: T) -> usize {
    if columns.is_empty() {
        return 0;
    }
    let rows = columns[0].len();
    let m = DMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i]);
    m.svd(false, false)
        .singular_values
        .iter()
        .filter(|&&s| s > threshold)
        .count()
}

/// Rank of the real-linear map from coupling parameters to DFS-restricted
/// Hamiltonians (singular values above `1e-10`). 16 means every 4×4
/// Hermitian matrix is reachable as a linear combination.
pub fn hermitian_span_rank_of<T: Real>(which: SpanParameters) -> usize {
    let cols: Vec<Vec<T>> = restricted_generators::<T>(which)
        .iter()
        .map(hermitian_coordinates)
        .collect();
    numerical_rank(&cols, lit(1e-10))
}

pub fn hermitian_span_rank() -> usize {
    hermitian_span_rank_of::<f64>(SpanParameters::All)
}

/// Dimension of the real Lie algebra generated by the DFS-restricted
/// Hamiltonians under `(A, B) ↦ i[A, B]`. 16 means the reachable unitaries
/// are all of `U(4)`.
pub fn lie_closure_rank<T: Real>(which: SpanParameters) -> usize {
    let threshold = lit::<T>(1e-10);
    let mut basis: Vec<Vec<T>> = Vec::new();
    let add = |basis: &mut Vec<Vec<T>>, mut v: Vec<T>| -> bool {
        for _ in 0..2 {
            for b in basis.iter() {
                let d = v.iter().zip(b).fold(T::zero(), |a, (x, y)| a + *x * *y);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= d * *y;
                }
            }
        }
        let n = v.iter().fold(T::zero(), |a, x| a + *x * *x).sqrt();
        if n > threshold {
            basis.push(v.into_iter().map(|x| x / n).collect());
            true
        } else {
            false
        }
    };
    for g in restricted_generators::<T>(which) {
        add(&mut basis, hermitian_coordinates(&g));
    }
    let i = Complex::new(T::zero(), T::one());
    loop {
        let before = basis.len();
        let mats: Vec<DfsMatrix<T>> = basis.iter().map(|v| coordinates_to_hermitian(v)).collect();
        for a in 0..mats.len() {
            for b in a + 1..mats.len() {
                let c = (mats[a] * mats[b] - mats[b] * mats[a]) * i;
                add(&mut basis, hermitian_coordinates(&c));
            }
        }
        if basis.len() == before || basis.len() == DFS_DIM * DFS_DIM {
            return basis.len();
        }
    }
}

/// One constant-coefficient stretch of a piecewise-constant control.
#[derive(Clone, Debug, PartialEq)]
pub struct ScheduleSegment<T: Real> {
    pub duration: T,
    pub coupling: CommutingCoupling<T>,
}

/// Piecewise-constant realization of time-dependent control coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingSchedule<T: Real> {
    segments: Vec<ScheduleSegment<T>>,
}

impl<T: Real> CouplingSchedule<T> {
    pub fn new(segments: Vec<ScheduleSegment<T>>) -> Result<Self> {
        for (k, s) in segments.iter().enumerate() {
            if !(s.duration > T::zero() && s.duration.is_finite()) {
                return Err(Error::Argument(format!(
                    "segment {k} has non-positive or non-finite duration"
                )));
            }
        }
        Ok(Self { segments })
    }

    /// Schedule applying each gate for its own duration, in order.
    pub fn from_gates(gates: &[(GateKind, T)]) -> Result<Self> {
        let segments = gates
            .iter()
            .map(|&(kind, tau)| {
                Ok(ScheduleSegment {
                    duration: tau,
                    coupling: gate_coupling(kind, tau)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(segments)
    }

    pub fn segments(&self) -> &[ScheduleSegment<T>] {
        &self.segments
    }

    pub fn total_duration(&self) -> T {
        self.segments.iter().fold(T::zero(), |a, s| a + s.duration)
    }
}

/// Ordered product of segment propagators, later segments on the left.
/// The empty schedule gives the identity.
pub fn schedule_unitary<T: Real>(s: &CouplingSchedule<T>) -> Result<Operator16<T>> {
    let mut u = Operator16::identity();
    for seg in s.segments() {
        u = expm_unitary(&build_commuting(&seg.coupling), seg.duration)? * u;
    }
    Ok(u)
}
