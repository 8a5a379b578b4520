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

//! Brute-force reference: the four spins plus a few bath modes in a truncated
//! Fock space, evolved exactly by eigendecomposition.
//!
//! Joint basis states are ordered system-major: `index = s · F + m` with `s`
//! the 4-qubit index and `m` the mixed-radix Fock index (first mode most
//! significant), `F = (n_max + 1)^modes`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::bath::{f_amp, Bath, Mode, SpectralModel};
use crate::dfs::{encode, DfsVector, Normalization};
use crate::error::{Error, Result};
use crate::gates::{gate_hamiltonian, GateKind};
use crate::hermitian::HermitianEigen;
use crate::scalar::{cis, lit, to_f64, Real};
use crate::spin::{collective_j, ladder, magnetization, Operator16, PauliAxis, Sign, Spectrum16, DIM};

/// Default upper bound on the joint dimension.
pub const DEFAULT_DIMENSION_CAP: usize = 4096;
/// Largest tolerated norm drift of the joint state.
pub const NORM_TOLERANCE: f64 = 1e-8;
/// Largest tolerated population on the highest Fock level of any mode.
pub const TOP_LEVEL_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct FockTruncation<T> {
    pub modes: Vec<Mode<T>>,
    pub n_max: usize,
    pub cap: usize,
}

impl<T: Real> FockTruncation<T> {
    pub fn new(modes: Vec<Mode<T>>, n_max: usize) -> Result<Self> {
        Self::with_cap(modes, n_max, DEFAULT_DIMENSION_CAP)
    }

    pub fn with_cap(modes: Vec<Mode<T>>, n_max: usize, cap: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::Argument("n_max must be at least 1".into()));
        }
        SpectralModel::discrete(modes.clone())?;
        let t = Self { modes, n_max, cap };
        let dim = t.dim()?;
        if dim > cap {
            return Err(Error::Resource(format!(
                "joint dimension {dim} exceeds the cap of {cap}"
            )));
        }
        Ok(t)
    }

    pub fn levels(&self) -> usize {
        self.n_max + 1
    }

    pub fn fock_dim(&self) -> Result<usize> {
        u32::try_from(self.modes.len())
            .ok()
            .and_then(|k| self.levels().checked_pow(k))
            .ok_or_else(|| Error::Resource("Fock dimension overflows".into()))
    }

    pub fn dim(&self) -> Result<usize> {
        self.fock_dim()?
            .checked_mul(DIM)
            .ok_or_else(|| Error::Resource("joint dimension overflows".into()))
    }

    fn stride(&self, k: usize) -> usize {
        self.levels().pow((self.modes.len() - 1 - k) as u32)
    }

    /// Occupation of mode `k` in Fock basis state `m`.
    pub fn occupation(&self, m: usize, k: usize) -> usize {
        (m / self.stride(k)) % self.levels()
    }

    /// Annihilation operator of mode `k` on the Fock space.
    pub fn annihilation(&self, k: usize) -> DMatrix<Complex<T>> {
        let f = self.fock_dim().expect("checked at construction");
        let stride = self.stride(k);
        let mut a = DMatrix::zeros(f, f);
        for m in 0..f {
            let n = self.occupation(m, k);
            if n > 0 {
                a[(m - stride, m)] = Complex::new(lit::<T>(n as f64).sqrt(), T::zero());
            }
        }
        a
    }

    /// `H_E = Σ_k ω_k a_k† a_k`.
    pub fn bath_hamiltonian(&self) -> DMatrix<Complex<T>> {
        let f = self.fock_dim().expect("checked at construction");
        DMatrix::from_fn(f, f, |i, j| {
            if i != j {
                return Complex::new(T::zero(), T::zero());
            }
            let e = self.modes.iter().enumerate().fold(T::zero(), |acc, (k, m)| {
                acc + m.frequency * lit(self.occupation(i, k) as f64)
            });
            Complex::new(e, T::zero())
        })
    }

    /// `Σ_k g_k (a_k + a_k†)`.
    pub fn bath_coupling(&self) -> DMatrix<Complex<T>> {
        let f = self.fock_dim().expect("checked at construction");
        let mut x = DMatrix::zeros(f, f);
        for (k, m) in self.modes.iter().enumerate() {
            let a = self.annihilation(k);
            x += (&a + a.adjoint()) * Complex::new(m.coupling, T::zero());
        }
        x
    }

    /// `γ(t) = Σ_k (f_k(t) a_k† - f_k*(t) a_k)`.
    pub fn gamma_operator(&self, lambda: T, t: T) -> Result<DMatrix<Complex<T>>> {
        let f = self.fock_dim()?;
        let mut g = DMatrix::zeros(f, f);
        for (k, m) in self.modes.iter().enumerate() {
            let amp = f_amp(lambda, m.coupling, m.frequency, t)?;
            let a = self.annihilation(k);
            g += a.adjoint() * amp - a * amp.conj();
        }
        Ok(g)
    }

    /// Fock states with every occupation at most `limit`.
    pub fn low_block(&self, limit: usize) -> Vec<usize> {
        let f = self.fock_dim().expect("checked at construction");
        (0..f)
            .filter(|&m| (0..self.modes.len()).all(|k| self.occupation(m, k) <= limit))
            .collect()
    }

    /// Whether any mode of Fock state `m` sits on the highest level.
    pub fn on_top_level(&self, m: usize) -> bool {
        (0..self.modes.len()).any(|k| self.occupation(m, k) == self.n_max)
    }

    /// Population on the highest Fock level of any mode.
    pub fn top_population(&self, psi: &DVector<Complex<T>>) -> T {
        let f = self.fock_dim().expect("checked at construction");
        psi.iter()
            .enumerate()
            .filter(|(i, _)| self.on_top_level(i % f))
            .fold(T::zero(), |a, (_, z)| a + z.norm_sqr())
    }
}

/// `A ⊗ B` with the system factor first.
fn kron<T: Real>(a: &Operator16<T>, b: &DMatrix<Complex<T>>) -> DMatrix<Complex<T>> {
    let f = b.nrows();
    DMatrix::from_fn(DIM * f, DIM * f, |r, c| a[(r / f, c / f)] * b[(r % f, c % f)])
}

fn exp_anti_hermitian<T: Real>(g: &DMatrix<Complex<T>>) -> Result<DMatrix<Complex<T>>> {
    // e^{γ} = e^{-i G} with G = iγ Hermitian.
    let herm = g * Complex::new(T::zero(), T::one());
    Ok(HermitianEigen::new(herm)?.propagator(T::one()))
}

/// `H = H₀⊗1 + 1⊗H_E + λ J_z⊗Σ g_k(a_k + a_k†) + ε J_x⊗1`.
pub fn build_full_hamiltonian<T: Real>(
    gate: GateKind,
    tau: T,
    epsilon: T,
    lambda: T,
    trunc: &FockTruncation<T>,
) -> Result<DMatrix<Complex<T>>> {
    let dim = trunc.dim()?;
    if dim > trunc.cap {
        return Err(Error::Resource(format!("joint dimension {dim} exceeds the cap of {}", trunc.cap)));
    }
    let f = trunc.fock_dim()?;
    let id_f = DMatrix::<Complex<T>>::identity(f, f);
    let h0 = gate_hamiltonian(gate, tau)?;
    let jx = collective_j::<T>(PauliAxis::X) * Complex::new(epsilon, T::zero());
    let jz = collective_j::<T>(PauliAxis::Z) * Complex::new(lambda, T::zero());
    Ok(kron(&(h0 + jx), &id_f)
        + kron(&Operator16::identity(), &trunc.bath_hamiltonian())
        + kron(&jz, &trunc.bath_coupling()))
}

/// Exact evolution of `|φ0⟩ ⊗ |0⟩` for one gate Hamiltonian.
pub struct ExactOracle<T: Real> {
    trunc: FockTruncation<T>,
    full: HermitianEigen<T>,
    free: Spectrum16<T>,
    /// `H_E + λ M Σ g_k(a_k + a_k†)` for `M = -2..=2`.
    frames: Vec<HermitianEigen<T>>,
    initial: DVector<Complex<T>>,
    phi: DVector<Complex<T>>,
}

impl<T: Real> ExactOracle<T> {
    pub fn new(
        gate: GateKind,
        tau: T,
        epsilon: T,
        lambda: T,
        trunc: FockTruncation<T>,
        initial: &DfsVector<T>,
    ) -> Result<Self> {
        let h = build_full_hamiltonian(gate, tau, epsilon, lambda, &trunc)?;
        let full = HermitianEigen::new(h)?;
        let free = Spectrum16::new(&gate_hamiltonian(gate, tau)?)?;
        let he = trunc.bath_hamiltonian();
        let x = trunc.bath_coupling();
        let frames = (-2..=2)
            .map(|m| HermitianEigen::new(&he + &x * Complex::new(lambda * lit(m as f64), T::zero())))
            .collect::<Result<Vec<_>>>()?;
        let f = trunc.fock_dim()?;
        let phi16 = encode(initial, Normalization::Strict)?;
        let phi = DVector::from_iterator(DIM, phi16.iter().copied());
        let mut psi0 = DVector::zeros(DIM * f);
        for s in 0..DIM {
            psi0[s * f] = phi16[s];
        }
        Ok(Self { trunc, full, free, frames, initial: psi0, phi })
    }

    pub fn truncation(&self) -> &FockTruncation<T> {
        &self.trunc
    }

    /// Schrödinger-picture joint state, with truncation checks.
    pub fn state(&self, t: T) -> Result<DVector<Complex<T>>> {
        let psi = self.full.evolve(t, &self.initial);
        let drift = to_f64((psi.norm() - T::one()).abs());
        if drift > NORM_TOLERANCE {
            return Err(Error::Truncation(format!("norm drift {drift:e} at t = {}", to_f64(t))));
        }
        let top = to_f64(self.trunc.top_population(&psi));
        if top > TOP_LEVEL_TOLERANCE {
            return Err(Error::Truncation(format!(
                "population {top:e} on the highest Fock level at t = {}",
                to_f64(t)
            )));
        }
        Ok(psi)
    }

    /// Interaction-picture state `𝒰†(t) U₀†(t) |Ψ_S(t)⟩`.
    pub fn interaction_state(&self, t: T) -> Result<DVector<Complex<T>>> {
        let mut psi = self.state(t)?;
        let f = self.trunc.fock_dim()?;
        let back = self.free.propagator(t).adjoint();
        let mut sys = DVector::zeros(DIM);
        for m in 0..f {
            for s in 0..DIM {
                sys[s] = psi[s * f + m];
            }
            let out = back * nalgebra::SVector::<Complex<T>, DIM>::from_iterator(sys.iter().copied());
            for s in 0..DIM {
                psi[s * f + m] = out[s];
            }
        }
        for s in 0..DIM {
            let frame = &self.frames[(magnetization(s) + 2) as usize];
            let block = DVector::from_iterator(f, psi.rows(s * f, f).iter().copied());
            let out = frame.evolve(-t, &block);
            psi.rows_mut(s * f, f).copy_from(&out);
        }
        Ok(psi)
    }

    /// `Σ_m |⟨φ0, m|Ψ_I(t)⟩|²`.
    pub fn fidelity(&self, t: T) -> Result<T> {
        let psi = self.interaction_state(t)?;
        let f = self.trunc.fock_dim()?;
        let mut total = T::zero();
        for m in 0..f {
            let mut amp = Complex::new(T::zero(), T::zero());
            for s in 0..DIM {
                amp += self.phi[s].conj() * psi[s * f + m];
            }
            total += amp.norm_sqr();
        }
        Ok(total)
    }
}

/// Exact fidelity at one time (builds a fresh [`ExactOracle`]).
pub fn exact_fidelity<T: Real>(
    t: T,
    gate: GateKind,
    tau: T,
    epsilon: T,
    lambda: T,
    trunc: FockTruncation<T>,
    initial: &DfsVector<T>,
) -> Result<T> {
    ExactOracle::new(gate, tau, epsilon, lambda, trunc, initial)?.fidelity(t)
}

/// `|⟨φ0| e^{iH₀t} e^{-i(H₀ + εJ_x)t} |φ0⟩|²` on the spins alone.
pub fn no_bath_fidelity<T: Real>(
    t: T,
    gate: GateKind,
    tau: T,
    epsilon: T,
    initial: &DfsVector<T>,
) -> Result<T> {
    let h0 = gate_hamiltonian(gate, tau)?;
    let h = h0 + collective_j::<T>(PauliAxis::X) * Complex::new(epsilon, T::zero());
    let phi = encode(initial, Normalization::Strict)?;
    let evolved = Spectrum16::new(&h)?.evolve(t, &phi);
    let back = Spectrum16::new(&h0)?.evolve(-t, &evolved);
    Ok(phi.dotc(&back).norm_sqr())
}

/// Checks the transformed-`J_x` identity
///
/// ```text
/// 𝒰†(t) J_x 𝒰(t) = (e^{iα}/2) [e^{γ - 2iαJ_z} J_+ + e^{-(γ - 2iαJ_z)} J_-]
/// ```
///
/// with `𝒰(t) = exp(-it[H_E + λJ_z Σ g_k(a_k + a_k†)])`, comparing matrix
/// elements between Fock states with every occupation `≤ n_max/2`.
/// Returns the largest elementwise deviation.
pub fn verify_eq_t4<T: Real>(t: T, lambda: T, trunc: &FockTruncation<T>) -> Result<T> {
    let f = trunc.fock_dim()?;
    let bath = Bath::new(lambda, SpectralModel::discrete(trunc.modes.clone())?)?;
    let alpha = bath.alpha(t)?;
    let gamma = trunc.gamma_operator(lambda, t)?;
    let up = exp_anti_hermitian(&gamma)?;
    let down = exp_anti_hermitian(&(-&gamma))?;

    let block = trunc.low_block(trunc.n_max / 2);
    // Truncated displacements must not carry the compared block to the edge.
    let top: Vec<usize> = (0..f).filter(|&m| trunc.on_top_level(m)).collect();
    for d in [&up, &down] {
        for &c in &block {
            let leak = top.iter().fold(T::zero(), |a, &r| a + d[(r, c)].norm_sqr());
            if to_f64(leak) > 1e-12 {
                return Err(Error::Precondition(format!(
                    "displacement puts {:e} on the highest Fock level; increase n_max",
                    to_f64(leak)
                )));
            }
        }
    }

    let he = trunc.bath_hamiltonian();
    let x = trunc.bath_coupling();
    let frames = (-2..=2)
        .map(|m| {
            HermitianEigen::new(&he + &x * Complex::new(lambda * lit(m as f64), T::zero()))
                .map(|e| e.propagator(t))
        })
        .collect::<Result<Vec<_>>>()?;
    let frame = |s: usize| &frames[(magnetization(s) + 2) as usize];

    let jx = collective_j::<T>(PauliAxis::X);
    let jp = ladder::<T>(Sign::Plus);
    let jm = ladder::<T>(Sign::Minus);
    let half = cis(alpha) / lit::<T>(2.0);
    let mz = |s: usize| lit::<T>(magnetization(s) as f64);

    let mut worst = T::zero();
    for r in 0..DIM {
        for c in 0..DIM {
            let lhs_block = if jx[(r, c)].norm_sqr() > T::zero() {
                Some(frame(r).adjoint() * frame(c) * jx[(r, c)])
            } else {
                None
            };
            // (J_z acts after J_±, so its eigenvalue is that of the row state.)
            let mut rhs = DMatrix::<Complex<T>>::zeros(f, f);
            if jp[(r, c)].norm_sqr() > T::zero() {
                rhs += &up * (half * cis(-lit::<T>(2.0) * alpha * mz(r)) * jp[(r, c)]);
            }
            if jm[(r, c)].norm_sqr() > T::zero() {
                rhs += &down * (half * cis(lit::<T>(2.0) * alpha * mz(r)) * jm[(r, c)]);
            }
            for &i in &block {
                for &j in &block {
                    let l = lhs_block.as_ref().map_or(Complex::new(T::zero(), T::zero()), |b| b[(i, j)]);
                    let d = (l - rhs[(i, j)]).norm_sqr().sqrt();
                    if d > worst {
                        worst = d;
                    }
                }
            }
        }
    }
    Ok(worst)
}

/// `⟨0| e^{aγ(t1)} e^{bγ(t2)} |0⟩` by matrix exponentials in a truncated
/// Fock space.
pub fn vacuum_correlation_fock<T: Real>(
    bath: &Bath<T>,
    a: Sign,
    b: Sign,
    t1: T,
    t2: T,
    n_max: usize,
) -> Result<Complex<T>> {
    let SpectralModel::Discrete(modes) = &bath.spectrum else {
        return Err(Error::Argument("Fock oracle needs discrete modes".into()));
    };
    let trunc = FockTruncation::with_cap(modes.clone(), n_max, usize::MAX)?;
    let g1 = trunc.gamma_operator(bath.lambda, t1)? * Complex::new(a.value::<T>(), T::zero());
    let g2 = trunc.gamma_operator(bath.lambda, t2)? * Complex::new(b.value::<T>(), T::zero());
    let e1 = exp_anti_hermitian(&g1)?;
    let e2 = exp_anti_hermitian(&g2)?;
    // ⟨0| e1 e2 |0⟩ = Σ_m e1[0, m] e2[m, 0]
    Ok((0..e1.ncols()).fold(Complex::new(T::zero(), T::zero()), |acc, m| acc + e1[(0, m)] * e2[(m, 0)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfs::default_initial_state;

    fn one_mode(n_max: usize) -> FockTruncation<f64> {
        FockTruncation::new(vec![Mode { coupling: 1.0, frequency: 1.0 }], n_max).unwrap()
    }

    #[test]
    fn fock_operators() {
        let t = FockTruncation::new(
            vec![Mode { coupling: 1.0, frequency: 1.0 }, Mode { coupling: 0.5, frequency: 2.0 }],
            3,
        )
        .unwrap();
        assert_eq!(t.fock_dim().unwrap(), 16);
        let a0 = t.annihilation(0);
        let a1 = t.annihilation(1);
        // [a_k, a_l†] = δ_kl below the truncation edge
        let comm = &a0 * a0.adjoint() - a0.adjoint() * &a0;
        for m in t.low_block(2) {
            assert!((comm[(m, m)] - Complex::new(1.0, 0.0)).norm() < 1e-14);
        }
        let cross = &a0 * a1.adjoint() - a1.adjoint() * &a0;
        assert!(cross.norm() < 1e-14);
        // H_E eigenvalue of |1, 2⟩ is 1 + 4
        let m = 4 + 2;
        assert_eq!(t.bath_hamiltonian()[(m, m)].re, 5.0);
    }

    #[test]
    fn dimension_cap() {
        let modes = vec![Mode { coupling: 1.0, frequency: 1.0 }; 3];
        assert!(matches!(FockTruncation::new(modes, 7), Err(Error::Resource(_))));
        assert!(FockTruncation::<f64>::new(vec![], 0).is_err());
    }

    #[test]
    fn free_bath_hamiltonian() {
        let t = one_mode(4);
        let h = build_full_hamiltonian(GateKind::Idle, 1.0, 0.0, 0.0, &t).unwrap();
        let e = HermitianEigen::new(h).unwrap();
        assert!(e.values.min().abs() < 1e-12);
    }

    #[test]
    fn pure_dephasing_commutes_with_jz() {
        let t = one_mode(6);
        let h = build_full_hamiltonian(GateKind::Cnot, 1.0, 0.0, 0.1, &t).unwrap();
        let jz = kron(&collective_j::<f64>(PauliAxis::Z), &DMatrix::identity(7, 7));
        assert!((&h * &jz - &jz * &h).norm() < 1e-12);
    }

    #[test]
    fn unperturbed_fidelity_is_one() {
        let phi = default_initial_state();
        let o = ExactOracle::new(GateKind::Cnot, 1.0, 0.0, 0.3, one_mode(15), &phi).unwrap();
        for &t in &[0.0, 0.7, 2.5, 5.0] {
            assert!((o.fidelity(t).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn decoupled_mode_matches_spin_only_evolution() {
        let phi = default_initial_state();
        for gate in [GateKind::Idle, GateKind::H1] {
            let o = ExactOracle::new(gate, 1.0, 0.3, 0.0, one_mode(4), &phi).unwrap();
            for &t in &[0.4, 1.9, 4.0] {
                let exact = o.fidelity(t).unwrap();
                let spins = no_bath_fidelity(t, gate, 1.0, 0.3, &phi).unwrap();
                assert!((exact - spins).abs() < 1e-10, "{gate}: {exact} vs {spins}");
            }
        }
    }

    #[test]
    fn fidelity_converges_in_n_max() {
        let phi = default_initial_state();
        let a = ExactOracle::new(GateKind::Cnot, 1.0, 0.01, 0.05, one_mode(11), &phi).unwrap();
        let b = ExactOracle::new(GateKind::Cnot, 1.0, 0.01, 0.05, one_mode(15), &phi).unwrap();
        for &t in &[1.0, 3.0, 5.0] {
            assert!((a.fidelity(t).unwrap() - b.fidelity(t).unwrap()).abs() < 1e-8);
        }
    }

    #[test]
    fn strong_coupling_reports_truncation() {
        let phi = default_initial_state();
        let o = ExactOracle::new(GateKind::Idle, 1.0, 0.1, 3.0, one_mode(4), &phi).unwrap();
        assert!(matches!(o.fidelity(3.0), Err(Error::Truncation(_))));
    }

    #[test]
    fn transformed_jx_identity() {
        let t = one_mode(12);
        assert!(verify_eq_t4(0.0, 0.05, &t).unwrap() < 1e-14);
        assert!(verify_eq_t4(1.3, 0.0, &t).unwrap() < 1e-13);
        let err = verify_eq_t4(2.0, 0.05, &t).unwrap();
        assert!(err < 1e-6, "error {err:e}");
        let two = FockTruncation::new(
            vec![Mode { coupling: 1.0, frequency: 1.0 }, Mode { coupling: 0.7, frequency: 2.5 }],
            10,
        )
        .unwrap();
        assert!(verify_eq_t4(1.1, 0.04, &two).unwrap() < 1e-6);
    }

    #[test]
    fn identity_guard() {
        assert!(matches!(verify_eq_t4(2.0, 2.0, &one_mode(6)), Err(Error::Precondition(_))));
    }

    #[test]
    fn vacuum_correlation_against_closed_form() {
        let one = Bath::new(0.1, SpectralModel::discrete(vec![Mode { coupling: 1.0, frequency: 1.0 }]).unwrap()).unwrap();
        let two = Bath::new(
            0.3,
            SpectralModel::discrete(vec![
                Mode { coupling: 1.0, frequency: 1.0 },
                Mode { coupling: 0.6, frequency: 2.2 },
            ])
            .unwrap(),
        )
        .unwrap();
        for (bath, n_max) in [(one, 20), (two, 12)] {
            for a in [Sign::Plus, Sign::Minus] {
                for b in [Sign::Plus, Sign::Minus] {
                    for &(t1, t2) in &[(0.5, 1.5), (2.0, 0.3), (1.0, 1.0)] {
                        let fock = vacuum_correlation_fock(&bath, a, b, t1, t2, n_max).unwrap();
                        let closed = bath.vacuum_correlation(a, b, t1, t2).unwrap();
                        assert!((fock - closed).norm() < 1e-8, "{a:?}{b:?} {t1} {t2}: {fock} vs {closed}");
                    }
                }
            }
        }
    }
}
