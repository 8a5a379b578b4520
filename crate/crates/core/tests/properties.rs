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

use nalgebra::{DMatrix, SMatrix};
use num_complex::Complex;
use proptest::prelude::*;

use zeno_dfs::bath::{Bath, Mode, SpectralModel};
use zeno_dfs::dfs::{decode, encode, restrict, DfsVector, Normalization};
use zeno_dfs::gates::{build_commuting, build_general, gate_hamiltonian, verify_gate, CommutingCoupling, GateKind};
use zeno_dfs::hermitian::{max_abs, unitarity_defect, HermitianEigen};
use zeno_dfs::perturbation::{Dynamics, Engine, PerturbationParams};
use zeno_dfs::spin::{collective_j, commutator_norm, expm_unitary, Operator16, PauliAxis, Sign};

type Op = Operator16<f64>;

fn hermitian16() -> impl Strategy<Value = Op> {
    prop::collection::vec(-1.0f64..1.0, 512).prop_map(|v| {
        let m = SMatrix::<Complex<f64>, 16, 16>::from_fn(|i, j| Complex::new(v[16 * i + j], v[256 + 16 * i + j]));
        (m + m.adjoint()) * Complex::new(0.5, 0.0)
    })
}

fn coupling() -> impl Strategy<Value = CommutingCoupling<f64>> {
    prop::collection::vec(-3.0f64..3.0, CommutingCoupling::<f64>::NUM_PARAMETERS)
        .prop_map(|p| CommutingCoupling::from_slice(&p).unwrap())
}

fn gate() -> impl Strategy<Value = GateKind> {
    prop::sample::select(GateKind::UNIVERSAL.to_vec())
}

fn dfs_state() -> impl Strategy<Value = DfsVector<f64>> {
    prop::collection::vec(-1.0f64..1.0, 8)
        .prop_filter("non-zero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(|v| {
            let s = DfsVector::from_fn(|i, _| Complex::new(v[2 * i], v[2 * i + 1]));
            s / Complex::new(s.norm(), 0.0)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn propagator_group_law(h in hermitian16(), s in -3.0f64..3.0, t in -3.0f64..3.0) {
        let us = expm_unitary(&h, s).unwrap();
        let ut = expm_unitary(&h, t).unwrap();
        let ust = expm_unitary(&h, s + t).unwrap();
        prop_assert!(max_abs(&(us * ut - ust)) < 1e-12);
        prop_assert!(unitarity_defect(&ust) < 1e-12);
    }

    #[test]
    fn dynamic_eigensolver_reconstructs(v in prop::collection::vec(-1.0f64..1.0, 2 * 24 * 24)) {
        let n = 24;
        let m = DMatrix::from_fn(n, n, |i, j| Complex::new(v[n * i + j], v[n * n + n * i + j]));
        let h = (&m + m.adjoint()) * Complex::new(0.5, 0.0);
        let e = HermitianEigen::new(h.clone()).unwrap();
        let rebuilt = e.phase_function(|x| Complex::new(x, 0.0));
        prop_assert!(max_abs(&(rebuilt - h)) < 1e-12);
    }

    #[test]
    fn commuting_family_commutes_with_jz(c in coupling()) {
        let h = build_commuting(&c);
        let jz = collective_j::<f64>(PauliAxis::Z);
        prop_assert!(commutator_norm(&h, &jz) < 1e-13);
        let (g, asym) = build_general(&c.to_general());
        prop_assert!(max_abs(&(g - h)) < 1e-13);
        prop_assert!(asym < 1e-13);
    }

    #[test]
    fn gates_hold_for_any_duration(kind in gate(), tau in 1e-3f64..1e3) {
        let h = gate_hamiltonian(kind, tau).unwrap();
        let jz = collective_j::<f64>(PauliAxis::Z);
        prop_assert!(commutator_norm(&h, &jz) < 1e-13 * (1.0 + max_abs(&h)));
        prop_assert!(verify_gate(kind, tau).unwrap().passes(1e-12));
    }

    #[test]
    fn encode_decode_round_trip(v in dfs_state()) {
        let s = encode(&v, Normalization::Strict).unwrap();
        let (back, leak) = decode(&s);
        prop_assert!((back - v).norm() < 1e-14);
        prop_assert!(leak < 1e-14);
    }

    #[test]
    fn first_order_term_vanishes(v in dfs_state(), kind in gate(), t in 0.0f64..20.0) {
        prop_assert!(max_abs(&restrict(&collective_j::<f64>(PauliAxis::X))) == 0.0);
        // ⟨φ0| U₀† J_x U₀ |φ0⟩ = 0 along any gate evolution
        let u = expm_unitary(&gate_hamiltonian(kind, 1.0).unwrap(), t).unwrap();
        let phi = encode(&v, Normalization::Strict).unwrap();
        let psi = u * phi;
        prop_assert!(psi.dotc(&(collective_j::<f64>(PauliAxis::X) * psi)).norm() < 1e-13);
    }

    #[test]
    fn vacuum_correlation_is_bounded(
        lambda in 0.0f64..3.0,
        w in 0.1f64..5.0,
        t1 in 0.0f64..10.0,
        t2 in 0.0f64..10.0,
        a in prop::bool::ANY,
        b in prop::bool::ANY,
    ) {
        let sign = |x: bool| if x { Sign::Plus } else { Sign::Minus };
        for spectrum in [
            SpectralModel::discrete(vec![Mode { coupling: 1.0, frequency: w }]).unwrap(),
            SpectralModel::continuum(w).unwrap(),
        ] {
            let bath = Bath::new(lambda, spectrum).unwrap();
            let c = bath.vacuum_correlation(sign(a), sign(b), t1, t2).unwrap();
            prop_assert!(c.norm() <= 1.0 + 1e-15);
            let p = bath.overlap_phase(t1, t2).unwrap();
            prop_assert!((p + bath.overlap_phase(t2, t1).unwrap()).abs() < 1e-12 * (1.0 + p.abs()));
        }
    }

    #[test]
    fn kernel_routes_agree(
        kind in gate(),
        lambda_ratio in 0.0f64..20.0,
        t1 in 0.0f64..6.0,
        frac in 0.0f64..1.0,
    ) {
        let p = PerturbationParams::dimensionless(
            1.0, lambda_ratio, 30.0, kind, 1.0, zeno_dfs::dfs::default_initial_state(),
        ).unwrap();
        let e = Engine::new(p).unwrap();
        let t2 = t1 * frac;
        prop_assert!((e.kernel(t1, t2).unwrap() - e.kernel_direct(t1, t2).unwrap()).norm() < 1e-9);
        // Cauchy–Schwarz, and the largest ‖J_± ψ‖² over the DFS (4 and 6)
        for (s, cap) in [(Sign::Plus, 4.0), (Sign::Minus, 6.0)] {
            let a = e.chi(s, t1).unwrap();
            let b = e.chi(s, t2).unwrap();
            prop_assert!(a.dotc(&b).norm() <= a.norm() * b.norm() + 1e-12);
            prop_assert!(a.norm_squared() <= cap + 1e-12);
        }
    }

    #[test]
    fn gamma_magnitudes_ignore_bath_strength(
        kind in gate(),
        c in 0.1f64..10.0,
        t1 in 0.0f64..5.0,
        t2 in 0.0f64..5.0,
    ) {
        let make = |lambda: f64| {
            let bath = Bath::new(lambda, SpectralModel::continuum(4.0).unwrap()).unwrap();
            Engine::new(PerturbationParams::new(
                0.5, bath, Dynamics::Gate { kind, tau: 2.0 }, zeno_dfs::dfs::default_initial_state(),
            ).unwrap()).unwrap()
        };
        let a = make(1.0);
        let b = make(c);
        prop_assert!((a.gamma_pp(t1, t2).unwrap().norm() - b.gamma_pp(t1, t2).unwrap().norm()).abs() < 1e-14);
        prop_assert!((a.gamma_mm(t1, t2).unwrap().norm() - b.gamma_mm(t1, t2).unwrap().norm()).abs() < 1e-14);
    }
}

#[test]
fn f32_path_shares_the_api() {
    let u = expm_unitary(&gate_hamiltonian::<f32>(GateKind::H1, 1.0).unwrap(), 1.0).unwrap();
    assert!(unitarity_defect(&u) < 1e-5);
    assert!(verify_gate::<f32>(GateKind::Cnot, 1.0).unwrap().passes(1e-5));
}
