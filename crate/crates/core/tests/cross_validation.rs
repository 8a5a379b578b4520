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

//! Perturbative fidelity against exact truncated-Fock evolution.

use zeno_dfs::bath::{Bath, Mode, SpectralModel};
use zeno_dfs::dfs::default_initial_state;
use zeno_dfs::gates::GateKind;
use zeno_dfs::oracle::{ExactOracle, FockTruncation};
use zeno_dfs::perturbation::{Dynamics, Engine, PerturbationParams, QuadratureSettings};

fn max_gap(gate: GateKind, eps: f64) -> f64 {
    let modes = vec![Mode { coupling: 1.0, frequency: 1.0 }];
    let lambda = 0.05;
    let oracle = ExactOracle::new(
        gate,
        1.0,
        eps,
        lambda,
        FockTruncation::new(modes.clone(), 15).unwrap(),
        &default_initial_state(),
    )
    .unwrap();
    let bath = Bath::new(lambda, SpectralModel::discrete(modes).unwrap()).unwrap();
    let params = PerturbationParams::new(eps, bath, Dynamics::Gate { kind: gate, tau: 1.0 }, default_initial_state()).unwrap();
    let grid: Vec<f64> = (0..=10).map(|k| 0.5 * k as f64).collect();
    let curve = Engine::new(params).unwrap().fidelity_curve(&grid, &QuadratureSettings::default()).unwrap();
    curve
        .points
        .iter()
        .map(|p| (oracle.fidelity(p.time).unwrap() - p.fidelity).abs())
        .fold(0.0, f64::max)
}

#[test]
fn second_order_error_scales_as_fourth_power() {
    for gate in [GateKind::Idle, GateKind::Cnot] {
        let coarse = max_gap(gate, 0.02);
        let fine = max_gap(gate, 0.01);
        assert!(fine < 5e-6, "{gate}: {fine:e}");
        let slope = (coarse / fine).log2();
        assert!(slope > 3.5, "{gate}: slope {slope}");
    }
}

#[test]
fn oracle_state_stays_normalized() {
    let oracle = ExactOracle::new(
        GateKind::H2,
        1.0,
        0.05,
        0.1,
        FockTruncation::new(vec![Mode { coupling: 1.0, frequency: 1.0 }], 15).unwrap(),
        &default_initial_state(),
    )
    .unwrap();
    for k in 0..=10 {
        let psi = oracle.state(0.5 * k as f64).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-10);
    }
}
