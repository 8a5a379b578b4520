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

//! Four physical spins encoding two logical qubits in a decoherence-free
//! subspace of collective dephasing, with a bosonic bath coupled to `J_z`
//! and a weak `ε J_x` perturbation that can leak the state out.
//!
//! The numerical core is generic over the scalar type (`f32` or `f64`); the
//! aliases below fix it to `f64`.
//!
//! ```
//! use zeno_dfs::gates::{verify_gate, GateKind};
//!
//! let report = verify_gate::<f64>(GateKind::Cnot, 1.0).unwrap();
//! assert!(report.passes(1e-12));
//! ```

pub mod bath;
pub mod dfs;
pub mod error;
pub mod gates;
pub mod hermitian;
pub mod oracle;
pub mod perturbation;
pub mod quadrature;
pub mod scalar;
pub mod spin;

pub use error::{Error, Result};
pub use gates::GateKind;
pub use scalar::Real;
pub use spin::Sign;

pub type Operator = spin::Operator16<f64>;
pub type StateVec = spin::StateVec16<f64>;
pub type DfsVector = dfs::DfsVector<f64>;
pub type DfsMatrix = dfs::DfsMatrix<f64>;
pub type CommutingCoupling = gates::CommutingCoupling<f64>;
pub type GeneralCoupling = gates::GeneralCoupling<f64>;
pub type CouplingSchedule = gates::CouplingSchedule<f64>;
pub type Bath = bath::Bath<f64>;
pub type SpectralModel = bath::SpectralModel<f64>;
pub type Mode = bath::Mode<f64>;
pub type PerturbationParams = perturbation::PerturbationParams<f64>;
pub type Engine = perturbation::Engine<f64>;
pub type FidelityCurve = perturbation::FidelityCurve<f64>;
pub type FockTruncation = oracle::FockTruncation<f64>;
pub type ExactOracle = oracle::ExactOracle<f64>;
