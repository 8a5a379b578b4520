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

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("quadrature did not converge at t = {t}: coarse estimate {coarse}, refined estimate {fine}")]
    Quadrature { t: f64, coarse: f64, fine: f64 },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("Fock truncation inadequate: {0}; increase n_max")]
    Truncation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("curve point {index}: {source}")]
    CurvePoint {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
