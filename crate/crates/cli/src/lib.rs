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

//! Command-line front end for `zeno-dfs`.
//!
//! Every command resolves a [`RunConfig`](config::RunConfig) from built-in
//! defaults, an optional `key=value` file and flags (in that order of
//! increasing precedence), runs, and reports an exit status.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use std::process::ExitCode;

use thiserror::Error;

/// A failed run, classified by exit status.
#[derive(Debug, Error)]
pub enum Failure {
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Resource(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Config(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code())
    }
}

/// Exit status for a library error, classified by its innermost cause.
fn class(e: &zeno_dfs::Error) -> u8 {
    use zeno_dfs::Error as E;
    match e {
        E::Argument(_) => 2,
        E::Resource(_) | E::Truncation(_) | E::Precondition(_) => 3,
        E::CurvePoint { source, .. } => class(source),
        _ => 1,
    }
}

impl From<zeno_dfs::Error> for Failure {
    fn from(e: zeno_dfs::Error) -> Self {
        let text = e.to_string();
        match class(&e) {
            2 => Failure::Config(text),
            3 => Failure::Resource(text),
            _ => Failure::Verification(text),
        }
    }
}

/// Text for stdout plus whether the run verified what it checks.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub text: String,
    /// `Some(reason)` when a verification criterion failed.
    pub failure: Option<String>,
}

/// Parses nothing; runs an already parsed command line.
pub fn run(cli: args::Cli) -> Result<Report, Failure> {
    let (cfg, command) = cli.resolve()?;
    let work = || commands::dispatch(&command, &cfg);
    match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::Resource(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    }
}
