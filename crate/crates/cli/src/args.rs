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

//! Flag definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;
use crate::Failure;

#[derive(Debug, Parser)]
#[command(name = "zeno-dfs", version, about = "DFS gate verification and Zeno fidelity numerics")]
pub struct Cli {
    /// Flat key=value configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<String>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the five gates against their targets.
    VerifyGates(VerifyArgs),
    /// Second-order fidelity against εt, continuum or discrete bath.
    FidelityCurve(CurveArgs),
    /// Perturbative against exact fidelity for a discrete bath.
    OracleCompare(OracleArgs),
    /// Samples of the second-order kernel K(t1, t2).
    KernelDump(KernelArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Gate duration.
    #[arg(long)]
    pub tau: Option<String>,
    /// Also report the rank of the Hermitian span of the couplings.
    #[arg(long)]
    pub span_rank: bool,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    #[arg(long, value_name = "cnot|t1|t2|h1|h2|idle")]
    pub gate: Option<String>,
    /// Initial DFS amplitudes "a0,a1,a2,a3", each re+imi.
    #[arg(long, allow_hyphen_values = true)]
    pub state: Option<String>,
    /// Discrete modes "g:w,g:w" (replaces the continuum bath).
    #[arg(long)]
    pub modes: Option<String>,
    #[arg(long)]
    pub t_max: Option<String>,
    #[arg(long)]
    pub points: Option<String>,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct ScaledArgs {
    /// Λ = λ/ε.
    #[arg(long)]
    pub lambda_ratio: Option<String>,
    /// ν_c = ω_c/ε.
    #[arg(long)]
    pub nu_c: Option<String>,
    #[arg(long)]
    pub epsilon: Option<String>,
    /// The product ετ.
    #[arg(long)]
    pub tau_eps: Option<String>,
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    /// Panel width in units of εt.
    #[arg(long)]
    pub step: Option<String>,
    /// Gauss-Legendre points per panel.
    #[arg(long)]
    pub order: Option<String>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub scaled: ScaledArgs,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub scaled: ScaledArgs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub quad: QuadArgs,
    /// Absolute coupling λ.
    #[arg(long)]
    pub lambda: Option<String>,
    /// Comma separated ε values.
    #[arg(long)]
    pub eps_ladder: Option<String>,
    #[arg(long)]
    pub n_max: Option<String>,
    /// Gate duration.
    #[arg(long)]
    pub tau: Option<String>,
    /// Largest accepted |ΔF| at the smallest ε.
    #[arg(long)]
    pub bound: Option<String>,
}

/// Which command to run once the configuration is resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resolved {
    VerifyGates { span_rank: bool },
    FidelityCurve,
    OracleCompare,
    KernelDump,
}

type Pairs<'a> = Vec<(&'static str, &'a Option<String>)>;

impl SystemArgs {
    fn pairs(&self) -> Pairs<'_> {
        vec![
            ("gate", &self.gate),
            ("state", &self.state),
            ("modes", &self.modes),
            ("t-max", &self.t_max),
            ("points", &self.points),
            ("out", &self.out),
        ]
    }
}

impl ScaledArgs {
    fn pairs(&self) -> Pairs<'_> {
        vec![
            ("lambda-ratio", &self.lambda_ratio),
            ("nu-c", &self.nu_c),
            ("epsilon", &self.epsilon),
            ("tau-eps", &self.tau_eps),
        ]
    }
}

impl QuadArgs {
    fn pairs(&self) -> Pairs<'_> {
        vec![("step", &self.step), ("order", &self.order)]
    }
}

impl Cli {
    /// Defaults, then the config file, then flags.
    pub fn resolve(&self) -> Result<(RunConfig, Resolved), Failure> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path)?;
        }
        let mut pairs: Pairs<'_> = vec![("threads", &self.threads), ("seed", &self.seed)];
        let resolved = match &self.command {
            Command::VerifyGates(a) => {
                pairs.extend([("tau", &a.tau), ("out", &a.out)]);
                Resolved::VerifyGates { span_rank: a.span_rank }
            }
            Command::FidelityCurve(a) => {
                pairs.extend(a.system.pairs());
                pairs.extend(a.scaled.pairs());
                pairs.extend(a.quad.pairs());
                Resolved::FidelityCurve
            }
            Command::KernelDump(a) => {
                pairs.extend(a.system.pairs());
                pairs.extend(a.scaled.pairs());
                Resolved::KernelDump
            }
            Command::OracleCompare(a) => {
                pairs.extend(a.system.pairs());
                pairs.extend(a.quad.pairs());
                pairs.extend([
                    ("lambda", &a.lambda),
                    ("eps-ladder", &a.eps_ladder),
                    ("n-max", &a.n_max),
                    ("tau", &a.tau),
                    ("bound", &a.bound),
                ]);
                Resolved::OracleCompare
            }
        };
        for (key, value) in pairs {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        Ok((cfg, resolved))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn parse(argv: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("zeno-dfs").chain(argv.iter().copied())).unwrap()
    }

    #[test]
    fn flags_beat_file_beat_defaults() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "lambda-ratio=800\nnu-c=10\ngate=idle").unwrap();
        let path = file.path().to_str().unwrap();
        let cli = parse(&["fidelity-curve", "--config", path, "--lambda-ratio", "1150"]);
        let (cfg, cmd) = cli.resolve().unwrap();
        assert_eq!(cmd, Resolved::FidelityCurve);
        assert_eq!(cfg.lambda_ratio, 1150.0);
        assert_eq!(cfg.nu_c, 10.0);
        assert_eq!(cfg.gate, zeno_dfs::GateKind::Idle);
        assert_eq!(cfg.tau_eps, 1.0);
    }

    #[test]
    fn global_flags_and_negative_state() {
        let cli = parse(&["kernel-dump", "--threads", "2", "--state", "-1,0,1,0"]);
        let (cfg, _) = cli.resolve().unwrap();
        assert_eq!(cfg.threads, Some(2));
        assert!(cfg.state[0].re < 0.0);
    }

    #[test]
    fn bad_values_are_config_errors() {
        let cli = parse(&["verify-gates", "--tau=-1"]);
        assert_eq!(cli.resolve().unwrap_err().code(), 2);
        let cli = parse(&["fidelity-curve", "--config", "/nonexistent/zeno.cfg"]);
        assert_eq!(cli.resolve().unwrap_err().code(), 2);
    }
}
