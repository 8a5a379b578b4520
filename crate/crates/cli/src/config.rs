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

//! Run configuration: built-in defaults, `key=value` files and flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex;
use zeno_dfs::dfs::{default_initial_state, DFS_DIM};
use zeno_dfs::{DfsVector, GateKind, Mode};

use crate::Failure;

/// Every key accepted in a config file (and the long name of its flag).
pub const KEYS: &[&str] = &[
    "gate",
    "lambda-ratio",
    "nu-c",
    "modes",
    "t-max",
    "points",
    "epsilon",
    "tau-eps",
    "state",
    "out",
    "threads",
    "seed",
    "step",
    "order",
    "lambda",
    "eps-ladder",
    "n-max",
    "tau",
    "bound",
];

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub gate: GateKind,
    /// `Λ = λ/ε`.
    pub lambda_ratio: f64,
    /// `ν_c = ω_c/ε`.
    pub nu_c: f64,
    /// Discrete modes `(g, ω)`; frequencies in units of `ε` for curves and
    /// kernel dumps, absolute for oracle comparisons.
    pub modes: Option<Vec<Mode>>,
    pub t_max: Option<f64>,
    pub points: Option<usize>,
    pub epsilon: f64,
    pub tau_eps: f64,
    pub state: DfsVector,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub seed: u64,
    /// Panel width in units of `εt`.
    pub step: Option<f64>,
    pub order: usize,
    /// Absolute bath coupling for oracle comparisons.
    pub lambda: f64,
    pub eps_ladder: Vec<f64>,
    pub n_max: usize,
    /// Absolute gate time for gate checks and oracle comparisons.
    pub tau: f64,
    pub bound: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            gate: GateKind::Cnot,
            lambda_ratio: 2000.0,
            nu_c: 1e5,
            modes: None,
            t_max: None,
            points: None,
            epsilon: 1.0,
            tau_eps: 1.0,
            state: default_initial_state(),
            out: None,
            threads: None,
            seed: 0,
            step: None,
            order: 4,
            lambda: 0.05,
            eps_ladder: vec![0.02, 0.01, 0.005],
            n_max: 15,
            tau: 1.0,
            bound: 5e-6,
        }
    }
}

fn bad(key: &str, value: &str, why: impl fmt::Display) -> Failure {
    Failure::Config(format!("{key}={value}: {why}"))
}

fn number<T: FromStr>(key: &str, value: &str) -> Result<T, Failure>
where
    T::Err: fmt::Display,
{
    value.trim().parse::<T>().map_err(|e| bad(key, value, e))
}

fn positive(key: &str, value: &str) -> Result<f64, Failure> {
    let x: f64 = number(key, value)?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(bad(key, value, "must be positive"))
    }
}

fn non_negative(key: &str, value: &str) -> Result<f64, Failure> {
    let x: f64 = number(key, value)?;
    if x >= 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(bad(key, value, "must be non-negative"))
    }
}

/// Parses `re`, `re+imi`, `re-imi`, `imi` or `i`.
pub fn parse_complex(text: &str) -> Option<Complex<f64>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().ok().map(|re| Complex::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| match t {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => t.parse().ok(),
    };
    match split {
        Some(k) => Some(Complex::new(body[..k].parse().ok()?, imag(&body[k..])?)),
        None => Some(Complex::new(0.0, imag(body)?)),
    }
}

fn format_complex(z: Complex<f64>) -> String {
    let sign = if z.im < 0.0 { "-" } else { "+" };
    format!("{:?}{sign}{:?}i", z.re, z.im.abs())
}

impl RunConfig {
    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), Failure> {
        let v = value.trim();
        match key {
            "gate" => self.gate = v.parse().map_err(|e| bad(key, v, e))?,
            "lambda-ratio" => self.lambda_ratio = non_negative(key, v)?,
            "nu-c" => self.nu_c = positive(key, v)?,
            "modes" => {
                let modes = v
                    .split(',')
                    .map(|pair| {
                        let (g, w) = pair.split_once(':').ok_or_else(|| bad(key, v, "expected g:w pairs"))?;
                        Ok(Mode {
                            coupling: number(key, g)?,
                            frequency: positive(key, w)?,
                        })
                    })
                    .collect::<Result<Vec<_>, Failure>>()?;
                self.modes = Some(modes);
            }
            "t-max" => self.t_max = Some(non_negative(key, v)?),
            "points" => {
                let n: usize = number(key, v)?;
                if n < 1 {
                    return Err(bad(key, v, "need at least one point"));
                }
                self.points = Some(n);
            }
            "epsilon" => self.epsilon = non_negative(key, v)?,
            "tau-eps" => self.tau_eps = positive(key, v)?,
            "state" => {
                let parts: Vec<&str> = v.split(',').collect();
                if parts.len() != DFS_DIM {
                    return Err(bad(key, v, "expected four amplitudes"));
                }
                let amps = parts
                    .iter()
                    .map(|p| parse_complex(p).ok_or_else(|| bad(key, v, "bad complex number")))
                    .collect::<Result<Vec<_>, Failure>>()?;
                let s = DfsVector::from_iterator(amps);
                let norm = s.norm();
                if !(norm > 0.0 && norm.is_finite()) {
                    return Err(bad(key, v, "state must be non-zero"));
                }
                self.state = s / Complex::new(norm, 0.0);
            }
            "out" => self.out = Some(PathBuf::from(v)),
            "threads" => {
                let n: usize = number(key, v)?;
                if n < 1 {
                    return Err(bad(key, v, "need at least one thread"));
                }
                self.threads = Some(n);
            }
            "seed" => self.seed = number(key, v)?,
            "step" => self.step = Some(positive(key, v)?),
            "order" => {
                let n: usize = number(key, v)?;
                if !(1..=64).contains(&n) {
                    return Err(bad(key, v, "order must be in 1..=64"));
                }
                self.order = n;
            }
            "lambda" => self.lambda = non_negative(key, v)?,
            "eps-ladder" => {
                let ladder = v
                    .split(',')
                    .map(|x| non_negative(key, x))
                    .collect::<Result<Vec<_>, Failure>>()?;
                self.eps_ladder = ladder;
            }
            "n-max" => {
                let n: usize = number(key, v)?;
                if n < 1 {
                    return Err(bad(key, v, "n-max must be at least 1"));
                }
                self.n_max = n;
            }
            "tau" => self.tau = positive(key, v)?,
            "bound" => self.bound = positive(key, v)?,
            _ => return Err(Failure::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    /// Applies a flat `key=value` file; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), Failure> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Failure::Config(format!("line {}: expected key=value", n + 1)))?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn t_max_or(&self, default: f64) -> f64 {
        self.t_max.unwrap_or(default)
    }

    pub fn points_or(&self, default: usize) -> usize {
        self.points.unwrap_or(default)
    }

    pub fn modes_text(&self) -> String {
        match &self.modes {
            None => "none".into(),
            Some(m) => m
                .iter()
                .map(|m| format!("{:?}:{:?}", m.coupling, m.frequency))
                .collect::<Vec<_>>()
                .join(","),
        }
    }

    pub fn state_text(&self) -> String {
        self.state.iter().map(|z| format_complex(*z)).collect::<Vec<_>>().join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.5"), Some(Complex::new(0.5, 0.0)));
        assert_eq!(parse_complex("1+2i"), Some(Complex::new(1.0, 2.0)));
        assert_eq!(parse_complex("-1-2.5i"), Some(Complex::new(-1.0, -2.5)));
        assert_eq!(parse_complex("i"), Some(Complex::new(0.0, 1.0)));
        assert_eq!(parse_complex("-i"), Some(Complex::new(0.0, -1.0)));
        assert_eq!(parse_complex("3-i"), Some(Complex::new(3.0, -1.0)));
        assert_eq!(parse_complex("1e-3+2e-2i"), Some(Complex::new(1e-3, 2e-2)));
        assert_eq!(parse_complex("x"), None);
        let z = Complex::new(-0.25, -3.0);
        assert_eq!(parse_complex(&format_complex(z)), Some(z));
    }

    #[test]
    fn file_then_keys() {
        let mut c = RunConfig::default();
        c.apply_text("# comment\ngate = h1\nlambda-ratio=800 # trailing\n\nmodes=1:1,0.5:2\n").unwrap();
        assert_eq!(c.gate, GateKind::H1);
        assert_eq!(c.lambda_ratio, 800.0);
        assert_eq!(c.modes.as_ref().unwrap().len(), 2);
        assert_eq!(c.modes_text(), "1.0:1.0,0.5:2.0");
        assert!(matches!(c.apply_text("bogus=1"), Err(Failure::Config(_))));
        assert!(matches!(c.apply_text("points"), Err(Failure::Config(_))));
        assert!(c.set("nu-c", "0").is_err());
        assert!(c.set("state", "0,0,0,0").is_err());
    }

    #[test]
    fn state_is_normalized() {
        let mut c = RunConfig::default();
        c.set("state", "1, i, 0, 0").unwrap();
        assert!((c.state.norm() - 1.0).abs() < 1e-15);
        assert!((c.state[1] - Complex::new(0.0, 1.0 / 2f64.sqrt())).norm() < 1e-15);
    }

    #[test]
    fn every_key_is_settable() {
        let sample = |k: &str| match k {
            "gate" => "idle",
            "modes" => "1:1",
            "state" => "1,0,0,0",
            "out" => "x.csv",
            "eps-ladder" => "0.1,0.05",
            _ => "3",
        };
        for k in KEYS {
            RunConfig::default().set(k, sample(k)).unwrap();
        }
    }
}
