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

//! The four subcommands.

use std::path::Path;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use zeno_dfs::gates::{
    build_commuting, hermitian_span_rank, hermitian_span_rank_of, lie_closure_rank, verify_gate,
    GateVerification, SpanParameters,
};
use zeno_dfs::oracle::verify_eq_t4;
use zeno_dfs::perturbation::{time_unit, Dynamics, QuadratureSettings};
use zeno_dfs::spin::{collective_j, commutator_norm, PauliAxis};
use zeno_dfs::{
    Bath, CommutingCoupling, Engine, ExactOracle, FidelityCurve, FockTruncation, GateKind, Mode,
    PerturbationParams, Sign, SpectralModel,
};

use crate::args::Resolved;
use crate::config::RunConfig;
use crate::output::{gnuplot_script, num, script_path, write_text, Table};
use crate::{Failure, Report};

/// Bound on gate errors, leakage and commutators.
pub const GATE_TOLERANCE: f64 = 1e-12;
/// Bound on `‖[H, J_z]‖` for random commuting couplings.
pub const COMMUTATOR_TOLERANCE: f64 = 1e-13;
pub const RANDOM_DRAWS: usize = 100;
/// Smallest accepted ε-scaling exponent of `|ΔF|`.
pub const MIN_EXPONENT: f64 = 3.5;
pub const T4_TIME: f64 = 2.0;
pub const T4_N_MAX: usize = 12;
pub const T4_TOLERANCE: f64 = 1e-6;

pub const CURVE_T_MAX: f64 = 10.0;
pub const CURVE_POINTS: usize = 200;
pub const ORACLE_T_MAX: f64 = 5.0;
pub const ORACLE_POINTS: usize = 21;
pub const KERNEL_POINTS: usize = 50;

pub fn dispatch(command: &Resolved, cfg: &RunConfig) -> Result<Report, Failure> {
    match *command {
        Resolved::VerifyGates { span_rank } => run_verify_gates(cfg, span_rank),
        Resolved::FidelityCurve => run_fidelity_curve(cfg),
        Resolved::OracleCompare => run_oracle_compare(cfg),
        Resolved::KernelDump => run_kernel_dump(cfg),
    }
}

/// `n` evenly spaced values on `[0, t_max]`, exact at both ends.
pub fn linspace(t_max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n)
            .map(|k| if k + 1 == n { t_max } else { t_max * k as f64 / (n - 1) as f64 })
            .collect(),
    }
}

/// Trapezoidal mean of `values` over the grid `x`.
pub fn time_average(x: &[f64], values: &[f64]) -> f64 {
    let span = x.last().copied().unwrap_or(0.0) - x.first().copied().unwrap_or(0.0);
    if span <= 0.0 {
        return values.first().copied().unwrap_or(0.0);
    }
    let area: f64 = x
        .windows(2)
        .zip(values.windows(2))
        .map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0] + v[1]))
        .sum();
    area / span
}

/// Interior points where the discrete slope changes sign.
pub fn count_extrema(values: &[f64]) -> usize {
    let slopes: Vec<f64> = values
        .windows(2)
        .map(|w| w[1] - w[0])
        .filter(|d| *d != 0.0)
        .collect();
    slopes.windows(2).filter(|s| s[0].signum() != s[1].signum()).count()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn write_table<'a>(cfg: &'a RunConfig, table: &Table) -> Result<Option<&'a Path>, Failure> {
    match &cfg.out {
        Some(path) => {
            write_text(path, &table.to_csv())?;
            Ok(Some(path))
        }
        None => Ok(None),
    }
}

// verify-gates

#[derive(Clone, Debug)]
pub struct GateChecks {
    pub tau: f64,
    pub gates: Vec<(GateKind, GateVerification<f64>)>,
    pub seed: u64,
    /// Largest `‖[H, J_z]‖` over the random commuting draws.
    pub random_commutator: f64,
}

impl GateChecks {
    pub fn passes(&self) -> bool {
        self.gates.iter().all(|(_, v)| v.passes(GATE_TOLERANCE)) && self.random_commutator < COMMUTATOR_TOLERANCE
    }
}

pub fn verify_gates(cfg: &RunConfig) -> Result<GateChecks, Failure> {
    let gates = GateKind::UNIVERSAL
        .iter()
        .map(|&k| Ok((k, verify_gate(k, cfg.tau)?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let jz = collective_j::<f64>(PauliAxis::Z);
    let mut random_commutator = 0.0f64;
    for _ in 0..RANDOM_DRAWS {
        let p: Vec<f64> = (0..CommutingCoupling::NUM_PARAMETERS).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let h = build_commuting(&CommutingCoupling::from_slice(&p)?);
        random_commutator = random_commutator.max(commutator_norm(&h, &jz));
    }
    Ok(GateChecks { tau: cfg.tau, gates, seed: cfg.seed, random_commutator })
}

fn run_verify_gates(cfg: &RunConfig, span_rank: bool) -> Result<Report, Failure> {
    let checks = verify_gates(cfg)?;
    let mut text = format!("tau={}\n{:<6}{:>14}{:>14}{:>14}  status\n", num(checks.tau), "gate", "max_error", "leakage", "commutator");
    let mut table = Table::new(&["gate", "max_error", "leakage", "commutator", "status"]);
    table.meta("command", "verify-gates").meta("tau", num(cfg.tau)).meta("seed", cfg.seed);
    for (kind, v) in &checks.gates {
        let status = if v.passes(GATE_TOLERANCE) { "ok" } else { "FAILED" };
        text += &format!("{:<6}{:>14.3e}{:>14.3e}{:>14.3e}  {status}\n", kind.name(), v.max_error, v.leakage, v.commutator);
        table.rows.push(vec![kind.name().into(), num(v.max_error), num(v.leakage), num(v.commutator), status.into()]);
    }
    text += &format!(
        "random commuting couplings: {RANDOM_DRAWS} draws (seed {}), max commutator {:.3e}\n",
        checks.seed, checks.random_commutator
    );
    if span_rank {
        text += &format!("span rank: {}\n", hermitian_span_rank());
        text += &format!(
            "span rank without Gxy: {} (Lie closure {})\n",
            hermitian_span_rank_of::<f64>(SpanParameters::WithoutGxy),
            lie_closure_rank::<f64>(SpanParameters::WithoutGxy)
        );
    }
    write_table(cfg, &table)?;
    let failure = (!checks.passes()).then(|| format!("gate checks exceed {GATE_TOLERANCE:e}"));
    Ok(Report { text, failure })
}

// fidelity-curve

/// A fidelity curve together with the `εt` grid it was requested on.
#[derive(Clone, Debug)]
pub struct CurveRun {
    pub eps_t: Vec<f64>,
    pub curve: FidelityCurve,
    pub table: Table,
}

impl CurveRun {
    pub fn fidelities(&self) -> Vec<f64> {
        self.curve.points.iter().map(|p| p.fidelity).collect()
    }

    pub fn infidelities(&self) -> Vec<f64> {
        self.curve.points.iter().map(|p| 1.0 - p.fidelity).collect()
    }

    pub fn mean_infidelity(&self) -> f64 {
        time_average(&self.eps_t, &self.infidelities())
    }
}

/// Parameters in physical units and the physical time of one unit of `εt`.
pub fn scaled_params(cfg: &RunConfig) -> Result<(PerturbationParams, f64), Failure> {
    let unit = time_unit(cfg.epsilon);
    let params = match &cfg.modes {
        None => PerturbationParams::dimensionless(cfg.epsilon, cfg.lambda_ratio, cfg.nu_c, cfg.gate, cfg.tau_eps, cfg.state)?,
        Some(modes) => {
            let modes = modes
                .iter()
                .map(|m| Mode { coupling: m.coupling, frequency: m.frequency / unit })
                .collect();
            let bath = Bath::new(cfg.lambda_ratio / unit, SpectralModel::discrete(modes)?)?;
            PerturbationParams::new(cfg.epsilon, bath, Dynamics::Gate { kind: cfg.gate, tau: cfg.tau_eps * unit }, cfg.state)?
        }
    };
    Ok((params, unit))
}

fn bath_meta(table: &mut Table, cfg: &RunConfig) {
    match &cfg.modes {
        None => table.meta("lambda-ratio", num(cfg.lambda_ratio)).meta("nu-c", num(cfg.nu_c)),
        Some(_) => table.meta("lambda-ratio", num(cfg.lambda_ratio)).meta("modes", cfg.modes_text()),
    };
}

pub fn fidelity_curve(cfg: &RunConfig) -> Result<CurveRun, Failure> {
    let (params, unit) = scaled_params(cfg)?;
    let t_max = cfg.t_max_or(CURVE_T_MAX);
    let eps_t = linspace(t_max, cfg.points_or(CURVE_POINTS));
    let grid: Vec<f64> = eps_t.iter().map(|x| x * unit).collect();
    let q = QuadratureSettings {
        order: cfg.order,
        step: cfg.step.map(|h| h * unit),
        ..QuadratureSettings::default()
    };
    let curve = Engine::new(params)?.fidelity_curve(&grid, &q)?;

    let mut table = Table::new(&["eps_t", "fidelity", "infidelity", "flag"]);
    table.meta("command", "fidelity-curve").meta("gate", cfg.gate);
    bath_meta(&mut table, cfg);
    table
        .meta("epsilon", num(cfg.epsilon))
        .meta("tau-eps", num(cfg.tau_eps))
        .meta("state", cfg.state_text())
        .meta("t-max", num(t_max))
        .meta("points", eps_t.len())
        .meta("order", cfg.order)
        .meta("step", num(curve.step / unit))
        .meta("refinement-change", num(curve.refinement_change));
    for (x, p) in eps_t.iter().zip(&curve.points) {
        table.rows.push(vec![num(*x), num(p.fidelity), num(1.0 - p.fidelity), p.flag.label().into()]);
    }
    Ok(CurveRun { eps_t, curve, table })
}

fn run_fidelity_curve(cfg: &RunConfig) -> Result<Report, Failure> {
    let run = fidelity_curve(cfg)?;
    let f = run.fidelities();
    let flagged = run.curve.points.iter().filter(|p| p.flag.label() != "ok").count();
    let mut text = format!(
        "points={} mean_infidelity={:.6e} min_F={:.9} max_F={:.12} flagged={} step={:.3e} refinement_change={:.3e} wall_time={:.2}s\n",
        f.len(),
        run.mean_infidelity(),
        f.iter().copied().fold(f64::INFINITY, f64::min),
        f.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        flagged,
        run.curve.step,
        run.curve.refinement_change,
        run.curve.wall_time.as_secs_f64(),
    );
    if let Some(path) = write_table(cfg, &run.table)? {
        let script = script_path(path);
        write_text(&script, &gnuplot_script(path, &format!("{} fidelity", cfg.gate), "eps t", "F", 2))?;
        text += &format!("wrote {} and {}\n", path.display(), script.display());
    } else {
        text += &run.table.to_csv();
    }
    Ok(Report { text, failure: None })
}

// kernel-dump

pub fn kernel_dump(cfg: &RunConfig) -> Result<Table, Failure> {
    let (params, unit) = scaled_params(cfg)?;
    let engine = Engine::new(params)?;
    let t_max = cfg.t_max_or(CURVE_T_MAX);
    let eps_t = linspace(t_max, cfg.points_or(KERNEL_POINTS));
    let scale = unit * unit;
    let rows = eps_t
        .par_iter()
        .enumerate()
        .map(|(i, &x1)| {
            eps_t[..=i]
                .iter()
                .map(|&x2| {
                    let (t1, t2) = (x1 * unit, x2 * unit);
                    let k: Complex<f64> = engine.kernel(t1, t2)? * scale;
                    let pm = engine.gamma(Sign::Plus, Sign::Minus, t1, t2)?.norm();
                    let mp = engine.gamma(Sign::Minus, Sign::Plus, t1, t2)?.norm();
                    Ok(vec![num(x1), num(x2), num(k.re), num(k.im), num(pm), num(mp)])
                })
                .collect::<Result<Vec<_>, Failure>>()
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let mut table = Table::new(&["eps_t1", "eps_t2", "kernel_re", "kernel_im", "gamma_pm_abs", "gamma_mp_abs"]);
    table.meta("command", "kernel-dump").meta("gate", cfg.gate);
    bath_meta(&mut table, cfg);
    table
        .meta("epsilon", num(cfg.epsilon))
        .meta("tau-eps", num(cfg.tau_eps))
        .meta("state", cfg.state_text())
        .meta("t-max", num(t_max))
        .meta("points", eps_t.len());
    table.rows = rows.into_iter().flatten().collect();
    Ok(table)
}

fn run_kernel_dump(cfg: &RunConfig) -> Result<Report, Failure> {
    let table = kernel_dump(cfg)?;
    let text = match write_table(cfg, &table)? {
        Some(path) => format!("wrote {} rows to {}\n", table.rows.len(), path.display()),
        None => table.to_csv(),
    };
    Ok(Report { text, failure: None })
}

// oracle-compare

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleRow {
    pub epsilon: f64,
    pub time: f64,
    pub perturbative: f64,
    pub exact: f64,
}

impl OracleRow {
    pub fn delta(&self) -> f64 {
        (self.perturbative - self.exact).abs()
    }
}

#[derive(Clone, Debug)]
pub struct OracleComparison {
    pub rows: Vec<OracleRow>,
    /// `(ε, max_t |ΔF|)` per rung of the ladder.
    pub ladder: Vec<(f64, f64)>,
    pub exponent: Option<f64>,
    pub t4_error: f64,
    pub table: Table,
}

impl OracleComparison {
    /// `max |ΔF|` at the smallest non-zero ε.
    pub fn smallest_rung_delta(&self) -> Option<f64> {
        self.ladder
            .iter()
            .filter(|(e, _)| *e > 0.0)
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .map(|r| r.1)
    }

    pub fn failures(&self, bound: f64) -> Vec<String> {
        let mut out = Vec::new();
        match self.exponent {
            Some(p) if p >= MIN_EXPONENT => {}
            Some(p) => out.push(format!("exponent {p:.3} below {MIN_EXPONENT}")),
            None => out.push("exponent undefined (need two non-zero rungs with non-zero error)".into()),
        }
        match self.smallest_rung_delta() {
            Some(d) if d < bound => {}
            Some(d) => out.push(format!("max |dF| {d:e} at the smallest epsilon exceeds {bound:e}")),
            None => out.push("no non-zero epsilon in the ladder".into()),
        }
        if self.t4_error >= T4_TOLERANCE || self.t4_error.is_nan() {
            out.push(format!("transformed J_x identity error {:e}", self.t4_error));
        }
        out
    }
}

fn oracle_modes(cfg: &RunConfig) -> Vec<Mode> {
    cfg.modes.clone().unwrap_or_else(|| vec![Mode { coupling: 1.0, frequency: 1.0 }])
}

pub fn oracle_compare(cfg: &RunConfig) -> Result<OracleComparison, Failure> {
    let modes = oracle_modes(cfg);
    let t_max = cfg.t_max_or(ORACLE_T_MAX);
    let times = linspace(t_max, cfg.points_or(ORACLE_POINTS));
    let q = QuadratureSettings {
        order: cfg.order,
        step: cfg.step,
        ..QuadratureSettings::default()
    };
    let bath = Bath::new(cfg.lambda, SpectralModel::discrete(modes.clone())?)?;
    let dynamics = Dynamics::Gate { kind: cfg.gate, tau: cfg.tau };

    let mut rows = Vec::new();
    let mut ladder = Vec::new();
    for &eps in &cfg.eps_ladder {
        let engine = Engine::new(PerturbationParams::new(eps, bath.clone(), dynamics.clone(), cfg.state)?)?;
        let curve = engine.fidelity_curve(&times, &q)?;
        // With ε = 0 the perturbation vanishes and the exact fidelity is 1.
        let exact: Vec<f64> = if eps == 0.0 {
            vec![1.0; times.len()]
        } else {
            let trunc = FockTruncation::new(modes.clone(), cfg.n_max)?;
            let oracle = ExactOracle::new(cfg.gate, cfg.tau, eps, cfg.lambda, trunc, &cfg.state)?;
            times.par_iter().map(|&t| oracle.fidelity(t)).collect::<Result<_, _>>()?
        };
        let mut worst = 0.0f64;
        for ((&time, p), &exact) in times.iter().zip(&curve.points).zip(&exact) {
            let row = OracleRow { epsilon: eps, time, perturbative: p.fidelity, exact };
            worst = worst.max(row.delta());
            rows.push(row);
        }
        ladder.push((eps, worst));
    }
    let exponent = log_slope(&ladder);
    let t4_error = verify_eq_t4(T4_TIME, cfg.lambda, &FockTruncation::new(modes, T4_N_MAX)?)?;

    let mut table = Table::new(&["epsilon", "t", "f_perturbative", "f_exact", "delta"]);
    table
        .meta("command", "oracle-compare")
        .meta("gate", cfg.gate)
        .meta("modes", {
            let mut c = cfg.clone();
            c.modes = Some(oracle_modes(cfg));
            c.modes_text()
        })
        .meta("lambda", num(cfg.lambda))
        .meta("tau", num(cfg.tau))
        .meta("state", cfg.state_text())
        .meta("eps-ladder", cfg.eps_ladder.iter().map(|e| num(*e)).collect::<Vec<_>>().join(","))
        .meta("n-max", cfg.n_max)
        .meta("t-max", num(t_max))
        .meta("points", times.len())
        .meta("order", cfg.order)
        .meta("bound", num(cfg.bound));
    for r in &rows {
        table.rows.push(vec![num(r.epsilon), num(r.time), num(r.perturbative), num(r.exact), num(r.delta())]);
    }
    Ok(OracleComparison { rows, ladder, exponent, t4_error, table })
}

fn run_oracle_compare(cfg: &RunConfig) -> Result<Report, Failure> {
    let cmp = oracle_compare(cfg)?;
    let mut text = format!("{:>10}{:>8}{:>22}{:>22}{:>12}\n", "epsilon", "t", "F_perturbative", "F_exact", "|dF|");
    for r in &cmp.rows {
        text += &format!("{:>10}{:>8.3}{:>22.15}{:>22.15}{:>12.3e}\n", num(r.epsilon), r.time, r.perturbative, r.exact, r.delta());
    }
    for (eps, d) in &cmp.ladder {
        text += &format!("epsilon={} max|dF|={d:.3e}\n", num(*eps));
    }
    text += &match cmp.exponent {
        Some(p) => format!("fitted exponent {p:.3}\n"),
        None => "fitted exponent undefined\n".into(),
    };
    text += &format!("verify-t4 (t={}, n_max={T4_N_MAX}): max error {:.3e}\n", num(T4_TIME), cmp.t4_error);
    if let Some(path) = write_table(cfg, &cmp.table)? {
        text += &format!("wrote {}\n", path.display());
    }
    let failures = cmp.failures(cfg.bound);
    let failure = (!failures.is_empty()).then(|| failures.join("; "));
    Ok(Report { text, failure })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_helpers() {
        assert_eq!(linspace(10.0, 3), vec![0.0, 5.0, 10.0]);
        assert_eq!(linspace(10.0, 1), vec![0.0]);
        assert_eq!(*linspace(10.0, 200).last().unwrap(), 10.0);
        assert_eq!(count_extrema(&[0.0, 1.0, 1.0, 0.0, 2.0, 3.0]), 2);
        assert!((time_average(&[0.0, 1.0, 2.0], &[0.0, 1.0, 0.0]) - 0.5).abs() < 1e-15);
        let slope = log_slope(&[(0.02, 16.0 * 3.0), (0.01, 3.0), (0.005, 3.0 / 16.0), (0.0, 0.0)]).unwrap();
        assert!((slope - 4.0).abs() < 1e-12);
        assert!(log_slope(&[(0.1, 1.0)]).is_none());
    }

    #[test]
    fn gates_verify_for_any_tau() {
        for tau in [1.0, 10.0] {
            let cfg = RunConfig { tau, ..RunConfig::default() };
            let checks = verify_gates(&cfg).unwrap();
            assert_eq!(checks.gates.len(), 5);
            assert!(checks.passes());
        }
    }

    #[test]
    fn zero_coupling_zero_epsilon_curve_is_flat() {
        let cfg = RunConfig {
            lambda_ratio: 0.0,
            epsilon: 0.0,
            points: Some(11),
            ..RunConfig::default()
        };
        let run = fidelity_curve(&cfg).unwrap();
        assert!(run.fidelities().iter().all(|&f| f == 1.0));
        let csv = run.table.to_csv();
        let body: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body[0], "eps_t,fidelity,infidelity,flag");
        assert_eq!(body[1], "0.0,1.0,0.0,ok");
        assert_eq!(body.len(), 12);
    }

    #[test]
    fn short_curve_starts_at_one() {
        let cfg = RunConfig {
            t_max: Some(1.0),
            points: Some(5),
            ..RunConfig::default()
        };
        let run = fidelity_curve(&cfg).unwrap();
        assert_eq!(run.table.rows[0], vec!["0.0", "1.0", "0.0", "ok"]);
        assert!(run.fidelities().iter().all(|&f| f <= 1.0 + 1e-6));
    }

    #[test]
    fn kernel_dump_is_lower_triangular() {
        let cfg = RunConfig {
            points: Some(4),
            t_max: Some(1.0),
            ..RunConfig::default()
        };
        let t = kernel_dump(&cfg).unwrap();
        assert_eq!(t.rows.len(), 10);
        for r in &t.rows {
            assert!(r[0].parse::<f64>().unwrap() >= r[1].parse::<f64>().unwrap());
        }
    }

    #[test]
    fn oracle_zero_rung_is_exact() {
        let cfg = RunConfig {
            eps_ladder: vec![0.0, 0.02, 0.01],
            t_max: Some(2.0),
            points: Some(5),
            n_max: 12,
            ..RunConfig::default()
        };
        let cmp = oracle_compare(&cfg).unwrap();
        assert!(cmp.rows.iter().filter(|r| r.epsilon == 0.0).all(|r| r.delta() == 0.0));
        assert_eq!(cmp.ladder[0], (0.0, 0.0));
        assert!(cmp.t4_error < T4_TOLERANCE);
        assert!(cmp.exponent.unwrap() > 3.0);
    }
}
