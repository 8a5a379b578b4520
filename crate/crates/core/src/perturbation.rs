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

//! Second-order fidelity of a DFS computation perturbed by `ε J_x`.
//!
//! With `|χ_±(t)⟩ = U₀†(t) J_± U₀(t) |φ(0)⟩` and `a_± = ∓3, ±1`-weighted
//! dephasing phases, the first excursion out of the DFS is
//!
//! ```text
//! |Φ(t)⟩ = (ε/2) [e^{-3iα(t)} e^{γ(t)} |χ_+(t)⟩ + e^{iα(t)} e^{-γ(t)} |χ_-(t)⟩] |0⟩
//! ```
//!
//! and `F(t) = 1 - 2 Re ∫_0^t dt1 ∫_0^{t1} dt2 K(t1, t2)` with
//! `K(t1, t2) = ⟨Φ(t1)|Φ(t2)⟩`. First-order terms vanish because `J_x` has no
//! matrix elements inside the DFS.
//!
//! All times here are physical; see [`PerturbationParams::dimensionless`] for
//! the `Λ = λ/ε`, `ν_c = ω_c/ε` parametrization.

use std::time::{Duration, Instant};

use nalgebra::SVector;
use num_complex::Complex;
use rayon::prelude::*;

use crate::bath::{Bath, SpectralModel};
use crate::dfs::{encode, DfsVector, Normalization};
use crate::error::{Error, Result};
use crate::gates::{build_commuting, gate_hamiltonian, CouplingSchedule, GateKind};
use crate::quadrature::GaussLegendre;
use crate::scalar::{cis, lit, to_f64, Real};
use crate::spin::{ladder, sector_indices, Operator16, Sign, Spectrum16, StateVec16};

/// Indices of the `M_z = 0` sector, where `χ_-` lives.
const LOWER_SECTOR: [usize; 6] = [3, 5, 6, 9, 10, 12];
/// Index of the `M_z = 2` state, where `χ_+` lives.
const UPPER_SECTOR: usize = 0;
/// Components of a compact kernel node: one for `χ_+`, six for `χ_-`.
const NODE_DIM: usize = 7;

/// Free (unperturbed, bath-free) system Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub enum Dynamics<T: Real> {
    /// A single gate Hamiltonian switched on for all `t ≥ 0`.
    Gate { kind: GateKind, tau: T },
    /// Piecewise-constant couplings; the system idles after the last segment.
    Schedule(CouplingSchedule<T>),
}

#[derive(Clone, Debug)]
struct Piece<T: Real> {
    start: T,
    spectrum: Spectrum16<T>,
    /// `U₀(start)`.
    before: Operator16<T>,
}

/// `U₀(t)` for a [`Dynamics`], with cached segment spectra.
#[derive(Clone, Debug)]
pub struct FreeEvolution<T: Real> {
    pieces: Vec<Piece<T>>,
    /// End of the last piece and `U₀` there (`None` if the last piece is open).
    end: Option<(T, Operator16<T>)>,
}

impl<T: Real> FreeEvolution<T> {
    pub fn new(dynamics: &Dynamics<T>) -> Result<Self> {
        match dynamics {
            Dynamics::Gate { kind, tau } => Ok(Self {
                pieces: vec![Piece {
                    start: T::zero(),
                    spectrum: Spectrum16::new(&gate_hamiltonian(*kind, *tau)?)?,
                    before: Operator16::identity(),
                }],
                end: None,
            }),
            Dynamics::Schedule(schedule) => {
                let mut pieces = Vec::with_capacity(schedule.segments().len());
                let mut start = T::zero();
                let mut u = Operator16::identity();
                for seg in schedule.segments() {
                    let spectrum = Spectrum16::new(&build_commuting(&seg.coupling))?;
                    let next = spectrum.propagator(seg.duration) * u;
                    pieces.push(Piece { start, spectrum, before: u });
                    start += seg.duration;
                    u = next;
                }
                Ok(Self { pieces, end: Some((start, u)) })
            }
        }
    }

    /// Largest eigenvalue spread over all pieces.
    pub fn spread(&self) -> T {
        self.pieces
            .iter()
            .fold(T::zero(), |a, p| if p.spectrum.spread() > a { p.spectrum.spread() } else { a })
    }

    fn locate(&self, t: T) -> Option<&Piece<T>> {
        if let Some((end, _)) = &self.end {
            if t >= *end {
                return None;
            }
        }
        self.pieces.iter().rev().find(|p| t >= p.start)
    }

    pub fn propagator(&self, t: T) -> Operator16<T> {
        match self.locate(t) {
            Some(p) => p.spectrum.propagator(t - p.start) * p.before,
            None => self.end.as_ref().map_or_else(Operator16::identity, |(_, u)| *u),
        }
    }

    /// `U₀(t) v`.
    pub fn forward(&self, t: T, v: &StateVec16<T>) -> StateVec16<T> {
        match self.locate(t) {
            Some(p) => p.spectrum.evolve(t - p.start, &(p.before * v)),
            None => self.end.as_ref().map_or(*v, |(_, u)| u * v),
        }
    }

    /// `U₀†(t) v`.
    pub fn backward(&self, t: T, v: &StateVec16<T>) -> StateVec16<T> {
        match self.locate(t) {
            Some(p) => p.before.ad_mul(&p.spectrum.evolve(p.start - t, v)),
            None => self.end.as_ref().map_or(*v, |(_, u)| u.ad_mul(v)),
        }
    }
}

/// Physical parameters of a perturbative run.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationParams<T: Real> {
    pub epsilon: T,
    pub bath: Bath<T>,
    pub dynamics: Dynamics<T>,
    pub initial: DfsVector<T>,
}

impl<T: Real> PerturbationParams<T> {
    pub fn new(epsilon: T, bath: Bath<T>, dynamics: Dynamics<T>, initial: DfsVector<T>) -> Result<Self> {
        if !(epsilon >= T::zero() && epsilon.is_finite()) {
            return Err(Error::Argument("perturbation strength must be non-negative".into()));
        }
        encode(&initial, Normalization::Strict)?;
        Ok(Self { epsilon, bath, dynamics, initial })
    }

    /// Continuum run from dimensionless ratios: `λ = Λε`, `ω_c = ν_c ε`,
    /// `τ = (ετ)/ε`. Times passed to the engine are then `(εt)/ε`.
    /// For `ε = 0` the unit of frequency is 1 instead of `ε`.
    pub fn dimensionless(
        epsilon: T,
        lambda_ratio: T,
        nu_c: T,
        gate: GateKind,
        eps_tau: T,
        initial: DfsVector<T>,
    ) -> Result<Self> {
        if !(lambda_ratio >= T::zero() && eps_tau > T::zero()) {
            return Err(Error::Argument("Λ must be non-negative and ετ positive".into()));
        }
        let unit = time_unit(epsilon);
        let bath = Bath::new(lambda_ratio / unit, SpectralModel::continuum(nu_c / unit)?)?;
        Self::new(
            epsilon,
            bath,
            Dynamics::Gate { kind: gate, tau: eps_tau * unit },
            initial,
        )
    }
}

/// Physical time corresponding to one unit of `εt` (`1/ε`, or 1 if `ε = 0`).
pub fn time_unit<T: Real>(epsilon: T) -> T {
    if epsilon > T::zero() {
        T::one() / epsilon
    } else {
        T::one()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSettings {
    /// Gauss–Legendre points per panel.
    pub order: usize,
    /// Panel width override in physical time.
    pub step: Option<f64>,
    /// Samples per period of the fastest phase in the kernel.
    pub samples_per_period: f64,
    /// Panels per grid interval, at least.
    pub panels_per_interval: usize,
    /// Largest accepted change of `F` when the panel width is halved.
    pub tolerance: f64,
    pub check_convergence: bool,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            order: 4,
            step: None,
            samples_per_period: 8.0,
            panels_per_interval: 16,
            tolerance: 1e-6,
            check_convergence: true,
        }
    }
}

/// Status of one fidelity value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PointFlag {
    Ok,
    /// `F > 1 + 1e-6`; reported unclamped.
    AboveOne,
    /// Halving the panel width moved `F` by more than the tolerance.
    Unconverged { coarse: f64, fine: f64 },
}

impl PointFlag {
    pub fn label(&self) -> &'static str {
        match self {
            PointFlag::Ok => "ok",
            PointFlag::AboveOne => "above_one",
            PointFlag::Unconverged { .. } => "unconverged",
        }
    }
}

/// Tolerance above one before a fidelity value is flagged.
pub const ABOVE_ONE_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint<T> {
    pub time: T,
    pub fidelity: T,
    pub flag: PointFlag,
}

#[derive(Clone, Debug)]
pub struct FidelityCurve<T: Real> {
    pub points: Vec<CurvePoint<T>>,
    pub params: PerturbationParams<T>,
    pub settings: QuadratureSettings,
    /// Panel width actually used for the reported values.
    pub step: T,
    /// Largest `|F_h - F_{h/2}|` over the grid (zero if not checked).
    pub refinement_change: f64,
    pub wall_time: Duration,
}

/// Per-time compact data: `(ε/2) e^{-iσ(t)} (e^{-3iα} χ_+[0], e^{iα} χ_-[M=0])`.
type Node<T> = SVector<Complex<T>, NODE_DIM>;

pub struct Engine<T: Real> {
    params: PerturbationParams<T>,
    free: FreeEvolution<T>,
    phi: StateVec16<T>,
    raise: Operator16<T>,
    lower: Operator16<T>,
}

impl<T: Real> Engine<T> {
    pub fn new(params: PerturbationParams<T>) -> Result<Self> {
        let free = FreeEvolution::new(&params.dynamics)?;
        let phi = encode(&params.initial, Normalization::Strict)?;
        debug_assert_eq!(sector_indices(0), LOWER_SECTOR.to_vec());
        Ok(Self {
            params,
            free,
            phi,
            raise: ladder(Sign::Plus),
            lower: ladder(Sign::Minus),
        })
    }

    pub fn params(&self) -> &PerturbationParams<T> {
        &self.params
    }

    pub fn free_evolution(&self) -> &FreeEvolution<T> {
        &self.free
    }

    /// `χ_±(t) = U₀†(t) J_± U₀(t) |φ(0)⟩`.
    pub fn chi(&self, sign: Sign, t: T) -> Result<StateVec16<T>> {
        check_time(t)?;
        let j = match sign {
            Sign::Plus => &self.raise,
            Sign::Minus => &self.lower,
        };
        Ok(self.free.backward(t, &(j * self.free.forward(t, &self.phi))))
    }

    /// `Γ_ab(t1, t2)`, without the `ε²`:
    /// `¼ e^{i[p_a α(t1) - p_b α(t2)]} ⟨χ_a(t1)|χ_b(t2)⟩` with `p_+ = 3`,
    /// `p_- = -1`.
    pub fn gamma(&self, a: Sign, b: Sign, t1: T, t2: T) -> Result<Complex<T>> {
        let p = |s: Sign| match s {
            Sign::Plus => lit::<T>(3.0),
            Sign::Minus => -T::one(),
        };
        let alpha1 = self.params.bath.alpha(t1)?;
        let alpha2 = self.params.bath.alpha(t2)?;
        let overlap = self.chi(a, t1)?.dotc(&self.chi(b, t2)?);
        Ok(cis(p(a) * alpha1 - p(b) * alpha2) * overlap / lit::<T>(4.0))
    }

    pub fn gamma_pp(&self, t1: T, t2: T) -> Result<Complex<T>> {
        self.gamma(Sign::Plus, Sign::Plus, t1, t2)
    }

    pub fn gamma_mm(&self, t1: T, t2: T) -> Result<Complex<T>> {
        self.gamma(Sign::Minus, Sign::Minus, t1, t2)
    }

    /// Kernel from the four `Γ` terms and their vacuum correlations,
    /// evaluated literally.
    pub fn kernel_direct(&self, t1: T, t2: T) -> Result<Complex<T>> {
        let bath = &self.params.bath;
        let mut k = Complex::new(T::zero(), T::zero());
        for a in [Sign::Plus, Sign::Minus] {
            for b in [Sign::Plus, Sign::Minus] {
                // |Φ⟩ carries e^{+γ} with χ_+ and e^{-γ} with χ_-; the bra flips it.
                let c = bath.vacuum_correlation(flip(a), b, t1, t2)?;
                k += self.gamma(a, b, t1, t2)? * c;
            }
        }
        Ok(k * self.params.epsilon * self.params.epsilon)
    }

    fn node(&self, t: T) -> Result<Node<T>> {
        let bath = &self.params.bath;
        let alpha = bath.alpha(t)?;
        let sigma = bath.sigma(t)?;
        let half = self.params.epsilon / lit(2.0);
        let plus = self.chi(Sign::Plus, t)?;
        let minus = self.chi(Sign::Minus, t)?;
        let up = cis(-lit::<T>(3.0) * alpha - sigma) * half;
        let down = cis(alpha - sigma) * half;
        let mut n = Node::zeros();
        n[0] = plus[UPPER_SECTOR] * up;
        for (slot, &i) in LOWER_SECTOR.iter().enumerate() {
            n[slot + 1] = minus[i] * down;
        }
        Ok(n)
    }

    /// Kernel through the compact factorized route used by the integrator.
    pub fn kernel(&self, t1: T, t2: T) -> Result<Complex<T>> {
        let n1 = self.node(t1)?;
        let n2 = self.node(t2)?;
        Ok(n1.dotc(&n2) * self.params.bath.stationary(t1 - t2)?)
    }

    /// Largest angular rate present in the kernel, used for the step rule.
    pub fn phase_rate(&self) -> T {
        let bath = &self.params.bath;
        let bath_modes = match &bath.spectrum {
            SpectralModel::Discrete(_) => bath.spectrum.max_frequency(),
            SpectralModel::Continuum { .. } => T::zero(),
        };
        lit::<T>(3.0) * bath.alpha_rate_bound() + self.free.spread() + bath_modes
    }

    fn step_for(&self, grid: &[T], q: &QuadratureSettings) -> T {
        if let Some(h) = q.step {
            return lit(h);
        }
        let mut h = T::max_value().unwrap_or_else(|| lit(f64::MAX));
        let rate = self.phase_rate();
        if rate > T::zero() {
            h = T::two_pi() / (lit::<T>(q.samples_per_period) * rate);
        }
        let mut prev = T::zero();
        let mut widest = T::zero();
        for &g in grid {
            let gap = g - prev;
            if gap > T::zero() {
                let limit = gap / lit(q.panels_per_interval as f64);
                if limit < h {
                    h = limit;
                }
            }
            if gap > widest {
                widest = gap;
            }
            prev = g;
        }
        if widest == T::zero() {
            T::one()
        } else {
            h
        }
    }

    /// `Re ∫_0^{g} dt1 ∫_0^{t1} dt2 K(t1, t2)` for every `g` in a sorted grid.
    fn triangle_integrals(&self, grid: &[T], h: T, order: usize) -> Result<Vec<T>> {
        let rule = GaussLegendre::<T>::new(order)?;
        // Panels aligned to grid points.
        let mut panels: Vec<(T, T)> = Vec::new();
        let mut ends = Vec::with_capacity(grid.len());
        let mut prev = T::zero();
        for &g in grid {
            let gap = g - prev;
            if gap > T::zero() {
                // allowance keeps rounding in `gap / h` from adding a panel
                let count = (to_f64(gap / h) * (1.0 - 1e-9)).ceil().max(1.0) as usize;
                let width = gap / lit(count as f64);
                for k in 0..count {
                    let a = prev + width * lit(k as f64);
                    let b = if k + 1 == count { g } else { a + width };
                    panels.push((a, b));
                }
            }
            ends.push(panels.len());
            prev = g;
        }
        if panels.len() > MAX_PANELS {
            return Err(Error::Resource(format!(
                "{} quadrature panels exceed the limit of {MAX_PANELS}; raise the step",
                panels.len()
            )));
        }

        let n = rule.order();
        let (times, weights): (Vec<T>, Vec<T>) = panels
            .iter()
            .flat_map(|&(a, b)| rule.mapped(a, b).collect::<Vec<_>>())
            .unzip();
        let nodes: Vec<Node<T>> = times
            .par_iter()
            .map(|&t| self.node(t))
            .collect::<Result<_>>()?;
        // Struct-of-arrays copies of the weighted nodes for the hot loop.
        let (wre, wim): (Vec<T>, Vec<T>) = nodes
            .iter()
            .zip(&weights)
            .flat_map(|(v, &w)| v.iter().map(move |z| (z.re * w, z.im * w)).collect::<Vec<_>>())
            .unzip();

        let table = StationaryTable::build(self, &panels, &rule)?;
        let bath = &self.params.bath;

        // Rectangle part: each node against every node of earlier panels.
        // Only the real part of the integral is needed.
        let rows: Vec<T> = (0..times.len())
            .into_par_iter()
            .map(|idx| {
                let p = idx / n;
                let i = idx % n;
                let left = &nodes[idx];
                let mut acc = T::zero();
                for j in 0..p * n {
                    let c = match &table {
                        Some(tab) => tab.get(p - j / n, i, j % n),
                        None => bath.stationary(times[idx] - times[j])?,
                    };
                    let (mut dr, mut di) = (T::zero(), T::zero());
                    let base = j * NODE_DIM;
                    for m in 0..NODE_DIM {
                        let (lr, li) = (left[m].re, left[m].im);
                        let (vr, vi) = (wre[base + m], wim[base + m]);
                        dr += lr * vr + li * vi;
                        di += lr * vi - li * vr;
                    }
                    acc += dr * c.re - di * c.im;
                }
                Ok(acc * weights[idx])
            })
            .collect::<Result<_>>()?;

        // Diagonal triangles with an inner rule on [panel start, t1].
        let diagonal: Vec<T> = panels
            .par_iter()
            .enumerate()
            .map(|(p, &(a, _))| {
                let mut acc = Complex::new(T::zero(), T::zero());
                for i in 0..n {
                    let idx = p * n + i;
                    let t1 = times[idx];
                    let left = nodes[idx].conjugate();
                    let mut inner = Complex::new(T::zero(), T::zero());
                    for (t2, w2) in rule.mapped(a, t1) {
                        let c = bath.stationary(t1 - t2)?;
                        inner += left.dot(&self.node(t2)?) * c * w2;
                    }
                    acc += inner * weights[idx];
                }
                Ok(acc.re)
            })
            .collect::<Result<_>>()?;

        let mut out = Vec::with_capacity(grid.len());
        let mut total = T::zero();
        let mut done = 0;
        for &end in &ends {
            while done < end {
                total += diagonal[done];
                for i in 0..n {
                    total += rows[done * n + i];
                }
                done += 1;
            }
            out.push(total);
        }
        Ok(out)
    }

    fn evaluate(&self, grid: &[T], q: &QuadratureSettings) -> Result<(Vec<T>, Vec<Option<(T, T)>>, T, f64)> {
        check_grid(grid)?;
        let h = self.step_for(grid, q);
        if !(h > T::zero() && h.is_finite()) {
            return Err(Error::Argument("quadrature step must be positive".into()));
        }
        let to_f = |i: Vec<T>| -> Vec<T> {
            i.into_iter().map(|re| T::one() - lit::<T>(2.0) * re).collect()
        };
        if !q.check_convergence {
            let f = to_f(self.triangle_integrals(grid, h, q.order)?);
            let n = f.len();
            return Ok((f, vec![None; n], h, 0.0));
        }
        let coarse = to_f(self.triangle_integrals(grid, h, q.order)?);
        let half = h / lit(2.0);
        let fine = to_f(self.triangle_integrals(grid, half, q.order)?);
        let mut worst = 0.0f64;
        let status = coarse
            .iter()
            .zip(&fine)
            .map(|(&c, &f)| {
                let change = to_f64((c - f).abs());
                worst = worst.max(change);
                (change > q.tolerance || !change.is_finite()).then_some((c, f))
            })
            .collect();
        Ok((fine, status, half, worst))
    }

    /// Second-order fidelity at one time.
    pub fn fidelity(&self, t: T, q: &QuadratureSettings) -> Result<T> {
        check_time(t)?;
        if t == T::zero() {
            return Ok(T::one());
        }
        let (f, status, _, _) = self.evaluate(&[t], q)?;
        if let Some((c, fine)) = status[0] {
            return Err(Error::Quadrature {
                t: to_f64(t),
                coarse: to_f64(c),
                fine: to_f64(fine),
            });
        }
        Ok(f[0])
    }

    /// Fidelity on a sorted, non-negative grid of times. Non-convergence and
    /// values above one are flagged per point, not raised.
    pub fn fidelity_curve(&self, grid: &[T], q: &QuadratureSettings) -> Result<FidelityCurve<T>> {
        let start = Instant::now();
        let (f, status, step, change) = self.evaluate(grid, q)?;
        let mut points = Vec::with_capacity(grid.len());
        for (index, ((&time, &fidelity), s)) in grid.iter().zip(&f).zip(&status).enumerate() {
            if !fidelity.is_finite() {
                return Err(Error::CurvePoint {
                    index,
                    source: Box::new(Error::Validation("non-finite fidelity".into())),
                });
            }
            let flag = match s {
                Some((c, fine)) => PointFlag::Unconverged {
                    coarse: to_f64(*c),
                    fine: to_f64(*fine),
                },
                None if to_f64(fidelity) > 1.0 + ABOVE_ONE_TOLERANCE => PointFlag::AboveOne,
                None => PointFlag::Ok,
            };
            points.push(CurvePoint { time, fidelity, flag });
        }
        Ok(FidelityCurve {
            points,
            params: self.params.clone(),
            settings: *q,
            step,
            refinement_change: change,
            wall_time: start.elapsed(),
        })
    }
}

/// Upper bound on the number of quadrature panels in one integration.
pub const MAX_PANELS: usize = 200_000;

fn flip(s: Sign) -> Sign {
    match s {
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
    }
}

fn check_time<T: Real>(t: T) -> Result<()> {
    if t >= T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Argument(format!("time must be non-negative, got {}", to_f64(t))))
    }
}

fn check_grid<T: Real>(grid: &[T]) -> Result<()> {
    let mut prev = T::zero();
    for &g in grid {
        check_time(g)?;
        if g < prev {
            return Err(Error::Argument("time grid must be sorted".into()));
        }
        prev = g;
    }
    Ok(())
}

/// `stationary(t1 - t2)` between GL nodes of panels `p > q`, valid when all
/// panels share one width so that the value depends on `(p - q, i, k)` only.
struct StationaryTable<T> {
    n: usize,
    values: Vec<Complex<T>>,
}

impl<T: Real> StationaryTable<T> {
    fn build(engine: &Engine<T>, panels: &[(T, T)], rule: &GaussLegendre<T>) -> Result<Option<Self>> {
        let Some(&(a0, b0)) = panels.first() else {
            return Ok(None);
        };
        let width = b0 - a0;
        let uniform = panels.iter().all(|&(a, b)| {
            ((b - a) - width).abs() <= width * lit(1e-12)
        });
        if !uniform {
            return Ok(None);
        }
        let n = rule.order();
        let x: Vec<T> = rule.mapped(T::zero(), width).map(|(t, _)| t).collect();
        let offsets: Vec<(usize, usize, usize)> = (1..panels.len())
            .flat_map(|d| (0..n).flat_map(move |i| (0..n).map(move |k| (d, i, k))))
            .collect();
        let bath = &engine.params.bath;
        let mut values = vec![Complex::new(T::zero(), T::zero()); n * n];
        let rest: Vec<Complex<T>> = offsets
            .par_iter()
            .map(|&(d, i, k)| bath.stationary(width * lit(d as f64) + x[i] - x[k]))
            .collect::<Result<_>>()?;
        values.extend(rest);
        Ok(Some(Self { n, values }))
    }

    #[inline]
    fn get(&self, d: usize, i: usize, k: usize) -> Complex<T> {
        self.values[(d * self.n + i) * self.n + k]
    }
}
