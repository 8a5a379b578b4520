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

//! Bosonic environment coupled to `J_z`: spectral models, the dephasing phase
//! `α(t)`, displacement amplitudes `f_k(t)` and vacuum expectation values of
//! products of the displacement operators `e^{±γ(t)}`.
//!
//! The environment starts in the multimode vacuum. With `γ(t) = Σ_k (f_k a_k†
//! - f_k* a_k)`, `e^{aγ}` is the displacement `D(a f)`, and
//!
//! ```text
//! ⟨0| e^{a γ(t1)} e^{b γ(t2)} |0⟩ = exp(-½ Σ_k |a f_k(t1) + b f_k(t2)|²)
//!                                  · exp(i a b Im Σ_k f_k(t1) f_k*(t2))
//! ```
//!
//! Continuum sums use `Σ_k → ∫ dω R(ω)` with `g = 1` and
//! `R(ω) = ω² e^{-ω/ω_c} / (2 ω_c³)`.

use std::sync::OnceLock;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_adaptive, Tolerance};
use crate::scalar::{cexp, cis, lit, one_minus_cos, to_f64, x_minus_sin, Real};
use crate::spin::Sign;

/// One environmental oscillator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mode<T> {
    pub coupling: T,
    pub frequency: T,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpectralModel<T> {
    Discrete(Vec<Mode<T>>),
    /// Non-ohmic continuum with exponential cutoff `ω_c`; couplings `g = 1`.
    Continuum { cutoff: T },
}

impl<T: Real> SpectralModel<T> {
    pub fn discrete(modes: Vec<Mode<T>>) -> Result<Self> {
        for (k, m) in modes.iter().enumerate() {
            if !(m.frequency > T::zero() && m.frequency.is_finite() && m.coupling.is_finite()) {
                return Err(Error::Argument(format!(
                    "mode {k}: frequency must be positive and finite"
                )));
            }
        }
        Ok(SpectralModel::Discrete(modes))
    }

    pub fn continuum(cutoff: T) -> Result<Self> {
        if !(cutoff > T::zero() && cutoff.is_finite()) {
            return Err(Error::Argument("cutoff frequency must be positive".into()));
        }
        Ok(SpectralModel::Continuum { cutoff })
    }

    /// `R(ω)` of the continuum model (zero for discrete spectra).
    pub fn density(&self, omega: T) -> T {
        match self {
            SpectralModel::Continuum { cutoff } => {
                let c = *cutoff;
                omega * omega * (-omega / c).exp() / (lit::<T>(2.0) * c * c * c)
            }
            SpectralModel::Discrete(_) => T::zero(),
        }
    }

    pub fn max_frequency(&self) -> T {
        match self {
            SpectralModel::Discrete(m) => m
                .iter()
                .fold(T::zero(), |a, m| if m.frequency > a { m.frequency } else { a }),
            SpectralModel::Continuum { cutoff } => *cutoff,
        }
    }
}

/// How continuum quantities are evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ContinuumMethod {
    /// Analytic expressions (validated against quadrature by
    /// [`Bath::validate_closed_forms`]).
    #[default]
    ClosedForm,
    /// Adaptive quadrature over `[0, 40 ω_c]` for every evaluation.
    Quadrature,
}

/// Frequency range (in units of `ω_c`) over which continuum integrals run.
/// The neglected tail is below `e^{-40}` times a polynomial.
pub const CONTINUUM_UPPER: f64 = 40.0;

/// `f(t) = -(λg/ω)(1 - e^{iωt})`.
pub fn f_amp<T: Real>(lambda: T, coupling: T, omega: T, t: T) -> Result<Complex<T>> {
    if !(omega > T::zero()) {
        return Err(Error::Argument("mode frequency must be positive".into()));
    }
    let r = lambda * coupling / omega;
    Ok((Complex::new(T::one(), T::zero()) - cis(omega * t)) * (-r))
}

fn check_time<T: Real>(t: T) -> Result<()> {
    if t >= T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Argument(format!(
            "time must be non-negative and finite, got {}",
            to_f64(t)
        )))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Bath<T> {
    pub lambda: T,
    pub spectrum: SpectralModel<T>,
    pub method: ContinuumMethod,
    pub tolerance: Tolerance,
}

/// Worst relative deviations between closed forms and quadrature.
#[derive(Clone, Copy, Debug)]
pub struct ClosedFormReport {
    pub alpha: f64,
    pub overlap_difference: f64,
    pub overlap_sum: f64,
    pub overlap_phase: f64,
}

impl ClosedFormReport {
    pub fn worst(&self) -> f64 {
        self.alpha
            .max(self.overlap_difference)
            .max(self.overlap_sum)
            .max(self.overlap_phase)
    }
}

fn relative_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

impl<T: Real> Bath<T> {
    pub fn new(lambda: T, spectrum: SpectralModel<T>) -> Result<Self> {
        if !(lambda >= T::zero() && lambda.is_finite()) {
            return Err(Error::Argument("coupling strength must be non-negative".into()));
        }
        Ok(Self {
            lambda,
            spectrum,
            method: ContinuumMethod::ClosedForm,
            tolerance: Tolerance {
                absolute: 1e-300,
                relative: 1e-12,
                max_intervals: 400_000,
            },
        })
    }

    pub fn with_method(mut self, method: ContinuumMethod) -> Self {
        self.method = method;
        self
    }

    fn lambda2(&self) -> T {
        self.lambda * self.lambda
    }

    fn use_quadrature(&self) -> bool {
        matches!(self.spectrum, SpectralModel::Continuum { .. })
            && (self.method == ContinuumMethod::Quadrature || !closed_forms_certified())
    }

    /// `λ² ∫_0^{40ω_c} dω R(ω)/ω² · kernel(ω)`.
    fn continuum_integral(&self, t_scale: T, kernel: impl Fn(T) -> T) -> Result<T> {
        let SpectralModel::Continuum { cutoff } = self.spectrum else {
            return Err(Error::Argument("quadrature route needs a continuum model".into()));
        };
        let c = cutoff;
        let upper = c * lit(CONTINUUM_UPPER);
        // one panel per half period of the fastest oscillation
        let half_periods = to_f64(upper * t_scale / T::PI()).ceil();
        let panels = (half_periods as usize).clamp(8, 100_000);
        let norm = lit::<T>(2.0) * c * c * c;
        let est = integrate_adaptive(
            |w: T| (-w / c).exp() / norm * kernel(w),
            T::zero(),
            upper,
            panels,
            self.tolerance,
        )?;
        Ok(self.lambda2() * est.value)
    }

    /// `α(t) = Σ_k (λg_k/ω_k)² (ω_k t - sin ω_k t)`.
    pub fn alpha(&self, t: T) -> Result<T> {
        check_time(t)?;
        if self.use_quadrature() {
            return self.alpha_quadrature(t);
        }
        Ok(self.alpha_closed(t))
    }

    fn alpha_closed(&self, t: T) -> T {
        match &self.spectrum {
            SpectralModel::Discrete(modes) => modes.iter().fold(T::zero(), |a, m| {
                let r = self.lambda * m.coupling / m.frequency;
                a + r * r * x_minus_sin(m.frequency * t)
            }),
            SpectralModel::Continuum { cutoff } => {
                let x = *cutoff * t;
                self.lambda2() * t / (lit::<T>(2.0) * *cutoff) * (x * x / (T::one() + x * x))
            }
        }
    }

    pub fn alpha_quadrature(&self, t: T) -> Result<T> {
        check_time(t)?;
        self.continuum_integral(t, |w| x_minus_sin(w * t))
    }

    /// Upper bound on `dα/dt` over all `t ≥ 0`.
    pub fn alpha_rate_bound(&self) -> T {
        match &self.spectrum {
            SpectralModel::Discrete(modes) => modes.iter().fold(T::zero(), |a, m| {
                let r = self.lambda * m.coupling / m.frequency;
                a + lit::<T>(2.0) * r * r * m.frequency
            }),
            // d/dt [t x²/(1+x²)] peaks at 9/8 (x = √3)
            SpectralModel::Continuum { cutoff } => {
                lit::<T>(1.125) * self.lambda2() / (lit::<T>(2.0) * *cutoff)
            }
        }
    }

    /// `f_k(t)` for every discrete mode.
    pub fn displacements(&self, t: T) -> Result<Vec<Complex<T>>> {
        match &self.spectrum {
            SpectralModel::Discrete(modes) => modes
                .iter()
                .map(|m| f_amp(self.lambda, m.coupling, m.frequency, t))
                .collect(),
            SpectralModel::Continuum { .. } => Err(Error::Argument(
                "continuum model has no discrete displacement list".into(),
            )),
        }
    }

    /// `Σ_k |f_k(t1) ∓ f_k(t2)|²`: `Sign::Minus` gives the difference,
    /// `Sign::Plus` the sum.
    pub fn overlap_s(&self, t1: T, t2: T, sign: Sign) -> Result<T> {
        check_time(t1)?;
        check_time(t2)?;
        if self.use_quadrature() {
            return self.overlap_s_quadrature(t1, t2, sign);
        }
        Ok(self.overlap_s_closed(t1, t2, sign))
    }

    fn overlap_s_closed(&self, t1: T, t2: T, sign: Sign) -> T {
        match &self.spectrum {
            SpectralModel::Discrete(modes) => modes.iter().fold(T::zero(), |a, m| {
                let r = self.lambda * m.coupling / m.frequency;
                let term = match sign {
                    Sign::Minus => lit::<T>(2.0) * one_minus_cos(m.frequency * (t1 - t2)),
                    Sign::Plus => {
                        let z = Complex::new(lit::<T>(2.0), T::zero())
                            - cis(m.frequency * t1)
                            - cis(m.frequency * t2);
                        z.norm_sqr()
                    }
                };
                a + r * r * term
            }),
            SpectralModel::Continuum { cutoff } => {
                let u = continuum_u(*cutoff);
                match sign {
                    Sign::Minus => self.lambda2() * u(t1 - t2),
                    Sign::Plus => {
                        self.lambda2() * (lit::<T>(2.0) * (u(t1) + u(t2)) - u(t1 - t2))
                    }
                }
            }
        }
    }

    pub fn overlap_s_quadrature(&self, t1: T, t2: T, sign: Sign) -> Result<T> {
        let scale = if t1 > t2 { t1 } else { t2 };
        self.continuum_integral(scale, |w| match sign {
            Sign::Minus => lit::<T>(2.0) * one_minus_cos(w * (t1 - t2)),
            Sign::Plus => (Complex::new(lit::<T>(2.0), T::zero()) - cis(w * t1) - cis(w * t2))
                .norm_sqr(),
        })
    }

    /// `Im Σ_k f_k(t1) f_k*(t2)`.
    pub fn overlap_phase(&self, t1: T, t2: T) -> Result<T> {
        check_time(t1)?;
        check_time(t2)?;
        if self.use_quadrature() {
            return self.overlap_phase_quadrature(t1, t2);
        }
        Ok(self.overlap_phase_closed(t1, t2))
    }

    fn overlap_phase_closed(&self, t1: T, t2: T) -> T {
        match &self.spectrum {
            SpectralModel::Discrete(modes) => modes.iter().fold(T::zero(), |a, m| {
                let r = self.lambda * m.coupling / m.frequency;
                a + r * r * phase_kernel(m.frequency, t1, t2)
            }),
            SpectralModel::Continuum { cutoff } => {
                let h = continuum_h(*cutoff);
                self.lambda2() * (h(t2) - h(t1) + h(t1 - t2))
            }
        }
    }

    pub fn overlap_phase_quadrature(&self, t1: T, t2: T) -> Result<T> {
        let scale = if t1 > t2 { t1 } else { t2 };
        self.continuum_integral(scale, |w| phase_kernel(w, t1, t2))
    }

    /// `⟨0| e^{a γ(t1)} e^{b γ(t2)} |0⟩`.
    pub fn vacuum_correlation(&self, a: Sign, b: Sign, t1: T, t2: T) -> Result<Complex<T>> {
        let same = a == b;
        let s = self.overlap_s(t1, t2, if same { Sign::Plus } else { Sign::Minus })?;
        let p = self.overlap_phase(t1, t2)?;
        let ab = if same { p } else { -p };
        Ok(cexp(Complex::new(-s / lit(2.0), ab)))
    }

    /// `σ(s)` with `Im Σ_k f_k(t1) f_k*(t2) = σ(t2) - σ(t1) + σ(t1 - t2)`.
    pub fn sigma(&self, s: T) -> Result<T> {
        if self.use_quadrature() {
            return self.sigma_quadrature(s);
        }
        Ok(self.sigma_closed(s))
    }

    fn sigma_closed(&self, s: T) -> T {
        match &self.spectrum {
            SpectralModel::Discrete(modes) => modes.iter().fold(T::zero(), |a, m| {
                let r = self.lambda * m.coupling / m.frequency;
                a + r * r * (m.frequency * s).sin()
            }),
            SpectralModel::Continuum { cutoff } => self.lambda2() * continuum_h(*cutoff)(s),
        }
    }

    pub fn sigma_quadrature(&self, s: T) -> Result<T> {
        self.continuum_integral(s.abs(), |w| (w * s).sin())
    }

    /// The part of `⟨0| e^{-γ(t1)} e^{γ(t2)} |0⟩` that depends on `t1 - t2`
    /// only: `exp(-½ Σ_k |f_k(t1) - f_k(t2)|² - i σ(t1 - t2))`.
    pub fn stationary(&self, delta: T) -> Result<Complex<T>> {
        let (s, p) = if self.use_quadrature() {
            let d = delta.abs();
            (
                self.overlap_s_quadrature(d, T::zero(), Sign::Minus)?,
                self.sigma_quadrature(delta)?,
            )
        } else {
            (
                self.overlap_s_closed(delta, T::zero(), Sign::Minus),
                self.sigma_closed(delta),
            )
        };
        Ok(cexp(Complex::new(-s / lit(2.0), -p)))
    }

    /// `⟨0| e^{-γ(t1)} e^{γ(t2)} |0⟩ = stationary(t1 - t2) e^{i[σ(t1) - σ(t2)]}`,
    /// which also equals `⟨0| e^{γ(t1)} e^{-γ(t2)} |0⟩`.
    pub fn pair_correlation(&self, t1: T, t2: T) -> Result<Complex<T>> {
        check_time(t1)?;
        check_time(t2)?;
        Ok(self.stationary(t1 - t2)? * cis(self.sigma(t1)? - self.sigma(t2)?))
    }

    /// Compares every continuum closed form with adaptive quadrature on the
    /// given times; two-time quantities use the pairs `(t, t/2)` and
    /// `(t/3, t)`.
    pub fn validate_closed_forms(&self, times: &[T]) -> Result<ClosedFormReport> {
        for &t in times {
            check_time(t)?;
        }
        if !matches!(self.spectrum, SpectralModel::Continuum { .. }) {
            return Err(Error::Argument("closed forms exist only for the continuum".into()));
        }
        let mut report = ClosedFormReport {
            alpha: 0.0,
            overlap_difference: 0.0,
            overlap_sum: 0.0,
            overlap_phase: 0.0,
        };
        let bump = |slot: &mut f64, a: T, b: T| {
            *slot = slot.max(relative_gap(to_f64(a), to_f64(b)));
        };
        for &t in times {
            bump(&mut report.alpha, self.alpha_closed(t), self.alpha_quadrature(t)?);
            for (t1, t2) in [(t, t / lit(2.0)), (t / lit(3.0), t)] {
                bump(
                    &mut report.overlap_difference,
                    self.overlap_s_closed(t1, t2, Sign::Minus),
                    self.overlap_s_quadrature(t1, t2, Sign::Minus)?,
                );
                bump(
                    &mut report.overlap_sum,
                    self.overlap_s_closed(t1, t2, Sign::Plus),
                    self.overlap_s_quadrature(t1, t2, Sign::Plus)?,
                );
                bump(
                    &mut report.overlap_phase,
                    self.overlap_phase_closed(t1, t2),
                    self.overlap_phase_quadrature(t1, t2)?,
                );
            }
        }
        Ok(report)
    }
}

/// Relative tolerance for accepting the continuum closed forms.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-8;

/// Whether the continuum closed forms pass [`Bath::validate_closed_forms`].
///
/// With `x = ω_c t` every closed form is `λ²` times a function of `x` (up to
/// powers of `ω_c`), so one check at `λ = ω_c = 1` over `t ∈ [1e-3, 1e3]`
/// covers every parameter set. Evaluated once per process; when it fails all
/// continuum quantities are computed by quadrature instead.
pub fn closed_forms_certified() -> bool {
    static CERTIFIED: OnceLock<bool> = OnceLock::new();
    *CERTIFIED.get_or_init(|| {
        let bath = Bath::<f64>::new(1.0, SpectralModel::Continuum { cutoff: 1.0 })
            .expect("unit bath");
        bath.validate_closed_forms(&log_grid(1e-3, 1e3, 30))
            .map(|r| r.worst() < CLOSED_FORM_TOLERANCE)
            .unwrap_or(false)
    })
}

/// `sin ωt2 - sin ωt1 + sin ω(t1 - t2)` in product form, free of
/// cancellation at small `ωt`.
fn phase_kernel<T: Real>(w: T, t1: T, t2: T) -> T {
    let half = lit::<T>(0.5) * w;
    lit::<T>(4.0) * (half * t2).sin() * (half * t1).sin() * (half * (t1 - t2)).sin()
}

/// `u(s) = s² / (1 + (ω_c s)²)`, so that `λ² u(t1 - t2) = Σ|f(t1) - f(t2)|²`.
fn continuum_u<T: Real>(c: T) -> impl Fn(T) -> T {
    move |s| s * s / (T::one() + c * c * s * s)
}

/// `h(s) = s / (2 ω_c (1 + (ω_c s)²))`.
fn continuum_h<T: Real>(c: T) -> impl Fn(T) -> T {
    move |s| s / (lit::<T>(2.0) * c * (T::one() + c * c * s * s))
}

/// `n` logarithmically spaced points on `[lo, hi]`.
pub fn log_grid<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|k| (a + (b - a) * lit::<T>(k as f64) / lit::<T>((n - 1) as f64)).exp())
        .collect()
}
