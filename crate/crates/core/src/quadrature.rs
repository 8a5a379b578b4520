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

//! Gauss–Legendre rules and an adaptive Gauss–Kronrod (7/15) integrator.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Rule with `order` points, computed by Newton iteration on the
    /// Legendre recurrence (nodes are resolved in `f64` and then converted).
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Argument("Gauss-Legendre order must be >= 1".into()));
        }
        let n = order;
        let mut nodes = vec![0.0f64; n];
        let mut weights = vec![0.0f64; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(Self {
            nodes: nodes.into_iter().map(lit).collect(),
            weights: weights.into_iter().map(lit).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let half = (b - a) / lit(2.0);
        let mid = (a + b) / lit(2.0);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, w * half))
    }

    pub fn integrate(&self, a: T, b: T, f: impl Fn(T) -> T) -> T {
        self.mapped(a, b).fold(T::zero(), |acc, (x, w)| acc + w * f(x))
    }
}

/// `(P_n(x), P_n'(x))`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Kronrod estimate and `|Kronrod - Gauss|` on one interval.
fn gk15<T: Real>(f: &impl Fn(T) -> T, a: T, b: T) -> (T, T) {
    let half = (b - a) / lit(2.0);
    let mid = (a + b) / lit(2.0);
    let fc = f(mid);
    let mut kron = fc * lit(WGK[7]);
    let mut gauss = fc * lit(WG[3]);
    for j in 0..7 {
        let dx = half * lit(XGK[j]);
        let s = f(mid - dx) + f(mid + dx);
        kron += s * lit(WGK[j]);
        if j % 2 == 1 {
            gauss += s * lit(WG[j / 2]);
        }
    }
    (kron * half, (kron - gauss).abs() * half.abs())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub absolute: f64,
    pub relative: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            absolute: 1e-10,
            relative: 1e-12,
            max_intervals: 200_000,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
    pub intervals: usize,
}

struct Piece<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Piece<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T: Real> Eq for Piece<T> {}
impl<T: Real> PartialOrd for Piece<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Piece<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

/// Globally adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// `[a, b]` is first cut into `initial_panels` equal pieces (useful for
/// oscillatory integrands); the piece with the largest error estimate is
/// bisected until the summed error drops below
/// `max(absolute, relative * |value|)`.
pub fn integrate_adaptive<T: Real>(
    f: impl Fn(T) -> T,
    a: T,
    b: T,
    initial_panels: usize,
    tol: Tolerance,
) -> Result<Estimate<T>> {
    let panels = initial_panels.max(1);
    let width = (b - a) / lit(panels as f64);
    let mut heap = BinaryHeap::with_capacity(panels * 2);
    let mut value = T::zero();
    let mut error = T::zero();
    for k in 0..panels {
        let lo = a + width * lit(k as f64);
        let hi = if k + 1 == panels { b } else { lo + width };
        let (v, e) = gk15(&f, lo, hi);
        value += v;
        error += e;
        heap.push(Piece { a: lo, b: hi, value: v, error: e });
    }
    // Below roughly 100 ulps of the summed magnitudes the estimate is noise.
    let target = |value: T, magnitude: T| {
        lit::<T>(tol.absolute)
            .max(lit::<T>(tol.relative) * value.abs())
            .max(T::default_epsilon() * lit(100.0) * magnitude)
    };
    let resum = |heap: &BinaryHeap<Piece<T>>| {
        heap.iter().fold((T::zero(), T::zero(), T::zero()), |(v, e, m), p| {
            (v + p.value, e + p.error, m + p.value.abs())
        })
    };
    let mut magnitude = resum(&heap).2;
    let floor = T::default_epsilon() * lit(50.0);
    let mut steps = 0usize;
    while error > target(value, magnitude) {
        steps += 1;
        if steps.is_multiple_of(256) {
            (value, error, magnitude) = resum(&heap);
            if error <= target(value, magnitude) {
                break;
            }
        }
        if heap.len() >= tol.max_intervals {
            return Err(Error::Validation(format!(
                "adaptive quadrature hit {} intervals with error estimate {:e}",
                heap.len(),
                to_f64(error)
            )));
        }
        let worst = heap.pop().expect("heap non-empty");
        let mid = (worst.a + worst.b) / lit(2.0);
        if (worst.b - worst.a).abs() <= floor * (worst.a.abs() + worst.b.abs()) {
            // Interval cannot be split further; accept what we have.
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        value += v1 + v2 - worst.value;
        error += e1 + e2 - worst.error;
        magnitude += v1.abs() + v2.abs() - worst.value.abs();
        heap.push(Piece { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Piece { a: mid, b: worst.b, value: v2, error: e2 });
    }
    // Re-sum to shed the drift of the running update.
    let (value, error) = heap
        .iter()
        .fold((T::zero(), T::zero()), |(v, e), p| (v + p.value, e + p.error));
    Ok(Estimate {
        value,
        error,
        intervals: heap.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        for order in 1..=12 {
            let rule = GaussLegendre::<f64>::new(order).unwrap();
            let wsum: f64 = rule.weights.iter().sum();
            assert!((wsum - 2.0).abs() < 1e-14);
            for deg in 0..(2 * order) {
                let got = rule.integrate(0.0, 1.0, |x| x.powi(deg as i32));
                let exact = 1.0 / (deg as f64 + 1.0);
                assert!((got - exact).abs() < 1e-14, "order {order} degree {deg}");
            }
        }
        assert!(GaussLegendre::<f64>::new(0).is_err());
    }

    #[test]
    fn known_five_point_node() {
        let rule = GaussLegendre::<f64>::new(5).unwrap();
        // largest node of the 5-point rule: (1/3)sqrt(5 + 2 sqrt(10/7))
        let x = (5.0 + 2.0 * (10.0f64 / 7.0).sqrt()).sqrt() / 3.0;
        assert!((rule.nodes[4] - x).abs() < 1e-15);
        assert_eq!(rule.nodes[2], 0.0);
    }

    #[test]
    fn adaptive_handles_smooth_and_oscillatory_integrands() {
        let tol = Tolerance {
            absolute: 1e-14,
            relative: 1e-13,
            ..Default::default()
        };
        let e = integrate_adaptive(|x: f64| (-x).exp(), 0.0, 40.0, 1, tol).unwrap();
        assert!((e.value - (1.0 - (-40.0f64).exp())).abs() < 1e-13);

        let omega = 500.0;
        let e = integrate_adaptive(|x: f64| (omega * x).sin() * (-x).exp(), 0.0, 40.0, 64, tol).unwrap();
        // ∫_0^∞ e^{-x} sin(ωx) dx = ω/(1+ω²); the tail beyond 40 is below 1e-17
        let exact = omega / (1.0 + omega * omega);
        assert!((e.value - exact).abs() < 1e-13, "{} vs {}", e.value, exact);
    }

    #[test]
    fn adaptive_reports_interval_exhaustion() {
        let tol = Tolerance {
            absolute: 0.0,
            relative: 0.0,
            max_intervals: 8,
        };
        let r = integrate_adaptive(|x: f64| x.abs().sqrt(), -1.0, 1.0, 1, tol);
        assert!(r.is_err());
    }
}
