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

//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt;

use nalgebra::RealField;
use num_complex::Complex;
use num_traits::{FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point type the library is generic over (`f32` or `f64`).
pub trait Real:
    RealField
    + Copy
    + FromPrimitive
    + ToPrimitive
    + FloatConst
    + fmt::LowerExp
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: RealField
        + Copy
        + FromPrimitive
        + ToPrimitive
        + FloatConst
        + fmt::LowerExp
        + Send
        + Sync
        + 'static
{
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in target scalar")
}

/// Lossy conversion back to `f64`, used for reporting.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Scales a tolerance stated for `f64` to the precision of `T`.
///
/// For `f64` this is the identity; for `f32` the tolerance is widened by the
/// ratio of the machine epsilons.
pub fn tolerance<T: Real>(f64_tol: f64) -> T {
    let ratio = to_f64(T::default_epsilon()) / f64::EPSILON;
    lit(f64_tol * ratio.max(1.0))
}

#[inline]
pub fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

#[inline]
pub fn imag<T: Real>(x: T) -> Complex<T> {
    Complex::new(T::zero(), x)
}

/// `e^{iθ}`.
#[inline]
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// `exp(z)` for complex `z`.
#[inline]
pub fn cexp<T: Real>(z: Complex<T>) -> Complex<T> {
    cis(z.im) * z.re.exp()
}

#[inline]
pub fn modulus<T: Real>(z: Complex<T>) -> T {
    z.norm_sqr().sqrt()
}

/// `x - sin x` without cancellation for small `x`.
pub fn x_minus_sin<T: Real>(x: T) -> T {
    if x.abs() < lit(0.1) {
        // x^3/3! - x^5/5! + ...
        let x2 = x * x;
        let mut term = x * x2 / lit(6.0);
        let mut sum = term;
        let mut k = 4.0;
        while term.abs() > T::default_epsilon() * sum.abs() {
            term = -term * x2 / lit(k * (k + 1.0));
            sum += term;
            k += 2.0;
        }
        sum
    } else {
        x - x.sin()
    }
}

/// `1 - cos x` computed as `2 sin^2(x/2)`.
#[inline]
pub fn one_minus_cos<T: Real>(x: T) -> T {
    let s = (x / lit(2.0)).sin();
    lit::<T>(2.0) * s * s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_minus_sin_matches_direct_evaluation_away_from_zero() {
        for &x in &[0.05f64, 0.0999, 0.1, 0.5, 2.0, -1.3] {
            let series = x_minus_sin(x);
            let direct = x - f64::sin(x);
            assert!((series - direct).abs() < 1e-15 * direct.abs().max(1e-300) + 1e-17);
        }
    }

    #[test]
    fn x_minus_sin_small_argument_is_cubic() {
        let x = 1e-6f64;
        assert!((x_minus_sin(x) / (x * x * x / 6.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn f32_tolerance_is_widened() {
        assert_eq!(tolerance::<f64>(1e-12), 1e-12);
        assert!(tolerance::<f32>(1e-12) > 1e-5);
    }
}
