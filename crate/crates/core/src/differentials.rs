//! The quadratic differential with regular singular points at 0, 1, ∞ whose
//! Schwarzian solutions have prescribed local exponents.
//!
//! For exponent parameters θ = (θ₁, θ₂, θ₃) attached to 0, 1, ∞:
//!
//! ```text
//! q(z) = (1−θ₁²)/(2z²) + (1−θ₂²)/(2(z−1)²) + (θ₁²+θ₂²−θ₃²−1)/(2z(z−1))
//! ```
//!
//! Expanding at each singular point gives a leading Laurent coefficient
//! (1−θ²)/2 with the θ of that point; at ∞ this is read off after the chart
//! change q̃(w) = q(1/w)/w⁴.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::grafting::IndexTriple;
use crate::mobius::Complex;
use crate::tolerance::epsilon;

/// Exponent parameters from an index triple: θᵢ = Iᵢ/(2π).
pub fn params_from_indices(indices: &IndexTriple) -> [f64; 3] {
    std::array::from_fn(|i| indices.indices[i].pi_units() / 2.0)
}

/// The index of an elliptic holonomy with exponent θ: 2π|θ|. Integer θ has
/// trivial-or-parabolic holonomy and no index.
pub fn index_exponent(theta: f64) -> Result<f64> {
    if (theta - theta.round()).abs() <= epsilon() {
        return Err(Error::IntegerExponent(theta));
    }
    Ok(TAU * theta.abs())
}

/// Leading Laurent coefficient of q at the singular point with exponent θ.
pub fn leading_coefficient(theta: f64) -> f64 {
    (1.0 - theta * theta) / 2.0
}

/// Evaluate q at a regular point. Points within the tolerance of a pole are
/// rejected rather than returning an overflowing value.
pub fn evaluate_q(theta: &[f64; 3], z: Complex) -> Result<Complex> {
    let d0 = z.norm();
    let d1 = (z - Complex::new(1.0, 0.0)).norm();
    let guard = epsilon();
    if d0 <= guard || d1 <= guard {
        return Err(Error::PoleEvaluation(d0.min(d1)));
    }
    let c0 = leading_coefficient(theta[0]);
    let c1 = leading_coefficient(theta[1]);
    let mixed = (theta[0] * theta[0] + theta[1] * theta[1] - theta[2] * theta[2] - 1.0) / 2.0;
    let zm1 = z - Complex::new(1.0, 0.0);
    Ok(c0 / (z * z) + c1 / (zm1 * zm1) + mixed / (z * zm1))
}

/// The three singular points of q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pole {
    Zero,
    One,
    Infinity,
}

/// Number of trapezoid samples for the contour integrals. The integrands are
/// analytic and periodic, so the rule converges spectrally.
const CONTOUR_SAMPLES: usize = 1 << 10;

/// Leading Laurent coefficient at a pole, extracted by a contour integral:
/// (1/2πi)∮ q(z)(z−p) dz on a small circle around p, and at ∞ the same for
/// q̃(w) = q(1/w)/w⁴ around w = 0. This is an independent numerical probe of
/// the closed form `leading_coefficient`.
pub fn pole_coefficient(theta: &[f64; 3], pole: Pole) -> Result<Complex> {
    let (center, radius): (Complex, f64) = match pole {
        Pole::Zero => (Complex::new(0.0, 0.0), 0.5),
        Pole::One => (Complex::new(1.0, 0.0), 0.5),
        Pole::Infinity => (Complex::new(0.0, 0.0), 0.1),
    };
    let n = CONTOUR_SAMPLES;
    let mut acc = Complex::new(0.0, 0.0);
    for k in 0..n {
        let t = TAU * (k as f64) / (n as f64);
        let offset = Complex::from_polar(radius, t);
        let w = center + offset;
        let value = match pole {
            Pole::Zero | Pole::One => evaluate_q(theta, w)?,
            Pole::Infinity => {
                let z = w.inv();
                evaluate_q(theta, z)? / (w * w * w * w)
            }
        };
        // (1/2πi)∮ f(w)(w−c) dw with dw = i·offset dt; the i and 1/i cancel.
        acc += value * offset * offset;
    }
    Ok(acc / (n as f64))
}

/// Roots of the indicial equation r(r−1) + a = 0 written as
/// r = (1 ± √(1−2a))/2; for a = (1−θ²)/2 these are (1±θ)/2.
pub fn indicial_roots(a: Complex) -> (Complex, Complex) {
    let s = (Complex::new(1.0, 0.0) - 2.0 * a).sqrt();
    (
        (Complex::new(1.0, 0.0) + s) / 2.0,
        (Complex::new(1.0, 0.0) - s) / 2.0,
    )
}

/// Conjugacy type of the local holonomy with exponent θ (eigenvalues
/// e^{±iπθ}).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HolonomyType {
    /// θ = 0: unipotent.
    Parabolic,
    /// θ a non-zero integer: eigenvalues ±1, either trivial or parabolic.
    TrivialOrParabolic,
    /// θ real non-integer: a rotation.
    Elliptic,
    /// Re θ an integer, Im θ ≠ 0: real trace beyond ±2.
    Hyperbolic,
    /// Any other complex θ.
    PurelyLoxodromic,
}

pub fn holonomy_type(theta: Complex) -> HolonomyType {
    let eps = epsilon();
    let re_int = (theta.re - theta.re.round()).abs() <= eps;
    if theta.im.abs() <= eps {
        if theta.re.abs() <= eps {
            HolonomyType::Parabolic
        } else if re_int {
            HolonomyType::TrivialOrParabolic
        } else {
            HolonomyType::Elliptic
        }
    } else if re_int {
        HolonomyType::Hyperbolic
    } else {
        HolonomyType::PurelyLoxodromic
    }
}
