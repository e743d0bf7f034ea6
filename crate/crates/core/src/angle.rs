//! Angles that stay exact when they can.
//!
//! An [`AngleValue`] is either an exact rational multiple of π or a plain
//! float in radians. Sums, differences and integer scalings of exact values
//! stay exact; any arithmetic mixing in a float demotes the result to float.
//! Exact → float conversion is total ([`AngleValue::radians`]); there is no
//! implicit float → exact conversion.
//!
//! Boundary decisions (is this angle in the open interval (π, 2π)? does
//! a − b − c equal π?) are made exactly in rational mode and within a band of
//! ε·π in float mode, where ε is the global tolerance.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::tolerance::epsilon;

/// An angle, exact (as a rational multiple of π) or floating (radians).
#[derive(Clone, Copy, Debug)]
pub enum AngleValue {
    /// `Exact(q)` is the angle q·π.
    Exact(Rational64),
    /// Radians.
    Float(f64),
}

impl AngleValue {
    /// The zero angle, exactly.
    pub fn zero() -> Self {
        AngleValue::Exact(Rational64::zero())
    }

    /// π, exactly.
    pub fn pi() -> Self {
        AngleValue::Exact(Rational64::from_integer(1))
    }

    /// The exact angle (n/d)·π. Panics if d = 0.
    pub fn pi_times(n: i64, d: i64) -> Self {
        AngleValue::Exact(Rational64::new(n, d))
    }

    /// The exact angle q·π.
    pub fn from_pi_rational(q: Rational64) -> Self {
        AngleValue::Exact(q)
    }

    /// A float angle in radians.
    pub fn from_radians(x: f64) -> Self {
        AngleValue::Float(x)
    }

    /// Numeric value in radians. Total.
    pub fn radians(self) -> f64 {
        match self {
            AngleValue::Exact(q) => rational_to_f64(q) * PI,
            AngleValue::Float(x) => x,
        }
    }

    /// The rational q with self = q·π, if exact.
    pub fn pi_fraction(self) -> Option<Rational64> {
        match self {
            AngleValue::Exact(q) => Some(q),
            AngleValue::Float(_) => None,
        }
    }

    /// The value divided by π, as a float. Total.
    pub fn pi_units(self) -> f64 {
        match self {
            AngleValue::Exact(q) => rational_to_f64(q),
            AngleValue::Float(x) => x / PI,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, AngleValue::Exact(_))
    }

    /// Scale by an exact rational factor.
    pub fn scale(self, factor: Rational64) -> Self {
        match self {
            AngleValue::Exact(q) => AngleValue::Exact(q * factor),
            AngleValue::Float(x) => AngleValue::Float(x * rational_to_f64(factor)),
        }
    }

    /// Equality within `tol` radians (exact–exact pairs compare exactly).
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        match (self, other) {
            (AngleValue::Exact(p), AngleValue::Exact(q)) => p == q,
            _ => (self.radians() - other.radians()).abs() <= tol,
        }
    }

    /// Sign of (self − q·π): −1, 0, +1. Exact values decide exactly; floats
    /// use the ε·π band around zero.
    pub fn cmp_pi_multiple(self, q: Rational64) -> i8 {
        match self {
            AngleValue::Exact(p) => {
                let d = p - q;
                if d.is_zero() {
                    0
                } else if d.is_positive() {
                    1
                } else {
                    -1
                }
            }
            AngleValue::Float(x) => {
                let d = x - rational_to_f64(q) * PI;
                let band = epsilon() * PI;
                if d.abs() <= band {
                    0
                } else if d > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Strictly inside the open interval (lo·π, hi·π), with the float band
    /// excluded at both ends (values within ε·π of a boundary do not count).
    pub fn in_open_pi_interval(self, lo: Rational64, hi: Rational64) -> bool {
        self.cmp_pi_multiple(lo) > 0 && self.cmp_pi_multiple(hi) < 0
    }

    /// Whether the value sits within the float band of either boundary of
    /// (lo·π, hi·π). Exact values are never ambiguous.
    pub fn near_pi_boundary(self, lo: Rational64, hi: Rational64) -> bool {
        match self {
            AngleValue::Exact(_) => false,
            AngleValue::Float(_) => self.cmp_pi_multiple(lo) == 0 || self.cmp_pi_multiple(hi) == 0,
        }
    }
}

fn rational_to_f64(q: Rational64) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

impl Add for AngleValue {
    type Output = AngleValue;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (AngleValue::Exact(p), AngleValue::Exact(q)) => AngleValue::Exact(p + q),
            _ => AngleValue::Float(self.radians() + rhs.radians()),
        }
    }
}

impl Sub for AngleValue {
    type Output = AngleValue;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for AngleValue {
    type Output = AngleValue;
    fn neg(self) -> Self {
        match self {
            AngleValue::Exact(q) => AngleValue::Exact(-q),
            AngleValue::Float(x) => AngleValue::Float(-x),
        }
    }
}

impl PartialEq for AngleValue {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (AngleValue::Exact(p), AngleValue::Exact(q)) => p == q,
            _ => (self.radians() - other.radians()).abs() <= epsilon() * PI,
        }
    }
}

impl fmt::Display for AngleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngleValue::Exact(q) => {
                if q.is_zero() {
                    write!(f, "0")
                } else if *q.denom() == 1 {
                    match *q.numer() {
                        1 => write!(f, "pi"),
                        -1 => write!(f, "-pi"),
                        n => write!(f, "{n}pi"),
                    }
                } else {
                    match *q.numer() {
                        1 => write!(f, "pi/{}", q.denom()),
                        -1 => write!(f, "-pi/{}", q.denom()),
                        n => write!(f, "{n}/{}pi", q.denom()),
                    }
                }
            }
            AngleValue::Float(x) => write!(f, "{x}"),
        }
    }
}
