//! Numeric literal grammar for command-line arguments.
//!
//! Exact multiples of π are written with a `pi` suffix: `pi`, `3pi`, `pi/2`,
//! `3pi/2`, `3/2pi`. Decimal literals (`0.5`, `1e-3`) are radians. A bare
//! integer or fraction is a plain number: dimensionless where the argument is
//! dimensionless (the θ arguments of `verify`), rejected as ambiguous where
//! an angle is expected, unless `--mode float` pins the interpretation.

use num_rational::Rational64;

use cp1graft_core::angle::AngleValue;
use cp1graft_core::tolerance::epsilon;

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Literal {
    /// `Npi`-style form: an exact rational multiple of π.
    PiRational(Rational64),
    /// Bare integer or fraction, no unit attached.
    Rational(Rational64),
    /// Decimal literal.
    Float(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// Require exact literals; reject decimals.
    Exact,
    /// Read every literal as a float (angles in radians).
    Float,
}

fn parse_int(s: &str) -> Result<i64, Failure> {
    s.parse::<i64>()
        .map_err(|_| Failure::parse(format!("expected an integer, got '{s}'")))
}

fn parse_fraction(s: &str) -> Result<Rational64, Failure> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d == 0 {
                return Err(Failure::parse(format!("zero denominator in '{s}'")));
            }
            Ok(Rational64::new(n, d))
        }
        None => Ok(Rational64::from_integer(parse_int(s)?)),
    }
}

pub fn parse_literal(text: &str) -> Result<Literal, Failure> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Failure::parse("empty numeric literal".into()));
    }
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1i64, t),
    };
    if let Some(at) = body.find("pi") {
        let (left, right) = (&body[..at], &body[at + 2..]);
        let numerator = if left.is_empty() {
            Rational64::from_integer(1)
        } else {
            parse_fraction(left)?
        };
        let divisor = if right.is_empty() {
            1
        } else if let Some(m) = right.strip_prefix('/') {
            let d = parse_int(m)?;
            if d == 0 {
                return Err(Failure::parse(format!("zero denominator in '{t}'")));
            }
            d
        } else {
            return Err(Failure::parse(format!(
                "unexpected characters after 'pi' in '{t}'"
            )));
        };
        Ok(Literal::PiRational(
            numerator * Rational64::new(sign, divisor),
        ))
    } else if body.contains(['.', 'e', 'E']) {
        let x = body
            .parse::<f64>()
            .map_err(|_| Failure::parse(format!("malformed number '{t}'")))?;
        Ok(Literal::Float(sign as f64 * x))
    } else {
        Ok(Literal::Rational(
            parse_fraction(body)? * Rational64::from_integer(sign),
        ))
    }
}

/// Interpret a literal as an angle (an index is an angle too).
pub fn angle_value(text: &str, mode: Option<Mode>) -> Result<AngleValue, Failure> {
    let lit = parse_literal(text)?;
    match (mode, lit) {
        (Some(Mode::Float), l) => Ok(AngleValue::from_radians(literal_radians(l))),
        (Some(Mode::Exact), Literal::Float(_)) => Err(Failure::parse(format!(
            "'{text}' is a decimal literal; exact mode wants a pi form like 3/2pi"
        ))),
        (_, Literal::PiRational(q)) => Ok(AngleValue::from_pi_rational(q)),
        (None, Literal::Float(x)) => Ok(AngleValue::from_radians(x)),
        (_, Literal::Rational(_)) => Err(Failure::parse(format!(
            "'{text}' is ambiguous as an angle: write '{text}pi' for an exact \
             multiple of pi, or a decimal for radians (or pass --mode float)"
        ))),
    }
}

fn literal_radians(lit: Literal) -> f64 {
    match lit {
        Literal::PiRational(q) => (*q.numer() as f64 / *q.denom() as f64) * std::f64::consts::PI,
        Literal::Rational(q) => *q.numer() as f64 / *q.denom() as f64,
        Literal::Float(x) => x,
    }
}

/// A dimensionless θ argument: exact when possible so integrality is decided
/// without a band.
#[derive(Clone, Copy, Debug)]
pub enum Theta {
    Exact(Rational64),
    Float(f64),
}

impl Theta {
    pub fn as_f64(&self) -> f64 {
        match self {
            Theta::Exact(q) => *q.numer() as f64 / *q.denom() as f64,
            Theta::Float(x) => *x,
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Theta::Exact(q) => q.is_integer(),
            Theta::Float(x) => (x - x.round()).abs() <= epsilon(),
        }
    }
}

/// Interpret a literal as a dimensionless θ.
pub fn theta_value(text: &str, mode: Option<Mode>) -> Result<Theta, Failure> {
    let lit = parse_literal(text)?;
    match (mode, lit) {
        (_, Literal::PiRational(_)) => Err(Failure::parse(format!(
            "'{text}': θ is a plain number, not an angle; drop the pi suffix"
        ))),
        (Some(Mode::Exact), Literal::Float(_)) => Err(Failure::parse(format!(
            "'{text}' is a decimal literal; exact mode wants an integer or fraction"
        ))),
        (Some(Mode::Float), l) => Ok(Theta::Float(literal_radians(l))),
        (_, Literal::Rational(q)) => Ok(Theta::Exact(q)),
        (_, Literal::Float(x)) => Ok(Theta::Float(x)),
    }
}
