//! The atomic angle-triple catalogue.
//!
//! The data lives in `data/atomic_rows.tsv` (format documented at the top of
//! that file) and is parsed once, on first use. Each row carries open-range
//! tags per slot, a list of linear conditions in (a, b, c, π), the target
//! angle forms, the vertex signs, the star flag and a rational sample triple
//! satisfying exactly that row.

use std::sync::OnceLock;

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::angle::AngleValue;
use crate::configurations::Kind;
use crate::error::{Error, Result};
use crate::tolerance::epsilon;

const TABLE_TSV: &str = include_str!("../data/atomic_rows.tsv");

/// Open range of one angle slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RangeTag {
    /// (0, π)
    Small,
    /// (π, 2π)
    Big,
    /// (2π, 3π)
    Wide,
}

impl RangeTag {
    pub fn bounds(self) -> (Rational64, Rational64) {
        match self {
            RangeTag::Small => (Rational64::from_integer(0), Rational64::from_integer(1)),
            RangeTag::Big => (Rational64::from_integer(1), Rational64::from_integer(2)),
            RangeTag::Wide => (Rational64::from_integer(2), Rational64::from_integer(3)),
        }
    }
}

/// A linear form ca·a + cb·b + cc·c + cpi·π with integer coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub ca: i64,
    pub cb: i64,
    pub cc: i64,
    pub cpi: i64,
}

impl LinearForm {
    /// Exact value divided by π, for exact angles a = qa·π etc.
    pub fn eval_pi_units(&self, qa: Rational64, qb: Rational64, qc: Rational64) -> Rational64 {
        qa * Rational64::from_integer(self.ca)
            + qb * Rational64::from_integer(self.cb)
            + qc * Rational64::from_integer(self.cc)
            + Rational64::from_integer(self.cpi)
    }

    /// Float value in radians.
    pub fn eval_radians(&self, a: f64, b: f64, c: f64) -> f64 {
        self.ca as f64 * a
            + self.cb as f64 * b
            + self.cc as f64 * c
            + self.cpi as f64 * std::f64::consts::PI
    }

    /// Apply the form to a triple of angle values, staying exact when all
    /// inputs are exact.
    pub fn eval(&self, angles: &[AngleValue; 3]) -> AngleValue {
        if let (Some(qa), Some(qb), Some(qc)) = (
            angles[0].pi_fraction(),
            angles[1].pi_fraction(),
            angles[2].pi_fraction(),
        ) {
            AngleValue::from_pi_rational(self.eval_pi_units(qa, qb, qc))
        } else {
            AngleValue::from_radians(self.eval_radians(
                angles[0].radians(),
                angles[1].radians(),
                angles[2].radians(),
            ))
        }
    }

    /// The slot indices whose coefficient is nonzero.
    pub fn slots(&self) -> Vec<usize> {
        [self.ca, self.cb, self.cc]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Comparison of a linear form against zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Lt,
    Gt,
    Eq,
}

#[derive(Clone, Copy, Debug)]
pub struct Cond {
    pub form: LinearForm,
    pub rel: Rel,
}

/// How a condition (or a whole row) holds for a given input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CondMatch {
    No,
    Yes,
    /// Held only up to the float band around an equality or boundary.
    YesBand,
}

impl Cond {
    /// Decide the condition. Exact inputs decide exactly; float inputs treat
    /// |form| ≤ ε·π as zero, and a strict inequality satisfied only inside
    /// that band counts as No.
    pub fn holds(&self, angles: &[AngleValue; 3]) -> CondMatch {
        let (sign, banded) = form_sign(&self.form, angles);
        let ok = match self.rel {
            Rel::Lt => sign < 0,
            Rel::Gt => sign > 0,
            Rel::Eq => sign == 0,
        };
        match (ok, banded && self.rel == Rel::Eq) {
            (false, _) => CondMatch::No,
            (true, true) => CondMatch::YesBand,
            (true, false) => CondMatch::Yes,
        }
    }
}

/// Sign of a form on the angles: (−1|0|+1, decided-within-float-band).
fn form_sign(form: &LinearForm, angles: &[AngleValue; 3]) -> (i8, bool) {
    if let (Some(qa), Some(qb), Some(qc)) = (
        angles[0].pi_fraction(),
        angles[1].pi_fraction(),
        angles[2].pi_fraction(),
    ) {
        let v = form.eval_pi_units(qa, qb, qc);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        (s, false)
    } else {
        let v = form.eval_radians(
            angles[0].radians(),
            angles[1].radians(),
            angles[2].radians(),
        );
        let band = epsilon() * std::f64::consts::PI;
        if v.abs() <= band {
            (0, true)
        } else {
            (if v > 0.0 { 1 } else { -1 }, false)
        }
    }
}

/// One row of the catalogue.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub id: String,
    pub kind: Kind,
    pub ranges: [RangeTag; 3],
    pub conditions: Vec<Cond>,
    pub targets: [LinearForm; 3],
    pub signs: [i8; 3],
    pub star: bool,
    pub family: String,
    /// Rational sample angles in units of π, satisfying exactly this row.
    pub sample: [Rational64; 3],
}

impl TableRow {
    /// The slot holding the (π,2π) or (2π,3π) angle, if any.
    pub fn big_slot(&self) -> Option<usize> {
        self.ranges.iter().position(|r| *r != RangeTag::Small)
    }

    /// Whether the row matches the given angles (ranges plus conditions).
    pub fn matches(&self, angles: &[AngleValue; 3]) -> CondMatch {
        let mut band = false;
        for (angle, range) in angles.iter().zip(&self.ranges) {
            let (lo, hi) = range.bounds();
            if !angle.in_open_pi_interval(lo, hi) {
                return CondMatch::No;
            }
        }
        for cond in &self.conditions {
            match cond.holds(angles) {
                CondMatch::No => return CondMatch::No,
                CondMatch::YesBand => band = true,
                CondMatch::Yes => {}
            }
        }
        if band {
            CondMatch::YesBand
        } else {
            CondMatch::Yes
        }
    }

    /// The sample triple as exact angle values.
    pub fn sample_angles(&self) -> [AngleValue; 3] {
        [
            AngleValue::from_pi_rational(self.sample[0]),
            AngleValue::from_pi_rational(self.sample[1]),
            AngleValue::from_pi_rational(self.sample[2]),
        ]
    }
}

/// Parse a linear form like "2pi-a", "a+b+c-3pi" or "pi-b".
pub fn parse_form(text: &str) -> Result<LinearForm> {
    let mut form = LinearForm {
        ca: 0,
        cb: 0,
        cc: 0,
        cpi: 0,
    };
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty linear form".into()));
    }
    let mut rest = s;
    let mut sign = 1i64;
    // Leading sign is optional; afterwards terms are separated by +/-.
    loop {
        rest = rest.trim_start();
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
            continue;
        }
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r;
            continue;
        }
        if rest.is_empty() {
            return Err(Error::Parse(format!("dangling sign in form '{s}'")));
        }
        // Term: optional integer, then a|b|c|pi.
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        rest = &rest[digits.len()..];
        let coeff: i64 = if digits.is_empty() {
            1
        } else {
            digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient in '{s}'")))?
        };
        let coeff = sign * coeff;
        if let Some(r) = rest.strip_prefix("pi") {
            form.cpi += coeff;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('a') {
            form.ca += coeff;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('b') {
            form.cb += coeff;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('c') {
            form.cc += coeff;
            rest = r;
        } else {
            return Err(Error::Parse(format!("unexpected token in form '{s}'")));
        }
        sign = 1;
        rest = rest.trim_start();
        if rest.is_empty() {
            return Ok(form);
        }
        if !(rest.starts_with('+') || rest.starts_with('-')) {
            return Err(Error::Parse(format!("expected +/- in form '{s}'")));
        }
    }
}

fn parse_cond(text: &str) -> Result<Cond> {
    let (rel, op) = if text.contains('<') {
        (Rel::Lt, '<')
    } else if text.contains('>') {
        (Rel::Gt, '>')
    } else if text.contains('=') {
        (Rel::Eq, '=')
    } else {
        return Err(Error::Parse(format!("condition '{text}' has no operator")));
    };
    let mut split = text.splitn(2, op);
    let lhs = split.next().unwrap_or_default();
    let rhs = split.next().unwrap_or_default().trim();
    if rhs != "0" {
        return Err(Error::Parse(format!(
            "condition '{text}' must compare against 0"
        )));
    }
    Ok(Cond {
        form: parse_form(lhs)?,
        rel,
    })
}

fn parse_rational(text: &str) -> Result<Rational64> {
    let s = text.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer: i64 = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
    let denom: i64 = d
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
    if denom == 0 {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(Rational64::new(numer, denom))
}

fn parse_row(line: &str) -> Result<TableRow> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 9 {
        return Err(Error::Parse(format!(
            "expected 9 tab-separated columns, got {}",
            cols.len()
        )));
    }
    let kind = match cols[1] {
        "H" => Kind::Hyperbolic,
        "S" => Kind::Spherical,
        "E" => Kind::Euclidean,
        other => return Err(Error::Parse(format!("unknown kind '{other}'"))),
    };
    let range_vec: Vec<RangeTag> = cols[2]
        .split(',')
        .map(|t| match t.trim() {
            "S" => Ok(RangeTag::Small),
            "B" => Ok(RangeTag::Big),
            "X" => Ok(RangeTag::Wide),
            other => Err(Error::Parse(format!("unknown range tag '{other}'"))),
        })
        .collect::<Result<_>>()?;
    let conditions: Vec<Cond> = cols[3].split(';').map(parse_cond).collect::<Result<_>>()?;
    let target_vec: Vec<LinearForm> = cols[4].split(';').map(parse_form).collect::<Result<_>>()?;
    let sign_vec: Vec<i8> = cols[5]
        .split(',')
        .map(|t| match t.trim() {
            "+" => Ok(1),
            "-" => Ok(-1),
            other => Err(Error::Parse(format!("unknown sign '{other}'"))),
        })
        .collect::<Result<_>>()?;
    let star = match cols[6].trim() {
        "0" => false,
        "1" => true,
        other => return Err(Error::Parse(format!("bad star flag '{other}'"))),
    };
    let sample_vec: Vec<Rational64> = cols[8]
        .split(',')
        .map(parse_rational)
        .collect::<Result<_>>()?;
    let to3 = |v: Vec<RangeTag>| -> Result<[RangeTag; 3]> {
        v.try_into()
            .map_err(|_| Error::Parse("need exactly 3 range tags".into()))
    };
    Ok(TableRow {
        id: cols[0].trim().to_string(),
        kind,
        ranges: to3(range_vec)?,
        conditions,
        targets: target_vec
            .try_into()
            .map_err(|_| Error::Parse("need exactly 3 targets".into()))?,
        signs: sign_vec
            .try_into()
            .map_err(|_| Error::Parse("need exactly 3 signs".into()))?,
        star,
        family: cols[7].trim().to_string(),
        sample: sample_vec
            .try_into()
            .map_err(|_| Error::Parse("need exactly 3 sample angles".into()))?,
    })
}

fn parse_table(text: &str) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with("id\t") {
            continue;
        }
        rows.push(parse_row(line)?);
    }
    Ok(rows)
}

static ROWS: OnceLock<Vec<TableRow>> = OnceLock::new();

/// The full catalogue (39 rows), parsed once.
pub fn rows() -> &'static [TableRow] {
    ROWS.get_or_init(|| parse_table(TABLE_TSV).expect("bundled catalogue parses"))
}

/// Look up a row by id.
pub fn row_by_id(id: &str) -> Option<&'static TableRow> {
    rows().iter().find(|r| r.id == id)
}
