//! JSON building blocks shared by the commands.
//!
//! Conventions: every report carries `"schema": "cp1graft/1"`; complex
//! numbers are `[re, im]`; the point at infinity is the string `"inf"`;
//! exact angles are pi-form strings (`"3/2pi"`), float angles are radians as
//! numbers, so every value re-parses through the argument grammar.

use num_complex::Complex64;
use serde_json::{json, Value};

use cp1graft_core::angle::AngleValue;
use cp1graft_core::mobius::RiemannPoint;
use cp1graft_core::triangles::AtomicImmersion;

pub const SCHEMA: &str = "cp1graft/1";

pub fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn point_json(p: &RiemannPoint) -> Value {
    match p.to_complex() {
        Some(z) => complex_json(z),
        None => json!("inf"),
    }
}

pub fn angle_json(a: &AngleValue) -> Value {
    match a.pi_fraction() {
        Some(q) => {
            let (n, d) = (*q.numer(), *q.denom());
            let text = match (n, d) {
                (1, 1) => "pi".to_string(),
                (-1, 1) => "-pi".to_string(),
                (n, 1) => format!("{n}pi"),
                (n, d) => format!("{n}/{d}pi"),
            };
            json!(text)
        }
        None => json!(a.radians()),
    }
}

pub fn angles_json(angles: &[AngleValue]) -> Value {
    Value::Array(angles.iter().map(angle_json).collect())
}

pub fn atomic_json(atomic: &AtomicImmersion) -> Value {
    json!({
        "angles": angles_json(&atomic.angles),
        "kind": atomic.kind.to_string(),
        "targets": angles_json(&atomic.target_angles),
        "signs": atomic.signs.iter().map(|s| if *s > 0 { "+" } else { "-" }).collect::<Vec<_>>(),
        "star": atomic.star,
        "table_row": atomic.table_row,
        "big_slot": atomic.big_slot,
        "band_warning": atomic.band_warning,
    })
}

pub fn print_report(value: &Value) {
    println!(
        "{}",
        serde_json::to_string(value).expect("report serializes")
    );
}
