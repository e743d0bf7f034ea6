//! The four commands: classify-map, decompose, render, verify.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use cp1graft_core::angle::AngleValue;
use cp1graft_core::circles::Circle;
use cp1graft_core::configurations::build_configuration;
use cp1graft_core::grafting::{apply_graft, decompose, Adjustment, IndexTriple};
use cp1graft_core::mobius::{MapClass, MobiusMap};
use cp1graft_core::monodromy::integrate_monodromy;
use cp1graft_core::tolerance::epsilon;
use cp1graft_core::triangles::{atomic_classify, realize};

use crate::json::{
    angle_json, angles_json, atomic_json, complex_json, point_json, print_report, SCHEMA,
};
use crate::parse::{angle_value, theta_value, Mode};
use crate::svg::{configuration_svg, Chart};
use crate::Failure;

fn complex_entry(v: &Value) -> Result<Complex64, Failure> {
    if let Some(x) = v.as_f64() {
        return Ok(Complex64::new(x, 0.0));
    }
    if let Some(pair) = v.as_array() {
        if pair.len() == 2 {
            if let (Some(re), Some(im)) = (pair[0].as_f64(), pair[1].as_f64()) {
                return Ok(Complex64::new(re, im));
            }
        }
    }
    Err(Failure::parse(format!(
        "matrix entry must be a number or [re, im], got {v}"
    )))
}

pub fn classify_map(matrix: &str) -> Result<i32, Failure> {
    let value: Value = serde_json::from_str(matrix)
        .map_err(|e| Failure::parse(format!("matrix is not valid JSON: {e}")))?;
    let rows = value
        .as_array()
        .filter(|r| r.len() == 2)
        .ok_or_else(|| Failure::parse("expected a 2x2 matrix like [[0,1],[-1,0]]".into()))?;
    let mut entries = [Complex64::new(0.0, 0.0); 4];
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == 2)
            .ok_or_else(|| Failure::parse(format!("matrix row {} must have two entries", i + 1)))?;
        for (j, entry) in row.iter().enumerate() {
            entries[2 * i + j] = complex_entry(entry)?;
        }
    }
    let m = MobiusMap::new(entries[0], entries[1], entries[2], entries[3])
        .map_err(Failure::from_core_math)?;

    let class = m.classify();
    let class_name = match class {
        MapClass::Identity => "identity",
        MapClass::Parabolic => "parabolic",
        MapClass::Elliptic => "elliptic",
        MapClass::Loxodromic => "loxodromic",
    };
    let mut report = Map::new();
    report.insert("schema".into(), json!(SCHEMA));
    report.insert("command".into(), json!("classify-map"));
    report.insert("class".into(), json!(class_name));
    report.insert("tr2".into(), complex_json(m.tr2()));
    let fixed: Value = match m.fixed_points() {
        Ok(points) => Value::Array(points.iter().map(point_json).collect()),
        // The identity fixes everything; no list to report.
        Err(_) => json!("all"),
    };
    report.insert("fixed_points".into(), fixed);
    if class == MapClass::Elliptic {
        let (t1, t2) = m.rotation_invariant().map_err(Failure::from_core_math)?;
        report.insert("rotation_invariant".into(), json!([t1, t2]));
    }
    print_report(&Value::Object(report));
    Ok(0)
}

/// θ = index/(2π) must not be an integer (the ODE would have an apparent
/// singularity); decided exactly for exact input, within the ε band for
/// float input.
fn reject_integer_theta(index: &AngleValue) -> Result<(), Failure> {
    let integral = match index.pi_fraction() {
        Some(q) => (q / 2).is_integer(),
        None => {
            let theta = index.pi_units() / 2.0;
            (theta - theta.round()).abs() <= epsilon()
        }
    };
    if integral {
        return Err(Failure::forbidden(format!(
            "index {} is an integer multiple of 2pi (apparent singularity)",
            angle_json(index)
        )));
    }
    Ok(())
}

pub fn decompose_cmd(args: [&str; 3], mode: Option<Mode>) -> Result<i32, Failure> {
    let indices = [
        angle_value(args[0], mode)?,
        angle_value(args[1], mode)?,
        angle_value(args[2], mode)?,
    ];
    for index in &indices {
        reject_integer_theta(index)?;
    }
    let triple = IndexTriple::new(indices).map_err(Failure::from_core_math)?;
    let d = decompose(&triple).map_err(Failure::from_core_math)?;

    // The decomposition is only emitted if grafting the curve back onto the
    // atomic part reproduces the input.
    let atomic_indices =
        IndexTriple::from_angles(&d.atomic.angles).map_err(Failure::from_core_math)?;
    let back = apply_graft(&atomic_indices, &d.curve).map_err(Failure::from_core_math)?;
    for i in 0..3 {
        let ok = if back.indices[i].is_exact() && triple.indices[i].is_exact() {
            back.indices[i] == triple.indices[i]
        } else {
            back.indices[i].approx_eq(triple.indices[i], epsilon())
        };
        if !ok {
            return Err(Failure::math(format!(
                "reconstruction check failed at slot {}: {} vs {}",
                i + 1,
                angle_json(&back.indices[i]),
                angle_json(&triple.indices[i])
            )));
        }
    }

    let adjustment = match d.adjustment {
        None => Value::Null,
        Some(Adjustment::WidenDominant) => json!("widen-dominant"),
        Some(Adjustment::TradeFarEdge) => json!("trade-far-edge"),
    };
    print_report(&json!({
        "schema": SCHEMA,
        "command": "decompose",
        "indices": angles_json(&triple.indices),
        "relabel": d.relabel,
        "atomic": atomic_json(&d.atomic),
        "curve": {
            "G_ab": d.curve.edge_ab,
            "G_bc": d.curve.edge_bc,
            "G_ac": d.curve.edge_ac,
            "G_a": d.curve.core_a,
            "G_b": d.curve.core_b,
            "G_c": d.curve.core_c,
        },
        "perturbation": d.perturbation,
        "adjustment": adjustment,
    }));
    Ok(0)
}

fn angle_from_json(v: &Value, mode: Option<Mode>) -> Result<AngleValue, Failure> {
    match v {
        Value::String(s) => angle_value(s, mode),
        Value::Number(_) => Ok(AngleValue::from_radians(v.as_f64().unwrap())),
        other => Err(Failure::parse(format!(
            "angle must be a string like \"3/2pi\" or a number in radians, got {other}"
        ))),
    }
}

pub fn render_cmd(
    input: Option<&str>,
    chart: Chart,
    out: Option<&Path>,
    mode: Option<Mode>,
) -> Result<i32, Failure> {
    let out = out.ok_or_else(|| Failure::parse("render needs --out FILE for the SVG".into()))?;
    let text = match input {
        Some(path) if path != "-" => std::fs::read_to_string(path)
            .map_err(|e| Failure::parse(format!("cannot read {path}: {e}")))?,
        _ => std::io::read_to_string(std::io::stdin())
            .map_err(|e| Failure::parse(format!("cannot read stdin: {e}")))?,
    };
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::parse(format!("input is not valid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Failure::parse("input must be a JSON object".into()))?;
    if obj.get("schema").and_then(Value::as_str) != Some(SCHEMA) {
        return Err(Failure::parse(format!(
            "missing or unsupported schema, want \"{SCHEMA}\""
        )));
    }

    let (cfg, vertices, table_row);
    if let Some(raw) = obj.get("angles") {
        let list = raw
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Failure::parse("\"angles\" must be a list of three values".into()))?;
        let angles = [
            angle_from_json(&list[0], mode)?,
            angle_from_json(&list[1], mode)?,
            angle_from_json(&list[2], mode)?,
        ];
        let atomic = atomic_classify(&angles).map_err(Failure::from_core_math)?;
        let realized = realize(&atomic).map_err(Failure::from_core_math)?;
        cfg = realized.configuration;
        vertices = Some(realized.vertices);
        table_row = Some(atomic.table_row);
    } else if let Some(raw) = obj.get("circles") {
        let list = raw
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Failure::parse("\"circles\" must be a list of three circles".into()))?;
        let mut circles = Vec::with_capacity(3);
        for (i, c) in list.iter().enumerate() {
            let c = c.as_object().ok_or_else(|| {
                Failure::parse(format!("circle {} must be an object {{a, b, c}}", i + 1))
            })?;
            let a = c.get("a").and_then(Value::as_f64);
            let b = c.get("b").map(complex_entry).transpose()?;
            let cc = c.get("c").and_then(Value::as_f64);
            match (a, b, cc) {
                (Some(a), Some(b), Some(cc)) => {
                    circles.push(Circle::new(a, b, cc).map_err(Failure::from_core_math)?)
                }
                _ => {
                    return Err(Failure::parse(format!(
                        "circle {} needs numeric \"a\", \"c\" and complex \"b\"",
                        i + 1
                    )))
                }
            }
        }
        cfg = build_configuration(circles[0], circles[1], circles[2])
            .map_err(Failure::from_core_math)?;
        vertices = None;
        table_row = None;
    } else {
        return Err(Failure::parse(
            "input needs either \"angles\" or \"circles\"".into(),
        ));
    }

    let (svg, summary) =
        configuration_svg(&cfg, vertices.as_ref(), chart).map_err(Failure::from_core_math)?;
    std::fs::write(out, svg)
        .map_err(|e| Failure::parse(format!("cannot write {}: {e}", out.display())))?;

    print_report(&json!({
        "schema": SCHEMA,
        "command": "render",
        "out": out.display().to_string(),
        "chart": match chart { Chart::Plane => "plane", Chart::Stereo => "stereo" },
        "kind": cfg.kind.to_string(),
        "table_row": table_row,
        "intersection_points": summary.intersection_points,
        "dual_circle": summary.dual_circle,
        "vertices": summary.vertices,
    }));
    Ok(0)
}

pub fn verify_cmd(args: [&str; 3], tol: f64, mode: Option<Mode>) -> Result<i32, Failure> {
    let thetas = [
        theta_value(args[0], mode)?,
        theta_value(args[1], mode)?,
        theta_value(args[2], mode)?,
    ];
    for t in &thetas {
        if t.is_integer() {
            return Err(Failure::forbidden(format!(
                "theta {} is an integer (apparent singularity)",
                t.as_f64()
            )));
        }
    }
    let theta = [thetas[0].as_f64(), thetas[1].as_f64(), thetas[2].as_f64()];
    let result = integrate_monodromy(&theta, 1e-9).map_err(Failure::from_core_math)?;

    let mut per_puncture = Vec::with_capacity(3);
    let mut pass = true;
    for (m, t) in [&result.m0, &result.m1, &result.m_inf].iter().zip(&theta) {
        let predicted = 4.0 * (PI * t).cos().powi(2);
        let residual = (m.tr2() - Complex64::new(predicted, 0.0)).norm();
        pass &= residual < tol;
        per_puncture.push(json!({
            "theta": t,
            "tr2_ode": complex_json(m.tr2()),
            "tr2_predicted": predicted,
            "residual": residual,
        }));
    }
    pass &= result.outer_tr2_gap < tol;

    print_report(&json!({
        "schema": SCHEMA,
        "command": "verify",
        "tol": tol,
        "per_puncture": per_puncture,
        "product_residual": result.outer_tr2_gap,
        "wronskian_drift": result.wronskian_drift,
        "pass": pass,
    }));
    Ok(if pass { 0 } else { 1 })
}
