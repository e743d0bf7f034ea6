//! End-to-end tests driving the cp1graft binary.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cp1graft(args: &[&str], stdin: Option<&str>, envs: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cp1graft"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("spawn cp1graft");
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().expect("wait for cp1graft");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn report(run: &Run) -> Value {
    let v: Value = serde_json::from_str(&run.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {:?}", run.stdout));
    assert_eq!(
        v["schema"], "cp1graft/1",
        "every report carries the schema tag"
    );
    // Round-trip: serialize the parsed value and parse it again.
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    v
}

fn tmp_svg(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("cp1graft_test_{name}.svg"))
}

#[test]
fn classify_map_rotation_by_pi() {
    let run = cp1graft(&["classify-map", "[[0,1],[-1,0]]"], None, &[]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let v = report(&run);
    assert_eq!(v["class"], "elliptic");
    assert!(v["tr2"][0].as_f64().unwrap().abs() < 1e-12);
    assert!(v["tr2"][1].as_f64().unwrap().abs() < 1e-12);
    // Fixed points ±i, both rotation angles π.
    assert_eq!(v["fixed_points"].as_array().unwrap().len(), 2);
    let rot = v["rotation_invariant"].as_array().unwrap();
    assert!((rot[0].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-12);
    assert!((rot[1].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn classify_map_parabolic_translation() {
    let run = cp1graft(&["classify-map", "[[1,1],[0,1]]"], None, &[]);
    assert_eq!(run.code, 0);
    let v = report(&run);
    assert_eq!(v["class"], "parabolic");
    assert_eq!(v["fixed_points"], serde_json::json!(["inf"]));
    assert!(v.get("rotation_invariant").is_none());
}

#[test]
fn classify_map_complex_entries_and_identity() {
    let run = cp1graft(&["classify-map", "[[[2,0],0],[0,[2,0]]]"], None, &[]);
    assert_eq!(run.code, 0);
    let v = report(&run);
    assert_eq!(v["class"], "identity");
    assert_eq!(v["fixed_points"], "all");
}

#[test]
fn classify_map_rejects_singular_matrix() {
    let run = cp1graft(&["classify-map", "[[1,0],[0,0]]"], None, &[]);
    assert_eq!(run.code, 3);
    assert!(run.stdout.is_empty());
    assert!(!run.stderr.is_empty());
}

#[test]
fn classify_map_rejects_malformed_input() {
    for bad in ["not json", "[[1,2],[3]]", "[1,2,3,4]", "[[1,\"x\"],[0,1]]"] {
        let run = cp1graft(&["classify-map", bad], None, &[]);
        assert_eq!(run.code, 2, "input {bad:?} should be a parse error");
    }
}

#[test]
fn decompose_nine_five_three() {
    let run = cp1graft(&["decompose", "9pi", "5pi", "3pi"], None, &[]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let v = report(&run);
    assert_eq!(v["atomic"]["kind"], "spherical");
    assert_eq!(v["curve"]["G_ab"], 2);
    assert_eq!(v["curve"]["G_ac"], 1);
    assert_eq!(v["curve"]["G_bc"], 0);
    assert_eq!(v["curve"]["G_a"], 0);
    assert_eq!(v["perturbation"], false);
}

#[test]
fn decompose_rejects_full_turn_index() {
    let run = cp1graft(&["decompose", "2pi", "pi", "pi/2"], None, &[]);
    assert_eq!(run.code, 4);
    assert!(run.stdout.is_empty());
}

#[test]
fn decompose_already_atomic_input_has_zero_curve() {
    let run = cp1graft(&["decompose", "3pi", "pi", "pi/2"], None, &[]);
    assert_eq!(run.code, 0);
    let v = report(&run);
    for key in ["G_ab", "G_bc", "G_ac", "G_a", "G_b", "G_c"] {
        assert_eq!(v["curve"][key], 0, "{key} should be zero");
    }
}

#[test]
fn decompose_rejects_ambiguous_bare_numbers() {
    let run = cp1graft(&["decompose", "3", "2", "1"], None, &[]);
    assert_eq!(run.code, 2);
    // The same digits are fine once --mode float pins the meaning (radians).
    let run = cp1graft(
        &["--mode", "float", "decompose", "9.0", "5.0", "3.0"],
        None,
        &[],
    );
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
}

#[test]
fn decompose_exact_mode_rejects_floats() {
    let run = cp1graft(
        &["--mode", "exact", "decompose", "9pi", "5pi", "3.1"],
        None,
        &[],
    );
    assert_eq!(run.code, 2);
}

#[test]
fn decompose_is_deterministic() {
    let a = cp1graft(&["decompose", "17/3pi", "7/5pi", "4/3pi"], None, &[]);
    let b = cp1graft(&["decompose", "17/3pi", "7/5pi", "4/3pi"], None, &[]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout, "identical runs must be byte-identical");
}

#[test]
fn epsilon_env_widens_the_integer_rejection_band() {
    // 6.3115 rad = 2.0089π, so θ = 1.0045: far from 1 at the default ε,
    // inside the band once CP1GRAFT_EPS = 1e-2.
    let args = ["--mode", "float", "decompose", "6.3115", "2.9", "2.2"];
    let strict = cp1graft(&args, None, &[]);
    assert_eq!(strict.code, 0, "stderr: {}", strict.stderr);
    let loose = cp1graft(&args, None, &[("CP1GRAFT_EPS", "1e-2")]);
    assert_eq!(loose.code, 4);
}

#[test]
fn render_octahedral_labels_all_six_crossings() {
    let out = tmp_svg("octahedral");
    let input = r#"{"schema":"cp1graft/1","angles":["1/2pi","1/2pi","1/2pi"]}"#;
    let run = cp1graft(
        &["render", "--out", out.to_str().unwrap()],
        Some(input),
        &[],
    );
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let v = report(&run);
    assert_eq!(v["kind"], "spherical");
    assert_eq!(v["intersection_points"], 6);
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg"));
    // Three configured curves (two axes as lines, the unit circle) and a
    // label for each of the six pairwise crossings.
    assert_eq!(svg.matches("class=\"c0\"").count(), 1);
    assert_eq!(svg.matches("class=\"c1\"").count(), 1);
    assert_eq!(svg.matches("class=\"c2\"").count(), 1);
    for label in ["x12", "y12", "x13", "y13", "x23", "y23"] {
        assert!(svg.contains(&format!(">{label}<")), "missing label {label}");
    }
}

#[test]
fn render_hyperbolic_draws_dashed_dual_circle() {
    let out = tmp_svg("hyperbolic");
    let input = r#"{"schema":"cp1graft/1","angles":["1/4pi","1/4pi","1/4pi"]}"#;
    let run = cp1graft(
        &["render", "--out", out.to_str().unwrap()],
        Some(input),
        &[],
    );
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let v = report(&run);
    assert_eq!(v["kind"], "hyperbolic");
    assert_eq!(v["dual_circle"], true);
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.contains("stroke-dasharray"));
    assert!(svg.contains("class=\"dual\""));
}

#[test]
fn render_accepts_raw_circles() {
    let out = tmp_svg("raw_circles");
    // Real axis, unit circle, imaginary axis, spelled as coefficient triples.
    let input = r#"{"schema":"cp1graft/1","circles":[
        {"a":0.0,"b":[0.0,0.5],"c":0.0},
        {"a":1.0,"b":[0.0,0.0],"c":-1.0},
        {"a":0.0,"b":[0.5,0.0],"c":0.0}
    ]}"#;
    let run = cp1graft(
        &[
            "render",
            "--chart",
            "stereo",
            "--out",
            out.to_str().unwrap(),
        ],
        Some(input),
        &[],
    );
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let v = report(&run);
    assert_eq!(v["kind"], "spherical");
    assert_eq!(v["chart"], "stereo");
    assert_eq!(v["intersection_points"], 6);
    assert_eq!(v["table_row"], Value::Null);
    // Stereo chart: everything is a sampled polyline inside the horizon.
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.contains("class=\"horizon\""));
    assert!(svg.matches("<polyline").count() >= 3);
}

#[test]
fn render_rejects_bad_inputs() {
    let out = tmp_svg("rejects");
    let out = out.to_str().unwrap();
    // No schema tag.
    let run = cp1graft(&["render", "--out", out], Some("{}"), &[]);
    assert_eq!(run.code, 2);
    // Wrong schema version.
    let run = cp1graft(
        &["render", "--out", out],
        Some(r#"{"schema":"cp1graft/2","angles":["1/2pi","1/2pi","1/2pi"]}"#),
        &[],
    );
    assert_eq!(run.code, 2);
    // Schema but no payload.
    let run = cp1graft(
        &["render", "--out", out],
        Some(r#"{"schema":"cp1graft/1"}"#),
        &[],
    );
    assert_eq!(run.code, 2);
    // Not JSON at all.
    let run = cp1graft(&["render", "--out", out], Some("<svg>"), &[]);
    assert_eq!(run.code, 2);
    // Missing --out.
    let run = cp1graft(
        &["render"],
        Some(r#"{"schema":"cp1graft/1","angles":["1/2pi","1/2pi","1/2pi"]}"#),
        &[],
    );
    assert_eq!(run.code, 2);
}

#[test]
fn render_svg_is_deterministic() {
    let input = r#"{"schema":"cp1graft/1","angles":["1/4pi","1/3pi","1/2pi"]}"#;
    let out_a = tmp_svg("determinism_a");
    let out_b = tmp_svg("determinism_b");
    let a = cp1graft(
        &["render", "--out", out_a.to_str().unwrap()],
        Some(input),
        &[],
    );
    let b = cp1graft(
        &["render", "--out", out_b.to_str().unwrap()],
        Some(input),
        &[],
    );
    assert_eq!(a.code, 0);
    assert_eq!(
        a.stdout.replace("determinism_a", ""),
        b.stdout.replace("determinism_b", "")
    );
    let svg_a = std::fs::read(&out_a).unwrap();
    let svg_b = std::fs::read(&out_b).unwrap();
    assert_eq!(svg_a, svg_b);
}

#[test]
fn render_reads_a_file_argument() {
    let input_path = std::env::temp_dir().join("cp1graft_test_input.json");
    std::fs::write(
        &input_path,
        r#"{"schema":"cp1graft/1","angles":["1/2pi","1/2pi","1/2pi"]}"#,
    )
    .unwrap();
    let out = tmp_svg("from_file");
    let run = cp1graft(
        &[
            "render",
            input_path.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ],
        None,
        &[],
    );
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    // A missing file is an input error, not a crash.
    let run = cp1graft(
        &[
            "render",
            "/nonexistent/input.json",
            "--out",
            out.to_str().unwrap(),
        ],
        None,
        &[],
    );
    assert_eq!(run.code, 2);
}

#[test]
fn verify_half_half_half_passes() {
    let run = cp1graft(&["verify", "1/2", "1/2", "1/2"], None, &[]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let v = report(&run);
    assert_eq!(v["pass"], true);
    let per = v["per_puncture"].as_array().unwrap();
    assert_eq!(per.len(), 3);
    for p in per {
        assert!(p["residual"].as_f64().unwrap() < 1e-5);
        assert!(p["tr2_predicted"].as_f64().unwrap().abs() < 1e-12);
    }
    assert!(v["product_residual"].as_f64().unwrap() < 1e-5);
}

#[test]
fn verify_matches_eigenvalue_predictions() {
    let run = cp1graft(&["verify", "1/3", "1/4", "1/5"], None, &[]);
    assert_eq!(run.code, 0);
    let v = report(&run);
    let per = v["per_puncture"].as_array().unwrap();
    let predicted: Vec<f64> = per
        .iter()
        .map(|p| p["tr2_predicted"].as_f64().unwrap())
        .collect();
    let expected = [1.0, 2.0, 4.0 * (std::f64::consts::PI / 5.0).cos().powi(2)];
    for (got, want) in predicted.iter().zip(expected) {
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
}

#[test]
fn verify_rejects_integer_theta() {
    let run = cp1graft(&["verify", "1", "1/2", "1/2"], None, &[]);
    assert_eq!(run.code, 4);
    let run = cp1graft(
        &["--mode", "float", "verify", "2.0", "0.5", "0.5"],
        None,
        &[],
    );
    assert_eq!(run.code, 4);
}

#[test]
fn verify_fails_at_unreachable_tolerance() {
    let run = cp1graft(
        &["--tol", "1e-18", "verify", "1/3", "1/4", "1/5"],
        None,
        &[],
    );
    assert_eq!(run.code, 1);
    let v = report(&run);
    assert_eq!(v["pass"], false);
}

#[test]
fn usage_errors_exit_two() {
    let run = cp1graft(&["decompose", "9pi", "5pi"], None, &[]);
    assert_eq!(run.code, 2, "missing argument is a usage error");
    let run = cp1graft(&["no-such-command"], None, &[]);
    assert_eq!(run.code, 2);
}
