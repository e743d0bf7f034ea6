//! Numerical monodromy of the second-order equation u″ + q·u/2 = 0 along
//! loops in the thrice-punctured sphere, with q the quadratic differential
//! of `crate::differentials`.
//!
//! Solutions are transported as a 2×2 fundamental system with an adaptive
//! Dormand–Prince 5(4) integrator over explicit path pieces. The system is
//! traceless, so the Wronskian (determinant) is conserved; its drift is a
//! direct quality measure. Local exponent theory predicts the peripheral
//! traces: tr M = ±2cos(πθ), so tr² M = 4cos²(πθ) is an oracle independent
//! of the integration.

use std::f64::consts::{PI, TAU};

use crate::configurations::to_elliptic_triple;
use crate::differentials::evaluate_q;
use crate::error::{Error, Result};
use crate::mobius::Complex;
use crate::triangles::RealizedImmersion;

/// An unnormalized 2×2 complex matrix (no determinant scaling, unlike
/// `MobiusMap`, so conservation laws stay visible).
#[derive(Clone, Copy, Debug)]
pub struct Mat2 {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
}

impl Mat2 {
    pub fn identity() -> Self {
        Self {
            a: Complex::new(1.0, 0.0),
            b: Complex::new(0.0, 0.0),
            c: Complex::new(0.0, 0.0),
            d: Complex::new(1.0, 0.0),
        }
    }

    pub fn det(&self) -> Complex {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex {
        self.a + self.d
    }

    pub fn tr2(&self) -> Complex {
        let t = self.trace();
        t * t
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det.norm() < 1e-300 {
            return Err(Error::SingularMatrix(det.norm()));
        }
        Ok(Mat2 {
            a: self.d / det,
            b: -self.b / det,
            c: -self.c / det,
            d: self.a / det,
        })
    }
}

/// A smooth piece of an integration path, parametrized over t ∈ [0,1].
#[derive(Clone, Copy, Debug)]
pub enum PathPiece {
    Segment {
        from: Complex,
        to: Complex,
    },
    /// center + radius·e^{i(start + sweep·t)}; positive sweep runs
    /// anticlockwise.
    Arc {
        center: Complex,
        radius: f64,
        start: f64,
        sweep: f64,
    },
}

impl PathPiece {
    fn point(&self, t: f64) -> Complex {
        match *self {
            PathPiece::Segment { from, to } => from + (to - from) * t,
            PathPiece::Arc {
                center,
                radius,
                start,
                sweep,
            } => center + Complex::from_polar(radius, start + sweep * t),
        }
    }

    fn velocity(&self, t: f64) -> Complex {
        match *self {
            PathPiece::Segment { from, to } => to - from,
            PathPiece::Arc {
                center: _,
                radius,
                start,
                sweep,
            } => Complex::new(0.0, sweep) * Complex::from_polar(radius, start + sweep * t),
        }
    }

    /// Minimum distance from the piece to a point.
    fn min_distance_to(&self, p: Complex) -> f64 {
        match *self {
            PathPiece::Segment { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                if len2 == 0.0 {
                    return (p - from).norm();
                }
                let t = (((p - from) * d.conj()).re / len2).clamp(0.0, 1.0);
                (p - (from + d * t)).norm()
            }
            PathPiece::Arc {
                center,
                radius,
                start,
                sweep,
            } => {
                let v = p - center;
                let radial = (v.norm() - radius).abs();
                if sweep.abs() >= TAU {
                    return radial;
                }
                let (lo, span) = if sweep >= 0.0 {
                    (start, sweep)
                } else {
                    (start + sweep, -sweep)
                };
                let phi = (v.arg() - lo).rem_euclid(TAU);
                if phi <= span {
                    radial
                } else {
                    let e1 = self.point(0.0);
                    let e2 = self.point(1.0);
                    (p - e1).norm().min((p - e2).norm())
                }
            }
        }
    }
}

/// Basepoint for all loops.
pub const BASEPOINT: Complex = Complex::new(0.5, 0.0);

/// Default radius of the small loops around 0 and 1.
pub const LOOP_RADIUS: f64 = 0.25;

/// Minimum allowed distance between a path and a singular point.
pub const CLEARANCE: f64 = 0.05;

/// Anticlockwise loop around 0 based at 1/2.
pub fn loop_around_zero(radius: f64) -> Vec<PathPiece> {
    let entry = Complex::new(radius, 0.0);
    vec![
        PathPiece::Segment {
            from: BASEPOINT,
            to: entry,
        },
        PathPiece::Arc {
            center: Complex::new(0.0, 0.0),
            radius,
            start: 0.0,
            sweep: TAU,
        },
        PathPiece::Segment {
            from: entry,
            to: BASEPOINT,
        },
    ]
}

/// Anticlockwise loop around 1 based at 1/2.
pub fn loop_around_one(radius: f64) -> Vec<PathPiece> {
    let entry = Complex::new(1.0 - radius, 0.0);
    vec![
        PathPiece::Segment {
            from: BASEPOINT,
            to: entry,
        },
        PathPiece::Arc {
            center: Complex::new(1.0, 0.0),
            radius,
            start: PI,
            sweep: TAU,
        },
        PathPiece::Segment {
            from: entry,
            to: BASEPOINT,
        },
    ]
}

/// Large anticlockwise circle enclosing both finite singular points,
/// reached by a vertical connector. Its class is inverse to the loop
/// around ∞, so traces match those of (M₀M₁)⁻¹ up to sign.
fn outer_loop() -> Vec<PathPiece> {
    let top = BASEPOINT + Complex::new(0.0, 10.0);
    vec![
        PathPiece::Segment {
            from: BASEPOINT,
            to: top,
        },
        PathPiece::Arc {
            center: BASEPOINT,
            radius: 10.0,
            start: PI / 2.0,
            sweep: TAU,
        },
        PathPiece::Segment {
            from: top,
            to: BASEPOINT,
        },
    ]
}

/// Check that every piece keeps its distance from the singular points 0
/// and 1.
pub fn validate_clearance(pieces: &[PathPiece], clearance: f64) -> Result<()> {
    for piece in pieces {
        for p in [Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)] {
            let dist = piece.min_distance_to(p);
            if dist < clearance {
                return Err(Error::PathClearance { dist, clearance });
            }
        }
    }
    Ok(())
}

/// Fundamental system state: rows are (u₁ u₂) and (u₁′ u₂′).
type State = [Complex; 4];

fn rhs(theta: &[f64; 3], piece: &PathPiece, t: f64, y: &State) -> Result<State> {
    let z = piece.point(t);
    let v = piece.velocity(t);
    let q = evaluate_q(theta, z)?;
    let w = -q / 2.0;
    Ok([v * y[2], v * y[3], v * w * y[0], v * w * y[1]])
}

/// Dormand–Prince 5(4) coefficients.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
/// Difference between the 5th and embedded 4th order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const MAX_STEPS_PER_PIECE: usize = 200_000;
const MIN_STEP: f64 = 1e-13;

/// Integrate the fundamental system across one piece, updating the state.
/// Returns the number of accepted steps.
fn integrate_piece(theta: &[f64; 3], piece: &PathPiece, tol: f64, y: &mut State) -> Result<usize> {
    let mut t = 0.0f64;
    let mut h = 0.01f64;
    let mut steps = 0usize;
    let mut k1 = rhs(theta, piece, t, y)?;
    let mut attempts = 0usize;
    while t < 1.0 {
        if h < MIN_STEP {
            return Err(Error::IntegrationFailure(format!(
                "step size underflow at t = {t:.6}"
            )));
        }
        attempts += 1;
        if attempts > MAX_STEPS_PER_PIECE {
            return Err(Error::IntegrationFailure("step budget exhausted".into()));
        }
        if t + h > 1.0 {
            h = 1.0 - t;
        }
        let mut k = [[Complex::new(0.0, 0.0); 4]; 7];
        k[0] = k1;
        for stage in 0..6 {
            let mut ys = *y;
            for (j, row) in A[stage].iter().enumerate().take(stage + 1) {
                if *row != 0.0 {
                    for m in 0..4 {
                        ys[m] += k[j][m] * (*row * h);
                    }
                }
            }
            k[stage + 1] = rhs(theta, piece, t + C[stage] * h, &ys)?;
        }
        // The 5th-order value uses the last A row; k[6] is its derivative
        // (FSAL).
        let mut y5 = *y;
        for (j, w) in A[5].iter().enumerate() {
            if *w != 0.0 {
                for m in 0..4 {
                    y5[m] += k[j][m] * (*w * h);
                }
            }
        }
        let mut err_norm = 0.0f64;
        for m in 0..4 {
            let mut e = Complex::new(0.0, 0.0);
            for (j, w) in E.iter().enumerate() {
                if *w != 0.0 {
                    e += k[j][m] * *w;
                }
            }
            let scale = tol + tol * y[m].norm().max(y5[m].norm());
            err_norm = err_norm.max((e * h).norm() / scale);
        }
        if err_norm <= 1.0 {
            t += h;
            *y = y5;
            k1 = k[6];
            steps += 1;
        }
        let factor = if err_norm > 0.0 {
            (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
    }
    Ok(steps)
}

/// Transport the fundamental system along a piecewise path starting from the
/// identity. Returns the transport matrix and the accepted step count.
pub fn transport(theta: &[f64; 3], pieces: &[PathPiece], tol: f64) -> Result<(Mat2, usize)> {
    validate_clearance(pieces, CLEARANCE)?;
    let mut y: State = [
        Complex::new(1.0, 0.0),
        Complex::new(0.0, 0.0),
        Complex::new(0.0, 0.0),
        Complex::new(1.0, 0.0),
    ];
    let mut steps = 0;
    for piece in pieces {
        steps += integrate_piece(theta, piece, tol, &mut y)?;
    }
    Ok((
        Mat2 {
            a: y[0],
            b: y[1],
            c: y[2],
            d: y[3],
        },
        steps,
    ))
}

/// Monodromy matrices around 0, 1 and ∞, with quality measures.
#[derive(Clone, Debug)]
pub struct MonodromyResult {
    pub m0: Mat2,
    pub m1: Mat2,
    pub m_inf: Mat2,
    /// Largest |det − 1| among the transported matrices.
    pub wronskian_drift: f64,
    /// |tr² M∞ − tr²| of an independently integrated large outer circle.
    pub outer_tr2_gap: f64,
    /// Total accepted integrator steps.
    pub steps: usize,
}

/// Integrate the monodromy representation at the given exponent parameters.
pub fn integrate_monodromy(theta: &[f64; 3], tol: f64) -> Result<MonodromyResult> {
    let (m0, s0) = transport(theta, &loop_around_zero(LOOP_RADIUS), tol)?;
    let (m1, s1) = transport(theta, &loop_around_one(LOOP_RADIUS), tol)?;
    let m_inf = m0.mul(&m1).inverse()?;
    let (outer, s2) = transport(theta, &outer_loop(), tol)?;
    let one = Complex::new(1.0, 0.0);
    let wronskian_drift = [
        (m0.det() - one).norm(),
        (m1.det() - one).norm(),
        (outer.det() - one).norm(),
    ]
    .into_iter()
    .fold(0.0f64, f64::max);
    let outer_tr2_gap = (m_inf.tr2() - outer.tr2()).norm();
    Ok(MonodromyResult {
        m0,
        m1,
        m_inf,
        wronskian_drift,
        outer_tr2_gap,
        steps: s0 + s1 + s2,
    })
}

/// Traces of the three peripheral monodromies (around 0, 1, ∞).
pub fn peripheral_traces(theta: &[f64; 3], tol: f64) -> Result<[Complex; 3]> {
    let r = integrate_monodromy(theta, tol)?;
    Ok([r.m0.trace(), r.m1.trace(), r.m_inf.trace()])
}

/// Compare the analytic monodromy of the differential having the immersion's
/// exponents against the holonomy of its circle configuration: returns the
/// largest |tr² Mᵢ − tr² ρᵢ| over the three slots.
pub fn cross_check_atomic(realized: &RealizedImmersion, tol: f64) -> Result<f64> {
    let theta: [f64; 3] = std::array::from_fn(|i| realized.atomic.angles[i].radians() / PI);
    let result = integrate_monodromy(&theta, tol)?;
    let triple = to_elliptic_triple(&realized.configuration)?;
    let mut worst = 0.0f64;
    for (m, gen) in [result.m0, result.m1, result.m_inf]
        .iter()
        .zip(&triple.gens)
    {
        let rho_tr2 = gen.tr2();
        worst = worst.max((m.tr2() - rho_tr2).norm());
    }
    Ok(worst)
}
