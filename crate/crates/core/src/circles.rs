//! Circles on the Riemann sphere as Hermitian forms.
//!
//! A circle is the zero set of ζ*Hζ with H = [[A, B], [B̄, C]], A and C real.
//! In the affine chart (lift (z, 1)) the equation reads
//! A·|z|² + 2·Re(B·z̄) + C = 0, so lines are exactly the circles with A = 0.
//! Stored forms are normalized to |B|² − AC = 1; the remaining global sign is
//! kept and orients the circle: the interior is the side where the form is
//! negative.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mobius::{Complex, MobiusMap, RiemannPoint};
use crate::tolerance::epsilon;

const ZERO: Complex = Complex64::new(0.0, 0.0);

/// An oriented circle (or line) on CP¹, normalized to |B|² − AC = 1.
#[derive(Clone, Copy, Debug)]
pub struct Circle {
    pub a: f64,
    pub b: Complex,
    pub c: f64,
}

/// Orientation-reversing Möbius map: z ↦ L(z̄) with det L = −1.
/// Reflections in circles are the involutive ones.
#[derive(Clone, Copy, Debug)]
pub struct AntiMobiusMap {
    pub la: Complex,
    pub lb: Complex,
    pub lc: Complex,
    pub ld: Complex,
}

impl Circle {
    /// Build from Hermitian data and normalize. Fails unless |B|² − AC > 0
    /// (otherwise the zero set is a point or empty).
    pub fn new(a: f64, b: Complex, c: f64) -> Result<Self> {
        let disc = b.norm_sqr() - a * c;
        let scale = a.abs().max(b.norm()).max(c.abs());
        if !(disc.is_finite() && scale > 0.0) || disc <= (epsilon() * scale).powi(2) {
            return Err(Error::NoCircle(format!(
                "form has non-positive discriminant {disc:.3e}"
            )));
        }
        let s = disc.sqrt();
        Ok(Circle {
            a: a / s,
            b: b / s,
            c: c / s,
        })
    }

    /// The unit circle, oriented with the disk as interior.
    pub fn unit() -> Self {
        Circle {
            a: 1.0,
            b: ZERO,
            c: -1.0,
        }
    }

    /// The real axis, oriented with the lower half-plane as interior.
    pub fn real_axis() -> Self {
        Circle {
            a: 0.0,
            b: Complex64::new(0.0, 1.0),
            c: 0.0,
        }
    }

    /// Euclidean circle with given center and radius.
    pub fn from_center_radius(center: Complex, radius: f64) -> Result<Self> {
        // |z - m|² = r²  ⟺  |z|² - 2Re(m z̄) + |m|² - r² = 0, so B = -m.
        Circle::new(1.0, -center, center.norm_sqr() - radius * radius)
    }

    /// Is this a line (passes through ∞)?
    pub fn is_line(&self) -> bool {
        self.a.abs() <= epsilon()
    }

    /// Center and radius, for genuine circles.
    pub fn center_radius(&self) -> Option<(Complex, f64)> {
        if self.is_line() {
            None
        } else {
            Some((-self.b / self.a, 1.0 / self.a.abs()))
        }
    }

    /// The Hermitian form evaluated on the canonical lift of p.
    pub fn value(&self, p: &RiemannPoint) -> f64 {
        let (l0, l1) = p.lift();
        self.a * l0.norm_sqr() + 2.0 * (self.b * l0.conj() * l1).re + self.c * l1.norm_sqr()
    }

    /// Scale of the form's entries; calibrates on-circle thresholds.
    fn entry_scale(&self) -> f64 {
        self.a.abs() + 2.0 * self.b.norm() + self.c.abs()
    }

    /// Signed side: −1 interior, 0 on the circle (within tolerance), +1
    /// exterior.
    pub fn side_of(&self, p: &RiemannPoint) -> i8 {
        let v = self.value(p);
        if v.abs() <= epsilon() * self.entry_scale() {
            0
        } else if v < 0.0 {
            -1
        } else {
            1
        }
    }

    pub fn contains(&self, p: &RiemannPoint) -> bool {
        self.side_of(p) == 0
    }

    /// Residual of p against the circle, normalized by the entry scale.
    pub fn residual(&self, p: &RiemannPoint) -> f64 {
        self.value(p).abs() / self.entry_scale()
    }

    /// The same circle with interior and exterior exchanged.
    pub fn reversed(&self) -> Self {
        Circle {
            a: -self.a,
            b: -self.b,
            c: -self.c,
        }
    }

    /// Reflection (inversion) in the circle, as an anti-Möbius involution.
    pub fn reflect(&self) -> AntiMobiusMap {
        // For H = [[A,B],[B̄,C]] normalized, z ↦ (−B z̄ − C)/(A z̄ + B̄) fixes
        // the circle pointwise; the matrix has determinant −(|B|²−AC) = −1,
        // which makes J∘J = I exact.
        AntiMobiusMap {
            la: -self.b,
            lb: Complex64::new(-self.c, 0.0),
            lc: Complex64::new(self.a, 0.0),
            ld: self.b.conj(),
        }
    }

    /// Projective distance between two circles as forms: entries compared up
    /// to the global sign.
    pub fn form_distance(&self, other: &Self) -> f64 {
        let d = |s: f64| {
            (self.a - s * other.a)
                .abs()
                .max((self.b - s * other.b).norm())
                .max((self.c - s * other.c).abs())
        };
        d(1.0).min(d(-1.0))
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.form_distance(other) <= epsilon()
    }

    /// Inversive product ⟨H₁,H₂⟩ = B₁B̄₂ + B̄₁B₂ − A₁C₂ − A₂C₁. Normalized
    /// circles are orthogonal iff it vanishes; ⟨H,H⟩ = 2.
    pub fn inversive_product(&self, other: &Self) -> f64 {
        // Grouped so the value is exactly symmetric in the two circles.
        2.0 * (self.b * other.b.conj()).re - (self.a * other.c + other.a * self.c)
    }
}

impl AntiMobiusMap {
    pub fn apply(&self, p: &RiemannPoint) -> RiemannPoint {
        let (l0, l1) = p.conj().lift();
        RiemannPoint::new(self.la * l0 + self.lb * l1, self.lc * l0 + self.ld * l1)
            .expect("reflection maps points to points")
    }

    /// The Möbius map self ∘ other (apply `other` first). The product of two
    /// reflections is orientation-preserving.
    pub fn compose_anti(&self, other: &Self) -> MobiusMap {
        // self(other(z)) = L_self · conj(L_other) · z on lifts.
        let (a1, b1, c1, d1) = (
            other.la.conj(),
            other.lb.conj(),
            other.lc.conj(),
            other.ld.conj(),
        );
        MobiusMap::new(
            self.la * a1 + self.lb * c1,
            self.la * b1 + self.lb * d1,
            self.lc * a1 + self.ld * c1,
            self.lc * b1 + self.ld * d1,
        )
        .expect("product of reflections is invertible")
    }
}

/// The circle through three distinct points.
///
/// Solves the 3×4 homogeneous linear system for (A, Re B, Im B, C) by Gaussian
/// elimination and fixes the sign so the largest-magnitude coefficient is
/// positive.
pub fn circle_through(p1: &RiemannPoint, p2: &RiemannPoint, p3: &RiemannPoint) -> Result<Circle> {
    if p1.approx_eq(p2) || p1.approx_eq(p3) || p2.approx_eq(p3) {
        return Err(Error::CoincidentPoints);
    }
    let mut rows = [[0.0f64; 4]; 3];
    for (row, p) in rows.iter_mut().zip([p1, p2, p3]) {
        let (l0, l1) = p.lift();
        let w = l0.conj() * l1;
        *row = [l0.norm_sqr(), 2.0 * w.re, -2.0 * w.im, l1.norm_sqr()];
    }
    let v = nullspace_3x4(rows)
        .ok_or_else(|| Error::NoCircle("points impose dependent conditions".into()))?;
    // Deterministic sign: largest-|.| component positive.
    let mut vmax = 0.0;
    let mut sign = 1.0;
    for x in v {
        if x.abs() > vmax {
            vmax = x.abs();
            sign = if x >= 0.0 { 1.0 } else { -1.0 };
        }
    }
    let circle = Circle::new(
        sign * v[0],
        Complex64::new(sign * v[1], sign * v[2]),
        sign * v[3],
    )?;
    debug_assert!(circle.residual(p1) < 1e-6);
    Ok(circle)
}

/// One unit-norm kernel vector of a 3×4 real matrix (partial pivoting).
pub(crate) fn nullspace_3x4(mut m: [[f64; 4]; 3]) -> Option<[f64; 4]> {
    let mut pivot_cols = [usize::MAX; 3];
    let mut r = 0;
    for col in 0..4 {
        if r == 3 {
            break;
        }
        let (best, bestval) = (r..3)
            .map(|i| (i, m[i][col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))?;
        if bestval <= 1e-13 {
            continue;
        }
        m.swap(r, best);
        let p = m[r][col];
        for x in &mut m[r] {
            *x /= p;
        }
        let pivot_row = m[r];
        for (i, row) in m.iter_mut().enumerate() {
            if i != r {
                let f = row[col];
                for (x, p) in row.iter_mut().zip(pivot_row) {
                    *x -= f * p;
                }
            }
        }
        pivot_cols[r] = col;
        r += 1;
    }
    if r < 3 {
        return None; // rank-deficient: no unique circle
    }
    let free = (0..4).find(|c| !pivot_cols.contains(c))?;
    let mut v = [0.0; 4];
    v[free] = 1.0;
    for (row, &pc) in pivot_cols.iter().enumerate() {
        v[pc] = -m[row][free];
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut v {
        *x /= norm;
    }
    Some(v)
}

/// Intersection of two distinct circles: two points, one (tangency), or none
/// (disjoint). The point at ∞ is reported when both circles are lines.
pub fn intersect(c1: &Circle, c2: &Circle) -> Result<Vec<RiemannPoint>> {
    if c1.approx_eq(c2) {
        return Err(Error::EqualCircles);
    }
    let eps = epsilon();
    match (c1.is_line(), c2.is_line()) {
        (true, true) => {
            // Both pass through ∞. Parallel lines are tangent there.
            let cross = (c1.b.conj() * c2.b).im;
            if cross.abs() <= eps {
                return Ok(vec![RiemannPoint::infinity()]);
            }
            // Solve 2Re(b1 z̄) + c1 = 0, 2Re(b2 z̄) + c2 = 0 for z = x+iy:
            // 2(Re b · x + Im b · y) = -c.
            let (a11, a12, r1) = (2.0 * c1.b.re, 2.0 * c1.b.im, -c1.c);
            let (a21, a22, r2) = (2.0 * c2.b.re, 2.0 * c2.b.im, -c2.c);
            let det = a11 * a22 - a12 * a21;
            let x = (r1 * a22 - r2 * a12) / det;
            let y = (a11 * r2 - a21 * r1) / det;
            Ok(vec![
                RiemannPoint::from_complex(Complex64::new(x, y)),
                RiemannPoint::infinity(),
            ])
        }
        (true, false) => line_circle_points(c1, c2),
        (false, true) => line_circle_points(c2, c1),
        (false, false) => {
            // Radical line: a2·eq1 − a1·eq2 eliminates |z|².
            let b = c2.a * c1.b - c1.a * c2.b;
            let c = c2.a * c1.c - c1.a * c2.c;
            if b.norm() <= eps {
                // Concentric: distinct circles never meet.
                return Ok(vec![]);
            }
            let line = Circle::new(0.0, b, c)?;
            line_circle_points(&line, c1)
        }
    }
}

/// Finite intersection points of a line with a genuine circle.
fn line_circle_points(line: &Circle, circle: &Circle) -> Result<Vec<RiemannPoint>> {
    debug_assert!(line.is_line() && !circle.is_line());
    // Parametrize the line: z = z0 + t·d with unit tangent d = i·B/|B|.
    let bnorm = line.b.norm();
    let z0 = -line.c / (2.0 * bnorm * bnorm) * line.b;
    // value(z0) = 2Re(B z̄0) + C: check z0 really sits on the line.
    debug_assert!(line.residual(&RiemannPoint::from_complex(z0)) < 1e-9);
    let d = Complex64::new(0.0, 1.0) * line.b / bnorm;
    let (a, b0, c0) = (circle.a, circle.b, circle.c);
    // f(t) = a·t² + βt + γ on the line.
    let beta = 2.0 * a * (z0.conj() * d).re + 2.0 * (b0 * d.conj()).re;
    let gamma = a * z0.norm_sqr() + 2.0 * (b0 * z0.conj()).re + c0;
    let disc = beta * beta - 4.0 * a * gamma;
    let tol = epsilon() * (1.0 + beta * beta + (4.0 * a * gamma).abs());
    if disc < -tol {
        return Ok(vec![]);
    }
    if disc <= tol {
        let t = -beta / (2.0 * a);
        return Ok(vec![RiemannPoint::from_complex(z0 + t * d)]);
    }
    // Stable quadratic roots.
    let q = -0.5 * (beta + beta.signum() * disc.sqrt());
    let (t1, t2) = if beta == 0.0 {
        let r = (disc.sqrt()) / (2.0 * a);
        (r, -r)
    } else {
        (q / a, gamma / q)
    };
    Ok(vec![
        RiemannPoint::from_complex(z0 + t1 * d),
        RiemannPoint::from_complex(z0 + t2 * d),
    ])
}

/// Anticlockwise angle from c1 to c2 at a common point x, in (0, π).
///
/// x is moved to 0 and the circles' second intersection to ∞ by a Möbius map;
/// both circles become lines through the origin and the angle is read off
/// their directions. Tangent circles (no second point) are rejected.
pub fn angle_at(c1: &Circle, c2: &Circle, x: &RiemannPoint) -> Result<f64> {
    let r1 = c1.residual(x);
    let r2 = c2.residual(x);
    if r1.max(r2) > epsilon() {
        return Err(Error::PointNotOnCircles(r1.max(r2)));
    }
    let points = intersect(c1, c2)?;
    let other = points
        .iter()
        .find(|p| !p.approx_eq(x))
        .ok_or(Error::TangentCircles)?;
    let m = MobiusMap::pair_normalizer(x, other)?;
    let l1 = transform_circle(&m, c1);
    let l2 = transform_circle(&m, c2);
    // Lines through 0 and ∞ have A ≈ 0 ≈ C; the tangent direction is
    // perpendicular to B, i.e. φ = arg B + π/2 (mod π), so the anticlockwise
    // angle from the first line to the second is the difference of the args.
    let delta = (l2.b.arg() - l1.b.arg()).rem_euclid(std::f64::consts::PI);
    if delta <= epsilon() || delta >= std::f64::consts::PI - epsilon() {
        return Err(Error::TangentCircles);
    }
    Ok(delta)
}

/// Image of a circle under a Möbius map: H ↦ (M⁻¹)* H (M⁻¹), renormalized.
pub fn transform_circle(m: &MobiusMap, circle: &Circle) -> Circle {
    let n = m.inverse();
    // Columns of N act on lifts; H' = N* H N with H = [[A, B], [B̄, C]].
    let a = Complex64::new(circle.a, 0.0);
    let c = Complex64::new(circle.c, 0.0);
    let b = circle.b;
    let bc = b.conj();
    // First compute K = H·N, then H' = N*·K.
    let k00 = a * n.a + b * n.c;
    let k01 = a * n.b + b * n.d;
    let k10 = bc * n.a + c * n.c;
    let k11 = bc * n.b + c * n.d;
    let h00 = n.a.conj() * k00 + n.c.conj() * k10;
    let h01 = n.a.conj() * k01 + n.c.conj() * k11;
    let h11 = n.b.conj() * k01 + n.d.conj() * k11;
    debug_assert!(h00.im.abs() < 1e-9 && h11.im.abs() < 1e-9);
    Circle::new(h00.re, h01, h11.re).expect("Möbius images of circles are circles")
}
