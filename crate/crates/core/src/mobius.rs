//! Points of the Riemann sphere and Möbius transformations.
//!
//! Points are kept in homogeneous coordinates so that ∞ needs no special
//! cases. Maps are stored as 2×2 complex matrices normalized to determinant 1;
//! equality and distances are understood projectively (up to a global sign).

use std::f64::consts::TAU;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::epsilon;

pub type Complex = Complex64;

const ONE: Complex = Complex::new(1.0, 0.0);
const ZERO: Complex = Complex::new(0.0, 0.0);

/// A point of CP¹ in homogeneous coordinates [l0 : l1], canonically scaled so
/// the larger-modulus coordinate is 1.
#[derive(Clone, Copy, Debug)]
pub struct RiemannPoint {
    l0: Complex,
    l1: Complex,
}

impl RiemannPoint {
    /// Point [l0 : l1]. Fails on the zero vector.
    pub fn new(l0: Complex, l1: Complex) -> Result<Self> {
        let n0 = l0.norm();
        let n1 = l1.norm();
        if n0 == 0.0 && n1 == 0.0 || !n0.is_finite() || !n1.is_finite() {
            return Err(Error::ZeroLift);
        }
        // Scale the larger coordinate to exactly 1; the other then has
        // modulus at most 1 and every later comparison is well conditioned.
        let (l0, l1) = if n0 >= n1 {
            (ONE, l1 / l0)
        } else {
            (l0 / l1, ONE)
        };
        Ok(RiemannPoint { l0, l1 })
    }

    pub fn from_complex(z: Complex) -> Self {
        RiemannPoint::new(z, ONE).expect("finite complex number is a point")
    }

    pub fn infinity() -> Self {
        RiemannPoint { l0: ONE, l1: ZERO }
    }

    pub fn zero() -> Self {
        RiemannPoint { l0: ZERO, l1: ONE }
    }

    pub fn lift(&self) -> (Complex, Complex) {
        (self.l0, self.l1)
    }

    /// Is this the point at infinity (up to tolerance)?
    pub fn is_infinity(&self) -> bool {
        self.l1.norm() <= epsilon() * self.l0.norm()
    }

    /// Affine coordinate, if finite.
    pub fn to_complex(&self) -> Option<Complex> {
        if self.is_infinity() {
            None
        } else {
            Some(self.l0 / self.l1)
        }
    }

    /// Coordinate-wise complex conjugate point (the image under z ↦ z̄).
    pub fn conj(&self) -> Self {
        RiemannPoint {
            l0: self.l0.conj(),
            l1: self.l1.conj(),
        }
    }

    /// Projective equality within the global tolerance: |l0·m1 − l1·m0| small
    /// relative to the lift scales (which are ~1 after normalization).
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.cross_norm(other) <= epsilon()
    }

    /// |l0·m1 − l1·m0| for canonical lifts; zero iff the points coincide.
    pub fn cross_norm(&self, other: &Self) -> f64 {
        (self.l0 * other.l1 - self.l1 * other.l0).norm()
    }
}

/// Elliptic / parabolic / loxodromic trichotomy (plus the identity).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapClass {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

/// A Möbius transformation, stored as an SL(2,C) matrix [[a, b], [c, d]]
/// (determinant exactly normalized to 1 at construction). The matrix is one
/// of the two lifts of the projective map; all comparisons account for ±.
#[derive(Clone, Copy, Debug)]
pub struct MobiusMap {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
}

impl MobiusMap {
    /// Build from matrix entries, normalizing the determinant to 1.
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Result<Self> {
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if !det.is_finite() || scale == 0.0 || det.norm() <= (epsilon() * scale).powi(2) {
            return Err(Error::SingularMatrix(det.norm()));
        }
        let s = det.sqrt();
        Ok(MobiusMap {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    pub fn identity() -> Self {
        MobiusMap {
            a: ONE,
            b: ZERO,
            c: ZERO,
            d: ONE,
        }
    }

    /// z ↦ az + b (a ≠ 0) as a Möbius map.
    pub fn affine(a: Complex, b: Complex) -> Result<Self> {
        MobiusMap::new(a, b, ZERO, ONE)
    }

    /// The map sending p ↦ 0 and q ↦ ∞ (a homogeneous form of
    /// z ↦ (z − p)/(z − q)). Fails if p ≈ q.
    pub fn pair_normalizer(p: &RiemannPoint, q: &RiemannPoint) -> Result<Self> {
        if p.approx_eq(q) {
            return Err(Error::CoincidentPoints);
        }
        let (x0, x1) = p.lift();
        let (y0, y1) = q.lift();
        MobiusMap::new(x1, -x0, y1, -y0)
    }

    /// The map sending (p1, p2, p3) to (0, 1, ∞). Fails if any two coincide.
    pub fn normalize_triple(
        p1: &RiemannPoint,
        p2: &RiemannPoint,
        p3: &RiemannPoint,
    ) -> Result<Self> {
        let br = |u: &RiemannPoint, v: &RiemannPoint| {
            let (u0, u1) = u.lift();
            let (v0, v1) = v.lift();
            u0 * v1 - u1 * v0
        };
        let k23 = br(p2, p3);
        let k21 = br(p2, p1);
        let k13 = br(p1, p3);
        let scale = epsilon();
        if k23.norm() <= scale || k21.norm() <= scale || k13.norm() <= scale {
            return Err(Error::CoincidentPoints);
        }
        let (x1, y1) = p1.lift();
        let (x3, y3) = p3.lift();
        MobiusMap::new(y1 * k23, -x1 * k23, y3 * k21, -x3 * k21)
    }

    pub fn inverse(&self) -> Self {
        // For det = 1 the inverse is the adjugate.
        MobiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn apply(&self, p: &RiemannPoint) -> RiemannPoint {
        let (l0, l1) = p.lift();
        RiemannPoint::new(self.a * l0 + self.b * l1, self.c * l0 + self.d * l1)
            .expect("nonsingular matrix maps points to points")
    }

    pub fn trace(&self) -> Complex {
        self.a + self.d
    }

    /// tr², the basic conjugation invariant (lift-sign independent).
    pub fn tr2(&self) -> Complex {
        let t = self.trace();
        t * t
    }

    /// Distance to another map in PSL(2,C): the smaller of the entrywise
    /// max-norm distances over the two sign choices of the other lift.
    pub fn psl_distance(&self, other: &Self) -> f64 {
        let d = |sign: f64| {
            (self.a - other.a * sign)
                .norm()
                .max((self.b - other.b * sign).norm())
                .max((self.c - other.c * sign).norm())
                .max((self.d - other.d * sign).norm())
        };
        d(1.0).min(d(-1.0))
    }

    /// Projective equality within the global tolerance.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.psl_distance(other) <= epsilon()
    }

    pub fn is_identity(&self) -> bool {
        self.psl_distance(&MobiusMap::identity()) <= epsilon()
    }

    /// Identity / parabolic / elliptic / loxodromic, decided from tr².
    pub fn classify(&self) -> MapClass {
        if self.is_identity() {
            return MapClass::Identity;
        }
        let t2 = self.tr2();
        let eps = epsilon();
        if (t2 - 4.0).norm() <= eps {
            MapClass::Parabolic
        } else if t2.im.abs() <= eps && t2.re < 4.0 - eps {
            MapClass::Elliptic
        } else {
            MapClass::Loxodromic
        }
    }

    /// Fixed points: two for elliptic/loxodromic, one for parabolic.
    /// Errors with `IdentityInput` on the identity.
    ///
    /// Computed as eigenvectors of the matrix, so ∞ is not special.
    pub fn fixed_points(&self) -> Result<Vec<RiemannPoint>> {
        if self.is_identity() {
            return Err(Error::IdentityInput);
        }
        let t = self.trace();
        let disc = t * t - 4.0;
        if disc.norm() <= epsilon() {
            // Parabolic: single eigenvalue t/2.
            let lambda = t / 2.0;
            return Ok(vec![self.eigenvector(lambda)?]);
        }
        let s = disc.sqrt();
        let l1 = (t + s) / 2.0;
        let l2 = (t - s) / 2.0;
        Ok(vec![self.eigenvector(l1)?, self.eigenvector(l2)?])
    }

    fn eigenvector(&self, lambda: Complex) -> Result<RiemannPoint> {
        // Kernel of M − λI: both rows give a candidate; take the larger.
        let v1 = (self.b, lambda - self.a);
        let v2 = (lambda - self.d, self.c);
        let n1 = v1.0.norm().max(v1.1.norm());
        let n2 = v2.0.norm().max(v2.1.norm());
        let (x, y) = if n1 >= n2 { v1 } else { v2 };
        RiemannPoint::new(x, y)
    }

    /// Anticlockwise rotation angle of an elliptic map at the given fixed
    /// point, in (0, 2π).
    ///
    /// The map is conjugated so the chosen point sits at 0 and the other
    /// fixed point at ∞; the conjugated matrix is diagonal diag(λ, 1/λ) and
    /// the rotation is arg(λ²) folded into (0, 2π).
    pub fn rotation_angle(&self, at: &RiemannPoint) -> Result<f64> {
        match self.classify() {
            MapClass::Elliptic => {}
            other => return Err(Error::NotElliptic(format!("{other:?}"))),
        }
        let image = self.apply(at);
        if !image.approx_eq(at) {
            return Err(Error::NotFixedPoint(image.cross_norm(at)));
        }
        let fixed = self.fixed_points()?;
        let other = fixed
            .iter()
            .find(|f| !f.approx_eq(at))
            .ok_or_else(|| Error::NotElliptic("fixed points collapsed".into()))?;
        let g = MobiusMap::pair_normalizer(at, other)?;
        let n = g.compose(self).compose(&g.inverse());
        // n ≈ diag(λ, 1/λ); λ² = n.a/n.d is sign-of-lift independent.
        let lambda2 = n.a / n.d;
        let theta = lambda2.arg();
        Ok(if theta > 0.0 { theta } else { theta + TAU })
    }

    /// The unordered pair {θ, 2π−θ} of rotation angles of an elliptic map at
    /// its two fixed points, computed from |tr| alone. Returned with the
    /// smaller angle first.
    pub fn rotation_invariant(&self) -> Result<(f64, f64)> {
        match self.classify() {
            MapClass::Elliptic => {}
            other => return Err(Error::NotElliptic(format!("{other:?}"))),
        }
        let t2 = self.tr2().re.max(0.0);
        // |tr| = 2|cos(θ/2)| with θ the rotation angle at either fixed point.
        let half = (t2.sqrt() / 2.0).clamp(0.0, 1.0).acos();
        let theta = 2.0 * half;
        Ok((theta.min(TAU - theta), theta.max(TAU - theta)))
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        MobiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }
}

impl Mul for MobiusMap {
    type Output = MobiusMap;
    /// Composition: (f * g)(z) = f(g(z)).
    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}

/// Distance between two rotation angles as points of R/2πZ.
pub fn circle_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Fold a value into (0, 2π] ∩ useful range; helper for angle asserts.
pub fn mod_tau(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r == 0.0 {
        TAU
    } else {
        r
    }
}

/// A rotation by θ around p (fixing p and q). Used by tests and generators.
pub fn elliptic_about(p: &RiemannPoint, q: &RiemannPoint, theta: f64) -> Result<MobiusMap> {
    let g = MobiusMap::pair_normalizer(p, q)?;
    let half = theta / 2.0;
    let rot = MobiusMap::new(
        Complex::from_polar(1.0, half),
        ZERO,
        ZERO,
        Complex::from_polar(1.0, -half),
    )?;
    Ok(g.inverse().compose(&rot).compose(&g))
}
