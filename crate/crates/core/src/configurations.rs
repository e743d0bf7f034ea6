//! Triples of circles in general position and their elliptic map triples.
//!
//! A configuration is three circles, every two of which cross transversally.
//! Its kind is decided by incidence: all three pairwise intersections share a
//! point (Euclidean), or the six intersection points are separated by each
//! circle (spherical), or not (hyperbolic, in which case a common orthogonal
//! circle exists). Composing reflections in the circles gives a triple of
//! elliptic maps with product exactly the identity; the correspondence is
//! two-way.

use num_complex::Complex64;

use crate::circles::{angle_at, circle_through, intersect, Circle};
use crate::error::{Error, Result};
use crate::mobius::{circle_distance, MapClass, MobiusMap, RiemannPoint};
use crate::tolerance::epsilon;

/// Geometry kind of a configuration (and of the triangles it carries).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Euclidean,
    Spherical,
    Hyperbolic,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kind::Euclidean => write!(f, "euclidean"),
            Kind::Spherical => write!(f, "spherical"),
            Kind::Hyperbolic => write!(f, "hyperbolic"),
        }
    }
}

/// Circle index pairs, in the fixed order (1,2), (1,3), (2,3).
pub const PAIR_CIRCLES: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// For generator i of an elliptic triple, the index of the intersection pair
/// carrying its fixed points: gen 0 ↔ circles (1,3), gen 1 ↔ (1,2),
/// gen 2 ↔ (2,3).
pub const GEN_PAIR: [usize; 3] = [1, 0, 2];

/// For generator i, the (first-applied, second-applied) reflection circles:
/// gen 0 = J₃J₁, gen 1 = J₁J₂, gen 2 = J₂J₃.
pub const GEN_CIRCLES: [(usize, usize); 3] = [(0, 2), (1, 0), (2, 1)];

/// Three circles in general position with their intersection pairs and kind.
#[derive(Clone, Debug)]
pub struct CircleConfiguration {
    pub circles: [Circle; 3],
    /// pairs[k] = the two intersection points of the PAIR_CIRCLES[k] circles.
    pub pairs: [[RiemannPoint; 2]; 3],
    pub kind: Kind,
    /// The point shared by all three pairs, in the Euclidean case.
    pub common: Option<RiemannPoint>,
}

/// Build a configuration from three circles, classifying its kind.
pub fn build_configuration(c1: Circle, c2: Circle, c3: Circle) -> Result<CircleConfiguration> {
    let circles = [c1, c2, c3];
    for (i, j) in PAIR_CIRCLES {
        if circles[i].approx_eq(&circles[j]) {
            return Err(Error::EqualCircles);
        }
    }
    let mut pairs = [[RiemannPoint::zero(); 2]; 3];
    for (k, (i, j)) in PAIR_CIRCLES.into_iter().enumerate() {
        let pts = intersect(&circles[i], &circles[j])?;
        match pts.len() {
            2 => {
                pairs[k] = [pts[0], pts[1]];
            }
            n => {
                return Err(Error::DegenerateConfiguration(format!(
                    "circles {} and {} meet in {} point(s)",
                    i + 1,
                    j + 1,
                    n
                )))
            }
        }
    }
    // A point of the first pair lying on the third circle is common to all
    // three pairs (it then lies on all three circles).
    let common = pairs[0].iter().find(|p| circles[2].contains(p)).copied();
    if let Some(y) = common {
        // The three remaining points must be distinct, otherwise two circles
        // share both intersection points and the triple is a pencil.
        let others: Vec<RiemannPoint> = pairs
            .iter()
            .map(|pair| {
                *pair
                    .iter()
                    .find(|p| !p.approx_eq(&y))
                    .expect("transversal pair has a second point")
            })
            .collect();
        for i in 0..3 {
            for j in (i + 1)..3 {
                if others[i].approx_eq(&others[j]) {
                    return Err(Error::DegenerateConfiguration(
                        "circles lie in a pencil".into(),
                    ));
                }
            }
        }
        return Ok(CircleConfiguration {
            circles,
            pairs,
            kind: Kind::Euclidean,
            common,
        });
    }
    // No common point: spherical iff each circle separates the opposite
    // intersection pair. The three tests agree for transversal triples, so
    // one decides.
    let kind = match separation_sign(&circles, &pairs, 0) {
        0 => {
            return Err(Error::DegenerateConfiguration(
                "intersection point on the opposite circle".into(),
            ))
        }
        s if s < 0 => Kind::Spherical,
        _ => Kind::Hyperbolic,
    };
    debug_assert_eq!(
        separation_sign(&circles, &pairs, 0),
        separation_sign(&circles, &pairs, 1)
    );
    debug_assert_eq!(
        separation_sign(&circles, &pairs, 0),
        separation_sign(&circles, &pairs, 2)
    );
    Ok(CircleConfiguration {
        circles,
        pairs,
        kind,
        common: None,
    })
}

/// Sign of side(cᵢ, x)·side(cᵢ, y) where {x, y} is the intersection pair of
/// the other two circles: −1 when cᵢ separates the pair.
fn separation_sign(circles: &[Circle; 3], pairs: &[[RiemannPoint; 2]; 3], i: usize) -> i8 {
    // Pair opposite to circle i: the pair of the other two circles.
    let opposite = [2, 1, 0][i];
    let [x, y] = &pairs[opposite];
    circles[i].side_of(x) * circles[i].side_of(y)
}

impl CircleConfiguration {
    /// The intersection pair of circles (i, j), i < j in PAIR_CIRCLES order.
    pub fn pair(&self, i: usize, j: usize) -> &[RiemannPoint; 2] {
        let k = PAIR_CIRCLES
            .iter()
            .position(|&p| p == (i, j) || p == (j, i))
            .expect("valid circle pair");
        &self.pairs[k]
    }

    /// All six intersection points, pair by pair.
    pub fn points(&self) -> impl Iterator<Item = &RiemannPoint> {
        self.pairs.iter().flatten()
    }
}

/// The circle orthogonal to all three circles of a hyperbolic configuration.
pub fn dual_circle(cfg: &CircleConfiguration) -> Result<Circle> {
    if cfg.kind != Kind::Hyperbolic {
        return Err(Error::NotHyperbolic);
    }
    // ⟨H, Hᵢ⟩ = 0 is linear in H = (A, Re B, Im B, C):
    // 2(Re B·Re Bᵢ + Im B·Im Bᵢ) − A·Cᵢ − C·Aᵢ = 0.
    let mut rows = [[0.0f64; 4]; 3];
    for (row, circ) in rows.iter_mut().zip(&cfg.circles) {
        *row = [-circ.c, 2.0 * circ.b.re, 2.0 * circ.b.im, -circ.a];
    }
    let v = crate::circles::nullspace_3x4(rows).ok_or_else(|| {
        Error::DegenerateConfiguration("orthogonality system is rank-deficient".into())
    })?;
    let dual = Circle::new(v[0], Complex64::new(v[1], v[2]), v[3]).map_err(|_| {
        Error::DegenerateConfiguration("common orthogonal form is not a real circle".into())
    })?;
    debug_assert!(cfg
        .circles
        .iter()
        .all(|c| c.inversive_product(&dual).abs() < 1e-7));
    Ok(dual)
}

/// Three elliptic maps with product exactly the identity and no common fixed
/// pair. Generators are conventionally called A, B, C; their fixed points sit
/// on the intersection pairs (1,3), (1,2), (2,3) of the matching
/// configuration.
#[derive(Clone, Debug)]
pub struct EllipticTriple {
    pub gens: [MobiusMap; 3],
}

impl EllipticTriple {
    /// Validate: all elliptic, product ≈ identity in PSL(2,C), and the maps
    /// share at most one fixed point.
    pub fn new(a: MobiusMap, b: MobiusMap, c: MobiusMap) -> Result<Self> {
        for (name, m) in [("A", &a), ("B", &b), ("C", &c)] {
            match m.classify() {
                MapClass::Elliptic => {}
                other => {
                    return Err(Error::InvalidTriple(format!(
                        "generator {name} is {other:?}"
                    )))
                }
            }
        }
        let product = a.compose(&b).compose(&c);
        let dist = product.psl_distance(&MobiusMap::identity());
        if dist > 1e3 * epsilon() {
            return Err(Error::InvalidTriple(format!(
                "product differs from the identity by {dist:.3e}"
            )));
        }
        let fa = a.fixed_points()?;
        let fb = b.fixed_points()?;
        let fc = c.fixed_points()?;
        let shared = fa
            .iter()
            .filter(|p| fb.iter().any(|q| p.approx_eq(q)) && fc.iter().any(|q| p.approx_eq(q)))
            .count();
        if shared >= 2 {
            return Err(Error::DegenerateTriple(
                "generators share both fixed points".into(),
            ));
        }
        Ok(EllipticTriple { gens: [a, b, c] })
    }
}

/// Reflections in the configuration circles composed into the elliptic triple
/// (A, B, C) = (J₃J₁, J₁J₂, J₂J₃). The product telescopes, so A·B·C is the
/// identity up to floating error only.
pub fn to_elliptic_triple(cfg: &CircleConfiguration) -> Result<EllipticTriple> {
    let j: Vec<_> = cfg.circles.iter().map(|c| c.reflect()).collect();
    let a = j[2].compose_anti(&j[0]);
    let b = j[0].compose_anti(&j[1]);
    let c = j[1].compose_anti(&j[2]);
    EllipticTriple::new(a, b, c)
}

/// Rebuild the configuration from an elliptic triple: each circle passes
/// through the four fixed points of two generators (which are concircular for
/// a valid triple; this is checked numerically).
pub fn from_elliptic_triple(t: &EllipticTriple) -> Result<CircleConfiguration> {
    let fixed: Vec<Vec<RiemannPoint>> = t
        .gens
        .iter()
        .map(|g| g.fixed_points())
        .collect::<Result<_>>()?;
    // Circle order of the configuration: C₁ = circle(A,B), C₂ = circle(B,C),
    // C₃ = circle(A,C).
    let c1 = circle_of_fixed_pairs(&fixed[0], &fixed[1])?;
    let c2 = circle_of_fixed_pairs(&fixed[1], &fixed[2])?;
    let c3 = circle_of_fixed_pairs(&fixed[0], &fixed[2])?;
    build_configuration(c1, c2, c3)
}

fn circle_of_fixed_pairs(fa: &[RiemannPoint], fb: &[RiemannPoint]) -> Result<Circle> {
    let mut distinct: Vec<RiemannPoint> = Vec::with_capacity(4);
    for p in fa.iter().chain(fb) {
        if !distinct.iter().any(|q| q.approx_eq(p)) {
            distinct.push(*p);
        }
    }
    match distinct.len() {
        4 => {
            let circle = circle_through(&distinct[0], &distinct[1], &distinct[2])?;
            let r = circle.residual(&distinct[3]);
            if r > 1e3 * epsilon() {
                return Err(Error::DegenerateTriple(format!(
                    "fixed points are not concircular (residual {r:.3e})"
                )));
            }
            Ok(circle)
        }
        3 => circle_through(&distinct[0], &distinct[1], &distinct[2]),
        _ => Err(Error::DegenerateTriple(
            "generators share both fixed points".into(),
        )),
    }
}

/// Per-generator consistency data from [`verify_vertex_rotation`].
#[derive(Clone, Debug)]
pub struct GenCheck {
    /// The intersection point at which the rotation congruence holds best.
    pub point: RiemannPoint,
    /// |Rot(gen, point) − 2·angle| as a circle distance.
    pub rotation_residual: f64,
    /// PSL(2,C) distance between the generator and the reflection product.
    pub matrix_residual: f64,
    /// Both intersection points satisfy the congruence within tol.
    pub ambiguous: bool,
}

/// Check a triple against a configuration: fixed points must sit on the
/// matching intersection pairs, each generator must equal the corresponding
/// reflection product, and at the preferred point of each pair the rotation
/// angle must be twice the circle angle.
pub fn verify_vertex_rotation(
    t: &EllipticTriple,
    cfg: &CircleConfiguration,
    tol: f64,
) -> Result<[GenCheck; 3]> {
    let j: Vec<_> = cfg.circles.iter().map(|c| c.reflect()).collect();
    let mut out = Vec::with_capacity(3);
    for i in 0..3 {
        let gen = &t.gens[i];
        let pair = &cfg.pairs[GEN_PAIR[i]];
        let fixed = gen.fixed_points()?;
        let matched = fixed
            .iter()
            .all(|f| pair.iter().any(|p| f.cross_norm(p) <= 1e3 * epsilon()));
        if fixed.len() != 2 || !matched {
            return Err(Error::MismatchedInputs(format!(
                "fixed points of generator {} miss the intersection pair",
                ["A", "B", "C"][i]
            )));
        }
        let (from, to) = GEN_CIRCLES[i];
        let rebuilt = j[to].compose_anti(&j[from]);
        let matrix_residual = gen.psl_distance(&rebuilt);
        let mut best: Option<(RiemannPoint, f64)> = None;
        let mut within = 0;
        for p in pair {
            let rot = gen.rotation_angle(p)?;
            let ang = angle_at(&cfg.circles[from], &cfg.circles[to], p)?;
            let res = circle_distance(rot, 2.0 * ang);
            if res <= tol {
                within += 1;
            }
            if best.is_none_or(|(_, b)| res < b) {
                best = Some((*p, res));
            }
        }
        let (point, rotation_residual) = best.expect("two candidate points");
        out.push(GenCheck {
            point,
            rotation_residual,
            matrix_residual,
            ambiguous: within == 2,
        });
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

/// An elliptic triple together with a choice of one fixed point per
/// generator.
#[derive(Clone, Debug)]
pub struct FramedTriple {
    pub triple: EllipticTriple,
    pub framing: [RiemannPoint; 3],
}

impl FramedTriple {
    /// Validate: each framing point is fixed by its generator, and the three
    /// points do not all coincide.
    pub fn new(triple: EllipticTriple, framing: [RiemannPoint; 3]) -> Result<Self> {
        for (gen, p) in triple.gens.iter().zip(&framing) {
            let image = gen.apply(p);
            if !image.approx_eq(p) {
                return Err(Error::NotFixedPoint(image.cross_norm(p)));
            }
        }
        if framing[0].approx_eq(&framing[1]) && framing[1].approx_eq(&framing[2]) {
            return Err(Error::PathologicalFraming);
        }
        Ok(FramedTriple { triple, framing })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mobius::Complex;

    fn pt(re: f64, im: f64) -> RiemannPoint {
        RiemannPoint::from_complex(Complex::new(re, im))
    }

    fn imaginary_axis() -> Circle {
        circle_through(
            &RiemannPoint::zero(),
            &RiemannPoint::infinity(),
            &pt(0.0, 1.0),
        )
        .unwrap()
    }

    /// Real axis, unit circle, imaginary axis: the octahedral configuration.
    fn octahedral() -> CircleConfiguration {
        build_configuration(Circle::real_axis(), Circle::unit(), imaginary_axis()).unwrap()
    }

    #[test]
    fn octahedral_is_spherical() {
        let cfg = octahedral();
        assert_eq!(cfg.kind, Kind::Spherical);
        assert!(cfg.common.is_none());
        // Pair (1,3): real axis ∩ imaginary axis = {0, ∞}.
        let p13 = cfg.pair(0, 2);
        assert!(p13.iter().any(|p| p.approx_eq(&RiemannPoint::zero())));
        assert!(p13.iter().any(|p| p.is_infinity()));
        assert!(dual_circle(&cfg).is_err());
    }

    #[test]
    fn octahedral_triple_is_three_half_turns() {
        let cfg = octahedral();
        let t = to_elliptic_triple(&cfg).unwrap();
        for gen in &t.gens {
            assert_eq!(gen.classify(), MapClass::Elliptic);
            assert!(gen.tr2().norm() < 1e-12);
            let (t1, t2) = gen.rotation_invariant().unwrap();
            assert!((t1 - std::f64::consts::PI).abs() < 1e-12);
            assert!((t2 - std::f64::consts::PI).abs() < 1e-12);
        }
        let product = t.gens[0].compose(&t.gens[1]).compose(&t.gens[2]);
        assert!(product.psl_distance(&MobiusMap::identity()) < 1e-14);
    }

    #[test]
    fn concurrent_lines_and_circle_are_euclidean() {
        // Two lines through 0 and a circle through 0.
        let l1 = Circle::real_axis();
        let l2 = circle_through(
            &RiemannPoint::zero(),
            &RiemannPoint::infinity(),
            &pt(1.0, 2.0),
        )
        .unwrap();
        let c = circle_through(&RiemannPoint::zero(), &pt(2.0, 0.0), &pt(1.0, 1.0)).unwrap();
        let cfg = build_configuration(l1, l2, c).unwrap();
        assert_eq!(cfg.kind, Kind::Euclidean);
        let y = cfg.common.expect("common point");
        assert!(y.approx_eq(&RiemannPoint::zero()));
    }

    #[test]
    fn hyperbolic_triangle_has_unit_dual() {
        // Side circles of a hyperbolic (π/4, π/4, π/4) triangle in the disk.
        let a = std::f64::consts::FRAC_PI_4;
        let cosh_d = (a.cos() * a.cos() + a.cos()) / (a.sin() * a.sin());
        let d = cosh_d.acosh();
        let r = (d / 2.0).tanh();
        let p2 = Complex::new(r, 0.0);
        let p3 = Complex::from_polar(r, a);
        let inv2 = Complex::new(1.0 / r, 0.0);
        let l1 = circle_through(
            &RiemannPoint::zero(),
            &RiemannPoint::from_complex(p2),
            &RiemannPoint::infinity(),
        )
        .unwrap();
        let l2 = circle_through(
            &RiemannPoint::from_complex(p2),
            &RiemannPoint::from_complex(p3),
            &RiemannPoint::from_complex(inv2),
        )
        .unwrap();
        let l3 = circle_through(
            &RiemannPoint::zero(),
            &RiemannPoint::from_complex(p3),
            &RiemannPoint::infinity(),
        )
        .unwrap();
        let cfg = build_configuration(l1, l2, l3).unwrap();
        assert_eq!(cfg.kind, Kind::Hyperbolic);
        let dual = dual_circle(&cfg).unwrap();
        assert!(
            dual.approx_eq(&Circle::unit()) || dual.approx_eq(&Circle::unit().reversed()),
            "dual = {dual:?}"
        );
    }

    #[test]
    fn pencil_is_degenerate() {
        // Three circles through the same two points 0 and 1.
        let c1 = circle_through(&RiemannPoint::zero(), &pt(1.0, 0.0), &pt(0.5, 0.5)).unwrap();
        let c2 = circle_through(&RiemannPoint::zero(), &pt(1.0, 0.0), &pt(0.5, 1.0)).unwrap();
        let c3 = circle_through(&RiemannPoint::zero(), &pt(1.0, 0.0), &pt(0.5, -0.7)).unwrap();
        assert!(matches!(
            build_configuration(c1, c2, c3),
            Err(Error::DegenerateConfiguration(_))
        ));
    }

    #[test]
    fn round_trip_through_elliptic_triple() {
        let cfg = octahedral();
        let t = to_elliptic_triple(&cfg).unwrap();
        let back = from_elliptic_triple(&t).unwrap();
        assert_eq!(back.kind, Kind::Spherical);
        for (orig, rebuilt) in cfg.circles.iter().zip(&back.circles) {
            assert!(
                orig.form_distance(rebuilt) < 1e-9,
                "circle drifted by {}",
                orig.form_distance(rebuilt)
            );
        }
        let t2 = to_elliptic_triple(&back).unwrap();
        for (g, h) in t.gens.iter().zip(&t2.gens) {
            assert!(g.psl_distance(h) < 1e-9);
        }
    }

    #[test]
    fn vertex_rotation_report_on_octahedral() {
        let cfg = octahedral();
        let t = to_elliptic_triple(&cfg).unwrap();
        let report = verify_vertex_rotation(&t, &cfg, 1e-9).unwrap();
        for check in &report {
            assert!(check.rotation_residual < 1e-10);
            assert!(check.matrix_residual < 1e-12);
            // Half-turns rotate by π at both fixed points.
            assert!(check.ambiguous);
        }
    }

    #[test]
    fn framed_triple_validation() {
        let cfg = octahedral();
        let t = to_elliptic_triple(&cfg).unwrap();
        let p_a = t.gens[0].fixed_points().unwrap()[0];
        let p_b = t.gens[1].fixed_points().unwrap()[0];
        let p_c = t.gens[2].fixed_points().unwrap()[0];
        assert!(FramedTriple::new(t.clone(), [p_a, p_b, p_c]).is_ok());
        // A non-fixed point is rejected.
        assert!(matches!(
            FramedTriple::new(t, [pt(0.3, 0.3), p_b, p_c]),
            Err(Error::NotFixedPoint(_))
        ));
    }
}
