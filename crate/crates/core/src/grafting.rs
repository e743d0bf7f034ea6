//! Decomposition of index triples into an atomic part plus a grafting
//! multicurve on the thrice-punctured sphere, and the index bump law.
//!
//! A multicurve is a non-negative weight on each of the six isotopy classes
//! used here: three edge curves (enclosing two punctures) and three core
//! curves (enclosing one puncture twice). Grafting along an edge curve bumps
//! the indices at both enclosed punctures by 2π; grafting along a core curve
//! bumps its puncture's index by 4π.

use num_rational::Rational64;

use crate::angle::AngleValue;
use crate::configurations::Kind;
use crate::error::{Error, Result};
use crate::tolerance::epsilon;
use crate::triangles::{atomic_classify, AtomicImmersion, FramedRelation};

/// A triple of rotation indices, one per puncture. Each index is positive
/// and not an integer multiple of 2π (those holonomies are trivial or
/// parabolic and fall outside the elliptic setting).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndexTriple {
    pub indices: [AngleValue; 3],
}

/// True when the angle is an integer multiple of π (within the float band).
fn integer_pi_multiple(x: &AngleValue) -> bool {
    match x.pi_fraction() {
        Some(q) => q.is_integer(),
        None => {
            let u = x.pi_units();
            (u - u.round()).abs() <= epsilon()
        }
    }
}

impl IndexTriple {
    pub fn new(indices: [AngleValue; 3]) -> Result<Self> {
        for (i, idx) in indices.iter().enumerate() {
            if !idx.radians().is_finite() {
                return Err(Error::InvalidIndices(format!(
                    "index {} is not finite",
                    i + 1
                )));
            }
            if idx.cmp_pi_multiple(Rational64::from_integer(0)) <= 0 {
                return Err(Error::InvalidIndices(format!(
                    "index {} is not positive",
                    i + 1
                )));
            }
            // Index a multiple of 2π means the half-index angle is a multiple
            // of π.
            if integer_pi_multiple(&idx.scale(Rational64::new(1, 2))) {
                return Err(Error::InvalidIndices(format!(
                    "index {} is an integer multiple of 2π",
                    i + 1
                )));
            }
        }
        Ok(Self { indices })
    }

    /// Indices of an angle triple: twice the angles.
    pub fn from_angles(angles: &[AngleValue; 3]) -> Result<Self> {
        let two = Rational64::from_integer(2);
        Self::new([
            angles[0].scale(two),
            angles[1].scale(two),
            angles[2].scale(two),
        ])
    }

    /// Half the indices: the vertex angles of the associated immersions.
    pub fn angles(&self) -> [AngleValue; 3] {
        let half = Rational64::new(1, 2);
        [
            self.indices[0].scale(half),
            self.indices[1].scale(half),
            self.indices[2].scale(half),
        ]
    }
}

/// Weights on the six multicurve classes. Punctures are labelled a, b, c in
/// slot order 0, 1, 2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GraftingMultiCurve {
    pub edge_ab: u32,
    pub edge_bc: u32,
    pub edge_ac: u32,
    pub core_a: u32,
    pub core_b: u32,
    pub core_c: u32,
}

impl GraftingMultiCurve {
    pub const ZERO: Self = Self {
        edge_ab: 0,
        edge_bc: 0,
        edge_ac: 0,
        core_a: 0,
        core_b: 0,
        core_c: 0,
    };

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    /// Weight of the edge curve joining slots i and j (unordered, i ≠ j).
    pub fn edge(&self, i: usize, j: usize) -> u32 {
        match (i.min(j), i.max(j)) {
            (0, 1) => self.edge_ab,
            (1, 2) => self.edge_bc,
            (0, 2) => self.edge_ac,
            _ => panic!("edge slots must be two distinct values in 0..3"),
        }
    }

    pub fn edge_mut(&mut self, i: usize, j: usize) -> &mut u32 {
        match (i.min(j), i.max(j)) {
            (0, 1) => &mut self.edge_ab,
            (1, 2) => &mut self.edge_bc,
            (0, 2) => &mut self.edge_ac,
            _ => panic!("edge slots must be two distinct values in 0..3"),
        }
    }

    /// Weight of the core curve around slot i.
    pub fn core(&self, i: usize) -> u32 {
        [self.core_a, self.core_b, self.core_c][i]
    }

    pub fn core_mut(&mut self, i: usize) -> &mut u32 {
        match i {
            0 => &mut self.core_a,
            1 => &mut self.core_b,
            2 => &mut self.core_c,
            _ => panic!("core slot must be in 0..3"),
        }
    }

    /// Total index bump at slot i, in units of π: one per incident edge
    /// weight, two per core weight.
    fn pi_bump(&self, i: usize) -> i64 {
        let (e1, e2) = match i {
            0 => (self.edge_ab, self.edge_ac),
            1 => (self.edge_ab, self.edge_bc),
            2 => (self.edge_bc, self.edge_ac),
            _ => panic!("slot must be in 0..3"),
        };
        e1 as i64 + e2 as i64 + 2 * self.core(i) as i64
    }
}

/// Bump an index triple by grafting along a multicurve: each edge adds 2π to
/// the indices of both punctures it encloses, each core adds 4π to its
/// puncture's index.
pub fn apply_graft(indices: &IndexTriple, curve: &GraftingMultiCurve) -> Result<IndexTriple> {
    let bumped: [AngleValue; 3] =
        std::array::from_fn(|i| indices.indices[i] + AngleValue::pi_times(2 * curve.pi_bump(i), 1));
    IndexTriple::new(bumped)
}

/// Whether the triple's half-index angles form an atomic triple as given.
pub fn is_atomic_indices(indices: &IndexTriple) -> bool {
    atomic_classify(&indices.angles()).is_ok()
}

/// Boundary adjustment applied by [`decompose`] when the plain weight choice
/// lands on an ungraftable equality stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjustment {
    /// A core layer was put back, re-expanding the largest reduced angle into
    /// the (2π,3π) range.
    WidenDominant,
    /// The far edge gave one crossing to the long edge, shifting π from the
    /// largest slot to the middle one.
    TradeFarEdge,
}

/// An index triple split into an atomic immersion and the multicurve whose
/// graft recovers the original indices.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// The atomic part, with angles in the original slot order.
    pub atomic: AtomicImmersion,
    /// The multicurve, on the original slot labels.
    pub curve: GraftingMultiCurve,
    /// Descending sort used internally: sorted slot i held original slot
    /// `relabel[i]`.
    pub relabel: [usize; 3],
    /// The atomic part is a strict-excess hyperbolic immersion and the curve
    /// crosses its excess seam, so the grafting needs an arbitrarily small
    /// perturbation first.
    pub perturbation: bool,
    /// Which boundary adjustment fired, if any.
    pub adjustment: Option<Adjustment>,
}

/// Whether a multicurve can be grafted onto an atomic immersion directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Graftability {
    Graftable,
    /// Possible after an arbitrarily small deformation of the immersion.
    GraftableWithPerturbation,
    NotGraftable,
}

/// Slot of the strict-excess inequality, if the immersion satisfies one:
/// angle at the big slot exceeds the sum of the others by more than π.
fn strict_excess_slot(atomic: &AtomicImmersion) -> Option<usize> {
    let big = atomic.big_slot?;
    let (o1, o2) = match big {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let excess = atomic.angles[big] - atomic.angles[o1] - atomic.angles[o2];
    (excess.cmp_pi_multiple(Rational64::from_integer(1)) > 0).then_some(big)
}

/// Decide whether grafting `curve` onto `atomic` stays in the realizable
/// range, needs a small perturbation first, or is impossible.
///
/// Errors with `UnsupportedCurveShape` for weight patterns outside the
/// catalogue: more than one core slot, a core away from the big slot when a
/// big slot exists, or a core together with the opposite edge.
pub fn graftability(atomic: &AtomicImmersion, curve: &GraftingMultiCurve) -> Result<Graftability> {
    let core_slots: Vec<usize> = (0..3).filter(|&i| curve.core(i) > 0).collect();
    if core_slots.len() > 1 {
        return Err(Error::UnsupportedCurveShape(
            "more than one core slot".into(),
        ));
    }
    if let Some(&s) = core_slots.first() {
        if let Some(big) = atomic.big_slot {
            if s != big {
                return Err(Error::UnsupportedCurveShape(
                    "core away from the slot of the big angle".into(),
                ));
            }
        }
        let (o1, o2) = match s {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        if curve.edge(o1, o2) > 0 {
            return Err(Error::UnsupportedCurveShape(
                "core together with the opposite edge".into(),
            ));
        }
    }
    match atomic.kind {
        Kind::Spherical => Ok(Graftability::Graftable),
        Kind::Hyperbolic => {
            if let Some(big) = strict_excess_slot(atomic) {
                let (o1, o2) = match big {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                if curve.edge(o1, o2) > 0 {
                    return Ok(Graftability::GraftableWithPerturbation);
                }
            }
            Ok(Graftability::Graftable)
        }
        Kind::Euclidean => {
            for &s in &core_slots {
                if atomic.signs[s] < 0 {
                    return Ok(Graftability::NotGraftable);
                }
            }
            for (i, j) in [(0usize, 1usize), (1, 2), (0, 2)] {
                if curve.edge(i, j) > 0 && atomic.signs[i] < 0 && atomic.signs[j] < 0 {
                    return Ok(Graftability::NotGraftable);
                }
            }
            Ok(Graftability::Graftable)
        }
    }
}

/// Floor of the angle in units of π.
fn floor_pi(x: &AngleValue) -> i64 {
    match x.pi_fraction() {
        Some(q) => q.floor().to_integer(),
        None => x.pi_units().floor() as i64,
    }
}

/// Split an index triple into an atomic immersion plus a multicurve whose
/// graft restores the original indices.
///
/// The half-index angles are sorted descending (stably); writing k_i for the
/// integer parts in units of π, the weights peel k₁ and k₂ layers off the two
/// smaller slots toward the largest, with the remainder absorbed by a core at
/// the largest slot when it dominates, or spread over the three edges when it
/// does not. Two boundary adjustments keep the reduced triple graftable:
/// a flip-equality reduced triple under a core is re-expanded into the
/// (2π,3π) range, and an excess-equality reduced triple under the far edge
/// trades that edge for one more layer toward the smallest slot.
pub fn decompose(indices: &IndexTriple) -> Result<Decomposition> {
    let angles = indices.angles();
    let mut order = [0usize, 1, 2];
    order.sort_by(|&p, &q| {
        angles[q]
            .radians()
            .partial_cmp(&angles[p].radians())
            .expect("validated angles are finite")
    });
    let sorted: [AngleValue; 3] = std::array::from_fn(|i| angles[order[i]]);
    let k: [i64; 3] = std::array::from_fn(|i| floor_pi(&sorted[i]));
    debug_assert!(k[0] >= k[1] && k[1] >= k[2] && k[2] >= 0);

    // Weights in the sorted labels: g[0] = edge 0-1, g[1] = edge 1-2,
    // g[2] = edge 0-2, g[3] = core at 0.
    let (g_ab, mut g_bc, mut g_ac, mut g_a);
    if k[0] >= k[1] + k[2] {
        g_ac = k[2];
        g_ab = k[1];
        g_a = (k[0] - k[1] - k[2]) / 2;
        g_bc = 0;
    } else {
        let l = k[0] - k[1];
        let lp = k[1] + k[2] - k[0];
        let half_up = (lp + 1) / 2;
        g_ac = l + lp / 2;
        g_ab = k[1] - half_up;
        g_a = 0;
        g_bc = half_up;
    }
    debug_assert!(g_ab >= 0 && g_bc >= 0 && g_ac >= 0 && g_a >= 0);
    let drop = g_ac + g_ab + 2 * g_a;
    debug_assert!(drop == k[0] || drop == k[0] - 1);

    let pi_int = |n: i64| AngleValue::pi_times(n, 1);
    let mut red = [
        sorted[0] - pi_int(drop),
        sorted[1] - pi_int(g_bc + g_ab),
        sorted[2] - pi_int(g_ac + g_bc),
    ];

    let one = Rational64::from_integer(1);
    let in_open = |x: &AngleValue, lo: i64, hi: i64| {
        x.cmp_pi_multiple(Rational64::from_integer(lo)) > 0
            && x.cmp_pi_multiple(Rational64::from_integer(hi)) < 0
    };
    let mut adjustment = None;
    if g_a > 0 && in_open(&red[0], 0, 1) && (red[1] + red[2] - red[0]).cmp_pi_multiple(one) == 0 {
        // Flip-equality under a core: re-expand the largest slot.
        red[0] = red[0] + pi_int(2);
        g_a -= 1;
        adjustment = Some(Adjustment::WidenDominant);
    } else if g_bc > 0
        && in_open(&red[0], 1, 2)
        && (red[0] - red[1] - red[2]).cmp_pi_multiple(one) == 0
    {
        // Excess-equality under the far edge: trade it toward the smallest
        // slot.
        red[0] = red[0] - pi_int(1);
        red[1] = red[1] + pi_int(1);
        g_ac += 1;
        g_bc -= 1;
        adjustment = Some(Adjustment::TradeFarEdge);
    }

    let mut curve = GraftingMultiCurve::ZERO;
    *curve.edge_mut(order[0], order[1]) = g_ab as u32;
    *curve.edge_mut(order[1], order[2]) = g_bc as u32;
    *curve.edge_mut(order[0], order[2]) = g_ac as u32;
    *curve.core_mut(order[0]) = g_a as u32;

    let mut reduced = angles;
    for i in 0..3 {
        reduced[order[i]] = red[i];
    }
    let atomic = atomic_classify(&reduced)?;
    let perturbation = match graftability(&atomic, &curve)? {
        Graftability::Graftable => false,
        Graftability::GraftableWithPerturbation => true,
        Graftability::NotGraftable => {
            return Err(Error::InvalidIndices(
                "decomposition produced an ungraftable pair".into(),
            ))
        }
    };
    Ok(Decomposition {
        atomic,
        curve,
        relabel: order,
        perturbation,
        adjustment,
    })
}

/// Given two atomic immersions with the same framed holonomy, the smallest
/// multicurves whose grafts carry both to one common index triple.
pub fn equalize(
    a1: &AtomicImmersion,
    a2: &AtomicImmersion,
) -> Result<(GraftingMultiCurve, GraftingMultiCurve, IndexTriple)> {
    let rel = crate::triangles::same_framed_relation(a1, a2)
        .map_err(|e| Error::NotSameFramedHolonomy(e.to_string()))?;
    match rel {
        FramedRelation::Equal => {
            let common = IndexTriple::from_angles(&a1.angles)?;
            Ok((GraftingMultiCurve::ZERO, GraftingMultiCurve::ZERO, common))
        }
        FramedRelation::PiShift { plus, minus } => {
            let third = 3 - plus - minus;
            let mut mu1 = GraftingMultiCurve::ZERO;
            *mu1.edge_mut(minus, third) = 1;
            let mut mu2 = GraftingMultiCurve::ZERO;
            *mu2.edge_mut(plus, third) = 1;
            let common = apply_graft(&IndexTriple::from_angles(&a1.angles)?, &mu1)?;
            let other = apply_graft(&IndexTriple::from_angles(&a2.angles)?, &mu2)?;
            for i in 0..3 {
                if common.indices[i] != other.indices[i] {
                    return Err(Error::NotSameFramedHolonomy(format!(
                        "grafted indices disagree at slot {}",
                        i + 1
                    )));
                }
            }
            Ok((mu1, mu2, common))
        }
    }
}
