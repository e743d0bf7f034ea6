//! Geometry of circles and elliptic Möbius maps on the Riemann sphere, the
//! triangular immersions they bound, grafting index arithmetic, and numerical
//! monodromy of the associated linear ODE.
//!
//! The crate is organised bottom-up:
//!
//! * [`mobius`]: points of CP¹ in homogeneous coordinates, Möbius maps in
//!   PSL(2,C), classification, fixed points and rotation angles.
//! * [`circles`]: circles as Hermitian forms, reflections, intersections and
//!   tangency angles.
//! * [`configurations`]: triples of circles in general position, their kind
//!   (Euclidean / spherical / hyperbolic), dual circles, and the two-way
//!   correspondence with triples of elliptic maps multiplying to the identity.
//! * [`triangles`]: classification of angle triples into the atomic cases,
//!   explicit realization as a circle configuration with marked vertices, and
//!   recovery of an atomic immersion from a framed holonomy triple.
//! * [`grafting`]: index triples, grafting multicurves, the decomposition of
//!   an arbitrary index triple into an atomic part plus a multicurve, and
//!   holonomy-preserving equalization of decompositions.
//! * [`differentials`]: the quadratic differential with three real singular
//!   exponents, its local data, and Laurent coefficient extraction.
//! * [`monodromy`]: adaptive integration of the ODE u'' + q·u/2 = 0 along
//!   loops and peripheral trace checks against the geometric holonomy.
//!
//! Angles are carried by [`angle::AngleValue`], which keeps rational multiples
//! of π exact; all boundary decisions that matter (which table row an angle
//! triple matches, whether an index is integral) are made exactly in rational
//! mode and within an ε·π band in float mode.

pub mod angle;
pub mod circles;
pub mod configurations;
pub mod differentials;
pub mod error;
pub mod grafting;
pub mod mobius;
pub mod monodromy;
pub mod tables;
pub mod tolerance;
pub mod triangles;

pub use angle::AngleValue;
pub use circles::Circle;
pub use configurations::{CircleConfiguration, EllipticTriple, FramedTriple, Kind};
pub use error::{Error, Result};
pub use grafting::{Adjustment, Decomposition, Graftability, GraftingMultiCurve, IndexTriple};
pub use mobius::{MapClass, MobiusMap, RiemannPoint};
pub use triangles::{AtomicImmersion, RealizedImmersion};
