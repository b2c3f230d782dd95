//! Ideal triangulations of cusped hyperbolic 3-manifolds with exact shape
//! parameters.
//!
//! - [`triangulation`]: face gluings, edge classes, vertex links, orientation.
//! - [`moves`]: Pachner 2-3 and 3-2 moves.
//! - [`quad`] and [`shapes`]: exact shapes in Q(√−d), edge equations,
//!   shape propagation through moves, classification.
//! - [`volume`]: Bloch–Wigner dilogarithm and volume sums.
//! - [`canon`]: canonical signatures and isomorphism testing.
//! - [`family`] and [`explorer`]: the figure eight family `T_n` and
//!   Pachner-graph exploration; [`report`] renders the results.

pub mod canon;
pub mod explorer;
pub mod family;
pub mod moves;
pub mod perm;
pub mod quad;
pub mod report;
pub mod seeds;
pub mod shapes;
pub mod triangulation;
pub mod volume;

pub use canon::{canonical_signature, isomorphic, CanonicalSignature, IsoMode};
pub use explorer::{explore, ClassifiedNode, ExplorePolicy, MoveKind, PachnerGraph};
pub use family::{generate_tn, verify_lemma_conditions, TnFamily};
pub use moves::{enumerate_23_sites, enumerate_32_sites, pachner_23, pachner_32, Site23};
pub use perm::VertexPerm;
pub use quad::QuadExt;
pub use shapes::{classify, Classification, ShapeAssignment};
pub use triangulation::{EdgeClass, FaceSlot, Triangulation, TriangulationError};
