//! Exact-arithmetic toolkit for realizing multiassociahedra as fans and polytopes.
//!
//! The crate enumerates k-triangulations of the convex n-gon, builds rigidity
//! matrices (bar-and-joint, hyperconnectivity, cofactor, polynomial) with exact
//! rational entries, and certifies whether a chosen point configuration realizes
//! the reduced complex as a basis collection, a complete simplicial fan, and/or
//! the normal fan of a polytope. All certification paths are pure sign decisions
//! over arbitrary-precision integers; no floating point is used anywhere.

pub mod embedding;
pub mod fan;
pub mod formats;
pub mod linalg;
pub mod ngon;
pub mod obstructions;
pub mod polytope;
pub mod rigidity;
pub mod sample;
pub mod simplex;

pub use embedding::ReducedEmbedding;
pub use fan::{certify_fan, FanOptions, FanReport, Verdict};
pub use polytope::{CircuitInequality, FarkasCertificate, LiftingVector, LpOutcome};
pub use linalg::{DependenceVector, Int, Rat, SignedCircuit};
pub use ngon::{crossing, Edge, EdgeClass, ElementaryCycle, Flip, KTriangulation, Star};
pub use rigidity::{
    circle_positions, HomogeneousConfig, MatrixKind, ParameterConfig, PlanarConfig, RigidityMatrix,
};
