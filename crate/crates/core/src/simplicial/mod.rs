//! Simplicial complexes, triangulations of a simplex, and face-number triangles.

mod complex;
mod ftriangle;
mod identities;
mod triangulation;

pub use complex::{h_from_counts, SimplicialComplex};
pub use ftriangle::{ConjecturePart, ConjectureVerdict, FTriangle, ThetaFlags};
pub use identities::{corollary_checks, identity_suite};
pub use triangulation::{submasks, AntiprismSphere, CarriedTriangulation};
