//! Ideal triangulations of 3-pseudomanifolds decorated with branchings and
//! pre-branchings: validation, dual spines, decorated Pachner-type moves,
//! homological invariants, and constructive connectivity certificates.

pub mod census;
pub mod connect;
pub mod decor;
pub mod fixtures;
pub mod invariants;
pub mod io;
pub mod moves;
pub mod perm;
pub mod sig;
pub mod skeleta;
pub mod snf;
pub mod tri;

pub use decor::{Branching, PreBranching};
pub use perm::Perm4;
pub use sig::IsoSignature;
pub use skeleta::Skeleta;
pub use tri::{Gluing, RawTriangulation, Triangulation};
