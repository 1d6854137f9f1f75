pub mod bicolor;
pub mod boundary;
pub mod chains;
pub mod cone;
pub mod euler;
pub mod homology;
pub mod omega_class;
pub mod spine;

pub use bicolor::{bicoloring, Bicoloring, TriColor};
pub use boundary::{boundary_branching, boundary_singularities, BoundaryBranching, BoundarySingularities};
pub use chains::{fundamental_cycle, omega_chain, region_chain};
pub use cone::{measure_cone, transport_measure, MeasureCone, TransportError};
pub use euler::{euler_cochain, EulerCochain};
pub use homology::{homology, Homology};
pub use omega_class::{branching_from_prebranching, omega_class, OmegaClass, ReconstructError};
pub use spine::{spine_complex, SpineComplex};
