pub mod branching;
pub mod dsig;
pub mod omega;
pub mod prebranching;

pub use branching::Branching;
pub use dsig::{branched_signature, prebranched_signature};
pub use prebranching::PreBranching;
