//! Connecting decorated triangulations by certified move sequences.

pub mod arch;
pub mod completed;
pub mod inversion;
pub mod refine;
pub mod sequence;
pub mod track;
pub mod undo;

pub use arch::{enumerate_arch_markings, insert_arch, is_admissible, ArchError, ArchMarking};
pub use completed::connect_completed;
pub use inversion::{expand_good_inversion, expand_inversion_tracked, InversionError, InversionOutcome};
pub use refine::{refine_two_step, Refined};
pub use sequence::{
    apply_step, certify, decorated_signature, find_decorated_iso, replay, replay_trace,
    sequence_from_json, sequence_to_json, Iso, MoveSequence, MoveStep, ReplayError, Trace,
};
pub use undo::{undo_bubble_arch, UndoError, UndoPath};
pub use track::{transport_edge_class, transport_side, transport_vertex};
