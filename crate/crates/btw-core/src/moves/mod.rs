pub mod classify;
pub mod enhance;
pub mod naked;

pub use classify::{census_02q, census_types, classify_02q, classify_23, classify_couple, Census, Couple, TransitClass, TransitType};
pub use enhance::{enhance_negative, enhance_positive, Decoration, EnhanceError, Enhancement};
pub use naked::{apply, enumerate_sites, MoveError, MoveKind, MoveResult, Site};
