//! Loading the frozen instance tables shipped in `fixtures/`.

use crate::io::triangulation_from_json;
use crate::tri::Triangulation;
use std::path::PathBuf;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn load_fixture(name: &str) -> Triangulation {
    let path = fixtures_dir().join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    let v: serde_json::Value = serde_json::from_str(&text).expect("fixture is not JSON");
    triangulation_from_json(&v).expect("fixture fails validation")
}
