//! Regenerates the committed sandwich fixtures.
//!
//! `cargo run -p maxsym-core --example search_fixture -- [OUT_DIR]` writes
//! `positive_micro.json` and `negative_control_p2.json` (default
//! `crates/core/tests/fixtures`).

use std::path::PathBuf;

use maxsym_core::maxsym::search::{negative_control_json, search_positive_fixture};
use maxsym_core::maxsym::CheckOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures"));
    std::fs::create_dir_all(&dir)?;
    let hit = search_positive_fixture(CheckOptions::default())?.ok_or("no certified sandwich in the search range")?;
    eprintln!("{}", hit.note());
    std::fs::write(dir.join("positive_micro.json"), hit.fixture_json())?;
    std::fs::write(dir.join("negative_control_p2.json"), negative_control_json(2)?)?;
    Ok(())
}
