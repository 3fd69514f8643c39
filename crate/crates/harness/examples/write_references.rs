//! Writes `corpus/<id>/reference.efg` from the reference builds and prints
//! each game's features.
//!
//! Usage: cargo run -p gameforge-harness --example write_references [CORPUS_DIR]

use std::path::PathBuf;

use gameforge_core::{compute_features, write_efg};
use gameforge_harness::{reference_game, REFERENCE_IDS};

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| "corpus".into());
    for id in REFERENCE_IDS {
        let game = reference_game(id).expect("every corpus id has a reference");
        std::fs::write(dir.join(id).join("reference.efg"), write_efg(&game).expect("references are valid"))?;
        println!("{id}: {}", serde_json::to_string(&compute_features(&game).unwrap()).unwrap());
    }
    Ok(())
}
