//! Regenerate the checked-in fixture manifests:
//! `cargo run -p stoneworks --example export_fixtures -- fixtures`

use std::path::PathBuf;

use stoneworks_cli::corpus::fixture_manifests;
use stoneworks_cli::manifest::emit_manifest;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir)?;
    for (file, entries) in fixture_manifests() {
        std::fs::write(dir.join(&file), emit_manifest(&entries))?;
        println!("wrote {}", dir.join(file).display());
    }
    Ok(())
}
