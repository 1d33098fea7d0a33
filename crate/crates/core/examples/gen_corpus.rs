//! Regenerates the bundled low-light corpus: `cargo run -p vevid-core --example gen_corpus [DIR]`.

use std::path::PathBuf;

use vevid_core::io::{write_image, StillFormat};
use vevid_core::synth::{corpus_file_name, low_light_scene, CORPUS_SCENES};

fn main() -> vevid_core::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus"));
    std::fs::create_dir_all(&dir)?;
    for (i, &(w, h, seed)) in CORPUS_SCENES.iter().enumerate() {
        let path = dir.join(corpus_file_name(i));
        write_image(&path, &low_light_scene(w, h, seed), StillFormat::Ppm)?;
        println!("{}", path.display());
    }
    Ok(())
}
